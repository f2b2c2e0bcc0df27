#include <gtest/gtest.h>

#include <cmath>

#include "hyperplane/combinatorics.hpp"

using namespace hyperplane;
namespace mp = boost::multiprecision;

TEST(LambdaParams, CriticalPoint) {
  const auto p = LambdaParams::critical();
  EXPECT_EQ(p.h, 0.25);
  EXPECT_TRUE(p.is_critical);
  EXPECT_NEAR(p.lambda, 1.0 / (12.0 * std::sqrt(3.0)), 1e-18);
}

TEST(LambdaParams, ResidualOfWeightRelation) {
  for (double ratio : {1e-8, 1e-3, 0.1, 0.5, 0.7, 0.9, 0.99, 0.999999, 1.0 - 1e-12}) {
    const auto p = LambdaParams::from_ratio(ratio);
    const double back = p.h / std::pow(1.0 + 8.0 * p.h, 1.5);
    EXPECT_NEAR(back / p.lambda, 1.0, 1e-13) << ratio;
    EXPECT_GT(p.h, 0.0);
    EXPECT_LE(p.h, 0.25);
  }
}

TEST(LambdaParams, SmallWeightLimit) {
  const double lam = 1e-9;
  EXPECT_NEAR(h_from_lambda(lam) / lam, 1.0, 1e-7);
}

TEST(LambdaParams, NearCriticalExpansion) {
  // h_n = 1/4 - 1/(2n^2) + o(1/n^2)
  for (int n : {10, 25, 100}) {
    const auto p = LambdaParams::near_critical(n);
    EXPECT_EQ(p.deficit, 2.0 / (3.0 * std::pow(n, 4)));
    EXPECT_NEAR((0.25 - p.h) * 2.0 * n * n, 1.0, 2.0 / n);
  }
  EXPECT_NEAR(LambdaParams::near_critical(10).h, 0.2450, 2e-4);
}

TEST(LambdaParams, HighPrecisionSolverAgrees) {
  PrecisionScope scope(50);
  for (double d : {2.0 / 3.0 / 390625.0, 0.1, 0.5, 0.9}) {
    const HpReal h = hp_h_from_deficit(HpReal(d));
    const HpReal lam = hp_lambda_critical() * (1 - HpReal(d));
    const HpReal back = h / mp::pow(1 + 8 * h, HpReal(1.5));
    EXPECT_LT(static_cast<double>(mp::abs(back / lam - 1)), 1e-40);
    EXPECT_NEAR(static_cast<double>(h), h_from_deficit(d), 1e-15);
  }
}

TEST(LambdaParams, OutOfRange) {
  EXPECT_THROW(h_from_lambda(0.0), std::domain_error);
  EXPECT_THROW(h_from_lambda(0.05), std::domain_error);
  EXPECT_THROW(LambdaParams::from_ratio(1.01), std::domain_error);
  EXPECT_NO_THROW(h_from_lambda(lambda_critical() * (1 + 1e-16)));
}

TEST(Counting, SmallValues) {
  EXPECT_EQ(count_triangulations(1, 1), 1);
  EXPECT_EQ(count_triangulations(2, 1), 4);
  EXPECT_EQ(count_triangulations(3, 1), 32);
  EXPECT_EQ(count_triangulations(0, 2), 1);
  EXPECT_EQ(count_triangulations(1, 2), 3);
  EXPECT_EQ(count_triangulations(2, 2), 24);
  EXPECT_EQ(count_triangulations(0, 3), 1);
}

TEST(Counting, ConventionHole) {
  // (n, p) = (0, 1) needs (-3)!!; the series oracle gives 0.
  EXPECT_THROW(count_triangulations(0, 1), ConventionHoleError);
  const auto s = series_counts(0, 1);
  EXPECT_EQ(s[0][1], 0);
}

TEST(Counting, MatchesSeriesOracle) {
  const auto s = series_counts(12, 12);
  for (int n = 0; n <= 12; ++n) {
    for (int p = 1; p <= 12; ++p) {
      if (n == 0 && p == 1) continue;
      EXPECT_EQ(Rational(count_triangulations(n, p)), s[static_cast<std::size_t>(n)][static_cast<std::size_t>(p)])
          << "n=" << n << " p=" << p;
    }
  }
}

TEST(Counting, FixedPerimeterAsymptotic) {
  PrecisionScope scope(40);
  const int n = 10000, p = 3;
  const HpReal ratio = mp::exp(log_count(n, p) + n * mp::log(hp_lambda_critical()) + HpReal(2.5) * mp::log(HpReal(n))) /
                       fixed_perimeter_constant(p);
  EXPECT_NEAR(static_cast<double>(ratio), 1.0, 0.01);
  EXPECT_NEAR(static_cast<double>(ratio), 0.99913, 5e-5);
}

TEST(Counting, JointRegimeAsymptotic) {
  PrecisionScope scope(40);
  const double r1 = static_cast<double>(mp::exp(log_count(10000, 100) - log_joint_regime_asymptotic(10000, 100)));
  const double r2 = static_cast<double>(mp::exp(log_count(40000, 200) - log_joint_regime_asymptotic(40000, 200)));
  EXPECT_NEAR(r1, 0.99149, 5e-5);
  EXPECT_NEAR(r2, 0.99571, 5e-5);
  EXPECT_LT(std::fabs(r2 - 1), std::fabs(r1 - 1));
}

TEST(PartitionFunction, CriticalValues) {
  const auto c = LambdaParams::critical();
  EXPECT_NEAR(partition_function(c, 1), 0.5 - std::sqrt(3.0) / 4, 1e-15);
  EXPECT_NEAR(partition_function(c, 2), 3 * std::sqrt(3.0) / 4, 1e-14);
}

TEST(PartitionFunction, TruncatedSeriesIncreasesToLimit) {
  const auto params = LambdaParams::from_ratio(0.5);
  for (int p : {1, 2, 5}) {
    const double z = partition_function(params, p);
    PrecisionScope scope(40);
    HpReal partial(0);
    const HpReal lam = hp_lambda(params);
    double previous = 0.0;
    for (int n = (p == 1 ? 1 : 0); n <= 60; ++n) {
      partial += HpReal(count_triangulations(n, p)) * mp::pow(lam, n);
      const double v = static_cast<double>(partial);
      EXPECT_GE(v, previous);
      EXPECT_LE(v, z * (1 + 1e-14));
      previous = v;
    }
    EXPECT_NEAR(previous / z, 1.0, 1e-9);
  }
}

TEST(MarkovConstant, CriticalValues) {
  const auto c = LambdaParams::critical();
  EXPECT_NEAR(markov_constant(c, 1), 12 * std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(markov_constant(c, 2), 216 * std::sqrt(3.0), 1e-10);
}

TEST(MarkovConstant, CriticalClosedFormAgrees) {
  PrecisionScope scope(60);
  const HpReal h = HpReal(1) / 4;
  const HpReal lam = hp_lambda_critical();
  for (int p = 1; p <= 100; ++p) {
    const HpReal a = hp_markov_constant(lam, h, p);
    const HpReal b = hp_markov_constant_critical(p);
    EXPECT_LT(static_cast<double>(mp::abs(a / b - 1)), 1e-40) << p;
  }
}

TEST(GeneratingFunctions, ValueAtZero) {
  const auto params = LambdaParams::from_ratio(0.9);
  const auto v = generating_functions(params, 0.0);
  EXPECT_EQ(v.F, 0.0);
  EXPECT_NEAR(v.G, 0.0, 1e-18);
}

TEST(GeneratingFunctions, ClosedFormMatchesSums) {
  for (double ratio : {1.0, 0.9, 0.5}) {
    const auto params = LambdaParams::from_ratio(ratio);
    const double x = 0.3 * params.h / (1 + 8 * params.h);
    double g = 0.0, f = 0.0;
    for (int p = 1; p <= 120; ++p) {
      g += std::exp(std::log(partition_function(params, p)) + p * std::log(x));
      f += std::exp(std::log(markov_constant(params, p)) + p * std::log(x));
    }
    const auto v = generating_functions(params, x);
    EXPECT_NEAR(v.G / g, 1.0, 1e-12);
    EXPECT_NEAR(v.F / f, 1.0, 1e-12);
  }
}

TEST(GeneratingFunctions, SeriesCoefficientsMatchClosedForms) {
  PrecisionScope scope(60);
  for (double ratio : {1.0, 0.9, 0.5}) {
    const auto params = LambdaParams::from_ratio(ratio);
    const HpReal h = hp_h_from_deficit(HpReal(params.deficit));
    const HpReal lam = hp_lambda(params);
    const auto g = hp_partition_series(lam, h, 12);
    const auto f = hp_markov_series(lam, h, 12);
    EXPECT_LT(static_cast<double>(mp::abs(g[0])), 1e-50);
    for (int p = 1; p <= 12; ++p) {
      EXPECT_LT(static_cast<double>(mp::abs(g[p] / hp_partition_function(lam, h, p) - 1)), 1e-40);
      EXPECT_LT(static_cast<double>(mp::abs(f[p] / hp_markov_constant(lam, h, p) - 1)), 1e-40);
    }
  }
}

TEST(GeneratingFunctions, DomainErrors) {
  const auto params = LambdaParams::critical();
  EXPECT_THROW(generating_functions(params, 1.0 / 12.0), std::domain_error);
  EXPECT_THROW(generating_functions(params, 0.2), std::domain_error);
}

TEST(CentralBinomial, ZeroExponent) {
  EXPECT_NEAR(central_binomial_limit(0.0, 10, 0.25).limit, 2 / std::sqrt(M_PI), 1e-14);
}

TEST(CentralBinomial, NearCriticalSequence) {
  double previous = 1.0;
  for (int n : {50, 100, 200}) {
    const int64_t pn = static_cast<int64_t>(std::ceil(1.5 * n * n));
    const auto r = central_binomial_limit(1.0, pn, 0.25 - 1.0 / (2.0 * n * n));
    EXPECT_NEAR(r.limit, 0.56909077, 1e-8);
    const double err = std::fabs(r.finite_sum / r.limit - 1);
    EXPECT_LT(err, previous);
    previous = err;
  }
  EXPECT_LT(previous, 0.02);
  EXPECT_NEAR(previous, 1.0e-6, 2e-7);
}

TEST(SizeDistribution, ExactSmallWeights) {
  const auto params = LambdaParams::critical();
  const auto d = SizeDistribution::build(params, 2);
  const double z2 = partition_function(params, 2);
  EXPECT_NEAR(d.weights[0], 1.0 / z2, 1e-15);
  EXPECT_NEAR(d.weights[1], 3.0 * params.lambda / z2, 1e-15);
  EXPECT_NEAR(d.weights[5], static_cast<double>(count_triangulations(5, 2)) * std::pow(params.lambda, 5) / z2, 1e-15);
  EXPECT_LE(d.tail_mass, 1e-9);
  for (double w : d.weights) EXPECT_GE(w, 0.0);
}

TEST(SizeDistribution, SubcriticalNormalization) {
  const auto d = SizeDistribution::build(LambdaParams::from_ratio(0.5), 3);
  EXPECT_LE(d.tail_mass, 1e-9);
  EXPECT_NEAR(d.cumulative.back() + d.tail_mass, 1.0, 1e-12);
  EXPECT_EQ(d.weights[0], 1.0 / partition_function(LambdaParams::from_ratio(0.5), 3));
}
