#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "hyperplane/parallel.hpp"
#include "hyperplane/peeling.hpp"

using namespace hyperplane;

TEST(StepDistribution, CriticalPerimeterOne) {
  const auto t = tables_for(LambdaParams::critical(), 64);
  const auto d = step_distribution(*t, 1);
  EXPECT_NEAR(d.new_vertex, std::sqrt(3.0) / 2, 1e-15);
  ASSERT_EQ(d.swallow.size(), 1u);
  EXPECT_NEAR(d.swallow[0], (2 - std::sqrt(3.0)) / 4, 1e-15);
  EXPECT_NEAR(d.total(), 1.0, 1e-15);
}

TEST(StepDistribution, NormalizedUpTo512) {
  for (double ratio : {1.0, 0.9, 0.5}) {
    const auto t = tables_for(LambdaParams::from_ratio(ratio), 512);
    for (int p = 1; p <= 512; ++p) EXPECT_NEAR(step_distribution(*t, p).total(), 1.0, 1e-12) << p;
  }
}

// lambda C_{p+1} / C_p = (1+8h)^{-1/2} S_{p+1} / S_p with S_p = sum_{q<p} binom(2q,q) h^q:
// the first factor grows as h decreases, so hyperbolic peeling adds vertices more often.
TEST(StepDistribution, SubcriticalMoreLikelyToGrow) {
  const auto c = tables_for(LambdaParams::critical(), 64);
  const auto s = tables_for(LambdaParams::from_ratio(0.5), 64);
  EXPECT_NEAR(step_distribution(*c, 10).new_vertex, 0.606218, 1e-6);
  EXPECT_NEAR(step_distribution(*s, 10).new_vertex, 0.884552, 1e-6);
}

TEST(StepDistribution, CapacityError) {
  const auto t = BoltzmannTables::build(LambdaParams::critical(), 16);
  EXPECT_THROW(step_distribution(*t, 17), CapacityError);
}

TEST(StepSampler, MatchesDistribution) {
  const auto t = tables_for(LambdaParams::critical(), 64);
  const auto d = step_distribution(*t, 5);
  Stream rng(1, 2);
  const int n = 200000;
  int fresh = 0;
  std::vector<int> left(5, 0), right(5, 0);
  for (int k = 0; k < n; ++k) {
    const PeelEvent ev = sample_step(*t, 5, rng.uniform());
    if (ev.kind == PeelKind::NewVertex) ++fresh;
    else if (ev.kind == PeelKind::SwallowLeft) ++left[static_cast<std::size_t>(ev.i)];
    else ++right[static_cast<std::size_t>(ev.i)];
  }
  auto close = [&](int count, double prob) { return std::fabs(count - n * prob) < 5 * std::sqrt(n * prob) + 1; };
  EXPECT_TRUE(close(fresh, d.new_vertex));
  for (int i = 0; i < 5; ++i) {
    EXPECT_TRUE(close(left[static_cast<std::size_t>(i)], d.swallow[static_cast<std::size_t>(i)])) << i;
    EXPECT_TRUE(close(right[static_cast<std::size_t>(i)], d.swallow[static_cast<std::size_t>(i)])) << i;
  }
}

TEST(SwallowedSize, TableInversionMatchesMean) {
  const auto dist = SizeDistribution::build(LambdaParams::from_ratio(0.9), 2);
  Stream rng(4, 4);
  const int n = 100000;
  double sum = 0, sum2 = 0;
  for (int k = 0; k < n; ++k) {
    const double x = static_cast<double>(sample_swallowed_size(dist, rng));
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum2 / n - mean * mean) / n);
  EXPECT_NEAR(mean, dist.mean(), 4 * se);
}

TEST(SwallowedSize, SmallWeightCollapse) {
  const auto params = LambdaParams::from_ratio(1e-6);
  TablesPtr t = tables_for(params, 64);
  Stream rng(9, 9);
  int minimal = 0;
  for (int k = 0; k < 1000; ++k) minimal += free_boltzmann_size(t, 1, rng) == 1;
  EXPECT_GE(minimal, 999);
  const auto dist = SizeDistribution::build(params, 1);
  for (int k = 0; k < 100; ++k) EXPECT_EQ(sample_swallowed_size(dist, rng), 1);
}

TEST(SwallowedSize, FreePeelingLawMatchesTable) {
  for (int p : {1, 2, 3}) {
    const auto params = LambdaParams::from_ratio(0.9);
    const auto dist = SizeDistribution::build(params, p);
    TablesPtr t = tables_for(params, 64);
    Stream rng(17, static_cast<uint64_t>(p));
    const int n = 50000;
    std::map<int64_t, int> counts;
    for (int k = 0; k < n; ++k) ++counts[free_boltzmann_size(t, p, rng)];
    double tv = 0.0;
    for (std::size_t m = 0; m < dist.weights.size(); ++m) {
      const auto it = counts.find(static_cast<int64_t>(m));
      const double emp = it == counts.end() ? 0.0 : static_cast<double>(it->second) / n;
      tv += std::fabs(emp - dist.weights[m]);
    }
    EXPECT_LT(0.5 * tv, 0.01) << p;
  }
}

TEST(PeelToRadius, ZeroRadius) {
  Stream rng(1, 1);
  const auto trace = peel_to_radius(LambdaParams::critical(), 0, rng);
  EXPECT_TRUE(trace.rows.empty());
}

TEST(PeelToRadius, RowInvariants) {
  for (auto [ratio, radius] : {std::pair{1.0, 12}, std::pair{0.9, 5}, std::pair{0.5, 3}}) {
    for (uint64_t k = 0; k < 20; ++k) {
      Stream rng = replica_stream(3, stream_purpose::kPeel, k);
      const auto trace = peel_to_radius(LambdaParams::from_ratio(ratio), radius, rng);
      ASSERT_EQ(trace.rows.size(), static_cast<std::size_t>(radius));
      for (std::size_t r = 0; r < trace.rows.size(); ++r) {
        EXPECT_EQ(trace.rows[r].r, static_cast<int>(r) + 1);
        EXPECT_GE(trace.rows[r].boundary_edges, 1);
        if (r > 0) {
          EXPECT_GE(trace.rows[r].vertices, trace.rows[r - 1].vertices);
          EXPECT_GT(trace.rows[r].peel_steps, trace.rows[r - 1].peel_steps);
        }
      }
    }
  }
}

TEST(PeelToRadius, Deterministic) {
  Stream a = replica_stream(7, stream_purpose::kPeel, 3), b = replica_stream(7, stream_purpose::kPeel, 3);
  EXPECT_EQ(hull_trace_csv(peel_to_radius(LambdaParams::from_ratio(0.9), 5, a)),
            hull_trace_csv(peel_to_radius(LambdaParams::from_ratio(0.9), 5, b)));
}

TEST(NearCritical, ParallelMatchesSerial) {
  const auto par = near_critical_run(6, {0.5, 1.0}, 16, 11, 4);
  const auto ser = near_critical_run(6, {0.5, 1.0}, 16, 11, 1);
  EXPECT_EQ(par.perimeter, ser.perimeter);
  EXPECT_EQ(par.volume, ser.volume);
  EXPECT_EQ(par.radii, (std::vector<int>{3, 6}));
}

TEST(NearCritical, WeightIsExact) {
  EXPECT_EQ(LambdaParams::near_critical(10).ratio(), 1.0 - 2.0 / (3.0 * 1e4));
}

namespace {

std::vector<double> mean_log_perimeter(double ratio, int radius, int replicas) {
  std::vector<double> m(static_cast<std::size_t>(radius), 0.0);
  for (int k = 0; k < replicas; ++k) {
    Stream rng = replica_stream(5, stream_purpose::kPeel, static_cast<uint64_t>(k));
    const auto trace = peel_to_radius(LambdaParams::from_ratio(ratio), radius, rng);
    for (int r = 0; r < radius; ++r) {
      m[static_cast<std::size_t>(r)] += std::log(static_cast<double>(trace.rows[static_cast<std::size_t>(r)].boundary_edges)) / replicas;
    }
  }
  return m;
}

}  // namespace

TEST(PeelToRadius, HyperbolicPerimeterIsLogLinear) {
  const auto slow = mean_log_perimeter(0.9, 6, 60);
  const auto fast = mean_log_perimeter(0.5, 3, 60);
  const double rate = (slow[5] - slow[2]) / 3.0;
  for (int r = 2; r < 6; ++r) EXPECT_NEAR(slow[static_cast<std::size_t>(r)] - slow[static_cast<std::size_t>(r) - 1], rate, 0.1 * rate) << r;
  EXPECT_GT(fast[2] - fast[1], 1.5 * rate);
}

TEST(PeelToRadius, CriticalPerimeterIsPolynomial) {
  const auto m = mean_log_perimeter(1.0, 24, 200);
  // Increments of log P shrink like 2/r when the perimeter grows like r^2.
  EXPECT_LT(m[23] - m[22], 0.5 * (m[5] - m[4]));
  EXPECT_NEAR((m[23] - m[11]) / std::log(2.0), 2.0, 0.3);
}
