#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hyperplane/precision.hpp"

namespace hyperplane {

// 1/(12 sqrt 3), the critical weight.
double lambda_critical();
HpReal hp_lambda_critical();

// Weight regime. The canonical input is the relative deficit d = 1 - lambda/lambda_c,
// which keeps near-critical parameters exact (d = 2/(3 n^4) is tiny).
struct LambdaParams {
  double lambda = 0.0;
  double h = 0.25;
  bool is_critical = true;
  double deficit = 0.0;

  double ratio() const { return 1.0 - deficit; }

  static LambdaParams critical();
  static LambdaParams from_deficit(double deficit);
  static LambdaParams from_ratio(double ratio);
  static LambdaParams from_lambda(double lambda);
  // lambda_n = lambda_c (1 - 2/(3 n^4)).
  static LambdaParams near_critical(int n);
};

// Unique h in (0, 1/4] with lambda = h / (1+8h)^{3/2}.
double h_from_lambda(double lambda);
double h_from_deficit(double deficit);
HpReal hp_h_from_deficit(const HpReal& deficit);
HpReal hp_lambda(const LambdaParams& params);

class ConventionHoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Number of type-I triangulations of a p-gon with n inner vertices from the closed
// counting formula. Throws ConventionHoleError where the formula needs (-3)!!.
BigInt count_triangulations(int n, int p);

// Coefficients [lambda^n] Z_p(lambda) for n <= n_max, 1 <= p <= p_max, extracted with
// exact rational arithmetic from the closed-form generating function of the Z_p.
// result[n][p]; column p = 0 is unused.
std::vector<std::vector<Rational>> series_counts(int n_max, int p_max);

// Z_p(lambda).
double partition_function(const LambdaParams& params, int p);
HpReal hp_partition_function(const HpReal& lambda, const HpReal& h, int p);

// C_p(lambda).
double markov_constant(const LambdaParams& params, int p);
HpReal hp_markov_constant(const HpReal& lambda, const HpReal& h, int p);
// Closed form of C_p at the critical point.
HpReal hp_markov_constant_critical(int p);

struct GeneratingValues {
  double G = 0.0;
  double F = 0.0;
};

// Closed forms of sum_p Z_p x^p (with its p = 0 term) and sum_p C_p x^p.
GeneratingValues generating_functions(const LambdaParams& params, double x);
// Taylor coefficients of the two closed forms, index 0..order, computed by series
// arithmetic on the closed-form factors (independent of the Z_p / C_p formulas).
std::vector<HpReal> hp_partition_series(const HpReal& lambda, const HpReal& h, int order);
std::vector<HpReal> hp_markov_series(const HpReal& lambda, const HpReal& h, int order);

struct CentralBinomialSum {
  double finite_sum = 0.0;
  double limit = 0.0;
};

// p_n^{-1/2} sum_{q < p_n} binom(2q,q) h_n^q and its limit (2/sqrt pi) int_0^1 e^{-3 p x^2} dx.
CentralBinomialSum central_binomial_limit(double p, int64_t p_n, double h_n);

// Constant in #T_{n,p} ~ C(p) lambda_c^{-n} n^{-5/2} at fixed p.
double fixed_perimeter_constant(int p);
// log of (1/(36 pi sqrt 2)) lambda_c^{-n} n^{-5/2} 12^p sqrt(p) exp(-2p^2/(3n)), the
// regime p ~ sqrt(n).
HpReal log_joint_regime_asymptotic(int64_t n, int64_t p);
HpReal log_count(int n, int p);

// Exact law of the number of inner vertices of a Boltzmann triangulation of a p-gon,
// truncated where the asymptotic tail bound drops below 1e-9.
struct SizeDistribution {
  int perimeter = 1;
  LambdaParams params;
  std::vector<double> weights;     // P(n), n = 0..n_cut
  std::vector<double> cumulative;  // running sums of weights
  double tail_mass = 0.0;

  static SizeDistribution build(const LambdaParams& params, int p, double tail_target = 1e-9);
  int64_t n_cut() const { return static_cast<int64_t>(weights.size()) - 1; }
  double mean() const;
};

}  // namespace hyperplane
