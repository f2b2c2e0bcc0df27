#pragma once

#include <cstdint>
#include <vector>

namespace hyperplane {

struct MeanEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;  // sample standard deviation / sqrt(n)
  int64_t n = 0;
};
MeanEstimate mean_stderr(const std::vector<double>& samples);

// Kolmogorov distribution tail P(K > x).
double kolmogorov_tail(double x);

struct KsResult {
  double statistic = 0.0;
  double p_value = 0.0;
};
// One-sample test against Exp(rate), p-value with the Stephens finite-n correction.
KsResult ks_exponential(std::vector<double> samples, double rate);

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 0.0;
};
// Pearson test of observed counts against cell probabilities. Cells with expected count
// below min_expected are pooled with the following cells. Probability mass missing from
// `probabilities` forms one extra cell holding `observed_rest`.
ChiSquareResult chi_square_gof(const std::vector<int64_t>& observed, const std::vector<double>& probabilities,
                               int64_t observed_rest = 0, double min_expected = 5.0);

// Total variation distance between the empirical law of the counts and `probabilities`;
// mass outside the listed cells counts on both sides.
double total_variation(const std::vector<int64_t>& counts, const std::vector<double>& probabilities,
                       int64_t counts_rest = 0);

}  // namespace hyperplane
