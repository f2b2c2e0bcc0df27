#include "hyperplane/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace hyperplane {

MeanEstimate mean_stderr(const std::vector<double>& samples) {
  if (samples.empty()) throw std::invalid_argument("mean_stderr: no samples");
  MeanEstimate e;
  e.n = static_cast<int64_t>(samples.size());
  e.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(e.n);
  if (e.n > 1) {
    double ss = 0.0;
    for (double x : samples) ss += (x - e.mean) * (x - e.mean);
    e.stderr_ = std::sqrt(ss / static_cast<double>(e.n - 1) / static_cast<double>(e.n));
  }
  return e;
}

double kolmogorov_tail(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 0.3) {
    // Dual series, accurate where the alternating one converges slowly.
    const double pi2 = M_PI * M_PI;
    double s = 0.0;
    for (int k = 1; k <= 50; ++k) {
      const double a = (2 * k - 1);
      s += std::exp(-a * a * pi2 / (8.0 * x * x));
    }
    return 1.0 - std::sqrt(2.0 * M_PI) / x * s;
  }
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    s += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

KsResult ks_exponential(std::vector<double> samples, double rate) {
  if (samples.empty()) throw std::invalid_argument("ks_exponential: no samples");
  if (!(rate > 0.0)) throw std::invalid_argument("ks_exponential: rate must be positive");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = samples[i] > 0.0 ? -std::expm1(-rate * samples[i]) : 0.0;
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  const double sn = std::sqrt(n);
  return {d, kolmogorov_tail((sn + 0.12 + 0.11 / sn) * d)};
}

ChiSquareResult chi_square_gof(const std::vector<int64_t>& observed, const std::vector<double>& probabilities,
                               int64_t observed_rest, double min_expected) {
  if (observed.size() != probabilities.size()) throw std::invalid_argument("chi_square_gof: size mismatch");
  int64_t total = observed_rest;
  for (int64_t c : observed) total += c;
  if (total <= 0) throw std::invalid_argument("chi_square_gof: no observations");
  const double prob_sum = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
  // Pool consecutive cells until each has enough expected mass.
  std::vector<double> expected, counts;
  double e_acc = 0.0, o_acc = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    e_acc += probabilities[i] * static_cast<double>(total);
    o_acc += static_cast<double>(observed[i]);
    if (e_acc >= min_expected) {
      expected.push_back(e_acc);
      counts.push_back(o_acc);
      e_acc = o_acc = 0.0;
    }
  }
  e_acc += std::max(0.0, 1.0 - prob_sum) * static_cast<double>(total);
  o_acc += static_cast<double>(observed_rest);
  if (e_acc > 0.0 || o_acc > 0.0) {
    if (e_acc >= min_expected || expected.empty()) {
      expected.push_back(e_acc);
      counts.push_back(o_acc);
    } else {
      expected.back() += e_acc;
      counts.back() += o_acc;
    }
  }
  ChiSquareResult r;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const double d = counts[i] - expected[i];
    r.statistic += expected[i] > 0.0 ? d * d / expected[i] : (counts[i] > 0.0 ? INFINITY : 0.0);
  }
  r.dof = static_cast<int>(expected.size()) - 1;
  if (r.dof < 1) throw std::invalid_argument("chi_square_gof: fewer than two cells after pooling");
  r.p_value = std::isfinite(r.statistic)
                  ? boost::math::cdf(boost::math::complement(boost::math::chi_squared(r.dof), r.statistic))
                  : 0.0;
  return r;
}

double total_variation(const std::vector<int64_t>& counts, const std::vector<double>& probabilities,
                       int64_t counts_rest) {
  if (counts.size() != probabilities.size()) throw std::invalid_argument("total_variation: size mismatch");
  int64_t total = counts_rest;
  for (int64_t c : counts) total += c;
  if (total <= 0) throw std::invalid_argument("total_variation: no observations");
  double tv = 0.0, prob_sum = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    tv += std::abs(static_cast<double>(counts[i]) / static_cast<double>(total) - probabilities[i]);
    prob_sum += probabilities[i];
  }
  tv += std::abs(static_cast<double>(counts_rest) / static_cast<double>(total) - std::max(0.0, 1.0 - prob_sum));
  return 0.5 * tv;
}

}  // namespace hyperplane
