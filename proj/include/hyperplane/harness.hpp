#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperplane/levy.hpp"

namespace hyperplane {

// Empirical Laplace transform s -> mean of exp(-s x) over the samples.
struct EmpiricalTransform {
  std::vector<double> points;
  std::vector<double> estimates;
  std::vector<double> stderrs;
  int64_t replicas = 0;
};
EmpiricalTransform empirical_laplace(const std::vector<double>& samples, const std::vector<double>& points);

struct TestReport {
  std::string name;
  double statistic = 0.0;
  // p-value for statistical tests, otherwise the margin threshold - |error| (>= 0 passes).
  double p_value_or_margin = 0.0;
  double threshold = 0.0;
  bool pass = false;
  bool required = true;
  std::string detail;
  std::vector<std::pair<std::string, std::string>> config;

  std::string to_json() const;
};
std::string reports_to_json(const std::vector<TestReport>& reports);

// Kolmogorov-Smirnov test against Exp(rate); passes iff p > 1e-3. Needs >= 100 samples.
TestReport ks_exponential_test(const std::vector<double>& samples, double rate);

// Number of jumps of the path in [a, b] with |size| >= h.
int64_t jump_counter(const CadlagPath& path, double a, double b, double h);

struct BridgePoint {
  int n = 0;
  int radius = 0;           // discrete radius peeled
  double effective_r = 0;   // radius / n, where the continuum target is evaluated
  EmpiricalTransform perimeter;  // in s, of |boundary| / ((3/2) n^2)
  EmpiricalTransform volume;     // in s, of |vertices| / (3 n^4)
  std::vector<double> perimeter_target;
  std::vector<double> volume_target;
  double discrepancy = 0.0;  // max over s and both observables of |empirical - target|
  double discrepancy_stderr = 0.0;
};

struct BridgeResult {
  double r = 0.0;
  std::vector<double> s_grid;
  std::vector<BridgePoint> points;
  TestReport report;
};

// Near-critical peeling at lambda_c (1 - 2/(3n^4)) compared with the hyperbolic continuum
// transforms. Passes iff the discrepancy is nonincreasing in n, allowing one inversion
// within the combined standard errors.
BridgeResult bridge_experiment(const std::vector<int>& n_list, double r, int replicas, uint64_t seed,
                               const std::vector<double>& s_grid = {0.5, 1.0, 2.0, 4.0}, int threads = 0);
std::string bridge_csv(const BridgeResult& result);

}  // namespace hyperplane
