#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperplane/rng.hpp"

namespace hyperplane {

struct PathJump {
  double time = 0.0;
  double size = 0.0;
  std::size_t knot = 0;  // index of the post-jump knot
};

// Right-continuous step path: the value on [t_i, t_{i+1}) is v_i. A jump at t is stored
// as two knots at time t (left limit, then left limit + size) plus an entry in jumps().
class CadlagPath {
 public:
  void push(double t, double value);
  void push_jump(double t, double size);

  double value_at(double t) const;
  double left_limit(double t) const;
  double start_time() const { return times_.front(); }
  double end_time() const { return times_.back(); }
  double back() const { return values_.back(); }
  bool empty() const { return times_.empty(); }

  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<PathJump>& jumps() const { return jumps_; }

  // Knot times nondecreasing, jump times strictly increasing, each jump knot equal to
  // the preceding knot plus the jump size. Returns an empty string when all hold.
  std::string check_invariants() const;
  // Columns t,value,jump_flag.
  std::string to_csv() const;

 private:
  std::vector<double> times_;
  std::vector<double> values_;
  std::vector<PathJump> jumps_;
};

// Mirrored tilted Lévy process on [0, T] started at 0: negative jumps from mu^h above
// eps_cut, smaller jumps replaced by their compensator and a Gaussian of matched variance.
// E[exp(u X_t)] = exp(t sqrt(8/3) u sqrt(u+3)) and E[X_t] = 2 sqrt(2) t.
CadlagPath simulate_backward_levy(double T, double eps_cut, Stream& rng, double record_dt = 0.01);

enum class Conditioning {
  // Exact h-transform with h(x) = erf(sqrt(3x)), the probability of never hitting 0.
  DoobTransform,
  // Restart the unconditioned process whenever it hits 0 before the horizon.
  Rejection,
};

struct PVOptions {
  Conditioning conditioning = Conditioning::DoobTransform;
  // Jumps below cut(x) = max(min(eps_cut, near_zero_ratio x), coarse_ratio x) are
  // replaced by drift and Gaussian noise. Set coarse_ratio = 0 to keep eps_cut at all levels.
  double near_zero_ratio = 0.05;
  double coarse_ratio = 0.01;
  double step_scale = 0.02;      // time step <= step_scale x^{3/2}
  double max_clock_step = 0.002; // Lamperti clock advance per step
  double record_dr = 0.01;       // P and V knots on this grid in r
  double jump_record_min = 0.0;  // jumps of P (absolute size) and V at least this large are kept
  int rejection_budget = 10000;
};

struct PVPaths {
  CadlagPath P;
  CadlagPath V;
  double P_end = 0.0;
  double V_end = 0.0;
  int64_t explicit_jumps = 0;
  int attempts = 1;
};

// Perimeter and volume processes on [0, T] in the hull radius r: the mirrored tilted
// process conditioned to stay positive, started at x0, time-changed by
// r = \int ds / X_s, with independent nu_{|jump|} volume marks.
PVPaths simulate_PV(double T, double x0, double eps_cut, Stream& rng, const PVOptions& options = {});

struct MartingaleEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  int replicas = 0;
  double eps_cut = 0.0;
  double max_jump_factor = 0.0;  // largest (1+2x)e^{-2x} over the explicitly drawn large jumps
};

// Monte Carlo estimate of E[M_t], M_t = exp(-S_t) prod (1 + 2 dS) exp(-2 dS), S the
// spectrally positive 3/2-stable process.
MartingaleEstimate martingale_check(double t, int replicas, double eps_cut, uint64_t seed, int threads = 0);
// Same estimator with one jump at a time in strict IEEE arithmetic.
MartingaleEstimate martingale_check_reference(double t, int replicas, double eps_cut, uint64_t seed);

}  // namespace hyperplane
