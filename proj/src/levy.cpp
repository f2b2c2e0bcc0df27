#include "hyperplane/levy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hyperplane/continuum.hpp"
#include "hyperplane/kernels.hpp"
#include "hyperplane/parallel.hpp"

namespace hyperplane {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kMeanSpeed = 2.0 * std::sqrt(2.0);

}  // namespace

void CadlagPath::push(double t, double value) {
  if (!times_.empty() && t < times_.back()) throw std::logic_error("CadlagPath: knots must be nondecreasing");
  times_.push_back(t);
  values_.push_back(value);
}

void CadlagPath::push_jump(double t, double size) {
  if (times_.empty()) throw std::logic_error("CadlagPath: jump before the first knot");
  if (!jumps_.empty() && !(t > jumps_.back().time)) throw std::logic_error("CadlagPath: jump times must increase");
  const double left = values_.back();
  if (times_.back() != t) push(t, left);
  push(t, left + size);
  jumps_.push_back({t, size, times_.size() - 1});
}

double CadlagPath::value_at(double t) const {
  if (times_.empty() || t < times_.front()) throw std::domain_error("CadlagPath: time before the path starts");
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  return values_[static_cast<std::size_t>(it - times_.begin()) - 1];
}

double CadlagPath::left_limit(double t) const {
  double v = value_at(t);
  const auto it = std::lower_bound(jumps_.begin(), jumps_.end(), t,
                                   [](const PathJump& j, double x) { return j.time < x; });
  if (it != jumps_.end() && it->time == t) v -= it->size;
  return v;
}

std::string CadlagPath::check_invariants() const {
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (times_[i] < times_[i - 1]) return "knot times decrease at " + std::to_string(i);
  }
  for (std::size_t j = 0; j < jumps_.size(); ++j) {
    const PathJump& jp = jumps_[j];
    if (j > 0 && !(jp.time > jumps_[j - 1].time)) return "jump times not increasing at " + std::to_string(j);
    if (jp.knot == 0 || jp.knot >= times_.size()) return "jump knot out of range";
    if (times_[jp.knot] != jp.time || times_[jp.knot - 1] != jp.time) return "jump knot time mismatch";
    if (values_[jp.knot] != values_[jp.knot - 1] + jp.size) return "jump knot value mismatch";
  }
  return {};
}

std::string CadlagPath::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "t,value,jump_flag\n";
  std::size_t j = 0;
  for (std::size_t i = 0; i < times_.size(); ++i) {
    const bool jump = j < jumps_.size() && jumps_[j].knot == i;
    if (jump) ++j;
    os << times_[i] << ',' << values_[i] << ',' << (jump ? 1 : 0) << '\n';
  }
  return os.str();
}

CadlagPath simulate_backward_levy(double T, double eps_cut, Stream& rng, double record_dt) {
  if (!(T > 0.0)) throw std::domain_error("simulate_backward_levy needs T > 0");
  if (!(eps_cut > 0.0) || eps_cut > 0.1) throw std::domain_error("eps_cut must lie in (0, 0.1]");
  if (!(record_dt > 0.0)) throw std::domain_error("record_dt must be positive");
  const double rate = tilted_tail_mass(eps_cut);
  const double drift = kMeanSpeed + tilted_tail_first_moment(eps_cut);
  const double sd = std::sqrt(tilted_head_moment(2, eps_cut));
  CadlagPath path;
  path.push(0.0, 0.0);
  double t = 0.0, x = 0.0;
  double next_jump = rng.exponential() / rate;
  double next_grid = record_dt;
  auto advance = [&](double to) {
    const double dt = to - t;
    x += drift * dt + sd * std::sqrt(dt) * rng.normal();
    t = to;
  };
  while (t < T) {
    const double target = std::min({next_jump, next_grid, T});
    advance(target);
    if (target == next_jump && next_jump < T) {
      path.push(t, x);
      const double y = sample_tilted_jump(eps_cut, rng);
      path.push_jump(t, -y);
      x -= y;
      next_jump = t + rng.exponential() / rate;
    } else {
      path.push(t, x);
      if (target == next_grid) next_grid = std::min(next_grid + record_dt, T);
    }
  }
  return path;
}

namespace {

// h(x) = erf(sqrt(3x)) and its first two derivatives divided by h.
struct HarmonicRatios {
  double first = 0.0;
  double second = 0.0;
};

HarmonicRatios harmonic_ratios(double x) {
  const double h = std::erf(std::sqrt(3.0 * x));
  const double g = std::sqrt(3.0 / kPi) * std::exp(-3.0 * x);
  HarmonicRatios r;
  r.first = g / std::sqrt(x) / h;
  r.second = g * (-0.5 / (x * std::sqrt(x)) - 3.0 / std::sqrt(x)) / h;
  return r;
}

struct Cut {
  double eps = 0.0;
  double rate = 0.0;
  double drift = 0.0;       // mean speed plus compensator of the explicit jumps
  double variance = 0.0;    // per unit time, from jumps below eps
  double third = 0.0;       // \int_0^eps x^3 mu^h(dx)
  double volume_drift = 0.0;
};

Cut make_cut(double eps) {
  Cut c;
  c.eps = eps;
  c.rate = tilted_tail_mass(eps);
  c.drift = kMeanSpeed + tilted_tail_first_moment(eps);
  c.variance = tilted_head_moment(2, eps);
  c.third = tilted_head_moment(3, eps);
  c.volume_drift = tilted_head_volume_drift(eps);
  return c;
}

class PVSimulator {
 public:
  PVSimulator(double T, double x0, double eps_cut, const PVOptions& o) : T_(T), x0_(x0), eps_cut_(eps_cut), o_(o) {}

  // Returns false if the unconditioned path hit 0 (rejection mode only).
  bool run(Stream& rng, PVPaths& out) {
    out.P = CadlagPath();
    out.V = CadlagPath();
    out.explicit_jumps = 0;
    double x = x0_, v = 0.0, r = 0.0;
    out.P.push(0.0, x);
    out.V.push(0.0, 0.0);
    double next_grid = std::min(o_.record_dr, T_);
    const bool doob = o_.conditioning == Conditioning::DoobTransform;
    std::vector<double> jump_times;
    while (r < T_) {
      const double eps = std::max(std::min(eps_cut_, o_.near_zero_ratio * x), o_.coarse_ratio * x);
      const Cut c = make_cut(eps);
      double drift = c.drift;
      if (doob) {
        const HarmonicRatios hr = harmonic_ratios(x);
        drift += hr.first * c.variance - 0.5 * hr.second * c.third;
      }
      double dt = std::min(o_.step_scale * x * std::sqrt(x), o_.max_clock_step * x);
      // Proposed explicit jumps in (0, dt], placed at uniform times.
      const uint64_t k = rng.poisson(c.rate * dt);
      jump_times.clear();
      for (uint64_t i = 0; i < k; ++i) jump_times.push_back(rng.uniform() * dt);
      std::sort(jump_times.begin(), jump_times.end());
      jump_times.push_back(dt);
      double tau = 0.0;
      for (std::size_t i = 0; i < jump_times.size(); ++i) {
        const double seg = jump_times[i] - tau;
        double x_new = x;
        if (seg > 0.0) {
          // Continuous part; resample the rare Gaussian overshoot below 0.
          for (int attempt = 0;; ++attempt) {
            x_new = x + drift * seg + std::sqrt(c.variance * seg) * rng.normal();
            if (x_new > 0.0) break;
            if (!doob) return false;
            if (attempt > 100) throw std::runtime_error("simulate_PV: continuous step keeps crossing 0");
          }
          const double dr = 0.5 * seg * (1.0 / x + 1.0 / x_new);
          // Record grid points crossed by this segment, interpolating linearly.
          while (next_grid <= r + dr && next_grid <= T_) {
            const double w = (next_grid - r) / dr;
            out.P.push(next_grid, x + w * (x_new - x));
            out.V.push(next_grid, v + w * c.volume_drift * seg);
            if (next_grid >= T_) {
              out.P_end = out.P.back();
              out.V_end = out.V.back();
              return true;
            }
            next_grid = std::min(next_grid + o_.record_dr, T_);
          }
          r += dr;
          v += c.volume_drift * seg;
          x = x_new;
        }
        tau = jump_times[i];
        if (i + 1 == jump_times.size()) break;
        const double y = sample_tilted_jump(c.eps, rng);
        if (doob) {
          if (y >= x) continue;
          const double keep = std::erf(std::sqrt(3.0 * (x - y))) / std::erf(std::sqrt(3.0 * x));
          if (!(rng.uniform() < keep)) continue;
        } else if (y >= x) {
          return false;
        }
        const double mark = sample_nu(y, rng);
        ++out.explicit_jumps;
        if (y >= o_.jump_record_min) {
          out.P.push(r, x);
          out.P.push_jump(r, -y);
        }
        x -= y;
        if (mark >= o_.jump_record_min) {
          out.V.push(r, v);
          out.V.push_jump(r, mark);
        }
        v += mark;
      }
    }
    out.P_end = x;
    out.V_end = v;
    return true;
  }

 private:
  double T_, x0_, eps_cut_;
  PVOptions o_;
};

}  // namespace

PVPaths simulate_PV(double T, double x0, double eps_cut, Stream& rng, const PVOptions& options) {
  if (!(T > 0.0)) throw std::domain_error("simulate_PV needs T > 0");
  if (!(x0 > 0.0)) throw std::domain_error("simulate_PV needs x0 > 0");
  if (!(eps_cut > 0.0) || eps_cut > 0.1) throw std::domain_error("eps_cut must lie in (0, 0.1]");
  PVSimulator sim(T, x0, eps_cut, options);
  PVPaths out;
  for (int attempt = 1; attempt <= options.rejection_budget; ++attempt) {
    if (sim.run(rng, out)) {
      out.attempts = attempt;
      return out;
    }
  }
  throw std::runtime_error("simulate_PV: rejection budget exhausted; use a larger x0 or the h-transform");
}

namespace {

// Large jumps x = eps v^{-2/3} with v uniform on (0, 1) split at v = kBandFloor: the band
// above it goes through the vectorized kernel on raw 32-bit words.
constexpr double kBandFloor = 1e-3;
constexpr std::size_t kChunkBlocks = 4096;

struct MartingaleConstants {
  double rate, compensator, head_sd, head_log;
};

MartingaleConstants martingale_constants(double t, double eps) {
  return {stable_tail_mass(eps) * t, stable_tail_first_moment(eps) * t, std::sqrt(stable_head_variance(eps) * t),
          stable_head_log_weight(eps) * t};
}

template <bool kReference>
double martingale_log_sample(const MartingaleConstants& mc, double eps, Stream& rng, std::vector<uint32_t>& buf,
                             double& max_factor) {
  double log_m = mc.compensator + mc.head_log - mc.head_sd * rng.normal();
  uint64_t band = rng.poisson(mc.rate * (1.0 - kBandFloor));
  const uint64_t tail = rng.poisson(mc.rate * kBandFloor);
  for (uint64_t i = 0; i < tail; ++i) {
    const double x = eps * std::pow(kBandFloor * rng.uniform(), -2.0 / 3.0);
    const double log_f = std::log1p(2.0 * x) - 2.0 * x;
    max_factor = std::max(max_factor, std::exp(log_f));
    log_m += log_f - x;
  }
  while (band > 0) {
    const std::size_t words = static_cast<std::size_t>(std::min<uint64_t>(band, 4 * kChunkBlocks));
    const std::size_t blocks = (words + 3) / 4;
    rng.fill_blocks_u32(buf.data(), blocks);
    if constexpr (kReference) {
      log_m += kernels::stable_band_log_weight_reference(buf.data(), words, eps, kBandFloor);
    } else {
      log_m += kernels::stable_band_log_weight(buf.data(), words, eps, kBandFloor);
    }
    band -= words;
  }
  return log_m;
}

template <bool kReference, class Loop>
MartingaleEstimate martingale_run(double t, int replicas, double eps_cut, uint64_t seed, Loop&& loop) {
  if (!(t > 0.0)) throw std::domain_error("martingale_check needs t > 0");
  if (replicas < 2) throw std::domain_error("martingale_check needs at least 2 replicas");
  if (!(eps_cut > 0.0) || eps_cut > 0.1) throw std::domain_error("eps_cut must lie in (0, 0.1]");
  const MartingaleConstants mc = martingale_constants(t, eps_cut);
  std::vector<double> values(static_cast<std::size_t>(replicas));
  std::vector<double> factors(static_cast<std::size_t>(replicas));
  loop(replicas, [&](int k) {
    Stream rng = replica_stream(seed, stream_purpose::kMartingale, static_cast<uint64_t>(k));
    std::vector<uint32_t> buf(4 * kChunkBlocks);
    double max_factor = 0.0;
    values[static_cast<std::size_t>(k)] =
        std::exp(martingale_log_sample<kReference>(mc, eps_cut, rng, buf, max_factor));
    factors[static_cast<std::size_t>(k)] = max_factor;
  });
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= replicas;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  MartingaleEstimate e;
  e.estimate = mean;
  e.stderr_ = std::sqrt(ss / (replicas - 1) / replicas);
  e.replicas = replicas;
  e.eps_cut = eps_cut;
  e.max_jump_factor = *std::max_element(factors.begin(), factors.end());
  return e;
}

}  // namespace

MartingaleEstimate martingale_check(double t, int replicas, double eps_cut, uint64_t seed, int threads) {
  return martingale_run<false>(t, replicas, eps_cut, seed, [threads](int n, auto&& body) {
    parallel_for_replicas(n, threads, body);
  });
}

MartingaleEstimate martingale_check_reference(double t, int replicas, double eps_cut, uint64_t seed) {
  return martingale_run<true>(t, replicas, eps_cut, seed, [](int n, auto&& body) { serial_for_replicas(n, body); });
}

}  // namespace hyperplane
