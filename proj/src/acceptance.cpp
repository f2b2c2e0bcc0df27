#include "hyperplane/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hyperplane/combinatorics.hpp"
#include "hyperplane/continuum.hpp"
#include "hyperplane/io.hpp"
#include "hyperplane/levy.hpp"
#include "hyperplane/mapbuild.hpp"
#include "hyperplane/numerics.hpp"
#include "hyperplane/parallel.hpp"
#include "hyperplane/peeling.hpp"
#include "hyperplane/precision.hpp"
#include "hyperplane/stats.hpp"
#include "hyperplane/tables.hpp"

namespace hyperplane {

namespace {

namespace mp = boost::multiprecision;

const double kGrowth = 2.0 * std::sqrt(2.0);

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(8);
  os << x;
  return os.str();
}

TestReport tolerance(const std::string& name, double error, double tol, std::string detail = {}) {
  TestReport r;
  r.name = name;
  r.statistic = error;
  r.threshold = tol;
  r.p_value_or_margin = tol - error;
  r.pass = error <= tol;
  r.detail = detail.empty() ? "error " + fmt(error) + " vs tolerance " + fmt(tol) : std::move(detail);
  return r;
}

TestReport informational(TestReport r) {
  r.required = false;
  return r;
}

const std::vector<double>& weight_ratios() {
  static const std::vector<double> ratios{1.0, 0.9, 0.5};
  return ratios;
}

// --- exact side -------------------------------------------------------------------

std::vector<TestReport> recurrence(const AcceptanceOptions&) {
  std::vector<TestReport> out;
  for (double ratio : weight_ratios()) {
    const auto tables = BoltzmannTables::build(LambdaParams::from_ratio(ratio), 64);
    double worst = 0.0;
    for (int p = 1; p <= 64; ++p) worst = std::max(worst, tables->recurrence_residual(p));
    out.push_back(tolerance("recurrence_residual_ratio_" + fmt(ratio), worst, 1e-10));
  }
  return out;
}

std::vector<TestReport> series_oracle(const AcceptanceOptions&) {
  std::vector<TestReport> out;
  {
    const auto series = series_counts(12, 12);
    double worst = 0.0;
    for (int n = 0; n <= 12; ++n) {
      for (int p = 1; p <= 12; ++p) {
        if (n == 0 && p == 1) continue;  // the counting formula needs (-3)!! there
        const Rational exact(count_triangulations(n, p));
        const Rational& coeff = series[static_cast<std::size_t>(n)][static_cast<std::size_t>(p)];
        const double rel = static_cast<double>(abs(exact - coeff) / exact);
        worst = std::max(worst, rel);
      }
    }
    out.push_back(tolerance("counts_vs_generating_function", worst, 1e-9));
  }
  PrecisionScope scope(60);
  for (double ratio : weight_ratios()) {
    const auto params = LambdaParams::from_ratio(ratio);
    const HpReal h = hp_h_from_deficit(HpReal(params.deficit));
    const HpReal lam = hp_lambda(params);
    const auto f = hp_markov_series(lam, h, 12);
    double worst = 0.0;
    for (int p = 1; p <= 12; ++p) {
      worst = std::max(worst, static_cast<double>(mp::abs(f[static_cast<std::size_t>(p)] / hp_markov_constant(lam, h, p) - 1)));
    }
    out.push_back(tolerance("markov_series_ratio_" + fmt(ratio), worst, 1e-9));
  }
  return out;
}

std::vector<TestReport> critical_identity(const AcceptanceOptions&) {
  PrecisionScope scope(60);
  const HpReal h = HpReal(1) / 4;
  const HpReal lam = hp_lambda_critical();
  double worst = 0.0;
  for (int p = 1; p <= 100; ++p) {
    worst = std::max(worst, static_cast<double>(mp::abs(hp_markov_constant(lam, h, p) / hp_markov_constant_critical(p) - 1)));
  }
  return {tolerance("critical_closed_form", worst, 1e-12)};
}

std::vector<TestReport> peeling_law(const AcceptanceOptions& o) {
  std::vector<TestReport> out;
  for (double ratio : weight_ratios()) {
    const auto tables = tables_for(LambdaParams::from_ratio(ratio), 513);
    double worst = 0.0;
    for (int p = 1; p <= 512; ++p) worst = std::max(worst, std::abs(step_distribution(*tables, p).total() - 1.0));
    out.push_back(tolerance("step_law_normalized_ratio_" + fmt(ratio), worst, 1e-12));
  }
  if (o.quick) return out;
  const int p = 5;
  const int samples = 100000;
  const auto tables = tables_for(LambdaParams::critical(), 64);
  const StepDistribution d = step_distribution(*tables, p);
  // Cells: new vertex, then left and right swallows for each index.
  std::vector<int64_t> counts(1 + 2 * static_cast<std::size_t>(p), 0);
  std::vector<double> probs{d.new_vertex};
  for (int i = 0; i < p; ++i) probs.push_back(d.swallow[static_cast<std::size_t>(i)]);
  for (int i = 0; i < p; ++i) probs.push_back(d.swallow[static_cast<std::size_t>(i)]);
  Stream rng = replica_stream(o.seed, stream_purpose::kTest, 4);
  for (int k = 0; k < samples; ++k) {
    const PeelEvent ev = sample_step(*tables, p, rng.uniform());
    std::size_t cell = 0;
    if (ev.kind == PeelKind::SwallowLeft) cell = 1 + static_cast<std::size_t>(ev.i);
    if (ev.kind == PeelKind::SwallowRight) cell = 1 + static_cast<std::size_t>(p + ev.i);
    ++counts[cell];
  }
  const ChiSquareResult chi = chi_square_gof(counts, probs);
  TestReport r;
  r.name = "one_step_chi_square_p5";
  r.statistic = chi.statistic;
  r.p_value_or_margin = chi.p_value;
  r.threshold = 1e-3;
  r.pass = chi.p_value > 1e-3;
  r.detail = "chi2 " + fmt(chi.statistic) + " on " + std::to_string(chi.dof) + " dof, p = " + fmt(chi.p_value);
  out.push_back(r);
  return out;
}

std::vector<TestReport> filler_law(const AcceptanceOptions& o) {
  std::vector<TestReport> out;
  if (o.quick) return out;
  const auto params = LambdaParams::from_ratio(0.9);
  const int samples = 100000;
  for (int p : {2, 3}) {
    const SizeDistribution dist = SizeDistribution::build(params, p);
    std::vector<int64_t> sizes(static_cast<std::size_t>(samples));
    parallel_for_replicas(samples, o.threads, [&](int k) {
      Stream rng = replica_stream(o.seed, stream_purpose::kFill, static_cast<uint64_t>(p) << 32 | static_cast<uint64_t>(k));
      sizes[static_cast<std::size_t>(k)] = inner_vertex_count(fill_boltzmann(p, params, rng), p);
    });
    std::vector<int64_t> counts(dist.weights.size(), 0);
    int64_t beyond = 0;
    for (int64_t s : sizes) {
      if (s >= 0 && s < static_cast<int64_t>(counts.size())) ++counts[static_cast<std::size_t>(s)];
      else ++beyond;
    }
    out.push_back(tolerance("filler_size_tv_p" + std::to_string(p), total_variation(counts, dist.weights, beyond), 0.01));
  }
  return out;
}

// Maps of criteria 6 and 7: 0.9 lambda_c, radius 6, one stream per map.
constexpr int kOracleMaps = 100;
constexpr int kOracleRadius = 6;

BallBuild oracle_map(const AcceptanceOptions& o, int k) {
  Stream rng = replica_stream(o.seed, stream_purpose::kPeel, 0x6d6170000000ULL + static_cast<uint64_t>(k));
  return build_pshit_ball(LambdaParams::from_ratio(0.9), kOracleRadius, rng);
}

std::vector<TestReport> map_oracle(const AcceptanceOptions& o) {
  if (o.quick) return {};
  std::vector<std::string> failures(kOracleMaps);
  serial_for_replicas(kOracleMaps, [&](int k) {
    const std::string why = check_ball(oracle_map(o, k));
    if (!why.empty()) failures[static_cast<std::size_t>(k)] = "map " + std::to_string(k) + ": " + why;
  });
  int bad = 0;
  std::string first;
  for (const std::string& f : failures) {
    if (!f.empty() && bad++ == 0) first = f;
  }
  TestReport r = tolerance("hull_equals_trace", bad, 0);
  r.detail = std::to_string(kOracleMaps - bad) + "/" + std::to_string(kOracleMaps) + " maps exact" +
             (first.empty() ? "" : "; first failure: " + first);
  return {r};
}

std::vector<TestReport> geodesics(const AcceptanceOptions& o) {
  if (o.quick) return {};
  int bad = 0, checked = 0;
  for (int k = 0; k < kOracleMaps; ++k) {
    const BallBuild built = oracle_map(o, k);
    for (int r = 1; r <= kOracleRadius / 2; ++r) {
      ++checked;
      if (!check_geodesic_containment(built.map, r)) ++bad;
    }
  }
  TestReport r = tolerance("geodesic_containment", bad, 0);
  r.detail = std::to_string(checked - bad) + "/" + std::to_string(checked) + " (map, r) pairs contained";
  return {r};
}

// --- continuum side -----------------------------------------------------------------

std::vector<TestReport> csbp_ode(const AcceptanceOptions&) {
  const double h = 1e-3;
  const int steps = 3000;
  double worst = 0.0;
  for (double lambda : {0.1, 1.0, 10.0}) {
    const auto u = rk4([](double x) { return -branching_mechanisms(std::max(x, 0.0)).tilted; }, lambda, h, steps);
    for (int k = 0; k <= steps; ++k) {
      worst = std::max(worst, std::abs(u[static_cast<std::size_t>(k)] - csbp_marginal(lambda, k * h)));
    }
  }
  return {tolerance("csbp_closed_form_vs_rk4", worst, 1e-8)};
}

std::vector<TestReport> mass_identity(const AcceptanceOptions&) {
  std::vector<TestReport> out;
  for (double r : {0.1, 1.0, 5.0}) {
    const MassCheck m = check_mass(r);
    out.push_back(tolerance("biasing_weight_mass_r" + fmt(r), m.finite ? std::abs(m.value - 1.0) : INFINITY, 1e-8));
  }
  for (double r : {0.1, 1.0, 5.0}) {
    const MassCheck m = check_mass_hyperbolic_variant(r);
    TestReport rep = tolerance("hyperbolic_transform_in_place_r" + fmt(r), m.finite ? std::abs(m.value - 1.0) : INFINITY, 1e-8);
    rep.detail = m.finite ? "integral " + fmt(m.value) : "transform diverges on part of [0,1]";
    out.push_back(informational(rep));
  }
  return out;
}

std::vector<TestReport> martingale(const AcceptanceOptions& o) {
  std::vector<TestReport> out;
  out.push_back(tolerance("psi_M_at_1", std::abs(branching_mechanisms(1.0).martingale), 1e-14));
  double worst = 0.0;
  for (int k = 0; k <= 100; ++k) {
    const double u = 0.1 * k;
    worst = std::max(worst, std::abs(branching_mechanisms(u + 1.0).martingale - branching_mechanisms(u).tilted));
  }
  out.push_back(tolerance("psi_M_shift_identity", worst, 1e-12));
  if (o.quick) return out;
  const MartingaleEstimate e = martingale_check(1.0, 100000, 1e-4, o.seed, o.threads);
  const double z = std::abs(e.estimate - 1.0) / e.stderr_;
  TestReport r = tolerance("martingale_mean", z, 3.0);
  r.detail = "E[M_1] = " + fmt(e.estimate) + " +- " + fmt(e.stderr_) + " (" + fmt(z) + " stderr), " +
             std::to_string(e.replicas) + " paths, eps_cut " + fmt(e.eps_cut);
  out.push_back(r);
  return out;
}

std::vector<TestReport> nu_law(const AcceptanceOptions& o) {
  std::vector<TestReport> out;
  for (double delta : {0.5, 1.0, 3.0}) {
    const double mean = delta * delta / (1.0 + 2.0 * delta);
    out.push_back(tolerance("nu_density_mean_delta_" + fmt(delta), std::abs(nu_delta_mean(delta) / mean - 1.0), 1e-8));
  }
  if (o.quick) return out;
  const int draws = 100000;
  for (double delta : {0.5, 1.0, 3.0}) {
    std::vector<double> x(static_cast<std::size_t>(draws));
    Stream rng = replica_stream(o.seed, stream_purpose::kNu, static_cast<uint64_t>(delta * 1000));
    for (double& v : x) v = sample_nu(delta, rng);
    const double mean = delta * delta / (1.0 + 2.0 * delta);
    out.push_back(tolerance("nu_mean_delta_" + fmt(delta), std::abs(mean_stderr(x).mean / mean - 1.0), 0.01));
    for (double beta : {0.5, 1.0, 2.0}) {
      double acc = 0.0;
      for (double v : x) acc += std::exp(-beta * v);
      acc /= draws;
      const double exact = nu_delta_laplace(delta, beta);
      out.push_back(tolerance("nu_laplace_delta_" + fmt(delta) + "_beta_" + fmt(beta), std::abs(acc / exact - 1.0), 0.01));
    }
  }
  return out;
}

std::vector<TestReport> rescaled_limit(const AcceptanceOptions& o) {
  std::vector<TestReport> out;
  {
    const double r = 6.0;
    const double damp = std::exp(-kGrowth * r);
    double worst = 0.0;
    for (double lambda : {0.0, 6.0, 12.0}) {
      for (double mu : {0.0, 24.0, 48.0}) {
        worst = std::max(worst, std::abs(joint_transform(lambda * damp, mu * damp, r) - rescaled_limit_transform(lambda, mu)));
      }
    }
    out.push_back(tolerance("limit_transform_r6", worst, 1e-3));
  }
  if (o.quick) return out;
  const int paths = 10000;
  const double r = 4.0;
  std::vector<double> scaled(static_cast<std::size_t>(paths)), ratio(static_cast<std::size_t>(paths));
  parallel_for_replicas(paths, o.threads, [&](int k) {
    Stream rng = replica_stream(o.seed, stream_purpose::kLevy, static_cast<uint64_t>(k));
    const PVPaths pv = simulate_PV(r, 1e-6, 1e-3, rng);
    scaled[static_cast<std::size_t>(k)] = std::exp(-kGrowth * r) * pv.P_end;
    ratio[static_cast<std::size_t>(k)] = pv.V_end / pv.P_end;
  });
  TestReport ks = ks_exponential_test(scaled, 12.0);
  ks.name = "rescaled_perimeter_ks_exp12";
  ks.detail = "D = " + fmt(ks.statistic) + ", p = " + fmt(ks.p_value_or_margin);
  out.push_back(ks);
  const MeanEstimate m = mean_stderr(scaled);
  out.push_back(tolerance("rescaled_perimeter_mean", std::abs(m.mean * 12.0 - 1.0), 0.05,
                          "mean " + fmt(m.mean) + " vs 1/12 = " + fmt(1.0 / 12.0)));
  const MeanEstimate vp = mean_stderr(ratio);
  out.push_back(tolerance("volume_perimeter_ratio", std::abs(vp.mean / 0.25 - 1.0), 0.05,
                          "mean V/P " + fmt(vp.mean) + " vs 0.25"));
  return out;
}

struct JumpCountEstimate {
  double ratio_to_stated = 0.0;
  double ratio_to_exact = 0.0;
  double stderr_ = 0.0;  // of the ratio, from per-path contributions
  int64_t jumps = 0;
};

// Counts volume jumps of size >= eps in windows [r, r + delta] along simulated paths and
// compares eps^{3/4} N / delta with c P_r.
JumpCountEstimate jump_count_mc(const AcceptanceOptions& o, int paths) {
  const double eps = 1e-3, delta = 0.05;
  PVOptions opt;
  opt.coarse_ratio = 0.0;
  opt.jump_record_min = 1e-4;
  std::vector<double> lhs(static_cast<std::size_t>(paths)), rhs(static_cast<std::size_t>(paths));
  std::vector<int64_t> counts(static_cast<std::size_t>(paths));
  parallel_for_replicas(paths, o.threads, [&](int k) {
    Stream rng = replica_stream(o.seed, stream_purpose::kLevy, 0x6a756d70000000ULL + static_cast<uint64_t>(k));
    const PVPaths pv = simulate_PV(1.5, 1e-6, eps, rng, opt);
    double l = 0.0, p = 0.0;
    int64_t n = 0;
    for (int w = 0; w < 10; ++w) {
      const double a = 1.0 + w * delta;
      const int64_t c = jump_counter(pv.V, a, a + delta, eps);
      n += c;
      l += std::pow(eps, 0.75) * static_cast<double>(c) / delta;
      p += pv.P.left_limit(a);
    }
    lhs[static_cast<std::size_t>(k)] = l;
    rhs[static_cast<std::size_t>(k)] = p;
    counts[static_cast<std::size_t>(k)] = n;
  });
  double sl = 0.0, sp = 0.0;
  JumpCountEstimate e;
  for (int k = 0; k < paths; ++k) {
    sl += lhs[static_cast<std::size_t>(k)];
    sp += rhs[static_cast<std::size_t>(k)];
    e.jumps += counts[static_cast<std::size_t>(k)];
  }
  const double ratio = sl / sp;  // estimates c
  double ss = 0.0;
  for (int k = 0; k < paths; ++k) {
    const double d = lhs[static_cast<std::size_t>(k)] - ratio * rhs[static_cast<std::size_t>(k)];
    ss += d * d;
  }
  const double se = std::sqrt(ss / (paths - 1) / paths) / (sp / paths);
  e.ratio_to_stated = ratio / sigma_constant_stated();
  e.ratio_to_exact = ratio / sigma_constant_exact();
  e.stderr_ = se / sigma_constant_exact();
  return e;
}

std::vector<TestReport> sigma_constant(const AcceptanceOptions& o, bool stated_required) {
  std::vector<TestReport> out;
  const double stated = sigma_constant_stated();
  const double exact = sigma_constant_exact();
  double worst_stated = 0.0, worst_exact = 0.0;
  std::string values;
  for (double eps : {0.01, 0.1, 1.0}) {
    const double c = sigma_tail(eps) * std::pow(eps, 0.75);
    worst_stated = std::max(worst_stated, std::abs(c / stated - 1.0));
    worst_exact = std::max(worst_exact, std::abs(c / exact - 1.0));
    values += (values.empty() ? "" : ", ") + fmt(c);
  }
  TestReport s = tolerance("sigma_tail_vs_stated_constant", worst_stated, 1e-4,
                           "eps^{3/4} sigma_tail = " + values + " vs stated " + fmt(stated));
  TestReport x = tolerance("sigma_tail_vs_derived_constant", worst_exact, 1e-4,
                           "eps^{3/4} sigma_tail = " + values + " vs derived " + fmt(exact));
  out.push_back(stated_required ? s : informational(s));
  out.push_back(stated_required ? informational(x) : x);
  out.push_back(tolerance("sigma_tail_scaling", std::abs(sigma_tail(0.01) / sigma_tail(0.16) - 8.0) / 8.0, 1e-4));
  if (o.quick) return out;
  const JumpCountEstimate j = jump_count_mc(o, 2000);
  const std::string detail = "estimated c / stated = " + fmt(j.ratio_to_stated) + ", / derived = " +
                             fmt(j.ratio_to_exact) + " (se " + fmt(j.stderr_) + ", " + std::to_string(j.jumps) +
                             " jumps)";
  TestReport ms = tolerance("jump_count_vs_stated_constant", std::abs(j.ratio_to_stated - 1.0), 0.10, detail);
  TestReport mx = tolerance("jump_count_vs_derived_constant", std::abs(j.ratio_to_exact - 1.0), 0.10, detail);
  out.push_back(stated_required ? ms : informational(ms));
  out.push_back(stated_required ? informational(mx) : mx);
  return out;
}

std::vector<TestReport> bridge(const AcceptanceOptions& o) {
  if (o.quick) return {};
  const BridgeResult b = bridge_experiment({8, 15, 25}, 0.5, 2000, o.seed, {0.5, 1.0, 2.0, 4.0}, o.threads);
  std::vector<TestReport> out{b.report};
  // Frozen continuum target at s = 1, r = 0.5.
  out.push_back(informational(tolerance("bridge_target_fixture", std::abs(joint_transform(1.0, 0.0, 0.5) - 0.788563), 1e-6)));
  return out;
}

std::vector<TestReport> joint_regime(const AcceptanceOptions&) {
  PrecisionScope scope(40);
  const int64_t n = 40000;
  const int64_t p = static_cast<int64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  const double ratio = static_cast<double>(mp::exp(log_count(static_cast<int>(n), static_cast<int>(p)) -
                                                   log_joint_regime_asymptotic(n, p)));
  return {tolerance("joint_regime_ratio", std::abs(ratio - 1.0), 0.02, "ratio " + fmt(ratio) + " at n = 40000, p = 200")};
}

}  // namespace

bool CriterionResult::pass() const {
  return std::all_of(reports.begin(), reports.end(), [](const TestReport& r) { return r.pass || !r.required; });
}

std::string CriterionResult::summary_line() const {
  std::ostringstream os;
  os << "criterion " << (id < 10 ? "0" : "") << id << ' ' << (skipped ? "SKIP" : pass() ? "PASS" : "FAIL") << "  "
     << title;
  std::string failing;
  for (const TestReport& r : reports) {
    if (r.required && !r.pass) failing += (failing.empty() ? "" : ", ") + r.name;
  }
  if (!failing.empty()) os << "  [failed: " << failing << "]";
  return os.str();
}

std::string criterion_title(int id) {
  static const std::map<int, std::string> titles{
      {1, "exact recurrence residual"},
      {2, "series oracle"},
      {3, "critical identity"},
      {4, "peeling step law"},
      {5, "Boltzmann filler size law"},
      {6, "map oracle: BFS hulls equal peeling trace"},
      {7, "geodesic containment"},
      {8, "CSBP ODE closed form vs RK4"},
      {9, "biasing weight mass identity"},
      {10, "martingale mean"},
      {11, "volume mark law"},
      {12, "rescaled perimeter and volume limit"},
      {13, "volume jump constant"},
      {14, "near-critical bridge trend"},
      {15, "joint regime asymptotic ratio"},
  };
  const auto it = titles.find(id);
  if (it == titles.end()) throw std::out_of_range("no criterion " + std::to_string(id));
  return it->second;
}

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  CriterionResult c;
  c.id = id;
  c.title = criterion_title(id);
  switch (id) {
    case 1: c.reports = recurrence(options); break;
    case 2: c.reports = series_oracle(options); break;
    case 3: c.reports = critical_identity(options); break;
    case 4: c.reports = peeling_law(options); break;
    case 5: c.reports = filler_law(options); break;
    case 6: c.reports = map_oracle(options); break;
    case 7: c.reports = geodesics(options); break;
    case 8: c.reports = csbp_ode(options); break;
    case 9: c.reports = mass_identity(options); break;
    case 10: c.reports = martingale(options); break;
    case 11: c.reports = nu_law(options); break;
    case 12: c.reports = rescaled_limit(options); break;
    case 13: c.reports = sigma_constant(options, true); break;
    case 14: c.reports = bridge(options); break;
    case 15: c.reports = joint_regime(options); break;
    default: throw std::out_of_range("no criterion " + std::to_string(id));
  }
  c.skipped = c.reports.empty();
  for (TestReport& r : c.reports) {
    r.config.emplace_back("criterion", std::to_string(id));
    r.config.emplace_back("seed", std::to_string(options.seed));
  }
  return c;
}

std::vector<TestReport> run_validation(const AcceptanceOptions& options) {
  std::vector<TestReport> all;
  for (int id = 1; id <= kCriterionCount; ++id) {
    std::vector<TestReport> reports =
        id == 13 ? sigma_constant(options, false) : run_criterion(id, options).reports;
    for (TestReport& r : reports) {
      if (id == 13) {
        r.config.emplace_back("criterion", "13");
        r.config.emplace_back("seed", std::to_string(options.seed));
      }
      all.push_back(std::move(r));
    }
  }
  // Identity checks beyond the criteria.
  {
    double worst = 0.0;
    for (double x : {0.1, 1.0, 10.0}) {
      const QuadratureResult q = integrate([x](double t) { return extinction_densities(x, t).hyperbolic; }, 0.0,
                                           std::numeric_limits<double>::infinity(), 1e-12);
      worst = std::max(worst, std::abs(q.value - 1.0));
    }
    all.push_back(tolerance("extinction_density_mass", worst, 1e-8));
  }
  {
    double worst = 0.0;
    for (double p : {0.0, 0.1, 1.0, 10.0}) {
      for (double v : {0.0, 0.5, 2.0}) worst = std::max(worst, std::abs(phi(p, v) - phi_closed_form(p, v)));
    }
    all.push_back(tolerance("phi_closed_form", worst, 1e-12));
  }
  {
    double worst = 0.0;
    for (double delta : {0.5, 1.0, 3.0}) {
      const QuadratureResult q = integrate([delta](double x) { return nu_delta_density(delta, x); }, 0.0,
                                           std::numeric_limits<double>::infinity(), 1e-12);
      worst = std::max(worst, std::abs(q.value - 1.0));
    }
    all.push_back(tolerance("nu_density_mass", worst, 1e-8));
  }
  return all;
}

}  // namespace hyperplane
