#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperplane/acceptance.hpp"
#include "hyperplane/combinatorics.hpp"
#include "hyperplane/continuum.hpp"
#include "hyperplane/harness.hpp"
#include "hyperplane/io.hpp"
#include "hyperplane/levy.hpp"
#include "hyperplane/mapbuild.hpp"
#include "hyperplane/parallel.hpp"
#include "hyperplane/peeling.hpp"
#include "hyperplane/precision.hpp"
#include "hyperplane/tables.hpp"

using namespace hyperplane;
namespace fs = std::filesystem;

namespace {

struct RunConfig {
  double lambda_ratio = 0.0;  // 0 = unset
  int n = 0;                  // near-critical scale, 0 = unset
  int r_max = 0;
  double r = 0.5;
  std::vector<int> n_list{8, 15, 25};
  int replicas = 1;
  uint64_t seed = 1;
  int precision = kDefaultDigits;
  double eps_cut = 1e-3;
  int threads = 0;
  std::string out = "results";
  bool quick = false;
  int n_max = 12;
  int p_max = 12;
  int64_t max_perimeter = 1000000;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

uint64_t default_seed() {
  const char* env = std::getenv("HYPERPLANE_SEED");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') throw UsageError(std::string("HYPERPLANE_SEED is not an unsigned integer: ") + env);
  return v;
}

std::string numbered(const std::string& stem, int k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_%05d", k);
  return stem + buf;
}

std::string join(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

// Fails early rather than after a long run.
void require_writable(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path probe = fs::path(dir) / ".write_probe";
  std::FILE* f = ec ? nullptr : std::fopen(probe.c_str(), "w");
  if (f == nullptr) throw UsageError("output directory is not writable: " + dir);
  std::fclose(f);
  fs::remove(probe, ec);
}

LambdaParams sampling_params(const RunConfig& c) {
  if ((c.lambda_ratio > 0.0) == (c.n > 0)) throw UsageError("give exactly one of --lambda-ratio and --n");
  return c.n > 0 ? LambdaParams::near_critical(c.n) : LambdaParams::from_ratio(c.lambda_ratio);
}

void add_sampling_options(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--lambda-ratio", c.lambda_ratio, "lambda / lambda_c, in (0, 1]")->check(CLI::Range(1e-12, 1.0));
  cmd->add_option("--n", c.n, "Near-critical scale: lambda = lambda_c (1 - 2/(3 n^4))")->check(CLI::PositiveNumber);
}

int report_exit(const std::vector<TestReport>& reports, const std::string& path) {
  write_text_file(path, reports_to_json(reports));
  bool ok = true;
  for (const TestReport& r : reports) {
    std::printf("%s %s%s: %s\n", r.pass ? "ok  " : "FAIL", r.name.c_str(), r.required ? "" : " (info)",
                r.detail.c_str());
    if (r.required && !r.pass) ok = false;
  }
  std::printf("%s -> %s\n", ok ? "all required checks pass" : "required checks failed", path.c_str());
  return ok ? 0 : 1;
}

int run_enumerate(const RunConfig& c) {
  const auto series = series_counts(c.n_max, c.p_max);
  std::ostringstream os;
  os << "n,p,count,source\n";
  for (int n = 0; n <= c.n_max; ++n) {
    for (int p = 1; p <= c.p_max; ++p) {
      std::ostringstream count;
      std::string source = "formula";
      try {
        count << count_triangulations(n, p);
      } catch (const ConventionHoleError&) {
        count << series[static_cast<std::size_t>(n)][static_cast<std::size_t>(p)];
        source = "series";
      }
      os << n << ',' << p << ',' << count.str() << ',' << source << '\n';
    }
  }
  write_text_file(join(c.out, "counts.csv"), os.str());
  return 0;
}

int run_tables(const RunConfig& c) {
  const LambdaParams params = sampling_params(c);
  const TablesPtr t = BoltzmannTables::build(params, c.p_max, c.precision);
  std::ostringstream os;
  os << "p,Z,C,recurrence_residual\n";
  for (int p = 1; p <= t->p_max(); ++p) {
    os << p << ',' << decimal_string(t->Z(p)) << ',' << decimal_string(t->C(p)) << ','
       << decimal_string(t->recurrence_residual(p)) << '\n';
  }
  write_text_file(join(c.out, "tables.csv"), os.str());
  write_text_file(join(c.out, "tables.json"), t->to_json());
  return 0;
}

int run_peel(const RunConfig& c) {
  const LambdaParams params = sampling_params(c);
  if (c.r_max < 1) throw UsageError("--rmax must be >= 1");
  std::vector<HullTrace> traces(static_cast<std::size_t>(c.replicas));
  parallel_for_replicas(c.replicas, c.threads, [&](int k) {
    Stream rng = replica_stream(c.seed, stream_purpose::kPeel, static_cast<uint64_t>(k));
    traces[static_cast<std::size_t>(k)] = peel_to_radius(params, c.r_max, rng, c.max_perimeter);
    traces[static_cast<std::size_t>(k)].seed = c.seed;
  });
  const std::string dir = join(c.out, "peel");
  int truncated = 0;
  for (int k = 0; k < c.replicas; ++k) {
    const HullTrace& t = traces[static_cast<std::size_t>(k)];
    truncated += t.truncated ? 1 : 0;
    write_text_file(join(dir, numbered("trace", k) + ".csv"), hull_trace_csv(t));
  }
  nlohmann::json meta = nlohmann::json::parse(hull_trace_metadata(traces.front(), c.replicas, c.n));
  meta["r_max"] = c.r_max;
  meta["max_perimeter"] = std::to_string(c.max_perimeter);
  meta["truncated_replicas"] = truncated;
  write_text_file(join(dir, "metadata.json"), meta.dump(1) + "\n");
  if (truncated > 0) {
    std::fprintf(stderr, "note: %d of %d runs reached the perimeter cap %" PRId64 " before radius %d\n", truncated,
                 c.replicas, c.max_perimeter, c.r_max);
  }
  return 0;
}

int run_build_map(const RunConfig& c) {
  const LambdaParams params = sampling_params(c);
  if (c.r_max < 1) throw UsageError("--rmax must be >= 1");
  const std::string dir = join(c.out, "maps");
  std::vector<std::string> failures(static_cast<std::size_t>(c.replicas));
  std::vector<int> contained(static_cast<std::size_t>(c.replicas));
  parallel_for_replicas(c.replicas, c.threads, [&](int k) {
    Stream rng = replica_stream(c.seed, stream_purpose::kFill, static_cast<uint64_t>(k));
    BallBuild built = build_pshit_ball(params, c.r_max, rng);
    built.trace.seed = c.seed;
    failures[static_cast<std::size_t>(k)] = check_ball(built);
    int ok = 0;
    for (int r = 1; 2 * r <= c.r_max; ++r) ok += check_geodesic_containment(built.map, r) ? 1 : 0;
    contained[static_cast<std::size_t>(k)] = ok;
    write_text_file(join(dir, numbered("map", k) + ".txt"), serialize_map(built.map));
    write_text_file(join(dir, numbered("trace", k) + ".csv"), hull_trace_csv(built.trace));
  });
  HullTrace meta;
  meta.params = params;
  meta.seed = c.seed;
  write_text_file(join(dir, "metadata.json"), hull_trace_metadata(meta, c.replicas, c.n));

  std::vector<TestReport> reports;
  const std::vector<std::pair<std::string, std::string>> config{
      {"seed", std::to_string(c.seed)}, {"radius", std::to_string(c.r_max)}, {"replicas", std::to_string(c.replicas)}};
  int bad = 0, pairs = 0, contained_total = 0;
  std::string first;
  for (int k = 0; k < c.replicas; ++k) {
    const std::string& f = failures[static_cast<std::size_t>(k)];
    if (!f.empty() && bad++ == 0) first = "map " + std::to_string(k) + ": " + f;
    pairs += c.r_max / 2;
    contained_total += contained[static_cast<std::size_t>(k)];
  }
  TestReport hull;
  hull.name = "hull_equals_trace";
  hull.statistic = bad;
  hull.pass = bad == 0;
  hull.detail = std::to_string(c.replicas - bad) + "/" + std::to_string(c.replicas) + " maps exact" +
                (first.empty() ? "" : "; first failure: " + first);
  hull.config = config;
  TestReport geo;
  geo.name = "geodesic_containment";
  geo.statistic = pairs - contained_total;
  geo.pass = contained_total == pairs;
  geo.detail = std::to_string(contained_total) + "/" + std::to_string(pairs) + " (map, r) pairs contained";
  geo.config = config;
  reports = {hull, geo};
  return report_exit(reports, join(dir, "checks.json"));
}

int run_continuum(const RunConfig& c) {
  const double horizon = c.r_max > 0 ? c.r_max : 4.0;
  if (!(c.eps_cut > 0.0) || c.eps_cut >= 0.1) throw UsageError("--eps-cut must lie in (0, 0.1)");
  std::vector<PVPaths> paths(static_cast<std::size_t>(c.replicas));
  parallel_for_replicas(c.replicas, c.threads, [&](int k) {
    Stream rng = replica_stream(c.seed, stream_purpose::kLevy, static_cast<uint64_t>(k));
    paths[static_cast<std::size_t>(k)] = simulate_PV(horizon, 1e-6, c.eps_cut, rng);
  });
  const std::string dir = join(c.out, "continuum");
  std::ostringstream ends;
  ends << "replica,r,P,V,rescaled_perimeter\n";
  const double damp = std::exp(-2.0 * std::sqrt(2.0) * horizon);
  for (int k = 0; k < c.replicas; ++k) {
    const PVPaths& pv = paths[static_cast<std::size_t>(k)];
    write_text_file(join(dir, numbered("perimeter", k) + ".csv"), pv.P.to_csv());
    write_text_file(join(dir, numbered("volume", k) + ".csv"), pv.V.to_csv());
    ends << k << ',' << decimal_string(horizon) << ',' << decimal_string(pv.P_end) << ',' << decimal_string(pv.V_end)
         << ',' << decimal_string(damp * pv.P_end) << '\n';
  }
  write_text_file(join(dir, "endpoints.csv"), ends.str());

  std::vector<TransformRow> rows;
  for (int i = 1; i * 0.25 <= horizon + 1e-12; ++i) {
    const double r = i * 0.25;
    for (double lambda : {0.0, 0.5, 1.0, 2.0, 4.0}) {
      for (double mu : {0.0, 1.0}) rows.push_back({r, lambda, mu, joint_transform(lambda, mu, r)});
    }
  }
  write_text_file(join(dir, "transform_table.csv"), transform_table_csv(rows));
  nlohmann::json meta;
  meta["horizon"] = decimal_string(horizon);
  meta["eps_cut"] = decimal_string(c.eps_cut);
  meta["seed"] = std::to_string(c.seed);
  meta["replicas"] = c.replicas;
  write_text_file(join(dir, "metadata.json"), meta.dump(1) + "\n");
  return 0;
}

int run_validate(const RunConfig& c) {
  AcceptanceOptions o;
  o.seed = c.seed;
  o.threads = c.threads;
  o.quick = c.quick;
  return report_exit(run_validation(o), join(c.out, "validate.json"));
}

int run_bridge(const RunConfig& c) {
  if (c.n_list.empty()) throw UsageError("--n needs at least one scale");
  for (int n : c.n_list) {
    if (n < 4) throw UsageError("bridge scales must be >= 4");
  }
  if (!(c.r > 0.0)) throw UsageError("--r must be positive");
  const BridgeResult b = bridge_experiment(c.n_list, c.r, c.replicas, c.seed, {0.5, 1.0, 2.0, 4.0}, c.threads);
  write_text_file(join(c.out, "bridge.csv"), bridge_csv(b));
  for (const BridgePoint& p : b.points) {
    std::printf("n = %d  radius %d  discrepancy %.5f (se %.5f)\n", p.n, p.radius, p.discrepancy, p.discrepancy_stderr);
  }
  return report_exit({b.report}, join(c.out, "bridge.json"));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Peeling, map building and continuum checks for hyperbolic planar triangulations"};
  app.require_subcommand(1);
  RunConfig c;
  try {
    c.seed = default_seed();
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  auto common = [&c](CLI::App* cmd) {
    cmd->add_option("--seed", c.seed, "Seed (default: HYPERPLANE_SEED or 1)");
    cmd->add_option("--threads", c.threads, "Worker threads (0 = all); results do not depend on it")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--out", c.out, "Output directory");
  };

  CLI::App* enumerate = app.add_subcommand("enumerate", "Exact triangulation counts");
  enumerate->add_option("--nmax", c.n_max, "Largest inner vertex count")->check(CLI::Range(0, 200));
  enumerate->add_option("--pmax", c.p_max, "Largest perimeter")->check(CLI::Range(1, 200));
  common(enumerate);

  CLI::App* tables = app.add_subcommand("tables", "Partition function tables");
  add_sampling_options(tables, c);
  tables->add_option("--pmax", c.p_max, "Largest perimeter")->check(CLI::Range(1, 1 << 20));
  tables->add_option("--precision", c.precision, "Decimal digits for the high-precision pass")
      ->check(CLI::Range(20, 2000));
  common(tables);

  CLI::App* peel = app.add_subcommand("peel", "Hull perimeter and volume by radius");
  add_sampling_options(peel, c);
  peel->add_option("--rmax", c.r_max, "Largest radius")->required();
  peel->add_option("--replicas", c.replicas, "Independent runs")->check(CLI::PositiveNumber);
  peel->add_option("--max-perimeter", c.max_perimeter, "Stop a run once its boundary exceeds this (0 = no cap)")
      ->check(CLI::NonNegativeNumber);
  common(peel);

  CLI::App* build = app.add_subcommand("build-map", "Materialize balls and check them against their traces");
  add_sampling_options(build, c);
  build->add_option("--rmax", c.r_max, "Radius to build")->required();
  build->add_option("--replicas", c.replicas, "Independent maps")->check(CLI::PositiveNumber);
  common(build);

  CLI::App* continuum = app.add_subcommand("continuum", "Perimeter and volume paths and transform tables");
  continuum->add_option("--rmax,--r", c.r_max, "Time horizon")->check(CLI::PositiveNumber);
  continuum->add_option("--replicas", c.replicas, "Independent paths")->check(CLI::PositiveNumber);
  continuum->add_option("--eps-cut", c.eps_cut, "Jump cutoff");
  common(continuum);

  CLI::App* validate = app.add_subcommand("validate", "Invariant suite, written as a JSON test report");
  validate->add_flag("--quick", c.quick, "Exact and quadrature checks only");
  common(validate);

  CLI::App* bridge = app.add_subcommand("bridge", "Near-critical peeling against the continuum transforms");
  bridge->add_option("--n", c.n_list, "Scales, comma separated")->delimiter(',');
  bridge->add_option("--r", c.r, "Continuum radius");
  bridge->add_option("--replicas", c.replicas, "Replicas per scale")->check(CLI::PositiveNumber);
  common(bridge);
  bridge->callback([&c, bridge] {
    if (bridge->count("--replicas") == 0) c.replicas = 2000;
  });

  CLI11_PARSE(app, argc, argv);

  try {
    require_writable(c.out);
    if (*enumerate) return run_enumerate(c);
    if (*tables) return run_tables(c);
    if (*peel) return run_peel(c);
    if (*build) return run_build_map(c);
    if (*continuum) return run_continuum(c);
    if (*validate) return run_validate(c);
    if (*bridge) return run_bridge(c);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 2;
}
