#include "hyperplane/peeling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "hyperplane/parallel.hpp"
#include "peel_engine.hpp"

namespace hyperplane {

double StepDistribution::total() const {
  double s = new_vertex;
  for (double w : swallow) s += 2.0 * w;
  return s;
}

namespace {

void check_step_range(const BoltzmannTables& t, int p) {
  if (p < 1) throw std::domain_error("peeling step needs perimeter >= 1");
  if (p > t.p_max()) {
    throw CapacityError("perimeter " + std::to_string(p) + " exceeds table p_max " +
                        std::to_string(t.p_max()) + "; extend the tables");
  }
}

}  // namespace

StepDistribution step_distribution(const BoltzmannTables& t, int p) {
  check_step_range(t, p);
  StepDistribution d;
  const double cp = t.c_scaled(p);
  d.new_vertex = t.params().lambda * t.beta() * t.c_scaled(p + 1) / cp;
  d.swallow.resize(static_cast<std::size_t>(p));
  double g = t.rho() / cp;
  const double shrink = 4.0 * t.params().h;
  for (int i = 0; i < p; ++i) {
    d.swallow[static_cast<std::size_t>(i)] = g * t.c_scaled(p - i) * t.z_scaled(i + 1);
    g *= shrink;
  }
  return d;
}

PeelEvent sample_step(const BoltzmannTables& t, int p, double u) {
  check_step_range(t, p);
  const double cp = t.c_scaled(p);
  const double fresh = t.params().lambda * t.beta() * t.c_scaled(p + 1) / cp;
  if (u < fresh) return {PeelKind::NewVertex, 0, 0};
  u -= fresh;
  double g = t.rho() / cp;
  const double shrink = 4.0 * t.params().h;
  for (int i = 0; i < p; ++i) {
    const double q = g * t.c_scaled(p - i) * t.z_scaled(i + 1);
    if (u < 2.0 * q || i == p - 1) return {u < q ? PeelKind::SwallowLeft : PeelKind::SwallowRight, i, 0};
    u -= 2.0 * q;
    g *= shrink;
  }
  return {PeelKind::SwallowRight, p - 1, 0};
}

int64_t sample_swallowed_size(const SizeDistribution& dist, Stream& rng) {
  const double body = dist.cumulative.back();
  for (;;) {
    const double u = rng.uniform();
    if (u >= body) continue;
    const auto it = std::upper_bound(dist.cumulative.begin(), dist.cumulative.end(), u);
    return static_cast<int64_t>(it - dist.cumulative.begin());
  }
}

int64_t free_boltzmann_size(TablesPtr& tables, int p, Stream& rng) {
  if (p < 1) throw std::domain_error("free_boltzmann_size needs p >= 1");
  detail::CountingHoles holes;
  holes.stack.push_back(p);
  detail::free_peel(tables, holes, rng);
  return holes.inner;
}

namespace {

struct CountingSink {
  void new_vertex(int) {}
  int64_t swallow(PeelKind, int i, int, TablesPtr& tables, Stream& sub) {
    return free_boltzmann_size(tables, i + 1, sub);
  }
};

}  // namespace

HullTrace peel_to_radius(const LambdaParams& params, int r_max, Stream& rng, int64_t max_perimeter) {
  CountingSink sink;
  return detail::run_layers(params, r_max, rng, sink, max_perimeter);
}

int discrete_radius(double r, int n) {
  return std::max(1, static_cast<int>(std::ceil(r * n - 1e-9)));
}

NearCriticalSample near_critical_run(int n, const std::vector<double>& r_grid, int replicas,
                                     uint64_t seed, int threads) {
  if (n < 4) throw std::domain_error("near_critical_run needs n >= 4");
  if (r_grid.empty()) throw std::domain_error("near_critical_run needs a nonempty radius grid");
  NearCriticalSample out;
  out.r_grid = r_grid;
  int r_max = 0;
  for (double r : r_grid) {
    if (!(r > 0.0)) throw std::domain_error("radius grid must be positive");
    out.radii.push_back(discrete_radius(r, n));
    r_max = std::max(r_max, out.radii.back());
  }
  const LambdaParams params = LambdaParams::near_critical(n);
  (void)tables_for(params, 64);
  out.perimeter.assign(r_grid.size(), std::vector<double>(static_cast<std::size_t>(replicas)));
  out.volume.assign(r_grid.size(), std::vector<double>(static_cast<std::size_t>(replicas)));
  const double n2 = static_cast<double>(n) * n;
  parallel_for_replicas(replicas, threads, [&](int k) {
    Stream rng = replica_stream(seed, stream_purpose::kPeel, static_cast<uint64_t>(k));
    const HullTrace trace = peel_to_radius(params, r_max, rng);
    for (std::size_t g = 0; g < r_grid.size(); ++g) {
      const HullRow& row = trace.rows[static_cast<std::size_t>(out.radii[g] - 1)];
      out.perimeter[g][static_cast<std::size_t>(k)] = static_cast<double>(row.boundary_edges) / n2;
      out.volume[g][static_cast<std::size_t>(k)] = static_cast<double>(row.vertices) / (n2 * n2);
    }
  });
  return out;
}

std::string hull_trace_csv(const HullTrace& trace) {
  std::ostringstream os;
  os << "r,boundary_edges,vertices,peel_steps\n";
  for (const HullRow& row : trace.rows) {
    os << row.r << ',' << row.boundary_edges << ',' << row.vertices << ',' << row.peel_steps << '\n';
  }
  return os.str();
}

std::string hull_trace_metadata(const HullTrace& trace, int replicas, int n) {
  PrecisionScope scope(30);
  nlohmann::json j;
  j["lambda"] = to_decimal(hp_lambda(trace.params), 20);
  j["h"] = to_decimal(hp_h_from_deficit(HpReal(trace.params.deficit)), 20);
  if (n > 0) j["n"] = n;
  j["seed"] = std::to_string(trace.seed);
  j["replicas"] = replicas;
  return j.dump(1) + "\n";
}

}  // namespace hyperplane
