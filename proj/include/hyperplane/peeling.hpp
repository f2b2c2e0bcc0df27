#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperplane/combinatorics.hpp"
#include "hyperplane/rng.hpp"
#include "hyperplane/tables.hpp"

namespace hyperplane {

enum class PeelKind { NewVertex, SwallowLeft, SwallowRight };

struct PeelEvent {
  PeelKind kind = PeelKind::NewVertex;
  int i = 0;
  int64_t swallowed_inner_vertices = 0;
};

// One-step law of the peeling process on a hole of perimeter p:
// P(NewVertex) = new_vertex, P(SwallowLeft(i)) = P(SwallowRight(i)) = swallow[i].
struct StepDistribution {
  double new_vertex = 0.0;
  std::vector<double> swallow;
  double total() const;
};

StepDistribution step_distribution(const BoltzmannTables& tables, int p);

// Draws the kind and index of one step from a single uniform u in (0,1).
PeelEvent sample_step(const BoltzmannTables& tables, int p, double u);

// Number of inner vertices of a Boltzmann triangulation, by inverting the exact table.
int64_t sample_swallowed_size(const SizeDistribution& dist, Stream& rng);

// Number of inner vertices of a Boltzmann triangulation of a p-gon, drawn by
// peeling it to completion (the same draws mapbuild uses to materialize it).
// `tables` is replaced by a larger table when a hole outgrows it.
int64_t free_boltzmann_size(TablesPtr& tables, int p, Stream& rng);

struct HullRow {
  int r = 0;
  int64_t boundary_edges = 0;
  int64_t vertices = 0;
  int64_t peel_steps = 0;
};

struct HullTrace {
  LambdaParams params;
  uint64_t seed = 0;
  std::vector<HullRow> rows;
  bool truncated = false;  // stopped at the perimeter cap before r_max
};

// Peels layer by layer from a root loop until the hull of radius r_max is complete.
// With max_perimeter > 0 the run stops once the boundary exceeds it; rows then cover the
// completed layers only. Subcritical perimeters grow geometrically in r, so deep radii
// are out of reach away from lambda_c.
HullTrace peel_to_radius(const LambdaParams& params, int r_max, Stream& rng, int64_t max_perimeter = 0);

struct NearCriticalSample {
  std::vector<double> r_grid;
  std::vector<int> radii;                       // discrete radius used for each grid point
  std::vector<std::vector<double>> perimeter;   // [grid][replica] |boundary| / n^2
  std::vector<std::vector<double>> volume;      // [grid][replica] |vertices| / n^4
};

// Discrete radius for continuum radius r at scale n.
int discrete_radius(double r, int n);

// Peels replicas of the near-critical PSHT with lambda_n = lambda_c (1 - 2/(3 n^4)).
NearCriticalSample near_critical_run(int n, const std::vector<double>& r_grid, int replicas,
                                     uint64_t seed, int threads = 0);

std::string hull_trace_csv(const HullTrace& trace);
std::string hull_trace_metadata(const HullTrace& trace, int replicas, int n = 0);

}  // namespace hyperplane
