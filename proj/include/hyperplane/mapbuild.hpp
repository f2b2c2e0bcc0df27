#pragma once

#include <string>
#include <vector>

#include "hyperplane/halfedge_map.hpp"
#include "hyperplane/peeling.hpp"

namespace hyperplane {

// Boltzmann triangulation of a p-gon, materialized by the same free peeling that
// free_boltzmann_size counts. The outer face is the polygon's outside.
HalfEdgeMap fill_boltzmann(int p, const LambdaParams& params, Stream& rng);
int64_t inner_vertex_count(const HalfEdgeMap& filled, int p);

struct BallBuild {
  HalfEdgeMap map;
  HullTrace trace;
};

// Materializes the peel_to_radius run for the same stream state: the returned trace
// is identical to peel_to_radius(params, target_radius, rng).
BallBuild build_pshit_ball(const LambdaParams& params, int target_radius, Stream& rng);

struct Hull {
  std::vector<char> face_in;   // per face of index_faces(map)
  std::vector<char> edge_in;   // per edge
  std::vector<char> vertex_in;
  int64_t perimeter = 0;       // half-edges of the hull facing the unbounded part
  int64_t vertices = 0;
  int64_t faces = 0;
};

// Faces with a vertex at distance <= r-1, plus the bounded components of the
// complement (the component containing the outer face is the unbounded one).
Hull hull_of_radius(const HalfEdgeMap& map, const FaceIndex& faces, const DistanceField& dist, int r);

// For all vertex pairs of the radius-r hull, distances inside the hull of radius
// `inner_radius` equal distances in the whole map. check_geodesic_containment uses
// inner_radius = 2r.
bool geodesic_containment(const HalfEdgeMap& map, int r, int inner_radius);
// Same answer from one breadth-first search per hull vertex; quadratic, for cross-checks.
bool geodesic_containment_exhaustive(const HalfEdgeMap& map, int r, int inner_radius);
bool check_geodesic_containment(const HalfEdgeMap& map, int r);

// Same-run oracle: structure, edge count, outer degree, and BFS hulls against every trace row.
// Returns an empty string when everything agrees, otherwise the first disagreement.
std::string check_ball(const BallBuild& built);

}  // namespace hyperplane
