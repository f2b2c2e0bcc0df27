#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hyperplane {

// Rooted map as a half-edge structure. Half-edges 2e and 2e+1 are the two sides of
// edge e; next() walks the face on the left. Loops and multiple edges are allowed.
struct HalfEdgeMap {
  std::vector<int32_t> next;
  std::vector<int32_t> origin;
  int32_t root = 0;
  int32_t num_vertices = 0;
  // A half-edge of the outer face (the remaining hole of a ball, or the outside of
  // a filled polygon), -1 if there is none.
  int32_t outer = -1;
  // A half-edge of the root loop's 1-gon face, -1 if there is none.
  int32_t root_face = -1;
  // Radius of the hull this map represents, 0 if it is not a ball.
  int explored_radius = 0;

  static int32_t twin(int32_t h) { return h ^ 1; }
  int32_t target(int32_t h) const { return origin[static_cast<std::size_t>(twin(h))]; }
  int64_t num_half_edges() const { return static_cast<int64_t>(next.size()); }
  int64_t num_edges() const { return num_half_edges() / 2; }
  int32_t root_vertex() const { return origin[static_cast<std::size_t>(root)]; }
};

struct FaceIndex {
  std::vector<int32_t> face_of;  // per half-edge
  std::vector<int32_t> start;    // one half-edge per face
  std::vector<int32_t> degree;
  int32_t num_faces() const { return static_cast<int32_t>(start.size()); }
};

FaceIndex index_faces(const HalfEdgeMap& map);

struct StructureReport {
  bool ok = true;
  std::string message;
  int64_t euler_characteristic = 0;  // V - E + F
  int64_t triangles = 0;
};

// Checks the permutation structure, origin consistency, that every face other than
// the outer and root faces is a triangle, and V - E + F = 2.
StructureReport check_structure(const HalfEdgeMap& map);

// Graph distances from the root vertex.
struct DistanceField {
  std::vector<int32_t> dist;  // -1 if unreachable
};

// Vertex adjacency in compressed form, optionally restricted to a subset of edges.
struct Adjacency {
  std::vector<int64_t> offset;
  std::vector<int32_t> neighbor;
};

Adjacency build_adjacency(const HalfEdgeMap& map, const std::vector<char>* edge_mask = nullptr);
std::vector<int32_t> bfs(const Adjacency& adj, int32_t source);
DistanceField distances_from_root(const HalfEdgeMap& map);

// Text format:
//   hyperplane-map 1
//   vertices V edges E faces F
//   root R outer O root_face Q radius K
//   edges
//   v1 v2            one line per edge e; half-edge 2e runs v1 -> v2
//   faces
//   h0 h1 ...        one line per face, half-edges in next() order
std::string serialize_map(const HalfEdgeMap& map);
HalfEdgeMap parse_map(const std::string& text);

}  // namespace hyperplane
