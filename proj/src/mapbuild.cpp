#include "hyperplane/mapbuild.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <utility>

#include "peel_engine.hpp"

namespace hyperplane {

namespace {

// Growable half-edge structure. Hole faces are kept as next/prev cycles of the
// half-edges on their inside, so a hole is addressed by any one of its half-edges.
class MapBuilder {
 public:
  int32_t add_vertex() { return num_vertices_++; }

  // Edge u -> v; returns the half-edge leaving u (its twin is stored alongside).
  int32_t add_edge(int32_t u, int32_t v) {
    const auto h = static_cast<int32_t>(next_.size());
    for (int k = 0; k < 2; ++k) {
      next_.push_back(-1);
      prev_.push_back(-1);
      alive_.push_back(1);
    }
    origin_.push_back(u);
    origin_.push_back(v);
    twin_.push_back(h + 1);
    twin_.push_back(h);
    return h;
  }

  void link(int32_t a, int32_t b) {
    next_[static_cast<std::size_t>(a)] = b;
    prev_[static_cast<std::size_t>(b)] = a;
  }

  int32_t next(int32_t h) const { return next_[static_cast<std::size_t>(h)]; }
  int32_t prev(int32_t h) const { return prev_[static_cast<std::size_t>(h)]; }
  int32_t twin(int32_t h) const { return twin_[static_cast<std::size_t>(h)]; }
  int32_t origin(int32_t h) const { return origin_[static_cast<std::size_t>(h)]; }

  // Hole half-edge k steps ahead of h0 in a hole of perimeter q (k = q gives h0).
  int32_t ahead(int32_t h0, int k, int q) const {
    int32_t h = h0;
    if (k <= q - k) {
      for (int s = 0; s < k; ++s) h = next(h);
    } else {
      for (int s = 0; s < q - k; ++s) h = prev(h);
    }
    return h;
  }

  // Glues a triangle on hole half-edge h0 (c0 -> c1) whose third vertex is c_k.
  // Returns {x', y'}: x' (c_k -> c1) lies in the hole h1..h_{k-1}, x' of perimeter k and
  // y' (c0 -> c_k) in the hole y', h_k..h_{q-1} of perimeter q - k + 1.
  std::pair<int32_t, int32_t> triangle_to_boundary(int32_t h0, int k, int q) {
    const int32_t h1 = next(h0);
    const int32_t hq1 = prev(h0);
    const int32_t hk = ahead(h0, k, q);
    const int32_t hk1 = prev(hk);
    const int32_t c0 = origin(h0), c1 = origin(h1), ck = origin(hk);
    const int32_t x = add_edge(c1, ck), xp = x + 1;
    const int32_t y = add_edge(ck, c0), yp = y + 1;
    link(h0, x);
    link(x, y);
    link(y, h0);
    if (k == 1) {
      link(xp, xp);
    } else {
      link(hk1, xp);
      link(xp, h1);
    }
    if (k == q) {
      link(yp, yp);
    } else {
      link(yp, hk);
      link(hq1, yp);
    }
    return {xp, yp};
  }

  // Glues a triangle on h0 (c0 -> c1) with a new vertex w. Returns x' (w -> c1);
  // the hole continues ..., h_{q-1}, y' (c0 -> w), x', h1, ...
  int32_t triangle_to_new_vertex(int32_t h0) {
    const int32_t h1 = next(h0);
    const int32_t hq1 = prev(h0);
    const int32_t c0 = origin(h0), c1 = origin(h1);
    const int32_t w = add_vertex();
    const int32_t x = add_edge(c1, w), xp = x + 1;
    const int32_t y = add_edge(w, c0), yp = y + 1;
    link(h0, x);
    link(x, y);
    link(y, h0);
    if (h1 == h0) {
      link(yp, xp);
      link(xp, yp);
    } else {
      link(hq1, yp);
      link(yp, xp);
      link(xp, h1);
    }
    return xp;
  }

  // Closes a 2-gon hole h0, h1 by identifying its two sides.
  void glue_digon(int32_t h0) {
    const int32_t h1 = next(h0);
    const int32_t t0 = twin(h0), t1 = twin(h1);
    twin_[static_cast<std::size_t>(t0)] = t1;
    twin_[static_cast<std::size_t>(t1)] = t0;
    alive_[static_cast<std::size_t>(h0)] = 0;
    alive_[static_cast<std::size_t>(h1)] = 0;
  }

  // Renumbers live half-edges so that twins are (2e, 2e+1), in creation order.
  HalfEdgeMap finish(int32_t root, int32_t outer, int32_t root_face) const {
    const std::size_t n = next_.size();
    std::vector<int32_t> id(n, -1);
    int32_t count = 0;
    for (std::size_t h = 0; h < n; ++h) {
      if (!alive_[h] || id[h] >= 0) continue;
      id[h] = count++;
      id[static_cast<std::size_t>(twin_[h])] = count++;
    }
    HalfEdgeMap m;
    m.next.assign(static_cast<std::size_t>(count), -1);
    m.origin.assign(static_cast<std::size_t>(count), -1);
    for (std::size_t h = 0; h < n; ++h) {
      if (!alive_[h]) continue;
      m.next[static_cast<std::size_t>(id[h])] = id[static_cast<std::size_t>(next_[h])];
      m.origin[static_cast<std::size_t>(id[h])] = origin_[h];
    }
    m.num_vertices = num_vertices_;
    auto map_id = [&](int32_t h) { return h < 0 ? -1 : id[static_cast<std::size_t>(h)]; };
    m.root = map_id(root);
    m.outer = map_id(outer);
    m.root_face = map_id(root_face);
    return m;
  }

  int32_t num_vertices() const { return num_vertices_; }

 private:
  std::vector<int32_t> next_, prev_, twin_, origin_;
  std::vector<char> alive_;
  int32_t num_vertices_ = 0;
};

struct BuildingHoles {
  MapBuilder& m;
  std::vector<std::pair<int32_t, int>> stack;  // (peel half-edge, perimeter)
  int64_t inner = 0;

  bool empty() const { return stack.empty(); }
  int top_size() const { return stack.back().second; }
  void glue() {
    m.glue_digon(stack.back().first);
    stack.pop_back();
  }
  void new_vertex() {
    auto& top = stack.back();
    top.first = m.triangle_to_new_vertex(top.first);
    ++top.second;
    ++inner;
  }
  void split(int i) {
    const auto [h0, q] = stack.back();
    stack.pop_back();
    const int k = i + 1;
    const auto [xp, yp] = m.triangle_to_boundary(h0, k, q);
    stack.emplace_back(yp, q - k + 1);
    stack.emplace_back(xp, k);
  }
};

struct BuildingSink {
  MapBuilder& m;
  int32_t peel_edge;

  void new_vertex(int) { peel_edge = m.triangle_to_new_vertex(peel_edge); }

  int64_t swallow(PeelKind kind, int i, int p, TablesPtr& tables, Stream& sub) {
    const bool right = kind == PeelKind::SwallowRight;
    const int k = right ? i + 1 : p - i;
    const auto [xp, yp] = m.triangle_to_boundary(peel_edge, k, p);
    BuildingHoles holes{m, {}, 0};
    if (right) {
      holes.stack.emplace_back(xp, k);
      peel_edge = yp;
    } else {
      holes.stack.emplace_back(yp, p - k + 1);
      peel_edge = xp;
    }
    detail::free_peel(tables, holes, sub);
    return holes.inner;
  }
};

}  // namespace

HalfEdgeMap fill_boltzmann(int p, const LambdaParams& params, Stream& rng) {
  if (p < 1) throw std::domain_error("fill_boltzmann needs p >= 1");
  MapBuilder m;
  for (int j = 0; j < p; ++j) m.add_vertex();
  std::vector<int32_t> inside(static_cast<std::size_t>(p));
  for (int j = 0; j < p; ++j) inside[static_cast<std::size_t>(j)] = m.add_edge(j, (j + 1) % p);
  for (int j = 0; j < p; ++j) {
    const int32_t h = inside[static_cast<std::size_t>(j)];
    m.link(h, inside[static_cast<std::size_t>((j + 1) % p)]);
    // Outside: c_{j+1} -> c_j is followed by c_j -> c_{j-1}.
    m.link(h + 1, inside[static_cast<std::size_t>((j + p - 1) % p)] + 1);
  }
  const int32_t outside0 = inside[0] + 1;
  TablesPtr tables = tables_for(params, std::max(64, p));
  BuildingHoles holes{m, {{inside[0], p}}, 0};
  detail::free_peel(tables, holes, rng);
  HalfEdgeMap out = m.finish(outside0, outside0, -1);
  out.root = HalfEdgeMap::twin(out.outer);
  return out;
}

int64_t inner_vertex_count(const HalfEdgeMap& filled, int p) { return filled.num_vertices - p; }

BallBuild build_pshit_ball(const LambdaParams& params, int target_radius, Stream& rng) {
  if (target_radius < 1) throw std::domain_error("build_pshit_ball needs target_radius >= 1");
  MapBuilder m;
  const int32_t root_vertex = m.add_vertex();
  const int32_t loop = m.add_edge(root_vertex, root_vertex);
  const int32_t root_side = loop, hole_side = loop + 1;
  m.link(root_side, root_side);
  m.link(hole_side, hole_side);
  BuildingSink sink{m, hole_side};
  BallBuild out;
  out.trace = detail::run_layers(params, target_radius, rng, sink);
  out.map = m.finish(root_side, sink.peel_edge, root_side);
  out.map.explored_radius = target_radius;
  return out;
}

Hull hull_of_radius(const HalfEdgeMap& map, const FaceIndex& faces, const DistanceField& dist, int r) {
  if (r < 1) throw std::domain_error("hull_of_radius needs r >= 1");
  if (map.explored_radius > 0 && r > map.explored_radius) {
    throw std::domain_error("hull radius " + std::to_string(r) + " exceeds explored radius " +
                            std::to_string(map.explored_radius));
  }
  const int32_t nf = faces.num_faces();
  Hull hull;
  hull.face_in.assign(static_cast<std::size_t>(nf), 0);
  for (int32_t f = 0; f < nf; ++f) {
    int32_t h = faces.start[static_cast<std::size_t>(f)];
    for (int32_t s = 0; s < faces.degree[static_cast<std::size_t>(f)]; ++s) {
      const int32_t d = dist.dist[static_cast<std::size_t>(map.origin[static_cast<std::size_t>(h)])];
      if (d >= 0 && d <= r - 1) {
        hull.face_in[static_cast<std::size_t>(f)] = 1;
        break;
      }
      h = map.next[static_cast<std::size_t>(h)];
    }
  }
  // Complement components through shared edges; the one holding the outer face is unbounded.
  std::vector<char> unbounded(static_cast<std::size_t>(nf), 0);
  if (map.outer >= 0) {
    const int32_t outer_face = faces.face_of[static_cast<std::size_t>(map.outer)];
    if (hull.face_in[static_cast<std::size_t>(outer_face)]) {
      throw std::domain_error("hull reaches the outer face; radius too large for this map");
    }
    std::vector<int32_t> stack{outer_face};
    unbounded[static_cast<std::size_t>(outer_face)] = 1;
    while (!stack.empty()) {
      const int32_t f = stack.back();
      stack.pop_back();
      int32_t h = faces.start[static_cast<std::size_t>(f)];
      for (int32_t s = 0; s < faces.degree[static_cast<std::size_t>(f)]; ++s) {
        const int32_t g = faces.face_of[static_cast<std::size_t>(HalfEdgeMap::twin(h))];
        if (!hull.face_in[static_cast<std::size_t>(g)] && !unbounded[static_cast<std::size_t>(g)]) {
          unbounded[static_cast<std::size_t>(g)] = 1;
          stack.push_back(g);
        }
        h = map.next[static_cast<std::size_t>(h)];
      }
    }
  }
  for (int32_t f = 0; f < nf; ++f) {
    if (!unbounded[static_cast<std::size_t>(f)]) hull.face_in[static_cast<std::size_t>(f)] = 1;
  }
  hull.edge_in.assign(static_cast<std::size_t>(map.num_edges()), 0);
  hull.vertex_in.assign(static_cast<std::size_t>(map.num_vertices), 0);
  for (std::size_t h = 0; h < map.next.size(); ++h) {
    const int32_t f = faces.face_of[h];
    if (!hull.face_in[static_cast<std::size_t>(f)]) continue;
    hull.edge_in[h / 2] = 1;
    hull.vertex_in[static_cast<std::size_t>(map.origin[h])] = 1;
    if (unbounded[static_cast<std::size_t>(faces.face_of[static_cast<std::size_t>(HalfEdgeMap::twin(static_cast<int32_t>(h)))])]) {
      ++hull.perimeter;
    }
  }
  for (char v : hull.vertex_in) hull.vertices += v;
  for (char f : hull.face_in) hull.faces += f;
  return hull;
}

namespace {

// BFS with a reusable distance array; only touched entries are reset between runs.
class BoundedBfs {
 public:
  explicit BoundedBfs(const Adjacency& adj) : adj_(adj), dist_(adj.offset.size() - 1, -1) {}

  // Distances up to max_depth, stopping early once every marked target has been
  // reached; vertices not reached read as -1.
  void run(int32_t source, int32_t max_depth, const std::vector<char>& target, int64_t targets) {
    for (int32_t v : queue_) dist_[static_cast<std::size_t>(v)] = -1;
    queue_.clear();
    dist_[static_cast<std::size_t>(source)] = 0;
    queue_.push_back(source);
    if (target[static_cast<std::size_t>(source)]) --targets;
    for (std::size_t head = 0; head < queue_.size() && targets > 0; ++head) {
      const int32_t v = queue_[head];
      const int32_t dv = dist_[static_cast<std::size_t>(v)];
      if (dv >= max_depth) continue;
      for (int64_t k = adj_.offset[static_cast<std::size_t>(v)]; k < adj_.offset[static_cast<std::size_t>(v) + 1]; ++k) {
        const int32_t w = adj_.neighbor[static_cast<std::size_t>(k)];
        if (dist_[static_cast<std::size_t>(w)] < 0) {
          dist_[static_cast<std::size_t>(w)] = dv + 1;
          queue_.push_back(w);
          if (target[static_cast<std::size_t>(w)]) --targets;
        }
      }
    }
  }
  int32_t operator[](int32_t v) const { return dist_[static_cast<std::size_t>(v)]; }

 private:
  const Adjacency& adj_;
  std::vector<int32_t> dist_;
  std::vector<int32_t> queue_;
};

}  // namespace

namespace {

struct ContainmentSetup {
  Hull points;
  Hull inner;
  Adjacency full;
  Adjacency sub;
  std::vector<int32_t> members;
};

ContainmentSetup containment_setup(const HalfEdgeMap& map, int r, int inner_radius) {
  if (r < 1 || inner_radius < r) throw std::domain_error("geodesic containment needs 1 <= r <= inner radius");
  if (inner_radius > map.explored_radius) {
    throw std::domain_error("geodesic containment needs the map explored to radius " +
                            std::to_string(inner_radius) + " (have " + std::to_string(map.explored_radius) + ")");
  }
  const FaceIndex faces = index_faces(map);
  const DistanceField dist = distances_from_root(map);
  ContainmentSetup s{hull_of_radius(map, faces, dist, r), hull_of_radius(map, faces, dist, inner_radius),
                     build_adjacency(map), {}, {}};
  s.sub = build_adjacency(map, &s.inner.edge_in);
  for (int32_t v = 0; v < map.num_vertices; ++v) {
    if (s.points.vertex_in[static_cast<std::size_t>(v)]) s.members.push_back(v);
  }
  return s;
}

// Compares distances among the members marked in `target` from source x in both graphs.
bool same_distances(int32_t x, const std::vector<int32_t>& members, const std::vector<char>& target,
                    int64_t targets, BoundedBfs& in_sub, BoundedBfs& in_full) {
  constexpr int32_t kUnbounded = std::numeric_limits<int32_t>::max();
  in_sub.run(x, kUnbounded, target, targets);
  int32_t reach = 0;
  for (int32_t y : members) {
    if (!target[static_cast<std::size_t>(y)]) continue;
    if (in_sub[y] < 0) return false;
    reach = std::max(reach, in_sub[y]);
  }
  // The full map can only shorten distances, so depth `reach` decides every pair.
  in_full.run(x, reach, target, targets);
  for (int32_t y : members) {
    if (target[static_cast<std::size_t>(y)] && in_full[y] != in_sub[y]) return false;
  }
  return true;
}

}  // namespace

bool geodesic_containment_exhaustive(const HalfEdgeMap& map, int r, int inner_radius) {
  const ContainmentSetup s = containment_setup(map, r, inner_radius);
  BoundedBfs in_sub(s.sub), in_full(s.full);
  for (int32_t x : s.members) {
    if (!same_distances(x, s.members, s.points.vertex_in, s.points.vertices, in_sub, in_full)) return false;
  }
  return true;
}

bool geodesic_containment(const HalfEdgeMap& map, int r, int inner_radius) {
  const ContainmentSetup s = containment_setup(map, r, inner_radius);
  const std::size_t nv = static_cast<std::size_t>(map.num_vertices);
  // A path leaving the inner hull visits a vertex incident to an excluded edge, so it
  // is at least exit(x) + exit(y) long. Pairs whose distance through the root inside
  // the inner hull is within that bound need no search of their own.
  std::vector<char> exit_vertex(nv, 0);
  bool any_exit = false;
  for (std::size_t h = 0; h < map.next.size(); ++h) {
    if (!s.inner.edge_in[h / 2]) {
      exit_vertex[static_cast<std::size_t>(map.origin[h])] = 1;
      any_exit = true;
    }
  }
  constexpr int32_t kFar = std::numeric_limits<int32_t>::max() / 4;
  std::vector<int32_t> exit_dist(nv, kFar);
  if (any_exit) {
    std::vector<int32_t> queue;
    for (std::size_t v = 0; v < nv; ++v) {
      if (exit_vertex[v]) {
        exit_dist[v] = 0;
        queue.push_back(static_cast<int32_t>(v));
      }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const auto v = static_cast<std::size_t>(queue[head]);
      for (int64_t k = s.full.offset[v]; k < s.full.offset[v + 1]; ++k) {
        const auto w = static_cast<std::size_t>(s.full.neighbor[static_cast<std::size_t>(k)]);
        if (exit_dist[w] == kFar) {
          exit_dist[w] = exit_dist[v] + 1;
          queue.push_back(static_cast<int32_t>(w));
        }
      }
    }
  }
  const std::vector<int32_t> via_root = bfs(s.sub, map.root_vertex());
  for (int32_t y : s.members) {
    if (via_root[static_cast<std::size_t>(y)] < 0) return false;
  }
  BoundedBfs in_sub(s.sub), in_full(s.full);
  std::vector<char> open(nv, 0);
  for (int32_t x : s.members) {
    const auto xi = static_cast<std::size_t>(x);
    int64_t count = 0;
    for (int32_t y : s.members) {
      const auto yi = static_cast<std::size_t>(y);
      if (via_root[xi] + via_root[yi] > exit_dist[xi] + exit_dist[yi]) {
        open[yi] = 1;
        ++count;
      }
    }
    if (count == 0) continue;
    const bool ok = same_distances(x, s.members, open, count, in_sub, in_full);
    for (int32_t y : s.members) open[static_cast<std::size_t>(y)] = 0;
    if (!ok) return false;
  }
  return true;
}

bool check_geodesic_containment(const HalfEdgeMap& map, int r) { return geodesic_containment(map, r, 2 * r); }

std::string check_ball(const BallBuild& built) {
  const StructureReport rep = check_structure(built.map);
  if (!rep.ok) return rep.message;
  const FaceIndex faces = index_faces(built.map);
  const int64_t outer_degree = faces.degree[static_cast<std::size_t>(faces.face_of[static_cast<std::size_t>(built.map.outer)])];
  if (3 * rep.triangles + outer_degree + 1 != 2 * built.map.num_edges()) return "edge count";
  if (outer_degree != built.trace.rows.back().boundary_edges) return "outer face degree differs from the final perimeter";
  const DistanceField dist = distances_from_root(built.map);
  for (const HullRow& row : built.trace.rows) {
    const Hull hull = hull_of_radius(built.map, faces, dist, row.r);
    if (hull.perimeter != row.boundary_edges || hull.vertices != row.vertices) {
      return "radius " + std::to_string(row.r) + ": BFS hull (" + std::to_string(hull.perimeter) + ", " +
             std::to_string(hull.vertices) + ") vs trace (" + std::to_string(row.boundary_edges) + ", " +
             std::to_string(row.vertices) + ")";
    }
  }
  return "";
}

}  // namespace hyperplane
