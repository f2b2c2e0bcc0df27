#include "hyperplane/halfedge_map.hpp"

#include <sstream>
#include <stdexcept>

namespace hyperplane {

FaceIndex index_faces(const HalfEdgeMap& map) {
  FaceIndex idx;
  const std::size_t n = map.next.size();
  idx.face_of.assign(n, -1);
  for (std::size_t h0 = 0; h0 < n; ++h0) {
    if (idx.face_of[h0] >= 0) continue;
    const int32_t f = static_cast<int32_t>(idx.start.size());
    idx.start.push_back(static_cast<int32_t>(h0));
    int32_t deg = 0;
    int32_t h = static_cast<int32_t>(h0);
    do {
      if (idx.face_of[static_cast<std::size_t>(h)] >= 0) throw std::logic_error("next is not a permutation");
      idx.face_of[static_cast<std::size_t>(h)] = f;
      h = map.next[static_cast<std::size_t>(h)];
      ++deg;
    } while (h != static_cast<int32_t>(h0));
    idx.degree.push_back(deg);
  }
  return idx;
}

StructureReport check_structure(const HalfEdgeMap& map) {
  StructureReport rep;
  auto fail = [&](const std::string& msg) {
    rep.ok = false;
    if (rep.message.empty()) rep.message = msg;
  };
  const std::size_t n = map.next.size();
  if (n % 2 != 0) {
    fail("odd number of half-edges");
    return rep;
  }
  if (map.origin.size() != n) {
    fail("origin array size mismatch");
    return rep;
  }
  std::vector<char> hit(n, 0);
  for (std::size_t h = 0; h < n; ++h) {
    const int32_t nx = map.next[h];
    if (nx < 0 || static_cast<std::size_t>(nx) >= n || hit[static_cast<std::size_t>(nx)]) {
      fail("next is not a permutation");
      return rep;
    }
    hit[static_cast<std::size_t>(nx)] = 1;
    if (map.origin[static_cast<std::size_t>(nx)] != map.target(static_cast<int32_t>(h))) {
      fail("origin of next(h) differs from target of h at half-edge " + std::to_string(h));
    }
    if (map.origin[h] < 0 || map.origin[h] >= map.num_vertices) fail("vertex id out of range");
  }
  const FaceIndex faces = index_faces(map);
  const int32_t outer_face = map.outer >= 0 ? faces.face_of[static_cast<std::size_t>(map.outer)] : -1;
  const int32_t root_face = map.root_face >= 0 ? faces.face_of[static_cast<std::size_t>(map.root_face)] : -1;
  for (int32_t f = 0; f < faces.num_faces(); ++f) {
    if (f == outer_face || f == root_face) continue;
    if (faces.degree[static_cast<std::size_t>(f)] != 3) {
      fail("inner face of degree " + std::to_string(faces.degree[static_cast<std::size_t>(f)]));
    }
    ++rep.triangles;
  }
  if (root_face >= 0 && faces.degree[static_cast<std::size_t>(root_face)] != 1) fail("root face is not a loop");
  std::vector<char> used(static_cast<std::size_t>(map.num_vertices), 0);
  for (int32_t v : map.origin) used[static_cast<std::size_t>(v)] = 1;
  for (char u : used) {
    if (!u) fail("isolated vertex");
  }
  rep.euler_characteristic = static_cast<int64_t>(map.num_vertices) - map.num_edges() + faces.num_faces();
  if (rep.euler_characteristic != 2) fail("Euler characteristic " + std::to_string(rep.euler_characteristic));
  return rep;
}

Adjacency build_adjacency(const HalfEdgeMap& map, const std::vector<char>* edge_mask) {
  Adjacency adj;
  const std::size_t nv = static_cast<std::size_t>(map.num_vertices);
  adj.offset.assign(nv + 1, 0);
  const std::size_t n = map.next.size();
  for (std::size_t h = 0; h < n; ++h) {
    if (edge_mask && !(*edge_mask)[h / 2]) continue;
    ++adj.offset[static_cast<std::size_t>(map.origin[h]) + 1];
  }
  for (std::size_t v = 0; v < nv; ++v) adj.offset[v + 1] += adj.offset[v];
  adj.neighbor.resize(static_cast<std::size_t>(adj.offset[nv]));
  std::vector<int64_t> fill(adj.offset.begin(), adj.offset.end() - 1);
  for (std::size_t h = 0; h < n; ++h) {
    if (edge_mask && !(*edge_mask)[h / 2]) continue;
    const auto v = static_cast<std::size_t>(map.origin[h]);
    adj.neighbor[static_cast<std::size_t>(fill[v]++)] = map.target(static_cast<int32_t>(h));
  }
  return adj;
}

std::vector<int32_t> bfs(const Adjacency& adj, int32_t source) {
  std::vector<int32_t> dist(adj.offset.size() - 1, -1);
  std::vector<int32_t> queue;
  queue.reserve(dist.size());
  dist[static_cast<std::size_t>(source)] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int32_t v = queue[head];
    const int32_t dv = dist[static_cast<std::size_t>(v)];
    for (int64_t k = adj.offset[static_cast<std::size_t>(v)]; k < adj.offset[static_cast<std::size_t>(v) + 1]; ++k) {
      const int32_t w = adj.neighbor[static_cast<std::size_t>(k)];
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dv + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

DistanceField distances_from_root(const HalfEdgeMap& map) {
  return {bfs(build_adjacency(map), map.root_vertex())};
}

std::string serialize_map(const HalfEdgeMap& map) {
  const FaceIndex faces = index_faces(map);
  std::ostringstream os;
  os << "hyperplane-map 1\n";
  os << "vertices " << map.num_vertices << " edges " << map.num_edges() << " faces " << faces.num_faces() << '\n';
  os << "root " << map.root << " outer " << map.outer << " root_face " << map.root_face << " radius "
     << map.explored_radius << '\n';
  os << "edges\n";
  for (int64_t e = 0; e < map.num_edges(); ++e) {
    os << map.origin[static_cast<std::size_t>(2 * e)] << ' ' << map.origin[static_cast<std::size_t>(2 * e + 1)] << '\n';
  }
  os << "faces\n";
  for (int32_t f = 0; f < faces.num_faces(); ++f) {
    int32_t h = faces.start[static_cast<std::size_t>(f)];
    const int32_t h0 = h;
    bool first = true;
    do {
      if (!first) os << ' ';
      os << h;
      first = false;
      h = map.next[static_cast<std::size_t>(h)];
    } while (h != h0);
    os << '\n';
  }
  return os.str();
}

HalfEdgeMap parse_map(const std::string& text) {
  std::istringstream is(text);
  auto expect = [&](const std::string& word) {
    std::string w;
    if (!(is >> w) || w != word) throw std::runtime_error("map parse error: expected '" + word + "'");
  };
  HalfEdgeMap map;
  int version = 0;
  int64_t edges = 0, faces = 0;
  expect("hyperplane-map");
  is >> version;
  if (version != 1) throw std::runtime_error("map parse error: unsupported version");
  expect("vertices");
  is >> map.num_vertices;
  expect("edges");
  is >> edges;
  expect("faces");
  is >> faces;
  expect("root");
  is >> map.root;
  expect("outer");
  is >> map.outer;
  expect("root_face");
  is >> map.root_face;
  expect("radius");
  is >> map.explored_radius;
  if (!is || edges < 0 || faces < 0) throw std::runtime_error("map parse error: bad header");
  expect("edges");
  map.origin.assign(static_cast<std::size_t>(2 * edges), -1);
  map.next.assign(static_cast<std::size_t>(2 * edges), -1);
  for (int64_t e = 0; e < edges; ++e) {
    if (!(is >> map.origin[static_cast<std::size_t>(2 * e)] >> map.origin[static_cast<std::size_t>(2 * e + 1)])) {
      throw std::runtime_error("map parse error: truncated edge list");
    }
  }
  expect("faces");
  std::string line;
  std::getline(is, line);
  for (int64_t f = 0; f < faces; ++f) {
    if (!std::getline(is, line)) throw std::runtime_error("map parse error: truncated face list");
    std::istringstream ls(line);
    std::vector<int32_t> cycle;
    int32_t h;
    while (ls >> h) {
      if (h < 0 || h >= 2 * edges) throw std::runtime_error("map parse error: half-edge out of range");
      cycle.push_back(h);
    }
    if (cycle.empty()) throw std::runtime_error("map parse error: empty face");
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      map.next[static_cast<std::size_t>(cycle[k])] = cycle[(k + 1) % cycle.size()];
    }
  }
  for (int32_t nx : map.next) {
    if (nx < 0) throw std::runtime_error("map parse error: half-edge missing from faces");
  }
  return map;
}

}  // namespace hyperplane
