#pragma once

// Peeling engines shared by the counting samplers (peeling.cpp) and the map builder
// (mapbuild.cpp). Both drive a policy object, so a run consumes exactly the same
// random draws whether or not the map is materialized.

#include <vector>

#include "hyperplane/peeling.hpp"

namespace hyperplane::detail {

inline void ensure_capacity(TablesPtr& tables, int64_t p) {
  if (p > tables->p_max()) {
    if (p > (int64_t{1} << 30)) throw CapacityError("perimeter exceeds table capacity");
    tables = tables_for(tables->params(), static_cast<int>(p), tables->precision_digits());
  }
}

// Peels the stack of holes until all are filled. Holes policy:
//   empty(), top_size(), glue() for the degenerate 2-gon, new_vertex(),
//   split(i): the top q-gon is cut by a triangle whose third vertex is i+1 steps
//   ahead; the hole of perimeter q-i is pushed first, then the (i+1)-gon.
// Law: Z_q = lambda Z_{q+1} + sum_{i<q} Z_{i+1} Z_{q-i} + [q = 2].
template <class Holes>
void free_peel(TablesPtr& tables, Holes& holes, Stream& rng) {
  const double lambda = tables->params().lambda;
  while (!holes.empty()) {
    const int q = holes.top_size();
    ensure_capacity(tables, q);
    const BoltzmannTables& t = *tables;
    const double rho = t.rho();
    double u = rng.uniform();
    if (q == 2) {
      const double glue = 1.0 / (rho * rho * t.z_scaled(2));
      if (u < glue) {
        holes.glue();
        continue;
      }
      u -= glue;
    }
    const double zq = t.z_scaled(q);
    const double fresh = lambda * rho * t.z_scaled(q + 1) / zq;
    if (u < fresh) {
      holes.new_vertex();
      continue;
    }
    u -= fresh;
    // Splits i and q-1-i have equal weight: pick the smaller side j, then the side.
    const int last = (q - 1) / 2;
    int split = q - 1;
    for (int j = 0; j <= last; ++j) {
      const double w = rho * t.z_scaled(j + 1) * t.z_scaled(q - j) / zq;
      if (2 * j == q - 1) {
        split = j;
        break;
      }
      if (u < 2.0 * w || j == last) {
        split = (u < w) ? j : q - 1 - j;
        break;
      }
      u -= 2.0 * w;
    }
    holes.split(split);
  }
}

struct CountingHoles {
  std::vector<int> stack;
  int64_t inner = 0;

  bool empty() const { return stack.empty(); }
  int top_size() const { return stack.back(); }
  void glue() { stack.pop_back(); }
  void new_vertex() {
    ++stack.back();
    ++inner;
  }
  void split(int i) {
    const int q = stack.back();
    stack.pop_back();
    stack.push_back(q - i);
    stack.push_back(i + 1);
  }
};

// Layer-by-layer peeling of the PSHT from a root loop. The boundary is an arc of
// `a` vertices at distance r+1 followed by an arc of `b` vertices at distance r; the
// peeled edge joins the last vertex of the first arc to the first of the second (or
// is a fixed edge of the second arc when a = 0). The layer closes when b = 0.
//
// Sink policy:
//   new_vertex(p)
//   swallow(kind, i, p, tables, sub) -> inner vertices of the swallowed (i+1)-gon
template <class Sink>
HullTrace run_layers(const LambdaParams& params, int r_max, Stream& rng, Sink& sink, int64_t max_perimeter = 0) {
  HullTrace trace;
  trace.params = params;
  trace.seed = rng.seed();
  if (r_max <= 0) return trace;
  TablesPtr tables = tables_for(params, 64);
  int64_t a = 0, b = 1, vertices = 1, steps = 0;
  int r = 0;
  while (r < r_max) {
    const int64_t p = a + b;
    if (p < 1) throw std::logic_error("peeling reached an empty boundary");
    if (max_perimeter > 0 && p > max_perimeter) {
      trace.truncated = true;
      break;
    }
    ensure_capacity(tables, p);
    const PeelEvent ev = sample_step(*tables, static_cast<int>(p), rng.uniform());
    const uint64_t event_id = static_cast<uint64_t>(steps);
    ++steps;
    if (ev.kind == PeelKind::NewVertex) {
      sink.new_vertex(static_cast<int>(p));
      ++a;
      ++vertices;
    } else {
      Stream sub = rng.substream(event_id);
      vertices += sink.swallow(ev.kind, ev.i, static_cast<int>(p), tables, sub);
      const int64_t i = ev.i;
      if (ev.kind == PeelKind::SwallowRight) {
        if (a >= 1 && i >= b) {
          a -= i - b;
          b = 0;
        } else {
          b -= i;
        }
      } else {
        if (a >= 1 && i < a) {
          a -= i;
        } else {
          b -= i - a;
          a = 0;
        }
      }
    }
    if (b == 0) {
      ++r;
      trace.rows.push_back({r, a, vertices, steps});
      b = a;
      a = 0;
    }
  }
  return trace;
}

}  // namespace hyperplane::detail
