#include <gtest/gtest.h>

#include <map>

#include "hyperplane/mapbuild.hpp"

using namespace hyperplane;

TEST(Filler, StructureAndEdgeCount) {
  for (double ratio : {1.0, 0.9, 0.3}) {
    for (int p : {1, 2, 3, 7}) {
      Stream rng(5, static_cast<uint64_t>(p));
      for (int k = 0; k < 200; ++k) {
        const HalfEdgeMap m = fill_boltzmann(p, LambdaParams::from_ratio(ratio), rng);
        const auto rep = check_structure(m);
        ASSERT_TRUE(rep.ok) << rep.message;
        const int64_t n = inner_vertex_count(m, p);
        EXPECT_EQ(m.num_edges(), 3 * n + 2 * p - 3);
        EXPECT_EQ(rep.triangles, 2 * n + p - 2);
      }
    }
  }
}

TEST(Filler, DegenerateDigon) {
  // With a tiny weight the 2-gon is almost surely closed by gluing its sides.
  Stream rng(1, 1);
  const HalfEdgeMap m = fill_boltzmann(2, LambdaParams::from_ratio(1e-9), rng);
  EXPECT_EQ(m.num_vertices, 2);
  EXPECT_EQ(m.num_edges(), 1);
  EXPECT_TRUE(check_structure(m).ok);
}

TEST(Filler, SameDrawsAsCounter) {
  const auto params = LambdaParams::critical();
  TablesPtr t = tables_for(params, 64);
  for (uint64_t k = 0; k < 200; ++k) {
    Stream a(77, k), b(77, k);
    const HalfEdgeMap m = fill_boltzmann(3, params, a);
    EXPECT_EQ(inner_vertex_count(m, 3), free_boltzmann_size(t, 3, b));
    EXPECT_EQ(a.position(), b.position());
  }
}

TEST(Ball, TraceEqualsCountingRun) {
  for (uint64_t k = 0; k < 30; ++k) {
    Stream a = replica_stream(2, stream_purpose::kPeel, k), b = replica_stream(2, stream_purpose::kPeel, k);
    const auto built = build_pshit_ball(LambdaParams::from_ratio(0.9), 4, a);
    const auto counted = peel_to_radius(LambdaParams::from_ratio(0.9), 4, b);
    EXPECT_EQ(hull_trace_csv(built.trace), hull_trace_csv(counted));
  }
}

TEST(Ball, HullMatchesTrace) {
  for (auto [ratio, radius] : {std::pair{1.0, 8}, std::pair{0.9, 4}, std::pair{0.5, 3}}) {
    for (uint64_t k = 0; k < 30; ++k) {
      Stream rng = replica_stream(8, stream_purpose::kPeel, k);
      const auto built = build_pshit_ball(LambdaParams::from_ratio(ratio), radius, rng);
      const auto rep = check_structure(built.map);
      ASSERT_TRUE(rep.ok) << rep.message;
      const FaceIndex faces = index_faces(built.map);
      const DistanceField dist = distances_from_root(built.map);
      std::vector<char> previous;
      for (const HullRow& row : built.trace.rows) {
        const Hull hull = hull_of_radius(built.map, faces, dist, row.r);
        EXPECT_EQ(hull.perimeter, row.boundary_edges) << "r=" << row.r;
        EXPECT_EQ(hull.vertices, row.vertices) << "r=" << row.r;
        if (!previous.empty()) {
          for (std::size_t f = 0; f < previous.size(); ++f) {
            if (previous[f]) EXPECT_TRUE(hull.face_in[f]);
          }
        }
        previous = hull.face_in;
      }
    }
  }
}

TEST(Ball, RadiusOneHullIsRootStar) {
  Stream rng = replica_stream(1, stream_purpose::kPeel, 0);
  const auto built = build_pshit_ball(LambdaParams::critical(), 1, rng);
  EXPECT_EQ(static_cast<int64_t>(built.map.num_edges() ) >= 1, true);
  const FaceIndex faces = index_faces(built.map);
  const DistanceField dist = distances_from_root(built.map);
  EXPECT_EQ(hull_of_radius(built.map, faces, dist, 1).perimeter, built.trace.rows[0].boundary_edges);
  EXPECT_THROW(hull_of_radius(built.map, faces, dist, 2), std::domain_error);
}

TEST(Serialization, RoundTrip) {
  Stream rng = replica_stream(4, stream_purpose::kPeel, 0);
  const auto built = build_pshit_ball(LambdaParams::from_ratio(0.9), 4, rng);
  const std::string text = serialize_map(built.map);
  const HalfEdgeMap back = parse_map(text);
  EXPECT_EQ(back.next, built.map.next);
  EXPECT_EQ(back.origin, built.map.origin);
  EXPECT_EQ(back.root, built.map.root);
  EXPECT_EQ(serialize_map(back), text);
}

TEST(Geodesics, ContainmentHolds) {
  for (uint64_t k = 0; k < 20; ++k) {
    Stream rng = replica_stream(6, stream_purpose::kPeel, k);
    const auto critical = build_pshit_ball(LambdaParams::critical(), 8, rng);
    for (int r = 1; r <= 4; ++r) EXPECT_TRUE(check_geodesic_containment(critical.map, r)) << k << " " << r;
    const auto hyperbolic = build_pshit_ball(LambdaParams::from_ratio(0.9), 4, rng);
    for (int r = 1; r <= 2; ++r) EXPECT_TRUE(check_geodesic_containment(hyperbolic.map, r)) << k << " " << r;
  }
}

TEST(Geodesics, ContainmentHoldsAtRadiusSix) {
  for (uint64_t k = 0; k < 10; ++k) {
    Stream rng = replica_stream(16, stream_purpose::kPeel, k);
    const auto built = build_pshit_ball(LambdaParams::from_ratio(0.9), 6, rng);
    for (int r = 1; r <= 3; ++r) EXPECT_TRUE(check_geodesic_containment(built.map, r)) << k << " " << r;
  }
}

// Tight inner radii leave pairs uncertified, so the searched branch and failures are exercised too.
TEST(Geodesics, PrunedAgreesWithExhaustive) {
  int failures = 0;
  for (uint64_t k = 0; k < 30; ++k) {
    Stream rng = replica_stream(26, stream_purpose::kPeel, k);
    const auto built = build_pshit_ball(LambdaParams::critical(), 6, rng);
    for (int r = 1; r <= 3; ++r) {
      for (int inner = r; inner <= 2 * r; ++inner) {
        const bool fast = geodesic_containment(built.map, r, inner);
        EXPECT_EQ(fast, geodesic_containment_exhaustive(built.map, r, inner)) << k << " " << r << " " << inner;
        failures += !fast;
      }
    }
  }
  EXPECT_GT(failures, 0);
}

TEST(Geodesics, NeedsExploredRadius) {
  Stream rng = replica_stream(6, stream_purpose::kPeel, 0);
  const auto built = build_pshit_ball(LambdaParams::from_ratio(0.9), 5, rng);
  EXPECT_THROW(check_geodesic_containment(built.map, 3), std::domain_error);
}
