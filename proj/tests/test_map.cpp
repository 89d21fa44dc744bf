#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qsurf/map.hpp"

using namespace qsurf;

namespace {

// Path a-b-c drawn on the sphere: one face of degree 4.
Map path2() {
  // half-edges 0:a->b 1:b->a 2:b->c 3:c->b
  return Map::from_next({0, 2, 1, 3}, 0, {});
}

}  // namespace

TEST(Map, SingleEdge) {
  Map m({1, 0}, {0, 1}, 0, {});
  EXPECT_EQ(m.num_vertices(), 2);
  EXPECT_EQ(m.num_edges(), 1);
  EXPECT_EQ(m.num_faces(), 1);
  EXPECT_EQ(m.genus(), 0);
}

TEST(Map, InterleavedLoopsAreTorus) {
  // one vertex, rotation a, b, a', b'
  Map m = Map::from_next({2, 3, 1, 0}, 0, {});
  EXPECT_EQ(m.num_vertices(), 1);
  EXPECT_EQ(m.num_edges(), 2);
  EXPECT_EQ(m.num_faces(), 1);
  EXPECT_EQ(m.genus(), 1);
}

TEST(Map, RejectsBadPermutations) {
  try {
    Map({0, 1}, {0, 1}, 0, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code, Errc::NotInvolution);
  }
  try {
    Map({1, 0}, {0, 0}, 0, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code, Errc::NotPermutation);
  }
  try {
    Map({1, 0, 3, 2}, {0, 1, 2, 3}, 0, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code, Errc::Disconnected);
  }
  try {
    Map({1, 0}, {0, 1}, 0, {7});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code, Errc::UnknownHoleFace);
  }
}

TEST(Map, TreeHasGenusZero) {
  Map m = path2();
  EXPECT_EQ(m.genus(), 0);
  EXPECT_EQ(m.num_faces(), 1);
  EXPECT_EQ(m.face_degree(0), 4);
}

TEST(Map, PathIsQuadrangulationWithOneFace) {
  Map m = path2();
  EXPECT_EQ(m.num_vertices(), 3);
  EXPECT_TRUE(validate_quadrangulation(m, 1, {}));
}

TEST(Map, FourCycle) {
  // 4-cycle on the sphere: vertices 0..3, edge k from k to k+1
  std::vector<int> nx(8);
  for (int k = 0; k < 4; ++k) {
    int out = 2 * k, in = 2 * ((k + 3) % 4) + 1;
    nx[out] = in;
    nx[in] = out;
  }
  Map m = Map::from_next(nx, 0, {});
  EXPECT_EQ(m.num_faces(), 2);
  EXPECT_TRUE(validate_quadrangulation(m, 2, {}));
  auto d = bfs(m, m.origin(0));
  std::vector<int> sorted = d;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<int>{0, 1, 1, 2}));
}

TEST(Map, OddCycleNotBipartite) {
  std::vector<int> nx(6);
  for (int k = 0; k < 3; ++k) {
    int out = 2 * k, in = 2 * ((k + 2) % 3) + 1;
    nx[out] = in;
    nx[in] = out;
  }
  Map m = Map::from_next(nx, 0, {});
  EXPECT_FALSE(is_bipartite(m));
}

TEST(Map, FaceDegreesSumToHalfEdges) {
  for (const Map& q : oracle::quadrangulations(2, {1})) {
    int s = 0;
    for (int f = 0; f < q.num_faces(); ++f) s += q.face_degree(f);
    EXPECT_EQ(s, q.size());
    EXPECT_EQ(2 - q.num_vertices() + q.num_edges() - q.num_faces(), 2 * q.genus());
  }
}

TEST(Map, OrbitRepresentativesAreMinimal) {
  for (const Map& q : oracle::quadrangulations(2, {})) {
    for (int h = 0; h < q.size(); ++h) {
      EXPECT_LE(q.vertex_rep(q.origin(h)), h);
      EXPECT_LE(q.face_rep(q.face(h)), h);
    }
  }
}

TEST(Map, CanonicalCodeIsRelabelingInvariant) {
  Map m = path2();
  std::vector<int> perm{3, 2, 1, 0};
  Map r = relabel(m, perm);
  EXPECT_EQ(canonical_code(m), canonical_code(r));
  EXPECT_EQ(canonical(r), canonical(m));
}

TEST(Oracle, SmallQuadrangulationCounts) {
  // Q_{1,empty}: the path with 2 edges, rooted in 2 inequivalent ways.
  EXPECT_EQ(oracle::quadrangulations(1, {}).size(), 2u);
  EXPECT_EQ(oracle::quadrangulations(0, {1}).size(), 1u);
  for (const Map& q : oracle::quadrangulations(2, {1}))
    EXPECT_TRUE(validate_quadrangulation(q, 2, {1}));
}
