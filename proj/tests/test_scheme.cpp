#include <gtest/gtest.h>

#include <map>
#include <set>

#include "oracle.hpp"
#include "qsurf/scheme.hpp"

using namespace qsurf;

namespace {

int mass_lhs(const Decomposition& d) {
  int s = 0, half = 0;
  for (int e = 0; e < static_cast<int>(d.xi.size()); ++e) {
    half += d.xi[e];
    if (d.scheme.in_F(e)) s += d.forest[e].mass();
  }
  return s + half / 2;
}

void check_roundtrip(const LabeledMap& lm, int n, const std::vector<int>& sigma) {
  Decomposition d = decompose(lm);
  EXPECT_TRUE(validate_scheme(d.scheme)) << validate_scheme(d.scheme).violations.front();
  EXPECT_EQ(d.scheme.map.genus(), lm.map.genus());
  LabeledMap back = recompose(d);
  EXPECT_EQ(canonical_code(back), canonical_code(lm));
  int total = n;
  for (int s : sigma) total += s;
  EXPECT_EQ(mass_lhs(d), total);
  std::vector<int> hs(sigma.size(), 0);
  for (int e = 0; e < d.scheme.map.size(); ++e)
    if (d.scheme.kind(e) == Kind::Hole) hs[d.scheme.map.hole_index(d.scheme.map.face(e))] += d.xi[e];
  EXPECT_EQ(hs, sigma);
  for (int e = 0; e < d.scheme.map.size(); ++e) {
    if (d.scheme.kind(e) != Kind::Internal) continue;
    auto r = d.bridge[e ^ 1];
    std::reverse(r.begin(), r.end());
    EXPECT_EQ(d.bridge[e], r);
  }
}

}  // namespace

TEST(Counting, ForestsMatchEnumeration) {
  for (int xi = 1; xi <= 4; ++xi)
    for (int m = 0; m <= 6; ++m) {
      long plain = 0;
      oracle::brute_forests(xi, m, false, [&](const LabeledForest& f) {
        EXPECT_TRUE(valid_forest(f));
        ++plain;
      });
      EXPECT_EQ(count_forests(xi, m), plain) << xi << " " << m;
    }
}

TEST(Counting, LabeledForestsMatchEnumeration) {
  for (int xi = 1; xi <= 4; ++xi)
    for (int m = 0; m <= 6; ++m) {
      long n = 0;
      oracle::brute_forests(xi, m, true, [&](const LabeledForest&) { ++n; });
      EXPECT_EQ(count_labeled_forests(xi, m), n) << xi << " " << m;
    }
}

TEST(Counting, BridgesMatchEnumeration) {
  for (int xi = 1; xi <= 4; ++xi)
    for (int a = -3; a <= 3; ++a)
      for (int b = -3; b <= 3; ++b) {
        EXPECT_EQ(count_interior_bridges(xi, a, b), oracle::brute_bridges(xi, a, b, -1, 1));
        EXPECT_EQ(count_boundary_bridges(xi, a, b), oracle::brute_bridges(xi, a, b, -1, 7 + xi));
      }
}

TEST(Counting, SmallValues) {
  EXPECT_EQ(count_forests(1, 2), 2);
  EXPECT_EQ(count_interior_bridges(2, 0, 0), 3);
  EXPECT_EQ(count_boundary_bridges(2, 0, 0), 3);
  EXPECT_EQ(count_boundary_bridges(1, 0, 5), 1);
  EXPECT_EQ(count_boundary_bridges(2, 0, -3), 0);
  EXPECT_EQ(count_forests(0, 1), 0);
}

TEST(Contour, VertexTree) {
  LabeledForest f{1, {0}, {}};
  auto cp = contour_pair(f);
  EXPECT_EQ(cp.C, (std::vector<int>{1, 0}));
  EXPECT_EQ(cp.L, (std::vector<int>{0, 0}));
}

TEST(Contour, OneEdge) {
  LabeledForest f{1, {1, -1, 0}, {1}};
  auto cp = contour_pair(f);
  EXPECT_EQ(cp.C, (std::vector<int>{1, 2, 1, 0}));
  EXPECT_EQ(cp.L, (std::vector<int>{0, 1, 0, 0}));
  EXPECT_EQ(forest_from_contour(cp), f);
}

TEST(Contour, InversionIsExact) {
  for (int xi = 1; xi <= 3; ++xi)
    for (int m = 0; m <= 4; ++m)
      oracle::brute_forests(xi, m, true, [&](const LabeledForest& f) {
        auto cp = contour_pair(f);
        ASSERT_EQ(static_cast<int>(cp.C.size()), 2 * m + xi + 1);
        EXPECT_EQ(cp.C.front(), xi);
        EXPECT_EQ(cp.C.back(), 0);
        EXPECT_EQ(forest_from_contour(cp), f);
      });
}

TEST(Scheme, SphereOneHole) {
  auto all = enumerate_schemes(0, 1, 1);
  EXPECT_EQ(all.size(), 3u);
  int dom = 0;
  for (const auto& s : all) {
    EXPECT_TRUE(validate_scheme(s));
    if (!is_dominant(s)) continue;
    ++dom;
    for (int v = 0; v < s.map.num_vertices(); ++v) {
      if (v == s.map.origin(s.map.root()) || v == s.map.target(s.map.root())) continue;
      EXPECT_EQ(s.map.vertex_degree(v), 3);
    }
  }
  EXPECT_EQ(dom, 2);
}

TEST(Scheme, MatchesFilteredMapEnumeration) {
  struct Case { int g, p, q; };
  for (auto c : {Case{0, 1, 1}, Case{0, 2, 1}, Case{1, 0, 1}, Case{0, 1, 2}, Case{0, 0, 2}}) {
    const int F = c.p + c.q;
    std::set<std::vector<int>> want;
    for (int E = 1; E <= std::min(5, 6 * c.g + 3 * F - 4); ++E)
      for (const Map& b : oracle::maps(E, F, c.g)) {
        std::vector<int> faces(F);
        std::iota(faces.begin(), faces.end(), 0);
        do {
          std::vector<int> hs;
          for (int i = 0; i < c.p; ++i) hs.push_back(b.face_rep(faces[i]));
          Map m(b.alpha_perm(), b.next_perm(), b.root(), hs);
          Scheme s{m, c.q == 2 ? faces[c.p] : -1};
          if (validate_scheme(s)) want.insert(canonical_code(s));
        } while (std::next_permutation(faces.begin(), faces.end()));
      }
    std::set<std::vector<int>> got;
    for (const auto& s : enumerate_schemes(c.g, c.p, c.q))
      if (s.map.num_edges() <= 5) {
        EXPECT_TRUE(got.insert(canonical_code(s)).second);
      }
    EXPECT_EQ(got, want) << c.g << c.p << c.q;
    EXPECT_FALSE(got.empty());
  }
}

TEST(Scheme, DominantVerticesTouchOneHole) {
  for (auto [g, p] : {std::pair{0, 2}, {0, 3}, {1, 1}, {1, 0}}) {
    for (const auto& s : enumerate_schemes(g, p, 1)) {
      if (!is_dominant(s)) continue;
      for (int v = 0; v < s.map.num_vertices(); ++v) {
        std::vector<int> hs;
        for (int h : s.map.vertex_half_edges(v))
          if (s.map.is_hole(s.map.face(h))) hs.push_back(s.map.face(h));
        std::sort(hs.begin(), hs.end());
        hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
        EXPECT_LE(hs.size(), 1u);
      }
    }
  }
}

TEST(Scheme, FamilySizes) {
  EXPECT_EQ(enumerate_schemes(1, 0, 1).size(), 12u);
  int dom = 0;
  for (const auto& s : enumerate_schemes(1, 0, 1)) dom += is_dominant(s);
  EXPECT_EQ(dom, 2);
  auto g2 = enumerate_schemes(2, 0, 1);
  for (const auto& s : g2) EXPECT_EQ(s.map.genus(), 2);
  EXPECT_EQ(g2.size(), 11088u);
}

TEST(Scheme, LargeFamilyExceedsBudget) {
  try {
    enumerate_schemes(2, 2, 1, 1e6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code, Errc::BudgetExceeded);
  }
}

TEST(Decompose, SingleCycleFloor) {
  // a loop at one vertex with a hole on one side
  Map m = Map::from_next({1, 0}, 0, {1});
  LabeledMap lm{m, {0}, -1};
  ASSERT_TRUE(validate_labeled(lm));
  auto d = decompose(lm);
  EXPECT_EQ(d.scheme.map.num_vertices(), 1);
  EXPECT_EQ(d.scheme.map.num_edges(), 1);
  EXPECT_EQ(canonical_code(recompose(d)), canonical_code(lm));
}

TEST(Decompose, PlaneTreeIsDegenerate) {
  LabeledMap lm{Map::from_next({0, 1}, 0, {}), {0, 1}, -1};
  try {
    decompose(lm);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code, Errc::DegenerateTreeCase);
  }
}

TEST(Decompose, RoundTripOnePoint) {
  for (auto [n, sigma] : std::vector<std::pair<int, std::vector<int>>>{
           {0, {1}}, {1, {1}}, {2, {1}}, {3, {1}}, {0, {2}}, {1, {2}}, {2, {2}}, {1, {3}}, {1, {1, 1}}, {0, {1, 2}}})
    for (const auto& lm : oracle::labeled_maps(n, sigma, 1)) check_roundtrip(lm, n, sigma);
}

TEST(Decompose, RoundTripTwoPoint) {
  for (auto [n, sigma] : std::vector<std::pair<int, std::vector<int>>>{{1, {}}, {2, {}}, {3, {}}, {1, {1}}, {0, {2}}})
    for (const auto& lm : oracle::labeled_maps(n, sigma, 2)) check_roundtrip(lm, n, sigma);
}

TEST(Decompose, RoundTripTorus) {
  for (int n = 1; n <= 3; ++n)
    for (const auto& lm : oracle::labeled_maps(n, {}, 1, 1)) check_roundtrip(lm, n, {});
}

TEST(CountMaps, DegenerateTree) {
  EXPECT_EQ(count_labeled_maps(1, {}, 1), 3);
  EXPECT_EQ(count_labeled_maps(2, {}, 1), 18);
}

TEST(CountMaps, MatchesLabeledMapOracle) {
  for (auto [n, sigma] : std::vector<std::pair<int, std::vector<int>>>{
           {0, {1}}, {1, {1}}, {2, {1}}, {3, {1}}, {0, {2}}, {1, {2}}, {2, {2}}, {0, {3}}, {1, {3}}, {0, {1, 1}}, {1, {1, 1}}})
    EXPECT_EQ(count_labeled_maps(n, sigma, 1), oracle::labeled_maps(n, sigma, 1).size()) << n;
  for (auto [n, sigma] : std::vector<std::pair<int, std::vector<int>>>{{1, {}}, {2, {}}, {3, {}}, {1, {1}}, {0, {2}}})
    EXPECT_EQ(count_labeled_maps(n, sigma, 2), oracle::labeled_maps(n, sigma, 2).size()) << n;
  for (int n = 1; n <= 3; ++n) EXPECT_EQ(count_labeled_maps(n, {}, 1, 1), oracle::labeled_maps(n, {}, 1, 1).size());
}

TEST(CountMaps, TwiceCountIsPointedQuadrangulations) {
  for (auto [n, sigma] : std::vector<std::pair<int, std::vector<int>>>{
           {1, {}}, {2, {}}, {3, {}}, {0, {1}}, {1, {1}}, {2, {1}}, {3, {1}}, {1, {2}}, {2, {2}}}) {
    long pointed = 0;
    for (const Map& q : oracle::quadrangulations(n, sigma)) pointed += q.num_vertices();
    EXPECT_EQ(2 * count_labeled_maps(n, sigma, 1), pointed) << n;
  }
}
