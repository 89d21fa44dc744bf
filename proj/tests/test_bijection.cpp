#include <gtest/gtest.h>

#include <map>

#include "oracle.hpp"
#include "qsurf/bijection.hpp"

using namespace qsurf;

namespace {

using Code = std::vector<int>;

struct Family {
  int n;
  std::vector<int> sigma;
};

// (q, v•) pairs for every rooted quadrangulation of the family.
std::vector<PointedQuad> pointed(const Family& f) {
  std::vector<PointedQuad> out;
  for (const Map& q : oracle::quadrangulations(f.n, f.sigma))
    for (int v = 0; v < q.num_vertices(); ++v) out.push_back({q, v, -1, 0});
  return out;
}

std::vector<PointedQuad> two_pointed(const Family& f) {
  std::vector<PointedQuad> out;
  for (const Map& q : oracle::quadrangulations(f.n, f.sigma))
    for (int a = 0; a < q.num_vertices(); ++a) {
      auto d = bfs(q, a);
      for (int b = 0; b < q.num_vertices(); ++b)
        for (int lam = 1; lam < d[b]; ++lam) out.push_back({q, a, b, lam});
    }
  return out;
}

void check_two_to_one(const std::vector<PointedQuad>& objs, const std::vector<LabeledMap>& image) {
  std::map<Code, int> hits;
  for (const auto& pq : objs) {
    LabeledMap lm = encode(pq);
    auto chk = validate_labeled(lm);
    ASSERT_TRUE(chk.ok) << chk.violations.front();
    hits[canonical_code(lm)]++;
    Code want = canonical_code(pq);
    Code a = canonical_code(decode(lm, 0)), b = canonical_code(decode(lm, 1));
    EXPECT_TRUE(a == want || b == want);
    EXPECT_NE(a, b);
    EXPECT_EQ(canonical_code(encode(decode(lm, 0))), canonical_code(lm));
    EXPECT_EQ(canonical_code(encode(decode(lm, 1))), canonical_code(lm));
  }
  std::map<Code, int> expected;
  for (const auto& lm : image) expected[canonical_code(lm)] = 2;
  EXPECT_EQ(image.size(), expected.size());
  EXPECT_EQ(hits.size(), expected.size());
  EXPECT_EQ(hits, expected);
  EXPECT_EQ(objs.size(), 2 * image.size());
}

const std::vector<Family> kFamilies = {
    {1, {}}, {2, {}}, {3, {}}, {0, {1}}, {1, {1}}, {2, {1}}, {3, {1}},
    {0, {2}}, {1, {2}}, {2, {2}}, {0, {3}}, {1, {3}},
};

}  // namespace

TEST(Labels, OnePointIsBfs) {
  auto qs = oracle::quadrangulations(2, {});
  for (const Map& q : qs) {
    auto l = assign_labels_one_point(q, 0);
    for (int h = 0; h < q.size(); ++h) EXPECT_EQ(std::abs(l[q.origin(h)] - l[q.target(h)]), 1);
  }
}

TEST(Labels, TwoPointFormula) {
  for (const auto& pq : two_pointed({2, {}})) {
    auto l = assign_labels_two_point(pq.quad, pq.vdot, pq.vdot2, pq.lambda);
    auto d1 = bfs(pq.quad, pq.vdot);
    EXPECT_EQ(l[pq.vdot2], 2 * pq.lambda - d1[pq.vdot2]);
    EXPECT_EQ(l[pq.vdot], 0);
  }
  auto qs = oracle::quadrangulations(1, {});
  EXPECT_THROW(assign_labels_two_point(qs[0], 0, 0, 1), Error);
}

TEST(Encode, PathQuadrangulationHasThreeImages) {
  auto objs = pointed({1, {}});
  EXPECT_EQ(objs.size(), 6u);
  std::map<Code, int> img;
  for (auto& pq : objs) {
    LabeledMap lm = encode(pq);
    EXPECT_EQ(lm.map.num_edges(), 1);
    img[canonical_code(lm)]++;
  }
  EXPECT_EQ(img.size(), 3u);
}

TEST(Encode, FourCycleGivesTwoEdgeTree) {
  for (auto& pq : pointed({2, {}})) {
    if (pq.quad.num_vertices() != 4) continue;
    LabeledMap lm = encode(pq);
    EXPECT_EQ(lm.map.num_edges(), 2);
    EXPECT_EQ(lm.map.num_vertices(), 3);
    EXPECT_EQ(lm.map.num_faces(), 1);
  }
}

TEST(Encode, ReportsFaceTypes) {
  for (auto& pq : pointed({3, {}})) {
    EncodeTrace t;
    encode(pq, &t);
    EXPECT_EQ(t.confluent + t.simple, 3);
  }
}

TEST(Encode, TwoPointHoleMayPinch) {
  // path a-b-c whose only face is a hole of degree 4, v• = a, v•• = c
  for (const Map& q : oracle::quadrangulations(0, {2})) {
    auto d = bfs(q, 0);
    for (int b = 0; b < q.num_vertices(); ++b) {
      if (d[b] != 2) continue;
      LabeledMap lm = encode({q, 0, b, 1});
      EXPECT_EQ(lm.map.num_vertices(), 1);
      EXPECT_TRUE(validate_labeled(lm));
      EXPECT_EQ(canonical_code(decode(lm, 0)).size(), canonical_code(PointedQuad{q, 0, b, 1}).size());
    }
  }
}

TEST(Encode, OracleFamilySizes) {
  EXPECT_EQ(oracle::labeled_maps(1, {}, 1).size(), 3u);
  EXPECT_EQ(oracle::labeled_maps(0, {1}, 1).size(), 1u);
}

TEST(Decode, RejectsAdjacentHoles) {
  // theta graph: three faces of degree 2, pairwise adjacent; two become holes
  bool tried = false;
  for (const Map& b : oracle::maps(3, 3)) {
    if (b.num_vertices() != 2) continue;
    std::vector<int> twos;
    for (int f = 0; f < b.num_faces(); ++f)
      if (b.face_degree(f) == 2 && f != b.face(b.root())) twos.push_back(b.face_rep(f));
    if (twos.size() != 2) continue;
    Map h(b.alpha_perm(), b.next_perm(), b.root(), {twos[0], twos[1]});
    LabeledMap x{h, std::vector<int>(h.num_vertices(), 0), -1};
    try {
      decode(x);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code, Errc::InvariantViolation);
      tried = true;
    }
  }
  EXPECT_TRUE(tried);
}

TEST(Bijection, OnePointExhaustive) {
  for (const auto& f : kFamilies) {
    SCOPED_TRACE(testing::Message() << "n=" << f.n << " p=" << f.sigma.size());
    check_two_to_one(pointed(f), oracle::labeled_maps(f.n, f.sigma, 1));
  }
}

TEST(Bijection, TwoPointExhaustive) {
  for (const auto& f : kFamilies) {
    SCOPED_TRACE(testing::Message() << "n=" << f.n << " p=" << f.sigma.size());
    auto objs = two_pointed(f);
    check_two_to_one(objs, oracle::labeled_maps(f.n, f.sigma, 2));
    for (const auto& pq : objs) {
      LabeledMap lm = encode(pq);
      auto rep = check_lambda_lemma(lm);
      EXPECT_EQ(rep.violations, 0);
      auto back = decode(lm, 0);
      EXPECT_EQ(back.lambda, pq.lambda);
    }
  }
}

TEST(Bijection, DecodedLabelsAreDistances) {
  for (const auto& lm : oracle::labeled_maps(3, {1}, 1)) {
    auto d = decode_detailed(lm, 0);
    auto dist = bfs(d.pq.quad, d.pq.vdot);
    for (int v = 0; v < d.pq.quad.num_vertices(); ++v) EXPECT_EQ(d.qlabel[v] - d.qlabel[d.pq.vdot], dist[v]);
    EXPECT_TRUE(validate_quadrangulation(d.pq.quad, 3, {1}));
  }
}
