#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "qsurf/map.hpp"

namespace qsurf {

// Labeled map with faces h_1..h_p (the holes of `map`), f• and optionally f••.
// Labels are stored per vertex, normalized so the root origin has label 0.
struct LabeledMap {
  Map map;
  std::vector<int> label;
  int fdot2 = -1;  // face id of f••, -1 for one-point maps

  bool two_point() const { return fdot2 >= 0; }
  int fdot() const {
    for (int f = 0; f < map.num_faces(); ++f)
      if (!map.is_hole(f) && f != fdot2) return f;
    return -1;
  }
  int lab(int h) const { return label[map.origin(h)]; }
};

struct PointedQuad {
  Map quad;
  int vdot = 0;
  int vdot2 = -1;
  int lambda = 0;
  bool two_point() const { return vdot2 >= 0; }
};

struct EncodeTrace {
  int confluent = 0;
  int simple = 0;
  std::vector<int> qvertex;  // m vertex -> q vertex
};

inline std::vector<int> assign_labels_one_point(const Map& q, int vdot) { return bfs(q, vdot); }

inline std::vector<int> assign_labels_two_point(const Map& q, int vdot, int vdot2, int lambda) {
  auto d1 = bfs(q, vdot), d2 = bfs(q, vdot2);
  int d = d1[vdot2];
  if (d < 2 || lambda < 1 || lambda > d - 1) throw Error(Errc::LambdaOutOfRange, "lambda must lie in 1..d-1");
  std::vector<int> l(q.num_vertices());
  for (int v = 0; v < q.num_vertices(); ++v) l[v] = std::min(d1[v], d2[v] + 2 * lambda - d);
  return l;
}

struct LabeledCheck {
  bool ok = true;
  std::vector<std::string> violations;
  explicit operator bool() const { return ok; }
  void fail(std::string s) { ok = false; violations.push_back(std::move(s)); }
};

// Membership test for the labeled-map families (one- or two-point).
// Two-point images may pinch a hole at a vertex separating f• from f••, so
// simple hole boundaries are only required for one-point maps.
inline LabeledCheck validate_labeled(const LabeledMap& lm) {
  LabeledCheck r;
  const bool simple_holes = !lm.two_point();
  const Map& m = lm.map;
  const int p = m.num_holes();
  const int want_faces = p + (lm.two_point() ? 2 : 1);
  if (m.num_faces() != want_faces) r.fail("face count");
  if (static_cast<int>(lm.label.size()) != m.num_vertices()) { r.fail("label size"); return r; }
  if (lm.two_point() && (lm.fdot2 >= m.num_faces() || m.is_hole(lm.fdot2))) r.fail("f.. is a hole");
  if (m.is_hole(m.face(m.root()))) r.fail("root incident to a hole");
  if (lm.lab(m.root()) != 0) r.fail("root label not normalized");
  for (int f : m.holes()) {
    auto hs = m.face_half_edges(f);
    std::vector<int> vs;
    for (int h : hs) vs.push_back(m.origin(h));
    std::sort(vs.begin(), vs.end());
    if (simple_holes && std::adjacent_find(vs.begin(), vs.end()) != vs.end()) r.fail("hole boundary not simple");
    for (int h : hs) {
      if (m.is_hole(m.face(m.alpha(h)))) r.fail("holes adjacent");
      if (lm.lab(h) - lm.label[m.target(h)] < -1) r.fail("hole step");
    }
  }
  for (int h = 0; h < m.size(); ++h) {
    if (m.is_hole(m.face(h)) || m.is_hole(m.face(m.alpha(h)))) continue;
    if (std::abs(lm.lab(h) - lm.label[m.target(h)]) > 1) r.fail("edge step");
  }
  return r;
}

namespace detail {

// Face seen right after q-half-edge g in the combined rotation of a vertex,
// where extra[h] lists m-half-edges sitting in the corner just before h.
template <class Extra>
int first_after(const Map& base, int g, const Extra& extra) {
  int h = base.next(g);
  for (;;) {
    if (!extra[h].empty()) return extra[h].front();
    if (h == g) return -1;
    h = base.next(h);
  }
}

}  // namespace detail

inline LabeledMap encode(const PointedQuad& pq, EncodeTrace* trace = nullptr) {
  const Map& q = pq.quad;
  if (!is_bipartite(q)) throw Error(Errc::InvalidQuadrangulation, "not bipartite");
  for (int f = 0; f < q.num_faces(); ++f)
    if (!q.is_hole(f) && q.face_degree(f) != 4) throw Error(Errc::InvalidQuadrangulation, "internal face degree");
  std::vector<int> l = pq.two_point() ? assign_labels_two_point(q, pq.vdot, pq.vdot2, pq.lambda)
                                      : assign_labels_one_point(q, pq.vdot);
  const int n = q.size();
  auto desc = [&](int h) { return l[q.origin(h)] == l[q.origin(q.phi_inv(h))] + 1; };

  std::vector<std::vector<int>> chord(n);
  std::vector<int> corner_of;
  int me = 0;
  auto new_edge = [&](int c0, int c1) {
    corner_of.push_back(c0);
    corner_of.push_back(c1);
    me += 2;
    return me - 2;
  };
  std::vector<int> hole_half(q.num_holes(), -1);
  for (int f = 0; f < q.num_faces(); ++f) {
    std::vector<int> d;
    for (int h : q.face_half_edges(f))
      if (desc(h)) d.push_back(h);
    if (!q.is_hole(f)) {
      if (d.size() != 2) throw Error(Errc::InvalidQuadrangulation, "internal face without two descents");
      int x = new_edge(d[0], d[1]);
      chord[d[0]].push_back(x);
      chord[d[1]].push_back(x + 1);
      if (trace) {
        int a = l[q.origin(d[0])], b = l[q.origin(d[1])];
        (a == b ? trace->confluent : trace->simple) += 1;
      }
    } else {
      const int k = static_cast<int>(d.size());
      std::vector<int> a(k);
      for (int j = 0; j < k; ++j) a[j] = new_edge(d[j], d[(j + 1) % k]);
      for (int j = 0; j < k; ++j) {
        chord[d[j]].push_back(a[(j + k - 1) % k] + 1);
        chord[d[j]].push_back(a[j]);
      }
      hole_half[q.hole_index(f)] = a[0];
    }
  }

  std::vector<int> next_m(me, -1);
  for (int v = 0; v < q.num_vertices(); ++v) {
    std::vector<int> rot;
    for (int h : q.vertex_half_edges(v))
      for (int x : chord[h]) rot.push_back(x);
    bool special = v == pq.vdot || v == pq.vdot2;
    if (rot.empty() != special) throw Error(Errc::InvalidQuadrangulation, "vertex without chord");
    for (std::size_t i = 0; i < rot.size(); ++i) next_m[rot[i]] = rot[(i + 1) % rot.size()];
  }

  int e = q.root();
  if (l[q.target(e)] != l[q.origin(e)] + 1) e = q.alpha(e);
  int c = q.phi(e);
  std::vector<int> cand = chord[c];
  if (cand.empty()) throw Error(Errc::InvalidQuadrangulation, "root corner without chord");
  Map probe = Map::from_next(next_m, cand[0], hole_half);
  int root = cand[0];
  if (probe.is_hole(probe.face(root))) root = cand.at(1);
  Map m = Map::from_next(std::move(next_m), root, hole_half);

  LabeledMap lm;
  lm.label.resize(m.num_vertices());
  int l0 = l[q.origin(corner_of[root])];
  for (int v = 0; v < m.num_vertices(); ++v) lm.label[v] = l[q.origin(corner_of[m.vertex_rep(v)])] - l0;
  if (trace) {
    trace->qvertex.resize(m.num_vertices());
    for (int v = 0; v < m.num_vertices(); ++v) trace->qvertex[v] = q.origin(corner_of[m.vertex_rep(v)]);
  }
  if (pq.two_point()) {
    int g = q.alpha(q.vertex_rep(pq.vdot2));
    lm.fdot2 = m.face(detail::first_after(q, g, chord));
  }
  lm.map = std::move(m);
  return lm;
}

struct Decoded {
  PointedQuad pq;
  std::vector<int> qvertex;  // m vertex -> q vertex
  std::vector<int> qlabel;   // labels on q vertices, same normalization as m
};

inline Decoded decode_detailed(const LabeledMap& lm, int orientation = 0) {
  auto chk = validate_labeled(lm);
  if (!chk) throw Error(Errc::InvariantViolation, chk.violations.front());
  const Map& m = lm.map;
  const int mn = m.size();

  std::vector<int> faces{lm.fdot()};
  if (lm.two_point()) faces.push_back(lm.fdot2);

  // corner content per m-half-edge: q-half-edges placed in the corner before it
  std::vector<std::vector<int>> gap(mn);
  std::vector<int> out_arc(mn, -1);
  int qe = 0;
  std::vector<int> next_q;
  std::vector<int> min_label;
  std::vector<std::vector<int>> rays;
  for (int f : faces) {
    auto xs = m.face_half_edges(f);
    const int k = static_cast<int>(xs.size());
    std::vector<int> L(k);
    for (int i = 0; i < k; ++i) L[i] = lm.lab(xs[i]);
    std::vector<int> succ(k, -1), st;
    for (int i = 2 * k - 1; i >= 0; --i) {
      int li = L[i % k];
      while (!st.empty() && L[st.back() % k] >= li) st.pop_back();
      if (i < k) succ[i] = st.empty() ? -1 : st.back() % k;
      st.push_back(i);
    }
    std::vector<int> arc(k);
    for (int i = 0; i < k; ++i) { arc[i] = qe; qe += 2; out_arc[xs[i]] = arc[i]; }
    std::vector<std::vector<std::pair<int, int>>> in(k);
    std::vector<int> ray;
    for (int j = 0; j < k; ++j) {
      if (succ[j] < 0) ray.push_back(arc[j] + 1);
      else in[succ[j]].push_back({(succ[j] - j + k) % k, arc[j] + 1});
    }
    for (int i = 0; i < k; ++i) {
      std::sort(in[i].begin(), in[i].end());
      for (auto& pr : in[i]) gap[xs[i]].push_back(pr.second);
      gap[xs[i]].push_back(arc[i]);
    }
    min_label.push_back(*std::min_element(L.begin(), L.end()) - 1);
    rays.push_back(std::move(ray));
  }
  next_q.assign(qe, -1);

  // combined rotation at each m-vertex; q_after[x] = first q-half-edge after m-half-edge x
  std::vector<int> q_after(mn, -1);
  for (int v = 0; v < m.num_vertices(); ++v) {
    std::vector<int> rot;
    std::vector<std::pair<int, int>> mpos;  // (m half-edge, index in rot where it sits)
    for (int x : m.vertex_half_edges(v)) {
      for (int y : gap[x]) rot.push_back(y);
      mpos.push_back({x, static_cast<int>(rot.size())});
    }
    if (rot.empty()) throw Error(Errc::InvariantViolation, "vertex without arc");
    const int r = static_cast<int>(rot.size());
    for (int i = 0; i < r; ++i) next_q[rot[i]] = rot[(i + 1) % r];
    for (auto& [x, pos] : mpos) q_after[x] = rot[pos % r];
  }
  for (auto& ray : rays) {
    const int k = static_cast<int>(ray.size());
    for (int a = 0; a < k; ++a) next_q[ray[a]] = ray[(a + k - 1) % k];
  }

  int o = out_arc[m.root()];
  int qroot = orientation == 0 ? o + 1 : o;
  std::vector<int> holes;
  for (int f : m.holes()) holes.push_back(q_after[m.face_rep(f)]);
  Map q = Map::from_next(std::move(next_q), qroot, holes);

  Decoded d;
  d.qvertex.resize(m.num_vertices());
  for (int v = 0; v < m.num_vertices(); ++v) d.qvertex[v] = q.origin(q_after[m.vertex_rep(v)]);
  d.qlabel.assign(q.num_vertices(), 0);
  for (int v = 0; v < m.num_vertices(); ++v) d.qlabel[d.qvertex[v]] = lm.label[v];
  d.pq.vdot = q.origin(rays[0].front());
  d.qlabel[d.pq.vdot] = min_label[0];
  if (lm.two_point()) {
    d.pq.vdot2 = q.origin(rays[1].front());
    d.qlabel[d.pq.vdot2] = min_label[1];
    int dist = bfs(q, d.pq.vdot)[d.pq.vdot2];
    int twice = min_label[1] - min_label[0] + dist;
    if (twice % 2) throw Error(Errc::InvariantViolation, "lambda parity");
    d.pq.lambda = twice / 2;
    if (dist < 2 || d.pq.lambda < 1 || d.pq.lambda > dist - 1) throw Error(Errc::LambdaOutOfRange, "recovered lambda");
  }
  d.pq.quad = std::move(q);
  return d;
}

inline PointedQuad decode(const LabeledMap& lm, int orientation = 0) {
  return decode_detailed(lm, orientation).pq;
}

inline std::vector<int> canonical_code(const LabeledMap& lm) {
  const Map& m = lm.map;
  auto perm = canonical_order(m);
  auto code = canonical_code(m);
  std::vector<int> lab(m.size());
  for (int h = 0; h < m.size(); ++h) lab[perm[h]] = lm.lab(h);
  code.push_back(-1000000);
  code.insert(code.end(), lab.begin(), lab.end());
  if (lm.two_point()) {
    int best = m.size();
    for (int h : m.face_half_edges(lm.fdot2)) best = std::min(best, perm[h]);
    code.push_back(-2000000 - best);
  }
  return code;
}

inline std::vector<int> canonical_code(const PointedQuad& pq) {
  const Map& q = pq.quad;
  auto perm = canonical_order(q);
  auto code = canonical_code(q);
  auto vmin = [&](int v) {
    int best = q.size();
    for (int h : q.vertex_half_edges(v)) best = std::min(best, perm[h]);
    return best;
  };
  code.push_back(-3000000 - vmin(pq.vdot));
  if (pq.two_point()) {
    code.push_back(-4000000 - vmin(pq.vdot2));
    code.push_back(pq.lambda);
  }
  return code;
}

struct LambdaReport {
  int violations = 0;
  std::vector<std::string> notes;
};

// Checks the distance relations between labels and the two distinguished
// vertices on the decoded quadrangulation of a two-point labeled map.
inline LambdaReport check_lambda_lemma(const LabeledMap& lm) {
  LambdaReport r;
  auto bad = [&](std::string s) { ++r.violations; r.notes.push_back(std::move(s)); };
  if (!lm.two_point()) { bad("not a two-point map"); return r; }
  auto dec = decode_detailed(lm, 0);
  const Map& q = dec.pq.quad;
  const Map& m = lm.map;
  auto d1 = bfs(q, dec.pq.vdot), d2 = bfs(q, dec.pq.vdot2);
  int l1 = dec.qlabel[dec.pq.vdot], l2 = dec.qlabel[dec.pq.vdot2];
  int lambda = dec.pq.lambda, dd = d1[dec.pq.vdot2];
  std::vector<char> in1(m.num_vertices(), 0), in2(m.num_vertices(), 0);
  for (int h : m.face_half_edges(lm.fdot())) in1[m.origin(h)] = 1;
  for (int h : m.face_half_edges(lm.fdot2)) in2[m.origin(h)] = 1;
  int best_d = 1 << 30, best_l = 1 << 30, min1 = 1 << 30;
  bool inter = false;
  for (int v = 0; v < m.num_vertices(); ++v) {
    int w = dec.qvertex[v], lv = lm.label[v];
    if (in1[v]) {
      min1 = std::min(min1, lv);
      if (lv - l1 != d1[w]) bad("(i) equality");
      if (lv - l2 > d2[w]) bad("(i) inequality");
      if (d2[w] < dd - lambda) bad("(iii) f. side");
    }
    if (in2[v]) {
      if (lv - l1 > d1[w]) bad("(ii) inequality");
      if (lv - l2 != d2[w]) bad("(ii) equality");
      if (d1[w] < lambda) bad("(iii) f.. side");
    }
    if (in1[v] && in2[v]) {
      inter = true;
      best_d = std::min(best_d, d1[w]);
      best_l = std::min(best_l, lv);
    }
  }
  if (!inter) { bad("faces f. and f.. share no vertex"); return r; }
  if (best_d != lambda) bad("(iii) lambda as min distance");
  if (best_l - min1 + 1 != lambda) bad("(iii) lambda as label gap");
  return r;
}

}  // namespace qsurf
