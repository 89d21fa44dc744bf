#pragma once

#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "qsurf/bijection.hpp"
#include "qsurf/homotopy.hpp"
#include "qsurf/map.hpp"
#include "qsurf/scheme.hpp"

namespace qsurf {

using VertexPath = std::vector<int>;

struct CapExceeded : Error {
  long partial;
  CapExceeded(long p, const std::string& what) : Error(Errc::CapExceeded, what), partial(p) {}
};

inline std::vector<std::vector<int>> neighbors(const Map& m) {
  std::vector<std::vector<int>> nb(m.num_vertices());
  for (int h = 0; h < m.size(); ++h) nb[m.origin(h)].push_back(m.target(h));
  for (auto& l : nb) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  return nb;
}

// Number of geodesics from u to v as vertex sequences (saturates at LONG_MAX).
inline long count_geodesics(const Map& m, int u, int v) {
  auto dv = bfs(m, v);
  auto nb = neighbors(m);
  std::vector<long> ways(m.num_vertices(), 0);
  std::vector<int> order(m.num_vertices());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return dv[a] < dv[b]; });
  ways[v] = 1;
  for (int x : order) {
    if (x == v || dv[x] > dv[u]) continue;
    long w = 0;
    for (int y : nb[x])
      if (dv[y] == dv[x] - 1) w = (w > LONG_MAX - ways[y]) ? LONG_MAX : w + ways[y];
    ways[x] = w;
  }
  return ways[u];
}

// All geodesics from u to v, each as a vertex sequence starting at u.
inline std::vector<VertexPath> enumerate_geodesics(const Map& m, int u, int v, long cap) {
  if (cap < 1) throw Error(Errc::ConfigError, "cap must be positive");
  auto dv = bfs(m, v);
  auto nb = neighbors(m);
  std::vector<VertexPath> out;
  VertexPath cur{u};
  std::function<void(int)> rec = [&](int x) {
    if (x == v) {
      if (static_cast<long>(out.size()) == cap) throw CapExceeded(cap, "more geodesics than the cap");
      out.push_back(cur);
      return;
    }
    for (int y : nb[x]) {
      if (dv[y] != dv[x] - 1) continue;
      cur.push_back(y);
      rec(y);
      cur.pop_back();
    }
  };
  try {
    rec(u);
  } catch (CapExceeded&) {
    throw CapExceeded(count_geodesics(m, u, v), "more geodesics than the cap");
  }
  return out;
}

// Distances from every vertex of a set, cached.
class DistanceCache {
 public:
  explicit DistanceCache(const Map& m) : m_(m) {}
  const std::vector<int>& from(int v) {
    auto it = cache_.find(v);
    if (it == cache_.end()) it = cache_.emplace(v, bfs(m_, v)).first;
    return it->second;
  }
  int operator()(int a, int b) { return from(a)[b]; }

 private:
  const Map& m_;
  std::map<int, std::vector<int>> cache_;
};

inline int d_path(DistanceCache& dist, const VertexPath& a, const VertexPath& b) {
  const int k = static_cast<int>(a.size()) - 1, k2 = static_cast<int>(b.size()) - 1;
  int best = 0;
  for (int i = 0; i <= std::max(k, k2); ++i) best = std::max(best, dist(a[std::min(i, k)], b[std::min(i, k2)]));
  return best;
}

inline int d_path(const Map& m, const VertexPath& a, const VertexPath& b) {
  DistanceCache dc(m);
  return d_path(dc, a, b);
}

// ---------------------------------------------------------------------------
// Cutting along simple loops

struct CutComponent {
  long V = 0, E = 0, F = 0;
  int boundaries = 0;
  long euler() const { return V - E + F; }
};

struct LoopCutReport {
  std::vector<int> loop;  // half-edges
  std::vector<CutComponent> components;
  long euler_before = 0;
  bool null_homotopic = false;
};

// Half-edges of a closed walk through the given vertices; the first edge
// found between consecutive vertices is used.
inline std::vector<int> loop_half_edges(const Map& m, const std::vector<int>& vs) {
  std::vector<int> hs;
  const int k = static_cast<int>(vs.size());
  for (int i = 0; i < k; ++i) {
    int a = vs[i], b = vs[(i + 1) % k], found = -1;
    for (int h : m.vertex_half_edges(a))
      if (m.target(h) == b && std::find(hs.begin(), hs.end(), h) == hs.end() &&
          (hs.empty() || (h ^ 1) != hs.back() || k == 2)) {
        found = h;
        break;
      }
    if (found < 0) throw Error(Errc::NotSimpleLoop, "consecutive loop vertices are not adjacent");
    hs.push_back(found);
  }
  return hs;
}

namespace detail {

inline void require_simple(const Map& m, const std::vector<int>& hs) {
  if (hs.empty()) throw Error(Errc::NotSimpleLoop, "empty loop");
  std::vector<int> vs, es;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (m.target(hs[i]) != m.origin(hs[(i + 1) % hs.size()])) throw Error(Errc::NotSimpleLoop, "loop is not closed");
    vs.push_back(m.origin(hs[i]));
    es.push_back(hs[i] >> 1);
  }
  std::sort(vs.begin(), vs.end());
  std::sort(es.begin(), es.end());
  if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) throw Error(Errc::NotSimpleLoop, "loop repeats a vertex");
  if (std::adjacent_find(es.begin(), es.end()) != es.end()) throw Error(Errc::NotSimpleLoop, "loop repeats an edge");
}

// Flood the faces on one side of a simple loop without crossing it. Returns
// false when the flood reaches a face of the opposite side (the loop does not
// separate) and sets `done` when it finished within the face limit.
struct SideFlood {
  std::vector<int> faces;
  bool crossed = false, done = false;
};

inline SideFlood flood_side(const Map& m, const std::vector<char>& on_loop, const std::vector<int>& start,
                            const std::vector<char>& other, long limit) {
  SideFlood r;
  std::set<int> seen(start.begin(), start.end());
  std::vector<int> st(seen.begin(), seen.end());
  for (int f : st)
    if (other[f]) { r.crossed = true; return r; }
  while (!st.empty()) {
    if (static_cast<long>(seen.size()) > limit) return r;
    int f = st.back();
    st.pop_back();
    for (int x : m.face_half_edges(f)) {
      if (on_loop[x >> 1]) continue;
      int g = m.face(m.alpha(x));
      if (seen.insert(g).second) {
        if (other[g]) { r.crossed = true; return r; }
        st.push_back(g);
      }
    }
  }
  r.faces.assign(seen.begin(), seen.end());
  r.done = true;
  return r;
}

}  // namespace detail

inline long euler_characteristic(const Map& m) {
  return static_cast<long>(m.num_vertices()) - m.num_edges() + (m.num_faces() - m.num_holes());
}

// Cut the surface (holes removed) along a simple loop given by half-edges.
inline LoopCutReport cut_along_loop(const Map& m, const std::vector<int>& hs) {
  detail::require_simple(m, hs);
  LoopCutReport rep;
  rep.loop = hs;
  rep.euler_before = euler_characteristic(m);
  const long k = static_cast<long>(hs.size());
  std::vector<char> on_loop(m.num_edges(), 0), left(m.num_faces(), 0), right(m.num_faces(), 0);
  std::vector<int> lstart, rstart;
  for (int h : hs) {
    on_loop[h >> 1] = 1;
    lstart.push_back(m.face(h));
    rstart.push_back(m.face(m.alpha(h)));
  }
  for (int f : lstart) left[f] = 1;
  for (int f : rstart) right[f] = 1;
  detail::SideFlood side;
  for (long limit = 8;; limit *= 4) {
    side = detail::flood_side(m, on_loop, lstart, right, limit);
    if (side.crossed || side.done) break;
    side = detail::flood_side(m, on_loop, rstart, left, limit);
    if (side.crossed || side.done) break;
  }
  if (side.crossed) {
    CutComponent c;
    c.V = m.num_vertices() + k;
    c.E = m.num_edges() + k;
    c.F = m.num_faces() - m.num_holes();
    c.boundaries = m.num_holes() + 2;
    rep.components.push_back(c);
  } else {
    CutComponent a, b;
    std::set<int> vs, es;
    for (int f : side.faces) {
      if (m.is_hole(f)) ++a.boundaries;
      else ++a.F;
      for (int x : m.face_half_edges(f)) {
        vs.insert(m.origin(x));
        es.insert(x >> 1);
      }
    }
    a.V = static_cast<long>(vs.size());
    a.E = static_cast<long>(es.size());
    a.boundaries += 1;
    b.V = m.num_vertices() - a.V + k;
    b.E = m.num_edges() - a.E + k;
    b.F = m.num_faces() - m.num_holes() - a.F;
    b.boundaries = m.num_holes() - (a.boundaries - 1) + 1;
    rep.components = {a, b};
  }
  long after = 0;
  for (auto& c : rep.components) {
    after += c.euler();
    if (c.euler() == 1 && c.boundaries == 1) rep.null_homotopic = true;
  }
  if (after != rep.euler_before) throw Error(Errc::InvariantViolation, "Euler characteristic changed by cutting");
  return rep;
}

inline bool is_null_homotopic(const Map& m, const std::vector<int>& hs) {
  // a loop around one internal face bounds that face
  if (hs.size() <= 4) {
    int f = m.face(hs[0]);
    bool same = m.face_degree(f) == static_cast<int>(hs.size()) && !m.is_hole(f);
    for (int h : hs) same = same && m.face(h) == f;
    if (same) return true;
    f = m.face(m.alpha(hs[0]));
    same = m.face_degree(f) == static_cast<int>(hs.size()) && !m.is_hole(f);
    for (int h : hs) same = same && m.face(m.alpha(h)) == f;
    if (same) return true;
  }
  return cut_along_loop(m, hs).null_homotopic;
}

inline LoopCutReport cut_along_vertex_loop(const Map& m, const std::vector<int>& vs) {
  return cut_along_loop(m, loop_half_edges(m, vs));
}

// ---------------------------------------------------------------------------
// Multiplicities

struct Bounds {
  int lower = 0, upper = INT_MAX;
  bool certified() const { return lower == upper; }
};

// HMult^0(src, v) for every vertex v: the number of homotopy classes of
// geodesics from src, propagated along the geodesic DAG with one
// representative path per class. Values are capped at `cap`.
struct HomotopyClasses {
  std::vector<int> dist;
  std::vector<std::vector<std::vector<int>>> reps;
  int hmult(int v) const { return static_cast<int>(reps[v].size()); }
};

inline HomotopyClasses geodesic_classes(const Map& m, int src, int cap = 8) {
  FundamentalGroup grp(m);
  HomotopyClasses hc;
  hc.dist = bfs(m, src);
  const int V = m.num_vertices();
  std::vector<int> order(V);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return hc.dist[a] < hc.dist[b]; });
  hc.reps.assign(V, {});
  std::vector<std::vector<Word>> words(V);
  hc.reps[src].push_back({});
  words[src].push_back({});
  for (int y : order) {
    if (y == src) continue;
    auto& mine = hc.reps[y];
    auto& mw = words[y];
    for (int h : m.vertex_half_edges(y)) {
      int x = m.target(h);
      if (hc.dist[x] != hc.dist[y] - 1) continue;
      for (std::size_t i = 0; i < hc.reps[x].size(); ++i) {
        if (static_cast<int>(mine.size()) >= cap) break;
        Word w = words[x][i];
        const Word& step = grp.word(m.alpha(h));
        w.insert(w.end(), step.begin(), step.end());
        free_reduce(w);
        bool fresh = true;
        for (const auto& o : mw)
          if (grp.same_class(w, o)) { fresh = false; break; }
        if (!fresh) continue;
        auto cand = hc.reps[x][i];
        cand.push_back(m.alpha(h));
        mine.push_back(std::move(cand));
        mw.push_back(std::move(w));
      }
    }
  }
  return hc;
}

namespace detail {

inline int max_clique(const std::vector<std::vector<char>>& adj, long budget, bool& complete) {
  const int n = static_cast<int>(adj.size());
  int best = 0;
  long work = 0;
  complete = true;
  std::vector<int> cur;
  std::function<void(std::vector<int>)> rec = [&](std::vector<int> cand) {
    if (++work > budget) { complete = false; return; }
    best = std::max(best, static_cast<int>(cur.size()));
    if (static_cast<int>(cur.size() + cand.size()) <= best) return;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      std::vector<int> next;
      for (std::size_t j = i + 1; j < cand.size(); ++j)
        if (adj[cand[i]][cand[j]]) next.push_back(cand[j]);
      cur.push_back(cand[i]);
      rec(next);
      cur.pop_back();
      if (!complete) return;
    }
  };
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  rec(all);
  return best;
}

// Paths from u to v of length at most L (vertex sequences, no immediate
// backtracking), up to `budget` paths.
inline std::vector<VertexPath> short_paths(const Map& m, int u, int v, int L, long budget, bool& complete) {
  auto dv = bfs(m, v);
  auto nb = neighbors(m);
  std::vector<VertexPath> out;
  VertexPath cur{u};
  complete = true;
  std::function<void(int)> rec = [&](int x) {
    if (!complete) return;
    int len = static_cast<int>(cur.size()) - 1;
    if (x == v) {
      if (static_cast<long>(out.size()) >= budget) { complete = false; return; }
      out.push_back(cur);
    }
    for (int y : nb[x]) {
      if (len + 1 + dv[y] > L) continue;
      if (cur.size() >= 2 && y == cur[cur.size() - 2]) continue;
      cur.push_back(y);
      rec(y);
      cur.pop_back();
    }
  };
  rec(u);
  return out;
}

}  // namespace detail

// Mult^eps_delta(u, v) with separation `sep` (already scaled, e.g.
// floor(delta n^{1/4})). For eps = 0 the value 1 is decided exactly from the
// spread of the geodesic level sets; larger values come from a path family of
// at most family_cap members and a budgeted clique search, reported as bounds.
namespace detail {

// Whether two geodesics from u to v are at least sep apart in d_path: some
// level of the geodesic union has two vertices that far apart.
inline bool geodesics_spread(const Map& m, DistanceCache& dist, int u, int v, int sep) {
  const auto& du = dist.from(u);
  const auto& dv = dist.from(v);
  const int d = du[v];
  std::vector<std::vector<int>> level(d + 1);
  for (int x = 0; x < m.num_vertices(); ++x)
    if (du[x] + dv[x] == d) level[du[x]].push_back(x);
  for (const auto& l : level)
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (l.size() < 2) break;
      const auto& dx = dist.from(l[i]);
      for (std::size_t j = i + 1; j < l.size(); ++j)
        if (dx[l[j]] >= sep) return true;
    }
  return false;
}

}  // namespace detail

// Exact test of Mult^0_delta(u, v) = 1.
inline bool mult0_is_one(const Map& m, int u, int v, int sep) {
  if (u == v || sep <= 0) return u == v;
  DistanceCache dist(m);
  return !detail::geodesics_spread(m, dist, u, v, sep);
}

inline Bounds mult(const Map& m, int u, int v, double eps, int sep, long budget = 20000, long family_cap = 256) {
  Bounds b;
  if (u == v) return {1, 1};
  DistanceCache dist(m);
  const int d = dist.from(u)[v];
  if (sep <= 0) sep = 0;
  if (eps == 0) {
    if (sep > 0 && !detail::geodesics_spread(m, dist, u, v, sep)) return {1, 1};
    b.lower = 2;
  } else {
    b.lower = 1;
  }
  bool complete = true;
  std::vector<VertexPath> fam;
  if (eps == 0) {
    try {
      fam = enumerate_geodesics(m, u, v, family_cap);
    } catch (const CapExceeded&) {
      complete = false;
    }
  } else {
    fam = detail::short_paths(m, u, v, static_cast<int>(std::floor((1 + eps) * d)), family_cap, complete);
  }
  if (!fam.empty()) {
    std::vector<std::vector<char>> adj(fam.size(), std::vector<char>(fam.size(), 0));
    for (std::size_t i = 0; i < fam.size(); ++i)
      for (std::size_t j = i + 1; j < fam.size(); ++j) adj[i][j] = adj[j][i] = d_path(dist, fam[i], fam[j]) >= sep;
    bool exact = true;
    int c = detail::max_clique(adj, budget, exact);
    b.lower = std::max(b.lower, c);
    if (complete && exact) b.upper = b.lower;
  }
  return b;
}

// HMult^eps(u, v). For eps = 0 the class count is exact up to the cap. For
// eps > 0 the geodesic classes only give a lower bound.
inline Bounds hmult(const Map& m, int u, int v, double eps, int cap = 8) {
  auto hc = geodesic_classes(m, u, cap);
  int h = hc.hmult(v);
  if (eps == 0 && h < cap) return {h, h};
  return {h, INT_MAX};
}

// ---------------------------------------------------------------------------
// Backbone and boundary

// Vertices of q (pointed at vdot) lying on the 2-core of its one-point encoding.
inline std::vector<int> backbone(const Map& q, int vdot) {
  EncodeTrace tr;
  LabeledMap lm = encode({q, vdot, -1, 0}, &tr);
  const Map& m = lm.map;
  std::vector<int> deg(m.num_vertices());
  for (int v = 0; v < m.num_vertices(); ++v) deg[v] = m.vertex_degree(v);
  std::vector<char> alive(m.num_vertices(), 1);
  std::vector<int> st;
  for (int v = 0; v < m.num_vertices(); ++v)
    if (deg[v] <= 1) st.push_back(v);
  while (!st.empty()) {
    int v = st.back();
    st.pop_back();
    if (!alive[v]) continue;
    alive[v] = 0;
    for (int h : m.vertex_half_edges(v)) {
      int u = m.target(h);
      if (alive[u] && u != v && --deg[u] <= 1) st.push_back(u);
    }
  }
  std::vector<int> out;
  for (int v = 0; v < m.num_vertices(); ++v)
    if (alive[v]) out.push_back(tr.qvertex[v]);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<int> boundary_vertices(const Map& q) {
  std::vector<char> on(q.num_vertices(), 0);
  for (int f : q.holes())
    for (int h : q.face_half_edges(f)) on[q.origin(h)] = 1;
  std::vector<int> out;
  for (int v = 0; v < q.num_vertices(); ++v)
    if (on[v]) out.push_back(v);
  return out;
}

}  // namespace qsurf

namespace qsurf {

// Vertices of the scheme of a labeled map after dropping the root pendant
// (and smoothing what it leaves at degree two) that touch no hole, as
// vertices of the decoded quadrangulation.
inline std::vector<int> free_scheme_nodes(const LabeledMap& lm, const std::vector<int>& qvertex) {
  SchemeExtraction ex;
  try {
    ex = extract_scheme(lm);
  } catch (const Error& e) {
    if (e.code == Errc::DegenerateTreeCase) return {};
    throw;
  }
  const Map& s = ex.scheme.map;
  std::vector<int> deg(s.num_vertices());
  for (int v = 0; v < s.num_vertices(); ++v) deg[v] = s.vertex_degree(v);
  int r = s.root(), pend = -1;
  if (deg[s.target(r)] == 1) pend = s.target(r);
  else if (deg[s.origin(r)] == 1) pend = s.origin(r);
  if (pend >= 0) {
    int u = pend == s.target(r) ? s.origin(r) : s.target(r);
    --deg[u];
    deg[pend] = 0;
  }
  std::vector<char> on_hole(s.num_vertices(), 0);
  for (int f : s.holes())
    for (int h : s.face_half_edges(f)) on_hole[s.origin(h)] = 1;
  std::vector<int> out;
  for (int v = 0; v < s.num_vertices(); ++v)
    if (deg[v] >= 3 && !on_hole[v]) out.push_back(qvertex[ex.node_of[v]]);
  return out;
}

}  // namespace qsurf
