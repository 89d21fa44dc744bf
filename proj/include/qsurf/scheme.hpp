#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <unordered_set>
#include <vector>

#include "qsurf/bijection.hpp"
#include "qsurf/map.hpp"

namespace qsurf {

using BigInt = mpz_class;

inline BigInt binom(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

inline BigInt pow3(long m) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 3, static_cast<unsigned long>(m));
  return r;
}

// Ordered forests of xi plane trees with m edges in total (cycle lemma).
inline BigInt count_forests(int xi, int m) {
  if (xi < 1 || m < 0) return 0;
  BigInt r = binom(2L * m + xi, m) * xi;
  mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(2 * m + xi));
  return r;
}

inline BigInt count_labeled_forests(int xi, int m) { return count_forests(xi, m) * pow3(m); }

// Paths of xi steps in {-1,0,1} from a to b.
inline BigInt count_interior_bridges(int xi, long a, long b) {
  long d = std::labs(b - a);
  if (xi < 1 || d > xi) return 0;
  BigInt r = 0;
  for (long down = 0; 2 * down + d <= xi; ++down) r += binom(xi, down) * binom(xi - down, down + d);
  return r;
}

// Paths of xi steps, each >= -1, from a to b.
inline BigInt count_boundary_bridges(int xi, long a, long b) {
  long d = b - a;
  if (xi < 1 || d < -xi) return 0;
  return binom(d + 2L * xi - 1, xi - 1);
}

// Forest of xi trees read along its contour: +1 goes down to a new vertex,
// -1 goes back up, 0 crosses a floor edge to the next tree root (the last 0
// reaches the appended vertex-tree). labels[k] is the label of the k-th
// discovered non-floor vertex relative to its tree root.
struct LabeledForest {
  int xi = 1;
  std::vector<std::int8_t> steps;
  std::vector<int> labels;

  int mass() const { return (static_cast<int>(steps.size()) - xi) / 2; }
  bool operator==(const LabeledForest& o) const { return xi == o.xi && steps == o.steps && labels == o.labels; }
};

inline bool valid_forest(const LabeledForest& f) {
  int depth = 0, zeros = 0, k = 0;
  std::vector<int> stack{0};
  for (auto s : f.steps) {
    if (s == 1) {
      if (k >= static_cast<int>(f.labels.size())) return false;
      int l = f.labels[k++];
      if (std::abs(l - stack.back()) > 1) return false;
      stack.push_back(l);
      ++depth;
    } else if (s == -1) {
      if (depth == 0) return false;
      stack.pop_back();
      --depth;
    } else {
      if (depth != 0) return false;
      ++zeros;
    }
  }
  return depth == 0 && zeros == f.xi && k == static_cast<int>(f.labels.size()) && f.xi >= 1;
}

struct ContourPair {
  std::vector<int> C, L;
};

inline ContourPair contour_pair(const LabeledForest& f) {
  ContourPair cp;
  int c = f.xi, k = 0;
  std::vector<int> stack{0};
  cp.C.push_back(c);
  cp.L.push_back(0);
  for (auto s : f.steps) {
    if (s == 1) { stack.push_back(f.labels[k++]); ++c; }
    else if (s == -1) { stack.pop_back(); --c; }
    else --c;
    cp.C.push_back(c);
    cp.L.push_back(stack.back());
  }
  return cp;
}

inline LabeledForest forest_from_contour(const ContourPair& cp) {
  LabeledForest f;
  f.xi = cp.C.front();
  int floor = f.xi;
  for (std::size_t i = 1; i < cp.C.size(); ++i) {
    int d = cp.C[i] - cp.C[i - 1];
    if (d == 1) { f.steps.push_back(1); f.labels.push_back(cp.L[i]); }
    else if (cp.C[i - 1] == floor) { f.steps.push_back(0); --floor; }
    else f.steps.push_back(-1);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Schemes

enum class Kind : std::int8_t { Hole, Internal, Boundary };

struct Scheme {
  Map map;
  int fdot2 = -1;

  int q() const { return fdot2 >= 0 ? 2 : 1; }
  Kind kind(int e) const {
    if (map.is_hole(map.face(e))) return Kind::Hole;
    return map.is_hole(map.face(map.alpha(e))) ? Kind::Boundary : Kind::Internal;
  }
  bool in_F(int e) const { return kind(e) != Kind::Hole; }
};

inline std::vector<int> canonical_code(const Scheme& s) {
  auto perm = canonical_order(s.map);
  auto code = canonical_code(s.map);
  if (s.fdot2 >= 0) {
    int best = s.map.size();
    for (int h : s.map.face_half_edges(s.fdot2)) best = std::min(best, perm[h]);
    code.push_back(-5000000 - best);
  }
  return code;
}

inline LabeledCheck validate_scheme(const Scheme& s) {
  LabeledMap probe{s.map, std::vector<int>(s.map.num_vertices(), 0), s.fdot2};
  LabeledCheck r;
  for (auto& v : validate_labeled(probe).violations)
    if (v != "edge step" && v != "hole step") r.fail(v);
  const Map& m = s.map;
  int low = 0;
  for (int v = 0; v < m.num_vertices(); ++v) {
    int d = m.vertex_degree(v);
    if (d >= 3) continue;
    ++low;
    if (d == 1 && v != m.origin(m.root()) && v != m.target(m.root())) r.fail("degree-1 vertex off the root");
    if (d == 2 && v != m.origin(m.root())) r.fail("degree-2 vertex is not the root origin");
  }
  if (low > 1) r.fail("more than one vertex of degree below 3");
  return r;
}

inline bool is_dominant(const Scheme& s) {
  int ones = 0;
  for (int v = 0; v < s.map.num_vertices(); ++v) {
    int d = s.map.vertex_degree(v);
    if (d == 1) ++ones;
    else if (d != 3) return false;
  }
  return ones == 1;
}

// ---------------------------------------------------------------------------
// Decomposition

struct Decomposition {
  Scheme scheme;
  std::vector<int> xi;                   // per scheme half-edge
  std::vector<LabeledForest> forest;     // per scheme half-edge in F
  std::vector<std::vector<int>> bridge;  // per scheme half-edge in F, relative to the root node
  std::vector<int> node_label;           // per scheme vertex
};

struct SchemeExtraction {
  Scheme scheme;
  std::vector<std::vector<int>> chain;  // m half-edges replacing each scheme half-edge
  std::vector<char> floor_vertex;
  std::vector<char> floor_edge;  // per m half-edge
  std::vector<int> node_of;      // scheme vertex -> m vertex
};

inline SchemeExtraction extract_scheme(const LabeledMap& lm) {
  const Map& m = lm.map;
  if (m.genus() == 0 && m.num_holes() == 0 && !lm.two_point())
    throw Error(Errc::DegenerateTreeCase, "plane tree has no scheme");
  const int V = m.num_vertices(), N = m.size();
  const int r0 = m.origin(m.root()), r1 = m.target(m.root());
  std::vector<int> deg(V);
  for (int v = 0; v < V; ++v) deg[v] = m.vertex_degree(v);
  SchemeExtraction ex;
  ex.floor_vertex.assign(V, 1);
  ex.floor_edge.assign(N, 1);
  std::vector<int> st;
  for (int v = 0; v < V; ++v)
    if (deg[v] == 1 && v != r0 && v != r1) st.push_back(v);
  while (!st.empty()) {
    int v = st.back();
    st.pop_back();
    if (!ex.floor_vertex[v] || deg[v] != 1) continue;
    ex.floor_vertex[v] = 0;
    for (int h : m.vertex_half_edges(v)) {
      if (!ex.floor_edge[h]) continue;
      ex.floor_edge[h] = ex.floor_edge[m.alpha(h)] = 0;
      int u = m.target(h);
      deg[v] = 0;
      if (--deg[u] == 1 && u != r0 && u != r1) st.push_back(u);
      break;
    }
  }
  std::vector<char> node(V, 0);
  for (int v = 0; v < V; ++v) node[v] = ex.floor_vertex[v] && deg[v] >= 3;
  if (deg[r0] == 1) node[r0] = 1;
  if (deg[r1] == 1) node[r1] = 1;
  if (deg[r0] != 1 && deg[r1] != 1) node[r0] = 1;

  std::vector<int> sid(N, -1);
  for (int v = 0; v < V; ++v)
    if (node[v]) ex.node_of.push_back(v);
  std::vector<int> chain_of(N, -1);
  for (int v : ex.node_of) {
    for (int x : m.vertex_half_edges(v)) {
      if (!ex.floor_edge[x] || sid[x] >= 0) continue;
      std::vector<int> ch{x};
      int t = m.target(x);
      while (!node[t]) {
        int back = m.alpha(ch.back()), y = -1;
        for (int z : m.vertex_half_edges(t))
          if (ex.floor_edge[z] && z != back) { y = z; break; }
        ch.push_back(y);
        t = m.target(y);
      }
      int k = static_cast<int>(ex.chain.size());
      std::vector<int> rev;
      for (auto it = ch.rbegin(); it != ch.rend(); ++it) rev.push_back(m.alpha(*it));
      sid[ch.front()] = k;
      sid[rev.front()] = k + 1;
      for (int z : ch) chain_of[z] = k;
      for (int z : rev) chain_of[z] = k + 1;
      ex.chain.push_back(std::move(ch));
      ex.chain.push_back(std::move(rev));
    }
  }
  const int S = static_cast<int>(ex.chain.size());
  std::vector<int> next_s(S, -1);
  for (int v : ex.node_of) {
    std::vector<int> rot;
    for (int x : m.vertex_half_edges(v))
      if (ex.floor_edge[x]) rot.push_back(sid[x]);
    for (std::size_t i = 0; i < rot.size(); ++i) next_s[rot[i]] = rot[(i + 1) % rot.size()];
  }
  std::vector<int> holes;
  for (int f : m.holes()) holes.push_back(chain_of[m.face_rep(f)]);
  ex.scheme.map = Map::from_next(std::move(next_s), chain_of[m.root()], holes);
  if (lm.two_point())
    for (int h : m.face_half_edges(lm.fdot2))
      if (chain_of[h] >= 0) { ex.scheme.fdot2 = ex.scheme.map.face(chain_of[h]); break; }
  // scheme vertices are numbered by orbit; realign node_of
  std::vector<int> node_of(ex.scheme.map.num_vertices());
  for (int s = 0; s < S; ++s) node_of[ex.scheme.map.origin(s)] = m.origin(ex.chain[s].front());
  ex.node_of = std::move(node_of);
  return ex;
}

namespace detail {

// Pendant tree sitting in the corner of m just before floor half-edge h.
inline void read_corner_tree(const LabeledMap& lm, const std::vector<char>& floor_edge, int h, int root_label,
                             LabeledForest& f, std::vector<char>& seen) {
  const Map& m = lm.map;
  int g = m.prev(h);
  while (!floor_edge[g]) g = m.prev(g);
  int x = m.next(g);
  while (x != h) {
    int e = x >> 1;
    if (!seen[e]) {
      seen[e] = 1;
      f.steps.push_back(1);
      f.labels.push_back(lm.label[m.target(x)] - root_label);
    } else {
      f.steps.push_back(-1);
    }
    x = m.phi(x);
  }
}

}  // namespace detail

inline Decomposition decompose(const LabeledMap& lm) {
  auto ex = extract_scheme(lm);
  const Map& m = lm.map;
  const Map& s = ex.scheme.map;
  const int S = s.size();
  Decomposition d;
  d.scheme = ex.scheme;
  d.xi.resize(S);
  d.forest.resize(S);
  d.bridge.resize(S);
  const int base = lm.label[m.origin(ex.chain[s.root()].front())];
  d.node_label.resize(s.num_vertices());
  for (int v = 0; v < s.num_vertices(); ++v) d.node_label[v] = lm.label[ex.node_of[v]] - base;
  std::vector<char> seen(m.num_edges(), 0);
  for (int e = 0; e < S; ++e) {
    const auto& ch = ex.chain[e];
    d.xi[e] = static_cast<int>(ch.size());
    if (!d.scheme.in_F(e)) continue;
    auto& b = d.bridge[e];
    for (int x : ch) b.push_back(lm.label[m.origin(x)] - base);
    b.push_back(lm.label[m.target(ch.back())] - base);
    auto& f = d.forest[e];
    f.xi = d.xi[e];
    for (int x : ch) {
      detail::read_corner_tree(lm, ex.floor_edge, x, lm.label[m.origin(x)], f, seen);
      f.steps.push_back(0);
    }
  }
  return d;
}

inline LabeledMap recompose(const Decomposition& d) {
  const Scheme& sc = d.scheme;
  const Map& s = sc.map;
  const int S = s.size();
  int nv = s.num_vertices();
  int ne = 0;
  std::vector<std::vector<int>> chain(S), cvert(S);
  for (int e = 0; e < S; e += 2) {
    int xi = d.xi[e];
    if (xi < 1 || d.xi[e + 1] != xi) throw Error(Errc::InvariantViolation, "xi pairing");
    for (int j = 0; j < xi; ++j) chain[e].push_back(2 * (ne + j));
    ne += xi;
    cvert[e].push_back(s.origin(e));
    for (int j = 1; j < xi; ++j) cvert[e].push_back(nv++);
    cvert[e].push_back(s.target(e));
    for (int j = xi - 1; j >= 0; --j) chain[e + 1].push_back(chain[e][j] ^ 1);
    cvert[e + 1].assign(cvert[e].rbegin(), cvert[e].rend());
  }
  std::vector<int> label(nv, 0);
  for (int v = 0; v < s.num_vertices(); ++v) label[v] = d.node_label[v];
  for (int e = 0; e < S; ++e) {
    if (!sc.in_F(e)) continue;
    const auto& b = d.bridge[e];
    if (static_cast<int>(b.size()) != d.xi[e] + 1) throw Error(Errc::InvariantViolation, "bridge length");
    if (b.front() != label[cvert[e].front()] || b.back() != label[cvert[e].back()])
      throw Error(Errc::InvariantViolation, "bridge endpoints");
    for (int j = 1; j < d.xi[e]; ++j) label[cvert[e][j]] = b[j];
  }
  std::vector<std::vector<int>> rot(nv);
  std::vector<std::vector<std::vector<int>>> kids(S);
  for (int e = 0; e < S; ++e) {
    if (!sc.in_F(e)) continue;
    const auto& f = d.forest[e];
    if (f.xi != d.xi[e] || !valid_forest(f)) throw Error(Errc::InvariantViolation, "forest");
    kids[e].assign(f.xi, {});
    int tree = 0, k = 0;
    std::vector<int> path;  // vertices from the tree root downwards
    for (auto st : f.steps) {
      if (st == 0) { ++tree; continue; }
      if (st == -1) { path.pop_back(); continue; }
      int x = 2 * ne++;
      int v = nv++;
      int parent = path.empty() ? cvert[e][tree] : path.back();
      label.push_back(label[cvert[e][tree]] + f.labels[k++]);
      rot.push_back({x ^ 1});
      if (path.empty()) kids[e][tree].push_back(x);
      else rot[parent].push_back(x);
      path.push_back(v);
    }
  }
  auto append = [](std::vector<int>& r, const std::vector<int>& more) { r.insert(r.end(), more.begin(), more.end()); };
  for (int v = 0; v < s.num_vertices(); ++v) {
    int h0 = s.vertex_rep(v), h = h0;
    do {
      if (sc.in_F(h)) append(rot[v], kids[h][0]);
      rot[v].push_back(chain[h][0]);
      h = s.next(h);
    } while (h != h0);
  }
  for (int e = 0; e < S; e += 2) {
    int xi = d.xi[e];
    for (int j = 1; j < xi; ++j) {
      auto& r = rot[cvert[e][j]];
      r.push_back(chain[e][j - 1] ^ 1);
      if (sc.in_F(e)) append(r, kids[e][j]);
      r.push_back(chain[e][j]);
      if (sc.in_F(e + 1)) append(r, kids[e + 1][xi - j]);
    }
  }
  const int N = 2 * ne;
  std::vector<int> next(N, -1), org(N, -1);
  for (int v = 0; v < nv; ++v)
    for (std::size_t i = 0; i < rot[v].size(); ++i) {
      next[rot[v][i]] = rot[v][(i + 1) % rot[v].size()];
      org[rot[v][i]] = v;
    }
  int r = s.root();
  int root = s.vertex_degree(s.target(r)) == 1 ? chain[r].back() : chain[r].front();
  std::vector<int> holes;
  for (int f : s.holes()) holes.push_back(chain[s.face_rep(f)][0]);
  LabeledMap lm;
  lm.map = Map::from_next(std::move(next), root, holes);
  if (sc.fdot2 >= 0) lm.fdot2 = lm.map.face(chain[s.face_rep(sc.fdot2)][0]);
  lm.label.assign(lm.map.num_vertices(), 0);
  const int base = label[org[root]];
  for (int h = 0; h < N; ++h) lm.label[lm.map.origin(h)] = label[org[h]] - base;
  return lm;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace detail {

// Rooted maps with V vertices and E edges, grown in discovery order from the
// root so each rooted map is produced once. Vertex 0 is the root origin; a
// vertex of degree below 3 may only be the root origin or, with degree 1, the
// root target. Closed faces are counted on the fly.
struct SchemeGrower {
  int N, V, F;
  double budget, work = 0;
  std::vector<int> nx, a, phi;
  int nh = 0, nv = 0, closed = 0;
  bool low_used = false;
  std::function<void(const std::vector<int>&, const std::vector<int>&)> emit;

  SchemeGrower(int E, int V_, int F_, double b) : N(2 * E), V(V_), F(F_), budget(b), nx(N), a(N, -1), phi(N, -1) {}

  bool feasible() const {
    int rv = V - nv, rh = N - nh;
    if (rv == 0) return rh == 0;
    return rh >= 3 * rv - (low_used ? 0 : 2);
  }
  void add_vertex(int d) {
    for (int i = 0; i < d; ++i) nx[nh + i] = nh + (i + 1) % d;
    nh += d;
    ++nv;
  }
  void drop_vertex(int d) {
    nh -= d;
    --nv;
  }
  int closes(int h) const {
    int x = phi[h];
    while (x >= 0 && x != h) x = phi[x];
    return x == h;
  }
  void pair(int h, int k) {
    a[h] = k;
    a[k] = h;
    phi[h] = nx[k];
    phi[k] = nx[h];
  }
  void unpair(int h, int k) { a[h] = a[k] = phi[h] = phi[k] = -1; }

  void rec(int h) {
    if ((work += 1) > budget) throw Error(Errc::BudgetExceeded, "scheme enumeration budget exceeded");
    while (h < nh && a[h] >= 0) ++h;
    if (h == nh) {
      if (nh == N && nv == V && closed == F) emit(a, nx);
      return;
    }
    auto step = [&](int k) {
      pair(h, k);
      int c = closes(h);
      if (closes(k)) {
        bool same = false;
        for (int x = phi[h]; c && x != h; x = phi[x]) same |= x == k;
        c += !same;
      }
      closed += c;
      if (closed <= F) rec(h + 1);
      closed -= c;
      unpair(h, k);
    };
    for (int k = h + 1; k < nh; ++k)
      if (a[k] < 0) step(k);
    if (nv < V) {
      int base = nh;
      for (int d = 1; d <= N - nh; ++d) {
        bool low = d < 3;
        if (low && (low_used || d == 2 || h != 0 || nv != 1)) continue;
        add_vertex(d);
        bool was = low_used;
        if (low) low_used = true;
        if (feasible()) step(base);
        low_used = was;
        drop_vertex(d);
      }
    }
  }

  void run() {
    for (int d = 1; d <= N; ++d) {
      low_used = d < 3;
      add_vertex(d);
      if (feasible()) rec(0);
      drop_vertex(d);
    }
  }
};

}  // namespace detail

// Every scheme of genus g with p holes and q in {1,2} marked non-hole faces,
// up to root-preserving isomorphism. Holes are labeled 0..p-1. budget bounds
// the size of the search.
inline std::vector<Scheme> enumerate_schemes(int g, int p, int q, double budget = 2e7) {
  if (q < 1 || q > 2 || g < 0 || p < 0) throw Error(Errc::ConfigError, "bad (g,p,q)");
  const int F = p + q;
  const int Emax = 6 * g + 3 * F - 4;
  std::vector<Scheme> out;
  std::unordered_set<std::vector<int>, VecHash> seen;
  double work = 0;
  for (int E = 1; E <= Emax; ++E) {
    const int V = 2 - 2 * g + E - F;
    if (V < 1) continue;
    detail::SchemeGrower gr(E, V, F, budget - work);
    gr.emit = [&](const std::vector<int>& a, const std::vector<int>& nx) {
      Map base(a, nx, 0, {});
      std::vector<int> pick;
      std::vector<char> used(F, 0);
      std::function<void()> holes = [&]() {
        if (static_cast<int>(pick.size()) < p) {
          for (int f = 0; f < F; ++f) {
            if (used[f]) continue;
            used[f] = 1;
            pick.push_back(f);
            holes();
            pick.pop_back();
            used[f] = 0;
          }
          return;
        }
        std::vector<int> hs;
        for (int f : pick) hs.push_back(base.face_rep(f));
        Map m(a, nx, 0, hs);
        std::vector<int> f2s{-1};
        if (q == 2) {
          f2s.clear();
          for (int f = 0; f < F; ++f)
            if (!m.is_hole(f)) f2s.push_back(f);
        }
        for (int f2 : f2s) {
          Scheme sc{m, f2};
          if (!validate_scheme(sc)) continue;
          if (!seen.insert(canonical_code(sc)).second) continue;
          auto perm = canonical_order(m);
          Map cm = relabel(m, perm);
          out.push_back(Scheme{cm, f2 >= 0 ? cm.face(perm[m.face_rep(f2)]) : -1});
        }
      };
      holes();
    };
    gr.run();
    work += gr.work;
  }
  return out;
}

// Signature of a scheme for counting: number of internal edges and the
// number of half-edges around each hole.
struct SchemeSignature {
  int internal_edges = 0;
  std::vector<int> hole_sizes;
  auto operator<=>(const SchemeSignature&) const = default;
};

inline SchemeSignature signature(const Scheme& s) {
  SchemeSignature sig;
  sig.hole_sizes.assign(s.map.num_holes(), 0);
  for (int e = 0; e < s.map.size(); ++e) {
    Kind k = s.kind(e);
    if (k == Kind::Internal && e % 2 == 0) ++sig.internal_edges;
    if (k == Kind::Hole) ++sig.hole_sizes[s.map.hole_index(s.map.face(e))];
  }
  return sig;
}

// |M^q_{n,sigma}| in genus g, by summing the decomposition over schemes,
// chain lengths and node labels. Exponential; meant for small n.
inline BigInt count_labeled_maps(int n, const std::vector<int>& sigma, int q, int g = 0,
                                 const std::vector<Scheme>* schemes = nullptr) {
  const int p = static_cast<int>(sigma.size());
  const int total = n + std::accumulate(sigma.begin(), sigma.end(), 0);
  if (g == 0 && p == 0 && q == 1) {
    BigInt cat = binom(2L * n, n);
    mpz_divexact_ui(cat.get_mpz_t(), cat.get_mpz_t(), static_cast<unsigned long>(n + 1));
    return n >= 1 ? BigInt(cat * pow3(n)) : BigInt(0);
  }
  if (total > 40) throw Error(Errc::BudgetExceeded, "brute-force count limited to small families");
  std::vector<Scheme> own;
  if (!schemes) { own = enumerate_schemes(g, p, q); schemes = &own; }
  BigInt sum = 0;
  for (const Scheme& sc : *schemes) {
    const Map& s = sc.map;
    const int E = s.num_edges(), V = s.num_vertices();
    std::vector<int> xi(E, 1);
    std::vector<Kind> kind(s.size());
    for (int h = 0; h < s.size(); ++h) kind[h] = sc.kind(h);
    const int root = s.origin(s.root());
    std::function<void(int, int)> alloc = [&](int e, int used) {
      if (e < E) {
        for (int x = 1; used + x <= total; ++x) {
          xi[e] = x;
          alloc(e + 1, used + x);
        }
        return;
      }
      std::vector<int> hs(p, 0);
      int X = 0;
      for (int h = 0; h < s.size(); ++h) {
        if (kind[h] == Kind::Hole) hs[s.hole_index(s.face(h))] += xi[h / 2];
        else X += xi[h / 2];
      }
      if (hs != sigma) return;
      BigInt forests = count_labeled_forests(X, total - used);
      if (forests == 0) return;
      // node labels: each node within distance sum of xi from the root
      std::vector<int> lab(V, 0);
      BigInt labels = 0;
      std::function<void(int, BigInt)> node = [&](int v, BigInt acc) {
        if (v == V) { labels += acc; return; }
        for (int l = -used; l <= used; ++l) {
          if (v == root && l != 0) continue;
          lab[v] = l;
          BigInt w = acc;
          for (int h = 0; h < s.size() && w != 0; ++h) {
            int a = s.origin(h), b = s.target(h);
            if (std::max(a, b) != v) continue;
            if (kind[h] == Kind::Internal && h % 2 == 0) w *= count_interior_bridges(xi[h / 2], lab[a], lab[b]);
            if (kind[h] == Kind::Boundary) w *= count_boundary_bridges(xi[h / 2], lab[a], lab[b]);
          }
          if (w != 0) node(v + 1, w);
        }
      };
      node(0, 1);
      sum += labels * forests;
    };
    alloc(0, 0);
  }
  return sum;
}

}  // namespace qsurf
