#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "qsurf/error.hpp"

namespace qsurf {

// Rooted map on an orientable surface, stored as two permutations of the
// half-edges. next is the rotation at the origin vertex; phi = next o alpha
// walks the face lying to the left of a half-edge.
class Map {
 public:
  Map() = default;

  Map(std::vector<int> alpha, std::vector<int> next, int root, const std::vector<int>& holes)
      : alpha_(std::move(alpha)), next_(std::move(next)), root_(root) {
    const int n = static_cast<int>(alpha_.size());
    if (n == 0 || n % 2) throw Error(Errc::NotInvolution, "half-edge count must be even and positive");
    if (static_cast<int>(next_.size()) != n) throw Error(Errc::NotPermutation, "alpha/next size mismatch");
    for (int h = 0; h < n; ++h) {
      int a = alpha_[h];
      if (a < 0 || a >= n || a == h || alpha_[a] != h)
        throw Error(Errc::NotInvolution, "alpha at " + std::to_string(h));
    }
    prev_.assign(n, -1);
    for (int h = 0; h < n; ++h) {
      int x = next_[h];
      if (x < 0 || x >= n || prev_[x] != -1) throw Error(Errc::NotPermutation, "next at " + std::to_string(h));
      prev_[x] = h;
    }
    if (root_ < 0 || root_ >= n) throw Error(Errc::NotPermutation, "root out of range");
    orbits();
    check_connected();
    for (int h : holes) {
      if (h < 0 || h >= n) throw Error(Errc::UnknownHoleFace, "hole half-edge " + std::to_string(h));
      int f = face_[h];
      if (std::find(holes_.begin(), holes_.end(), f) != holes_.end())
        throw Error(Errc::UnknownHoleFace, "hole listed twice");
      holes_.push_back(f);
    }
    hole_index_.assign(nf_, -1);
    for (int i = 0; i < static_cast<int>(holes_.size()); ++i) hole_index_[holes_[i]] = i;
    int defect = 2 - nv_ + num_edges() - nf_;
    if (defect < 0 || defect % 2) throw Error(Errc::NonOrientableInconsistency, "odd Euler defect");
  }

  // Canonical storage: alpha(2k) = 2k+1.
  static Map from_next(std::vector<int> next, int root, const std::vector<int>& holes) {
    std::vector<int> a(next.size());
    for (int h = 0; h < static_cast<int>(a.size()); ++h) a[h] = h ^ 1;
    return Map(std::move(a), std::move(next), root, holes);
  }

  int size() const { return static_cast<int>(alpha_.size()); }
  int num_edges() const { return size() / 2; }
  int num_vertices() const { return nv_; }
  int num_faces() const { return nf_; }
  int genus() const { return (2 - nv_ + num_edges() - nf_) / 2; }
  int root() const { return root_; }

  int alpha(int h) const { return alpha_[h]; }
  int next(int h) const { return next_[h]; }
  int prev(int h) const { return prev_[h]; }
  int phi(int h) const { return next_[alpha_[h]]; }
  int phi_inv(int h) const { return alpha_[prev_[h]]; }
  int origin(int h) const { return vert_[h]; }
  int target(int h) const { return vert_[alpha_[h]]; }
  int face(int h) const { return face_[h]; }

  int vertex_rep(int v) const { return vrep_[v]; }
  int face_rep(int f) const { return frep_[f]; }
  int vertex_degree(int v) const { return vdeg_[v]; }
  int face_degree(int f) const { return fdeg_[f]; }

  const std::vector<int>& alpha_perm() const { return alpha_; }
  const std::vector<int>& next_perm() const { return next_; }
  const std::vector<int>& holes() const { return holes_; }
  int num_holes() const { return static_cast<int>(holes_.size()); }
  int hole_index(int f) const { return hole_index_[f]; }
  bool is_hole(int f) const { return hole_index_[f] >= 0; }

  // Half-edges around a vertex in rotation order, or around a face in phi order.
  std::vector<int> vertex_half_edges(int v) const {
    std::vector<int> r;
    int h = vrep_[v];
    do { r.push_back(h); h = next_[h]; } while (h != vrep_[v]);
    return r;
  }
  std::vector<int> face_half_edges(int f) const {
    std::vector<int> r;
    int h = frep_[f];
    do { r.push_back(h); h = phi(h); } while (h != frep_[f]);
    return r;
  }

  bool operator==(const Map& o) const {
    return alpha_ == o.alpha_ && next_ == o.next_ && root_ == o.root_ && holes_ == o.holes_;
  }

 private:
  void orbits() {
    const int n = size();
    vert_.assign(n, -1);
    face_.assign(n, -1);
    for (int h = 0; h < n; ++h) {
      if (vert_[h] < 0) {
        int d = 0, x = h;
        do { vert_[x] = nv_; x = next_[x]; ++d; } while (x != h);
        vrep_.push_back(h);
        vdeg_.push_back(d);
        ++nv_;
      }
      if (face_[h] < 0) {
        int d = 0, x = h;
        do { face_[x] = nf_; x = phi(x); ++d; } while (x != h);
        frep_.push_back(h);
        fdeg_.push_back(d);
        ++nf_;
      }
    }
  }

  void check_connected() const {
    const int n = size();
    std::vector<char> seen(n, 0);
    std::vector<int> st{0};
    seen[0] = 1;
    int cnt = 1;
    while (!st.empty()) {
      int h = st.back();
      st.pop_back();
      for (int x : {alpha_[h], next_[h]})
        if (!seen[x]) { seen[x] = 1; ++cnt; st.push_back(x); }
    }
    if (cnt != n) throw Error(Errc::Disconnected, "map is not connected");
  }

  std::vector<int> alpha_, next_, prev_;
  int root_ = 0;
  std::vector<int> holes_, hole_index_;
  std::vector<int> vert_, face_, vrep_, frep_, vdeg_, fdeg_;
  int nv_ = 0, nf_ = 0;
};

inline int genus(const Map& m) { return m.genus(); }
inline int face_degree(const Map& m, int f) { return m.face_degree(f); }

inline bool is_bipartite(const Map& m) {
  std::vector<int> col(m.num_vertices(), -1);
  for (int s = 0; s < m.num_vertices(); ++s) {
    if (col[s] >= 0) continue;
    col[s] = 0;
    std::vector<int> st{s};
    while (!st.empty()) {
      int v = st.back();
      st.pop_back();
      for (int h : m.vertex_half_edges(v)) {
        int w = m.target(h);
        if (col[w] < 0) { col[w] = col[v] ^ 1; st.push_back(w); }
        else if (col[w] == col[v]) return false;
      }
    }
  }
  return true;
}

struct QuadCheck {
  bool ok = false;
  std::string reason;
  explicit operator bool() const { return ok; }
};

inline QuadCheck validate_quadrangulation(const Map& m, int n, const std::vector<int>& sigma, int g = 0) {
  if (m.genus() != g) return {false, "genus"};
  if (!is_bipartite(m)) return {false, "not bipartite"};
  if (m.num_holes() != static_cast<int>(sigma.size())) return {false, "hole count"};
  for (int i = 0; i < m.num_holes(); ++i)
    if (m.face_degree(m.holes()[i]) != 2 * sigma[i]) return {false, "hole degree"};
  int internal = 0;
  for (int f = 0; f < m.num_faces(); ++f) {
    if (m.is_hole(f)) continue;
    if (m.face_degree(f) != 4) return {false, "internal face degree"};
    ++internal;
  }
  if (internal != n) return {false, "internal face count"};
  return {true, ""};
}

// Distances from src, -1 when unreachable.
inline std::vector<int> bfs(const Map& m, int src) {
  std::vector<int> d(m.num_vertices(), -1);
  std::vector<int> q;
  q.reserve(m.num_vertices());
  d[src] = 0;
  q.push_back(src);
  for (std::size_t i = 0; i < q.size(); ++i) {
    int v = q[i];
    int h0 = m.vertex_rep(v), h = h0;
    do {
      int w = m.target(h);
      if (d[w] < 0) { d[w] = d[v] + 1; q.push_back(w); }
      h = m.next(h);
    } while (h != h0);
  }
  return d;
}

// Relabels half-edges in discovery order from the root, pairing 2k with 2k+1.
// perm[old] = new.
inline std::vector<int> canonical_order(const Map& m) {
  const int n = m.size();
  std::vector<int> perm(n, -1), order;
  order.reserve(n);
  auto take = [&](int h) {
    perm[h] = static_cast<int>(order.size());
    order.push_back(h);
    perm[m.alpha(h)] = static_cast<int>(order.size());
    order.push_back(m.alpha(h));
  };
  take(m.root());
  for (std::size_t i = 0; i < order.size(); ++i) {
    int x = m.next(order[i]);
    if (perm[x] < 0) take(x);
  }
  return perm;
}

inline Map relabel(const Map& m, const std::vector<int>& perm) {
  const int n = m.size();
  std::vector<int> a(n), nx(n), holes;
  for (int h = 0; h < n; ++h) {
    a[perm[h]] = perm[m.alpha(h)];
    nx[perm[h]] = perm[m.next(h)];
  }
  for (int f : m.holes()) holes.push_back(perm[m.face_rep(f)]);
  return Map(std::move(a), std::move(nx), perm[m.root()], holes);
}

inline Map canonical(const Map& m) { return relabel(m, canonical_order(m)); }

// Isomorphism-invariant code of a rooted map with ordered holes.
inline std::vector<int> canonical_code(const Map& m) {
  auto perm = canonical_order(m);
  std::vector<int> code(m.size());
  for (int h = 0; h < m.size(); ++h) code[perm[h]] = perm[m.next(h)];
  for (int f : m.holes()) {
    int best = m.size();
    for (int h : m.face_half_edges(f)) best = std::min(best, perm[h]);
    code.push_back(-1 - best);
  }
  return code;
}

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::uint64_t h = 1469598103934665603ull;
    for (int x : v) { h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)); h *= 1099511628211ull; }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace qsurf
