#pragma once

#include <algorithm>
#include <vector>

#include "qsurf/map.hpp"

namespace qsurf {

// Letters are +-(k+1) for generator k.
using Word = std::vector<int>;

inline void free_reduce(Word& w) {
  Word out;
  out.reserve(w.size());
  for (int x : w) {
    if (!out.empty() && out.back() == -x) out.pop_back();
    else out.push_back(x);
  }
  w.swap(out);
}

inline Word inverse(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (int& x : r) x = -x;
  return r;
}

// Fundamental group of a map with its holes removed, from a tree-cotree
// decomposition. Every half-edge carries a word in the generators; a closed
// walk is null-homotopic iff the product of its words is trivial. With holes
// the group is free; a closed torus gives Z^2; higher closed genus is solved
// with Dehn's algorithm on the one-vertex one-face relator.
class FundamentalGroup {
 public:
  explicit FundamentalGroup(const Map& m) : m_(m) {
    const int N = m.size();
    std::vector<char> kind(m.num_edges(), 0);  // 1 tree, 2 cotree, 0 generator
    // spanning tree by BFS from vertex 0
    std::vector<char> vseen(m.num_vertices(), 0);
    std::vector<int> q{0};
    vseen[0] = 1;
    for (std::size_t i = 0; i < q.size(); ++i)
      for (int h : m.vertex_half_edges(q[i]))
        if (!vseen[m.target(h)]) {
          vseen[m.target(h)] = 1;
          kind[h >> 1] = 1;
          q.push_back(m.target(h));
        }
    // dual forest rooted at the holes (or at face 0 when there are none)
    std::vector<int> parent(m.num_faces(), -1);  // half-edge of the face toward its parent
    std::vector<char> fseen(m.num_faces(), 0);
    std::vector<int> fq;
    if (m.num_holes() > 0) {
      for (int f : m.holes()) fseen[f] = 1, fq.push_back(f);
    } else {
      fseen[0] = 1;
      fq.push_back(0);
      root_face_ = 0;
    }
    std::vector<int> order;
    for (std::size_t i = 0; i < fq.size(); ++i)
      for (int h : m.face_half_edges(fq[i])) {
        if (kind[h >> 1]) continue;
        int g = m.face(m.alpha(h));
        if (fseen[g]) continue;
        fseen[g] = 1;
        kind[h >> 1] = 2;
        parent[g] = m.alpha(h);
        fq.push_back(g);
        order.push_back(g);
      }
    gen_.assign(m.num_edges(), -1);
    for (int e = 0; e < m.num_edges(); ++e)
      if (kind[e] == 0) gen_[e] = rank_++;
    word_.assign(N, {});
    for (int e = 0; e < m.num_edges(); ++e)
      if (gen_[e] >= 0) {
        word_[2 * e] = {gen_[e] + 1};
        word_[2 * e + 1] = {-(gen_[e] + 1)};
      }
    // leaves first: the boundary of a face multiplies to one
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      int f = *it, p = parent[f];
      Word w;
      for (int h = m.phi(p); h != p; h = m.phi(h)) append(w, word_[h]);
      free_reduce(w);
      word_[p] = inverse(w);
      word_[m.alpha(p)] = w;
    }
    if (m.num_holes() == 0 && m.genus() >= 2) {
      int p = m.face_rep(root_face_);
      int h = p;
      do {
        append(rel_, word_[h]);
        h = m.phi(h);
      } while (h != p);
      free_reduce(rel_);
      while (rel_.size() >= 2 && rel_.front() == -rel_.back()) {
        rel_.pop_back();
        rel_.erase(rel_.begin());
      }
      if (static_cast<int>(rel_.size()) != 4 * m.genus())
        throw Error(Errc::InvariantViolation, "surface relator has unexpected length");
      const int L = static_cast<int>(rel_.size());
      Word inv = inverse(rel_);
      for (int s = 0; s < L; ++s) {
        Word a, b;
        for (int i = 0; i < L; ++i) {
          a.push_back(rel_[(s + i) % L]);
          b.push_back(inv[(s + i) % L]);
        }
        sym_.push_back(a);
        sym_.push_back(b);
      }
    }
  }

  int rank() const { return rank_; }
  const Word& word(int h) const { return word_[h]; }
  const Word& relator() const { return rel_; }

  Word path_word(const std::vector<int>& hs) const {
    Word w;
    for (int h : hs) append(w, word_[h]);
    free_reduce(w);
    return w;
  }

  bool trivial(Word w) const {
    free_reduce(w);
    if (w.empty()) return true;
    if (m_.num_holes() > 0) return false;
    if (m_.genus() == 0) return true;
    if (m_.genus() == 1) {
      int a = 0, b = 0;
      for (int x : w) (std::abs(x) == 1 ? a : b) += x > 0 ? 1 : -1;
      return a == 0 && b == 0;
    }
    return dehn(std::move(w));
  }

  bool same_class(const Word& a, const Word& b) const {
    Word w = a;
    append(w, inverse(b));
    return trivial(std::move(w));
  }

  bool null_homotopic(const std::vector<int>& closed_walk) const { return trivial(path_word(closed_walk)); }

 private:
  static void append(Word& w, const Word& x) { w.insert(w.end(), x.begin(), x.end()); }

  bool dehn(Word w) const {
    const int L = static_cast<int>(rel_.size());
    bool changed = true;
    while (changed && !w.empty()) {
      changed = false;
      for (std::size_t i = 0; i < w.size() && !changed; ++i)
        for (const Word& r : sym_) {
          int k = 0;
          while (k < L && i + k < w.size() && w[i + k] == r[k]) ++k;
          if (2 * k <= L) continue;
          Word rest(r.begin() + k, r.end());
          Word rep = inverse(rest);
          Word nw(w.begin(), w.begin() + i);
          append(nw, rep);
          nw.insert(nw.end(), w.begin() + i + k, w.end());
          free_reduce(nw);
          w.swap(nw);
          changed = true;
          break;
        }
    }
    return w.empty();
  }

  const Map& m_;
  int rank_ = 0, root_face_ = -1;
  std::vector<int> gen_;
  std::vector<Word> word_;
  Word rel_;
  std::vector<Word> sym_;
};

}  // namespace qsurf
