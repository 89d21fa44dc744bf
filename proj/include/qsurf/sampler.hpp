#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "qsurf/bijection.hpp"
#include "qsurf/scheme.hpp"

namespace qsurf {

struct SamplerConfig {
  int n = 1;
  std::vector<int> sigma;
  int g = 0;
  int q = 1;
  std::uint64_t seed = 1;
  int max_n = 50000;
  long max_attempts = 10000000;
  double scheme_budget = 2e7;
};

namespace detail {

// k-1 distinct cut points in {1..total-1}: a uniform composition of total
// into k positive parts.
inline std::vector<int> random_composition(int total, int k, std::mt19937_64& rng) {
  std::vector<int> cuts;
  if (k > 1) {
    // Floyd's subset sampling
    std::vector<int> pick;
    for (int j = total - k + 1; j <= total - 1; ++j) {
      int t = std::uniform_int_distribution<int>(1, j)(rng);
      if (std::find(pick.begin(), pick.end(), t) != pick.end()) t = j;
      pick.push_back(t);
    }
    cuts = std::move(pick);
    std::sort(cuts.begin(), cuts.end());
  }
  std::vector<int> parts;
  int prev = 0;
  for (int c : cuts) { parts.push_back(c - prev); prev = c; }
  parts.push_back(total - prev);
  return parts;
}

// Uniform sequence of len steps, each >= -1, summing to 0.
inline std::vector<int> random_closed_boundary_walk(int len, std::mt19937_64& rng) {
  // weak composition of len into len parts, i.e. composition of 2len into len
  auto parts = random_composition(2 * len, len, rng);
  for (int& x : parts) x -= 2;
  return parts;
}

}  // namespace detail

// Uniform forest of xi trees with m edges and uniform label increments,
// by the cycle lemma on a shuffled word of m up-steps and m+xi down-steps.
inline LabeledForest random_labeled_forest(int xi, int m, std::mt19937_64& rng) {
  const int L = 2 * m + xi;
  std::vector<std::int8_t> w(L, -1);
  std::fill(w.begin(), w.begin() + m, 1);
  std::shuffle(w.begin(), w.end(), rng);
  std::vector<int> P(L + 1, 0);
  for (int i = 0; i < L; ++i) P[i + 1] = P[i] + w[i];
  std::vector<int> sufmin(L + 1, 0);
  sufmin[L] = 1 << 30;
  for (int i = L - 1; i >= 1; --i) sufmin[i] = std::min(sufmin[i + 1], P[i]);
  std::vector<int> starts;
  int pmin = 1 << 30;
  for (int j = 0; j < L; ++j) {
    if (P[j] < pmin) {
      pmin = P[j];
      if (sufmin[j + 1] > P[j] - xi) starts.push_back(j);
    }
  }
  if (static_cast<int>(starts.size()) != xi) throw Error(Errc::InvariantViolation, "cycle lemma");
  int j = starts[std::uniform_int_distribution<int>(0, xi - 1)(rng)];
  LabeledForest f;
  f.xi = xi;
  std::uniform_int_distribution<int> inc(-1, 1);
  std::vector<int> stack{0};
  int c = xi, floor = xi;
  for (int t = 0; t < L; ++t) {
    int s = w[(j + t) % L];
    if (s == 1) {
      int l = stack.back() + inc(rng);
      f.steps.push_back(1);
      f.labels.push_back(l);
      stack.push_back(l);
      ++c;
    } else if (c == floor) {
      f.steps.push_back(0);
      --c;
      --floor;
    } else {
      f.steps.push_back(-1);
      stack.pop_back();
      --c;
    }
  }
  return f;
}

// Plane tree read from a forest with one tree, as a labeled map rooted at the
// first edge leaving the tree root.
inline LabeledMap tree_map(const LabeledForest& f) {
  const int m = f.mass();
  if (m < 1) throw Error(Errc::EmptyFamily, "tree with no edge");
  std::vector<std::vector<int>> rot(1);
  std::vector<int> label{0};
  std::vector<int> path{0};
  int ne = 0, k = 0;
  for (auto s : f.steps) {
    if (s == 1) {
      int x = 2 * ne++;
      int v = static_cast<int>(rot.size());
      rot[path.back()].push_back(x);
      rot.push_back({x ^ 1});
      label.push_back(f.labels[k++]);
      path.push_back(v);
    } else if (s == -1) {
      path.pop_back();
    }
  }
  std::vector<int> next(2 * ne), org(2 * ne);
  for (int v = 0; v < static_cast<int>(rot.size()); ++v)
    for (std::size_t i = 0; i < rot[v].size(); ++i) {
      next[rot[v][i]] = rot[v][(i + 1) % rot[v].size()];
      org[rot[v][i]] = v;
    }
  LabeledMap lm;
  lm.map = Map::from_next(std::move(next), 0, {});
  lm.label.assign(lm.map.num_vertices(), 0);
  for (int h = 0; h < 2 * ne; ++h) lm.label[lm.map.origin(h)] = label[org[h]];
  return lm;
}

// Exact uniform sampler for the labeled families. A scheme and the internal
// chain length S are drawn from exact big-integer weights; chain lengths,
// internal bridges and hole walks are then drawn freely and node labels are
// propagated, rejecting when a cycle of the scheme does not close. The forest
// is one uniform forest cut into per-half-edge pieces.
class Sampler {
 public:
  explicit Sampler(SamplerConfig cfg) : cfg_(std::move(cfg)), rng_(cfg_.seed) {
    for (int s : cfg_.sigma)
      if (s < 1) throw Error(Errc::ConfigError, "hole half-perimeters must be positive");
    if (cfg_.q < 1 || cfg_.q > 2 || cfg_.g < 0 || cfg_.n < 0) throw Error(Errc::ConfigError, "bad family");
    if (cfg_.n > cfg_.max_n) throw Error(Errc::BudgetExceeded, "n above exact-mode budget");
    sum_sigma_ = std::accumulate(cfg_.sigma.begin(), cfg_.sigma.end(), 0);
    degenerate_ = cfg_.g == 0 && cfg_.sigma.empty() && cfg_.q == 1;
    if (degenerate_) {
      if (cfg_.n < 1) throw Error(Errc::EmptyFamily, "no plane tree with 0 edges");
      return;
    }
    schemes_ = enumerate_schemes(cfg_.g, static_cast<int>(cfg_.sigma.size()), cfg_.q, cfg_.scheme_budget);
    build_tables();
  }

  const SamplerConfig& config() const { return cfg_; }
  std::mt19937_64& rng() { return rng_; }
  long attempts() const { return attempts_; }
  long accepted() const { return accepted_; }
  const std::vector<Scheme>& schemes() const { return schemes_; }

  LabeledMap sample_labeled_map() {
    if (degenerate_) {
      ++attempts_;
      ++accepted_;
      return tree_map(random_labeled_forest(1, cfg_.n, rng_));
    }
    for (long t = 0; t < cfg_.max_attempts; ++t) {
      ++attempts_;
      auto d = try_once();
      if (!d) continue;
      ++accepted_;
      return recompose(*d);
    }
    throw Error(Errc::RejectionBudgetExceeded, "rejection sampler exhausted its attempt budget");
  }

  // Uniform pointed quadrangulation; the orientation coin is reported.
  PointedQuad sample_quadrangulation(int* orientation = nullptr) {
    LabeledMap lm = sample_labeled_map();
    int o = std::uniform_int_distribution<int>(0, 1)(rng_);
    if (orientation) *orientation = o;
    return decode(lm, o);
  }

 private:
  struct Group {
    SchemeSignature sig;
    std::vector<int> members;
    BigInt factor;  // members * prod binom(sigma_i - 1, k_i - 1)
  };
  static constexpr int kBlock = 64;

  SamplerConfig cfg_;
  std::mt19937_64 rng_;
  int sum_sigma_ = 0;
  bool degenerate_ = false;
  long attempts_ = 0, accepted_ = 0;
  std::vector<Scheme> schemes_;
  std::vector<Group> groups_;
  std::vector<BigInt> block_cum_, block_binom_;
  BigInt total_;
  std::unique_ptr<gmp_randclass> big_rng_;

  BigInt weight(const Group& gr, int S, const BigInt& binomN) const {
    int kI = gr.sig.internal_edges;
    if (kI == 0 ? S != 0 : S < kI) return 0;
    BigInt w = gr.factor * binomN * (2 * S + sum_sigma_);
    if (kI > 0) w *= binom(S - 1, kI - 1);
    return w;
  }

  // C(2n+|sigma|, n-S) for S -> S+1
  void step_binom(BigInt& b, int S) const {
    const long N = 2L * cfg_.n + sum_sigma_;
    long k = cfg_.n - S;
    if (k <= 0) { b = 0; return; }
    b *= k;
    mpz_divexact_ui(b.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(N - k + 1));
  }

  void build_tables() {
    std::map<SchemeSignature, int> index;
    for (int i = 0; i < static_cast<int>(schemes_.size()); ++i) {
      auto sig = signature(schemes_[i]);
      auto [it, fresh] = index.emplace(sig, static_cast<int>(groups_.size()));
      if (fresh) groups_.push_back({sig, {}, 0});
      groups_[it->second].members.push_back(i);
    }
    for (auto& gr : groups_) {
      gr.factor = static_cast<unsigned long>(gr.members.size());
      for (std::size_t i = 0; i < cfg_.sigma.size(); ++i) gr.factor *= binom(cfg_.sigma[i] - 1, gr.sig.hole_sizes[i] - 1);
    }
    BigInt b = binom(2L * cfg_.n + sum_sigma_, cfg_.n), cum = 0;
    for (int S = 0; S <= cfg_.n; ++S) {
      if (S % kBlock == 0) {
        block_cum_.push_back(cum);
        block_binom_.push_back(b);
      }
      for (const auto& gr : groups_) cum += weight(gr, S, b);
      step_binom(b, S);
    }
    total_ = cum;
    if (total_ == 0) throw Error(Errc::EmptyFamily, "family is empty");
  }

  std::pair<int, int> draw_scheme_and_S() {
    if (!big_rng_) {
      big_rng_ = std::make_unique<gmp_randclass>(gmp_randinit_mt);
      big_rng_->seed(static_cast<unsigned long>(rng_()));
    }
    BigInt r = big_rng_->get_z_range(total_);
    int blk = static_cast<int>(std::upper_bound(block_cum_.begin(), block_cum_.end(), r) - block_cum_.begin()) - 1;
    BigInt cum = block_cum_[blk], b = block_binom_[blk];
    for (int S = blk * kBlock; S <= cfg_.n; ++S) {
      for (const auto& g : groups_) {
        cum += weight(g, S, b);
        if (r < cum) {
          int pick = g.members[std::uniform_int_distribution<int>(0, static_cast<int>(g.members.size()) - 1)(rng_)];
          return {pick, S};
        }
      }
      step_binom(b, S);
    }
    throw Error(Errc::InvariantViolation, "weight table scan overran");
  }

  std::optional<Decomposition> try_once() {
    auto [si, S] = draw_scheme_and_S();
    const Scheme& sc = schemes_[si];
    const Map& s = sc.map;
    const int H = s.size();
    Decomposition d;
    d.scheme = sc;
    d.xi.assign(H, 0);
    d.forest.assign(H, {});
    d.bridge.assign(H, {});
    // delta[h] = label(target) - label(origin); path[h] = labels along h relative to its origin
    std::vector<int> delta(H, 0);
    std::vector<std::vector<int>> path(H);
    std::vector<int> internal;
    for (int e = 0; e < H; e += 2)
      if (sc.kind(e) == Kind::Internal) internal.push_back(e);
    if (!internal.empty()) {
      auto parts = detail::random_composition(S, static_cast<int>(internal.size()), rng_);
      std::uniform_int_distribution<int> inc(-1, 1);
      for (std::size_t i = 0; i < internal.size(); ++i) {
        int e = internal[i];
        d.xi[e] = d.xi[e + 1] = parts[i];
        auto& pth = path[e];
        pth.push_back(0);
        for (int t = 0; t < parts[i]; ++t) pth.push_back(pth.back() + inc(rng_));
        delta[e] = pth.back();
        delta[e + 1] = -pth.back();
        path[e + 1].assign(pth.rbegin(), pth.rend());
        for (int& x : path[e + 1]) x -= pth.back();
      }
    }
    for (int i = 0; i < s.num_holes(); ++i) {
      std::vector<int> hs = s.face_half_edges(s.holes()[i]);
      const int sig = cfg_.sigma[i];
      auto parts = detail::random_composition(sig, static_cast<int>(hs.size()), rng_);
      auto z = detail::random_closed_boundary_walk(sig, rng_);
      std::vector<int> u{0};
      for (int t = 0; t < sig; ++t) u.push_back(u.back() - z[t]);
      int at = 0;
      for (std::size_t j = 0; j < hs.size(); ++j) {
        int h = hs[j], b = h ^ 1;
        d.xi[h] = d.xi[b] = parts[j];
        std::vector<int> seg(u.begin() + at, u.begin() + at + parts[j] + 1);
        for (int& x : seg) x -= u[at];
        delta[h] = seg.back();
        delta[b] = -seg.back();
        path[b].assign(seg.rbegin(), seg.rend());
        for (int& x : path[b]) x -= seg.back();
        path[h] = std::move(seg);
        at += parts[j];
      }
    }
    // propagate node labels from the root origin
    const int V = s.num_vertices();
    std::vector<int> lab(V, 0);
    std::vector<char> set(V, 0);
    int r0 = s.origin(s.root());
    set[r0] = 1;
    std::vector<int> st{r0};
    while (!st.empty()) {
      int v = st.back();
      st.pop_back();
      for (int h : s.vertex_half_edges(v)) {
        int w = s.target(h), want = lab[v] + delta[h];
        if (!set[w]) { set[w] = 1; lab[w] = want; st.push_back(w); }
        else if (lab[w] != want) return std::nullopt;
      }
    }
    d.node_label = lab;
    int X = 0;
    for (int e = 0; e < H; ++e) {
      if (!sc.in_F(e)) continue;
      X += d.xi[e];
      auto& b = d.bridge[e];
      for (int x : path[e]) b.push_back(lab[s.origin(e)] + x);
    }
    LabeledForest big = random_labeled_forest(X, cfg_.n - S, rng_);
    std::size_t pos = 0, k = 0;
    for (int e = 0; e < H; ++e) {
      if (!sc.in_F(e)) continue;
      auto& f = d.forest[e];
      f.xi = d.xi[e];
      for (int trees = 0; trees < f.xi; ++pos) {
        auto st1 = big.steps[pos];
        f.steps.push_back(st1);
        if (st1 == 1) f.labels.push_back(big.labels[k++]);
        if (st1 == 0) ++trees;
      }
    }
    return d;
  }
};

}  // namespace qsurf
