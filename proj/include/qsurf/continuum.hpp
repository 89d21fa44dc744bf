#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <limits>
#include <random>
#include <vector>

#include "qsurf/scheme.hpp"
#include "qsurf/stats.hpp"

namespace qsurf::continuum {

using Rng = std::mt19937_64;

struct GridPath {
  double dt = 1;
  std::vector<double> v;

  double duration() const { return dt * static_cast<double>(v.size() - 1); }
  double at(double t) const {
    if (v.size() == 1) return v[0];
    double x = std::clamp(t / dt, 0.0, static_cast<double>(v.size() - 1));
    std::size_t i = std::min(static_cast<std::size_t>(x), v.size() - 2);
    double f = x - static_cast<double>(i);
    return v[i] * (1 - f) + v[i + 1] * f;
  }
};

inline int grid_steps(double x, double delta) {
  return std::max(1, static_cast<int>(std::lround(x / delta)));
}

// Brownian bridge from a to b over [0, xi] with diffusivity kappa, exact at
// the grid points.
inline GridPath sample_bridge(double xi, double a, double b, double delta, double kappa, Rng& rng) {
  if (!(xi > 0) || !(delta > 0) || !(kappa > 0)) throw Error(Errc::ConfigError, "bridge parameters must be positive");
  const int k = grid_steps(xi, delta);
  GridPath p;
  p.dt = xi / k;
  p.v.resize(k + 1);
  std::normal_distribution<double> N(0, std::sqrt(p.dt));
  double w = 0;
  p.v[0] = 0;
  for (int i = 1; i <= k; ++i) p.v[i] = (w += N(rng));
  for (int i = 0; i <= k; ++i) {
    double t = static_cast<double>(i) / k;
    p.v[i] = a + kappa * (p.v[i] - t * w) + t * (b - a);
  }
  p.v[0] = a;
  p.v[k] = b;
  return p;
}

// First-passage bridge from x0 to 0 of duration m: the time reversal of a
// three-dimensional Bessel bridge, i.e. the norm of a 3d Brownian bridge from
// (x0, 0, 0) to the origin.
inline GridPath sample_fp_bridge(double m, double x0, double delta, Rng& rng, int budget = 10000) {
  if (!(m > 0) || !(x0 > 0) || !(delta > 0)) throw Error(Errc::ConfigError, "first-passage parameters must be positive");
  const int k = grid_steps(m, delta);
  for (int attempt = 0; attempt < budget; ++attempt) {
    GridPath p;
    p.dt = m / k;
    p.v.assign(k + 1, 0);
    std::vector<GridPath> c;
    for (int d = 0; d < 3; ++d) c.push_back(sample_bridge(m, d == 0 ? x0 : 0, 0, p.dt, 1, rng));
    bool ok = true;
    for (int i = 0; i <= k; ++i) {
      p.v[i] = std::sqrt(c[0].v[i] * c[0].v[i] + c[1].v[i] * c[1].v[i] + c[2].v[i] * c[2].v[i]);
      if (i < k && !(p.v[i] > 0)) ok = false;
    }
    p.v[0] = x0;
    p.v[k] = 0;
    if (ok) return p;
  }
  throw Error(Errc::RejectionBudgetExceeded, "first-passage bridge rejection budget exhausted");
}

// Snake head driven by X: centered Gaussian with covariance the minimum of
// X - running inf of X between the two times, sampled along the coded tree.
inline GridPath sample_snake_head(const GridPath& X, Rng& rng) {
  GridPath Z;
  Z.dt = X.dt;
  const std::size_t n = X.v.size();
  Z.v.assign(n, 0);
  std::vector<double> Y(n);
  double low = X.v[0];
  for (std::size_t i = 0; i < n; ++i) {
    low = std::min(low, X.v[i]);
    Y[i] = std::max(0.0, X.v[i] - low);
  }
  std::normal_distribution<double> N(0, 1);
  struct Node {
    double h, z;
  };
  std::vector<Node> st{{0, 0}};
  if (Y[0] > 0) {
    Z.v[0] = std::sqrt(Y[0]) * N(rng);
    st.push_back({Y[0], Z.v[0]});
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double m = std::min(Y[i], Y[i + 1]);
    Node above{-1, 0};
    while (st.back().h > m) {
      above = st.back();
      st.pop_back();
    }
    Node base = st.back();
    if (base.h < m) {
      double zm = base.z;
      if (above.h > 0) {
        double f = (m - base.h) / (above.h - base.h);
        double var = (m - base.h) * (above.h - m) / (above.h - base.h);
        zm = base.z + f * (above.z - base.z) + std::sqrt(std::max(0.0, var)) * N(rng);
      }
      st.push_back({m, zm});
    }
    double zn = st.back().z;
    if (Y[i + 1] > m) {
      zn += std::sqrt(Y[i + 1] - m) * N(rng);
      st.push_back({Y[i + 1], zn});
    }
    Z.v[i + 1] = zn;
  }
  return Z;
}

// ---------------------------------------------------------------------------
// Scheme vector under mu

struct SchemeGeometry {
  Scheme scheme;
  std::vector<int> contour;                 // F half-edges around f*, from the root
  std::vector<int> internal;                // one half-edge per internal edge
  std::vector<std::vector<int>> hole_edges; // hole-side half-edges per hole
  std::vector<int> graph_edges;             // internal (one orientation) and boundary half-edges
  int root_vertex = 0;

  explicit SchemeGeometry(Scheme s) : scheme(std::move(s)) {
    const Map& m = scheme.map;
    int r = m.root();
    int h = r;
    do {
      contour.push_back(h);
      h = m.phi(h);
    } while (h != r);
    for (int e = 0; e < m.size(); e += 2) {
      Kind k0 = scheme.kind(e), k1 = scheme.kind(e + 1);
      if (k0 == Kind::Internal && k1 == Kind::Internal) {
        internal.push_back(e);
        graph_edges.push_back(e);
      } else if (k0 == Kind::Boundary) {
        graph_edges.push_back(e);
      } else if (k1 == Kind::Boundary) {
        graph_edges.push_back(e + 1);
      }
    }
    for (int f : m.holes()) hole_edges.push_back(m.face_half_edges(f));
    root_vertex = m.origin(r);
  }

  double kappa(int e) const { return scheme.kind(e) == Kind::Boundary ? std::sqrt(3.0) : 1.0; }
};

// Lengths per edge (indexed by edge id).
using Lengths = std::vector<double>;

namespace detail {

inline double log_q1(double X) { return std::log(X) - 0.5 * std::log(2 * M_PI) - 0.5 * X * X; }

// Weighted Laplacian on non-root vertices with conductance 1/(kappa^2 xi).
inline Eigen::MatrixXd precision(const SchemeGeometry& g, const Lengths& xi) {
  const Map& m = g.scheme.map;
  const int V = m.num_vertices();
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(V, V);
  for (int e : g.graph_edges) {
    int a = m.origin(e), b = m.target(e);
    if (a == b) continue;
    double k = g.kappa(e);
    double c = 1 / (k * k * xi[e >> 1]);
    P(a, a) += c;
    P(b, b) += c;
    P(a, b) -= c;
    P(b, a) -= c;
  }
  std::vector<int> keep;
  for (int v = 0; v < V; ++v)
    if (v != g.root_vertex) keep.push_back(v);
  Eigen::MatrixXd R(keep.size(), keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) R(i, j) = P(keep[i], keep[j]);
  return R;
}

}  // namespace detail

// Log density of the lengths after integrating out masses and labels.
inline double log_xi_density(const SchemeGeometry& g, const Lengths& xi) {
  double X = 0;
  for (int e : g.contour) X += xi[e >> 1];
  double s = detail::log_q1(X);
  const int V = g.scheme.map.num_vertices();
  const int beta = static_cast<int>(g.graph_edges.size()) - V + 1;
  s -= 0.5 * beta * std::log(2 * M_PI);
  for (int e : g.graph_edges) {
    double k = g.kappa(e);
    s -= 0.5 * std::log(k * k * xi[e >> 1]);
  }
  if (V > 1) {
    Eigen::LLT<Eigen::MatrixXd> llt(detail::precision(g, xi));
    const auto& L = llt.matrixL();
    for (int i = 0; i < V - 1; ++i) s -= std::log(L(i, i));
  }
  return s;
}

struct ContinuumConfig {
  int g = 0;
  std::vector<double> sigma;  // hole perimeters sigma_inf
  double delta = 1e-5;        // mass grid
  std::uint64_t seed = 1;
  int weight_draws = 20000;
  int burn_in = 3000;
  int chains = 4;
  double rhat_max = 1.1;
  double scheme_budget = 2e7;
};

struct ContinuumVector {
  int scheme_index = 0;
  std::vector<double> mass;   // per scheme half-edge, zero off F
  Lengths xi;                 // per edge
  std::vector<double> label;  // per scheme vertex
  GridPath contour;           // one first-passage bridge over [0, 1]
  GridPath snake;             // head driven by the contour
  std::vector<int> seg_start; // grid index where each contour segment starts, plus the end
  std::vector<GridPath> bridge;  // per scheme half-edge; reversed halves share the stored one
  std::vector<char> bridge_reversed;
};

class ContinuumSampler {
 public:
  explicit ContinuumSampler(ContinuumConfig cfg) : cfg_(std::move(cfg)), rng_(cfg_.seed) {
    const int p = static_cast<int>(cfg_.sigma.size());
    if (cfg_.g < 0 || (cfg_.g == 0 && p == 0)) throw Error(Errc::ConfigError, "need 2g + p > 0 for a scheme");
    for (double s : cfg_.sigma)
      if (!(s > 0)) throw Error(Errc::ConfigError, "hole perimeters must be positive");
    if (!(cfg_.delta > 0) || cfg_.delta > 0.1) throw Error(Errc::ConfigError, "grid step out of range");
    for (auto& s : enumerate_schemes(cfg_.g, p, 1, cfg_.scheme_budget))
      if (is_dominant(s)) geo_.emplace_back(s);
    if (geo_.empty()) throw Error(Errc::EmptyFamily, "no dominant scheme");
    for (const auto& g : geo_) {
      auto [w, se] = estimate_weight(g);
      weight_.push_back(w);
      weight_se_.push_back(se);
    }
  }

  const std::vector<SchemeGeometry>& schemes() const { return geo_; }
  const std::vector<double>& scheme_weights() const { return weight_; }
  const std::vector<double>& scheme_weight_errors() const { return weight_se_; }
  Rng& rng() { return rng_; }
  double last_rhat() const { return last_rhat_; }

  int sample_scheme() {
    std::discrete_distribution<int> D(weight_.begin(), weight_.end());
    return D(rng_);
  }

  // Lengths of scheme i from mu's marginal, by Metropolis chains started from
  // importance-resampled points.
  Lengths sample_lengths(int i) {
    const auto& g = geo_[i];
    const int C = std::max(2, cfg_.chains);
    std::vector<std::vector<double>> trace(C);
    std::vector<Lengths> state(C);
    for (int c = 0; c < C; ++c) {
      state[c] = resample_start(g);
      double lp = log_xi_density(g, state[c]);
      for (int t = 0; t < 2 * cfg_.burn_in; ++t) {
        metropolis_step(g, state[c], lp);
        if (t >= cfg_.burn_in) trace[c].push_back(lp);
      }
    }
    last_rhat_ = rhat(trace);
    if (!(last_rhat_ < cfg_.rhat_max)) throw Error(Errc::MCMCDiagnosticsFailed, "length chains did not mix");
    return state[std::uniform_int_distribution<int>(0, C - 1)(rng_)];
  }

  ContinuumVector sample() { return sample_in(sample_scheme()); }

  ContinuumVector sample_in(int i) {
    const auto& g = geo_[i];
    const Map& m = g.scheme.map;
    ContinuumVector v;
    v.scheme_index = i;
    v.xi = sample_lengths(i);
    // labels given lengths: Gaussian field on the scheme graph
    v.label.assign(m.num_vertices(), 0);
    if (m.num_vertices() > 1) {
      Eigen::LLT<Eigen::MatrixXd> llt(detail::precision(g, v.xi));
      std::normal_distribution<double> N(0, 1);
      Eigen::VectorXd z(m.num_vertices() - 1);
      for (int k = 0; k < z.size(); ++k) z(k) = N(rng_);
      Eigen::VectorXd x = llt.matrixU().solve(z);
      for (int u = 0, k = 0; u < m.num_vertices(); ++u)
        if (u != g.root_vertex) v.label[u] = x(k++);
    }
    // masses and contours: one first-passage bridge from the total length,
    // cut at the first hitting times of the successive levels
    double X = 0;
    for (int e : g.contour) X += v.xi[e >> 1];
    v.contour = sample_fp_bridge(1.0, X, cfg_.delta, rng_);
    v.snake = sample_snake_head(v.contour, rng_);
    const int K = static_cast<int>(v.contour.v.size()) - 1;
    v.mass.assign(m.size(), 0);
    v.seg_start.push_back(0);
    double level = X;
    int idx = 0;
    for (std::size_t j = 0; j < g.contour.size(); ++j) {
      level -= v.xi[g.contour[j] >> 1];
      if (j + 1 == g.contour.size()) {
        idx = K;
      } else {
        while (idx < K && v.contour.v[idx] > level) ++idx;
      }
      v.seg_start.push_back(idx);
      v.mass[g.contour[j]] = static_cast<double>(idx - v.seg_start[j]) / K;
    }
    // bridges, stored once per internal edge
    v.bridge.assign(m.size(), {});
    v.bridge_reversed.assign(m.size(), 0);
    for (int e : g.graph_edges) {
      double len = v.xi[e >> 1];
      double step = std::min(len / 16, std::sqrt(cfg_.delta));
      v.bridge[e] = sample_bridge(len, v.label[m.origin(e)], v.label[m.target(e)], step, g.kappa(e), rng_);
      if (g.scheme.kind(e ^ 1) == Kind::Internal) {
        v.bridge[e ^ 1] = v.bridge[e];
        v.bridge_reversed[e ^ 1] = 1;
      }
    }
    return v;
  }

  double bridge_at(const ContinuumVector& v, int e, double x) const {
    const GridPath& b = v.bridge[e];
    return v.bridge_reversed[e] ? b.at(b.duration() - x) : b.at(x);
  }

 private:
  std::pair<double, double> estimate_weight(const SchemeGeometry& g) {
    std::vector<double> w;
    w.reserve(cfg_.weight_draws);
    for (int t = 0; t < cfg_.weight_draws; ++t) {
      double lq = 0;
      Lengths xi = propose(g, lq);
      w.push_back(std::exp(log_xi_density(g, xi) - lq));
    }
    double mean = stats::mean(w);
    return {mean, std::sqrt(stats::variance(w) / static_cast<double>(w.size()))};
  }

  // Gamma(1/2) lengths for internal edges, Dirichlet(1/2) splits of holes.
  Lengths propose(const SchemeGeometry& g, double& log_q) {
    Lengths xi(g.scheme.map.num_edges(), 0);
    log_q = 0;
    const double theta = 0.5;
    std::gamma_distribution<double> G(0.5, theta), H(0.5, 1.0);
    for (int e : g.internal) {
      double x = G(rng_);
      xi[e >> 1] = x;
      log_q += -0.5 * std::log(x) - x / theta - std::lgamma(0.5) - 0.5 * std::log(theta);
    }
    for (std::size_t i = 0; i < g.hole_edges.size(); ++i) {
      const auto& hs = g.hole_edges[i];
      const int k = static_cast<int>(hs.size());
      const double sig = cfg_.sigma[i];
      if (k == 1) {
        xi[hs[0] >> 1] = sig;
        continue;
      }
      std::vector<double> y(k);
      double tot = 0;
      for (double& x : y) tot += (x = std::max(H(rng_), 1e-300));
      log_q += std::lgamma(0.5 * k) - k * std::lgamma(0.5) - (k - 1) * std::log(sig);
      for (int j = 0; j < k; ++j) {
        double u = y[j] / tot;
        xi[hs[j] >> 1] = u * sig;
        log_q += -0.5 * std::log(u);
      }
    }
    return xi;
  }

  Lengths resample_start(const SchemeGeometry& g) {
    const int M = 200;
    std::vector<Lengths> pool;
    std::vector<double> lw;
    for (int t = 0; t < M; ++t) {
      double lq = 0;
      pool.push_back(propose(g, lq));
      lw.push_back(log_xi_density(g, pool.back()) - lq);
    }
    double mx = *std::max_element(lw.begin(), lw.end());
    for (double& x : lw) x = std::exp(x - mx);
    std::discrete_distribution<int> D(lw.begin(), lw.end());
    return pool[D(rng_)];
  }

  void metropolis_step(const SchemeGeometry& g, Lengths& xi, double& lp) {
    std::uniform_real_distribution<double> U(0, 1);
    const int ni = static_cast<int>(g.internal.size());
    int nh = 0;
    for (const auto& hs : g.hole_edges) nh += hs.size() > 1;
    std::uniform_int_distribution<int> pick(0, ni + nh - 1);
    if (ni + nh == 0) return;
    int r = pick(rng_);
    Lengths prop = xi;
    double log_jac = 0;
    if (r < ni) {
      int e = g.internal[r] >> 1;
      double u = std::normal_distribution<double>(0, 0.7)(rng_);
      prop[e] = xi[e] * std::exp(u);
      log_jac = u;
    } else {
      int which = r - ni;
      const std::vector<int>* hs = nullptr;
      std::size_t hi = 0;
      for (std::size_t i = 0; i < g.hole_edges.size(); ++i)
        if (g.hole_edges[i].size() > 1 && which-- == 0) {
          hs = &g.hole_edges[i];
          hi = i;
          break;
        }
      const int k = static_cast<int>(hs->size());
      int a = std::uniform_int_distribution<int>(0, k - 1)(rng_);
      int b = std::uniform_int_distribution<int>(0, k - 2)(rng_);
      if (b >= a) ++b;
      double step = (U(rng_) - 0.5) * cfg_.sigma[hi] * 0.5;
      int ea = (*hs)[a] >> 1, eb = (*hs)[b] >> 1;
      prop[ea] += step;
      prop[eb] -= step;
      if (prop[ea] <= 0 || prop[eb] <= 0) return;
      // keep the hole sum exact
      double rest = 0;
      for (int j = 0; j < k; ++j)
        if (j != b) rest += prop[(*hs)[j] >> 1];
      prop[eb] = cfg_.sigma[hi] - rest;
      if (prop[eb] <= 0) return;
    }
    double lp2 = log_xi_density(g, prop);
    if (std::log(U(rng_)) < lp2 - lp + log_jac) {
      xi.swap(prop);
      lp = lp2;
    }
  }

  static double rhat(const std::vector<std::vector<double>>& tr) {
    const double m = static_cast<double>(tr.size()), n = static_cast<double>(tr[0].size());
    std::vector<double> means, vars;
    for (const auto& t : tr) {
      means.push_back(stats::mean(t));
      vars.push_back(stats::variance(t));
    }
    double W = stats::mean(vars);
    double B = n * stats::variance(means);
    if (W <= 0) return 1;
    double var = (n - 1) / n * W + B / n;
    (void)m;
    return std::sqrt(var / W);
  }

  ContinuumConfig cfg_;
  Rng rng_;
  std::vector<SchemeGeometry> geo_;
  std::vector<double> weight_, weight_se_;
  double last_rhat_ = 0;
};

// ---------------------------------------------------------------------------
// Label field

class LabelField {
 public:
  LabelField(const ContinuumSampler& cs, const ContinuumVector& v) {
    const auto& g = cs.schemes()[v.scheme_index];
    const int K = static_cast<int>(v.contour.v.size()) - 1;
    N_ = K;
    L_.resize(K);
    seg_.resize(K);
    Y_.resize(K);
    for (std::size_t j = 0; j + 1 < v.seg_start.size(); ++j) {
      int e = g.contour[j];
      double xi = v.xi[e >> 1];
      double end_level = v.contour.v[v.seg_start[j + 1]];
      double low = std::numeric_limits<double>::infinity();
      for (int i = v.seg_start[j]; i < v.seg_start[j + 1]; ++i) {
        double c = v.contour.v[i] - end_level;
        low = std::min(low, c);
        seg_[i] = static_cast<int>(j);
        Y_[i] = c - low;
        double arg = std::clamp(xi - low, 0.0, xi);
        L_[i] = v.snake.v[i] + cs.bridge_at(v, e, arg);
      }
    }
    // sparse table for range minima
    int lg = 1;
    while ((1 << lg) < N_) ++lg;
    sp_.assign(lg + 1, std::vector<int>(N_));
    std::iota(sp_[0].begin(), sp_[0].end(), 0);
    for (int k = 1; k <= lg; ++k)
      for (int i = 0; i + (1 << k) <= N_; ++i) {
        int a = sp_[k - 1][i], b = sp_[k - 1][i + (1 << (k - 1))];
        sp_[k][i] = L_[a] <= L_[b] ? a : b;
      }
    argmin_ = static_cast<int>(std::min_element(L_.begin(), L_.end()) - L_.begin());
    modulus_ = 0;
    for (int i = 0; i < N_; ++i) modulus_ = std::max(modulus_, std::abs(L_[(i + 1) % N_] - L_[i]));
  }

  int size() const { return N_; }
  double operator[](int i) const { return L_[i]; }
  int segment(int i) const { return seg_[i]; }
  double height(int i) const { return Y_[i]; }
  int argmin() const { return argmin_; }
  double min() const { return L_[argmin_]; }
  double modulus() const { return modulus_; }
  std::size_t argmin_ties(double tol = 0) const {
    std::size_t c = 0;
    for (double x : L_) c += x <= min() + tol;
    return c;
  }

  // argmin over indices a..b inclusive (a <= b)
  int range_argmin(int a, int b) const {
    int k = 31 - __builtin_clz(static_cast<unsigned>(b - a + 1));
    int x = sp_[k][a], y = sp_[k][b - (1 << k) + 1];
    return L_[x] <= L_[y] ? x : y;
  }
  // minimum over the cyclic arc from a to b
  double arc_min(int a, int b) const {
    if (a <= b) return L_[range_argmin(a, b)];
    return std::min(L_[range_argmin(a, N_ - 1)], L_[range_argmin(0, b)]);
  }

  // d°(s, t)
  double d0(int s, int t) const {
    if (s == t) return 0;
    return L_[s] + L_[t] - 2 * std::max(arc_min(s, t), arc_min(t, s));
  }

  // Quotient distance chained through the given intermediate points.
  double chained(int s, int t, const std::vector<int>& via) const {
    std::vector<int> pts{s};
    pts.insert(pts.end(), via.begin(), via.end());
    pts.push_back(t);
    const std::size_t n = pts.size();
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    std::vector<char> done(n, 0);
    dist[0] = 0;
    for (std::size_t it = 0; it < n; ++it) {
      std::size_t u = n;
      for (std::size_t i = 0; i < n; ++i)
        if (!done[i] && (u == n || dist[i] < dist[u])) u = i;
      done[u] = 1;
      for (std::size_t i = 0; i < n; ++i)
        if (!done[i]) dist[i] = std::min(dist[i], dist[u] + d0(pts[u], pts[i]));
    }
    return dist[n - 1];
  }

  bool same_tree(int s, int t) const {
    if (s > t) std::swap(s, t);
    if (seg_[s] != seg_[t]) return false;
    for (int i = s + 1; i <= t; ++i)
      if (Y_[i] == 0) return false;
    return true;
  }

  // Minimum label on the tree path between s and t (same segment, s <= t):
  // points of [s, t] that are ancestors of s or of t.
  double tree_path_min(int s, int t) const {
    if (s > t) std::swap(s, t);
    if (!same_tree(s, t)) throw Error(Errc::ConfigError, "points in different trees");
    std::vector<char> on(t - s + 1, 0);
    double run = std::numeric_limits<double>::infinity();
    for (int i = s; i <= t; ++i)
      if (Y_[i] <= run) run = Y_[i], on[i - s] = 1;
    run = std::numeric_limits<double>::infinity();
    for (int i = t; i >= s; --i)
      if (Y_[i] <= run) run = Y_[i], on[i - s] = 1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = s; i <= t; ++i)
      if (on[i - s]) best = std::min(best, L_[i]);
    return best;
  }

  // Simple geodesic of index s at the w-grid: the first point reached from s
  // going backward (sup form) or forward (inf form) along the contour whose
  // label is at most min + w.
  std::vector<int> simple_geodesic(int s, const std::vector<double>& ws, bool dual = false) const {
    std::vector<int> out;
    int prev_steps = -1;
    for (double w : ws) {
      double target = min() + w;
      if (w >= L_[s] - min()) {
        out.push_back(s);
        continue;
      }
      int i = s, steps = 0;
      while (L_[i] > target) {
        i = dual ? (i + 1) % N_ : (i + N_ - 1) % N_;
        ++steps;
      }
      if (prev_steps >= 0 && steps > prev_steps)
        throw Error(Errc::InvariantViolation, "simple geodesic is not monotone");
      prev_steps = steps;
      out.push_back(i);
    }
    return out;
  }

 private:
  int N_ = 0, argmin_ = 0;
  double modulus_ = 0;
  std::vector<double> L_, Y_;
  std::vector<int> seg_;
  std::vector<std::vector<int>> sp_;
};

// ---------------------------------------------------------------------------
// Dimension estimators

struct DimensionEstimate {
  double exponent = 0;
  stats::Interval ci;
};

// Slope of the correlation integral log P(d <= r) against log r, with r on
// a geometric grid between two distance quantiles. Bootstrap over points.
inline DimensionEstimate correlation_dimension(const std::vector<std::vector<double>>& D, double q_lo, double q_hi,
                                               Rng& rng, int reps = 200) {
  const std::size_t n = D.size();
  if (n < 1000) throw Error(Errc::InsufficientData, "need at least 1000 points");
  std::vector<double> all;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) all.push_back(D[i][j]);
  double r0 = std::max(stats::quantile(all, q_lo), 1e-12), r1 = stats::quantile(all, q_hi);
  std::vector<double> radii;
  for (int k = 0; k < 12; ++k) radii.push_back(r0 * std::pow(r1 / r0, k / 11.0));
  auto slope = [&](const std::vector<std::size_t>& pts) {
    std::vector<double> cnt(radii.size(), 0);
    double tot = 0;
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        if (pts[a] == pts[b]) continue;
        double d = D[pts[a]][pts[b]];
        tot += 1;
        for (std::size_t k = 0; k < radii.size(); ++k) cnt[k] += d <= radii[k];
      }
    std::vector<double> x, y;
    for (std::size_t k = 0; k < radii.size(); ++k)
      if (cnt[k] > 0) {
        x.push_back(std::log(radii[k]));
        y.push_back(std::log(cnt[k] / tot));
      }
    return stats::linear_fit(x, y).slope;
  };
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  DimensionEstimate est;
  est.exponent = slope(idx);
  std::vector<double> boot;
  std::uniform_int_distribution<std::size_t> U(0, n - 1);
  for (int r = 0; r < reps; ++r) {
    std::vector<std::size_t> pick(n);
    for (auto& p : pick) p = U(rng);
    boot.push_back(slope(pick));
  }
  est.ci = {stats::quantile(boot, 0.025), stats::quantile(boot, 0.975)};
  return est;
}

// Finite-size scaling: slope of log volume against log typical distance
// across system sizes. distances[k] holds distance samples at size k.
inline DimensionEstimate scaling_dimension(const std::vector<double>& volume,
                                           const std::vector<std::vector<double>>& distances, Rng& rng,
                                           int reps = 500) {
  if (volume.size() < 2 || volume.size() != distances.size()) throw Error(Errc::InsufficientData, "need two sizes");
  std::size_t total = 0;
  for (const auto& d : distances) total += d.size();
  if (total < 1000) throw Error(Errc::InsufficientData, "need at least 1000 distance samples");
  auto fit = [&](const std::vector<double>& means) {
    std::vector<double> x, y;
    for (std::size_t k = 0; k < volume.size(); ++k) {
      x.push_back(std::log(means[k]));
      y.push_back(std::log(volume[k]));
    }
    return stats::linear_fit(x, y).slope;
  };
  std::vector<double> means;
  for (const auto& d : distances) means.push_back(stats::mean(d));
  DimensionEstimate est;
  est.exponent = fit(means);
  std::vector<double> boot;
  for (int r = 0; r < reps; ++r) {
    std::vector<double> bm;
    for (const auto& d : distances) {
      std::uniform_int_distribution<std::size_t> U(0, d.size() - 1);
      double s = 0;
      for (std::size_t i = 0; i < d.size(); ++i) s += d[U(rng)];
      bm.push_back(s / static_cast<double>(d.size()));
    }
    boot.push_back(fit(bm));
  }
  est.ci = {stats::quantile(boot, 0.025), stats::quantile(boot, 0.975)};
  return est;
}

}  // namespace qsurf::continuum
