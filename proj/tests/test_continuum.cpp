#include <gtest/gtest.h>

#include <cmath>

#include "qsurf/continuum.hpp"

using namespace qsurf;
using namespace qsurf::continuum;

namespace {

ContinuumConfig config(int g, std::vector<double> sigma, double delta, std::uint64_t seed) {
  ContinuumConfig c;
  c.g = g;
  c.sigma = std::move(sigma);
  c.delta = delta;
  c.seed = seed;
  c.weight_draws = 4000;
  return c;
}

double mean_of(const std::vector<double>& x) { return stats::mean(x); }

}  // namespace

TEST(Bridge, EndpointsAndMidpointVariance) {
  Rng rng(7);
  const double xi = 2, kappa = std::sqrt(3.0);
  std::vector<double> mid, quarter;
  for (int t = 0; t < 10000; ++t) {
    auto p = sample_bridge(xi, 0.3, -1.1, 0.125, kappa, rng);
    ASSERT_EQ(p.v.front(), 0.3);
    ASSERT_EQ(p.v.back(), -1.1);
    mid.push_back(p.at(1.0));
    quarter.push_back(p.at(0.5));
  }
  const double var = kappa * kappa * xi / 4;
  EXPECT_NEAR(stats::variance(mid), var, 4 * var * std::sqrt(2.0 / 10000));
  EXPECT_NEAR(mean_of(mid), -0.4, 4 * std::sqrt(var / 10000));
  const double vq = kappa * kappa * 0.5 * (1 - 0.25);
  EXPECT_NEAR(stats::variance(quarter), vq, 4 * vq * std::sqrt(2.0 / 10000));
}

TEST(Bridge, RejectsBadParameters) {
  Rng rng(1);
  EXPECT_THROW(sample_bridge(0, 0, 0, 0.1, 1, rng), Error);
  EXPECT_THROW(sample_bridge(1, 0, 0, 0.1, -1, rng), Error);
}

TEST(FirstPassage, PositiveAndEndsAtZero) {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    auto p = sample_fp_bridge(0.7, 0.4, 1e-3, rng);
    ASSERT_EQ(p.v.front(), 0.4);
    ASSERT_EQ(p.v.back(), 0.0);
    for (std::size_t i = 0; i + 1 < p.v.size(); ++i) ASSERT_GT(p.v[i], 0.0);
  }
}

TEST(FirstPassage, MidpointAgreesAcrossResolutions) {
  Rng rng(11);
  std::vector<double> coarse, fine;
  for (int t = 0; t < 4000; ++t) {
    coarse.push_back(sample_fp_bridge(1, 1, 0.05, rng).at(0.5));
    fine.push_back(sample_fp_bridge(1, 1, 0.002, rng).at(0.5));
  }
  double se = std::sqrt(stats::variance(coarse) / 4000 + stats::variance(fine) / 4000);
  EXPECT_NEAR(mean_of(coarse), mean_of(fine), 3 * se);
}

TEST(Snake, VarianceMatchesHeight) {
  Rng rng(5);
  GridPath X = sample_fp_bridge(1, 0.8, 0.01, rng);
  std::vector<double> Y(X.v.size());
  double low = X.v[0];
  for (std::size_t i = 0; i < Y.size(); ++i) Y[i] = X.v[i] - (low = std::min(low, X.v[i]));
  const int draws = 10000;
  std::vector<std::vector<double>> z(Y.size());
  for (int t = 0; t < draws; ++t) {
    auto Z = sample_snake_head(X, rng);
    for (std::size_t i = 0; i < Y.size(); i += 10) z[i].push_back(Z.v[i]);
  }
  for (std::size_t i = 0; i < Y.size(); i += 10) {
    if (Y[i] == 0) {
      for (double v : z[i]) ASSERT_EQ(v, 0.0);
      continue;
    }
    EXPECT_NEAR(stats::variance(z[i]), Y[i], 4 * Y[i] * std::sqrt(2.0 / draws)) << i;
  }
}

TEST(Snake, CovarianceIsPathMinimum) {
  // 0 -> 1 -> 0.5 -> 1.5 -> 0 in steps of 0.01
  GridPath X;
  X.dt = 0.01;
  auto ramp = [&](double a, double b) {
    int k = static_cast<int>(std::lround(std::abs(b - a) / 0.01));
    for (int i = 1; i <= k; ++i) X.v.push_back(a + (b - a) * i / k);
  };
  X.v.push_back(0);
  ramp(0, 1);
  std::size_t s = X.v.size() - 1;
  ramp(1, 0.5);
  ramp(0.5, 1.5);
  std::size_t t = X.v.size() - 1;
  ramp(1.5, 0);
  Rng rng(9);
  const int draws = 10000;
  double sxy = 0;
  std::vector<double> a, b;
  for (int k = 0; k < draws; ++k) {
    auto Z = sample_snake_head(X, rng);
    ASSERT_EQ(Z.v[0], 0.0);
    a.push_back(Z.v[s]);
    b.push_back(Z.v[t]);
    sxy += Z.v[s] * Z.v[t];
  }
  double cov = sxy / draws;
  // Var(Z_s Z_t) = 1*1.5 + 0.5^2 for this Gaussian pair
  double se = std::sqrt((1 * 1.5 + 0.25) / draws);
  EXPECT_NEAR(cov, 0.5, 4 * se);
  EXPECT_NEAR(stats::variance(a), 1.0, 4 * std::sqrt(2.0 / draws));
  EXPECT_NEAR(stats::variance(b), 1.5, 4 * 1.5 * std::sqrt(2.0 / draws));
}

TEST(SchemeVector, HardConstraints) {
  for (auto [g, sig] : std::vector<std::pair<int, std::vector<double>>>{{0, {1.0}}, {1, {}}, {1, {0.7}}, {0, {1.0, 0.5}}}) {
    ContinuumSampler cs(config(g, sig, 1e-4, 21 + g));
    for (int t = 0; t < 5; ++t) {
      auto v = cs.sample();
      const auto& geo = cs.schemes()[v.scheme_index];
      const Map& m = geo.scheme.map;
      ASSERT_TRUE(is_dominant(geo.scheme));
      const int K = static_cast<int>(v.contour.v.size()) - 1;
      ASSERT_EQ(v.seg_start.front(), 0);
      ASSERT_EQ(v.seg_start.back(), K);
      double ms = 0;
      for (double x : v.mass) ms += x;
      EXPECT_NEAR(ms, 1.0, 1e-12);
      for (int h = 0; h < m.size(); ++h)
        if (!geo.scheme.in_F(h)) {
          EXPECT_EQ(v.mass[h], 0.0);
        }
      for (double x : v.xi) EXPECT_GT(x, 0.0);
      for (std::size_t i = 0; i < geo.hole_edges.size(); ++i) {
        double s = 0;
        for (int h : geo.hole_edges[i]) s += v.xi[h >> 1];
        EXPECT_NEAR(s, sig[i], 1e-12);
      }
      EXPECT_EQ(v.label[geo.root_vertex], 0.0);
      for (int e : geo.graph_edges) {
        const auto& b = v.bridge[e];
        EXPECT_NEAR(b.duration(), v.xi[e >> 1], 1e-12);
        EXPECT_EQ(b.v.front(), v.label[m.origin(e)]);
        EXPECT_EQ(b.v.back(), v.label[m.target(e)]);
        EXPECT_DOUBLE_EQ(geo.kappa(e), geo.scheme.kind(e) == Kind::Boundary ? std::sqrt(3.0) : 1.0);
        if (geo.scheme.kind(e ^ 1) == Kind::Internal) {
          ASSERT_TRUE(v.bridge_reversed[e ^ 1]);
          EXPECT_EQ(v.bridge[e ^ 1].v, b.v);
          EXPECT_NEAR(cs.bridge_at(v, e ^ 1, 0.3 * b.duration()), cs.bridge_at(v, e, 0.7 * b.duration()), 1e-12);
        }
      }
      EXPECT_LT(cs.last_rhat(), 1.1);
    }
  }
}

TEST(SchemeVector, BothDiskSchemesSeen) {
  ContinuumSampler cs(config(0, {1.0}, 1e-4, 4));
  ASSERT_EQ(cs.schemes().size(), 2u);
  std::vector<int> seen(2, 0);
  for (int t = 0; t < 2000; ++t) ++seen[cs.sample_scheme()];
  EXPECT_GT(seen[0], 0);
  EXPECT_GT(seen[1], 0);
  for (double w : cs.scheme_weights()) EXPECT_GT(w, 0.0);
}

TEST(SchemeVector, RejectsBadConfig) {
  EXPECT_THROW(ContinuumSampler(config(0, {}, 1e-4, 1)), Error);
  EXPECT_THROW(ContinuumSampler(config(0, {-1.0}, 1e-4, 1)), Error);
  EXPECT_THROW(ContinuumSampler(config(0, {1.0}, 0.5, 1)), Error);
}

TEST(LabelField, ContinuousAcrossSegments) {
  ContinuumSampler cs(config(1, {1.0}, 1e-4, 8));
  for (int t = 0; t < 20; ++t) {
    auto v = cs.sample();
    LabelField f(cs, v);
    double inner = 0;
    for (int i = 0; i + 1 < f.size(); ++i)
      if (f.segment(i) == f.segment(i + 1)) inner = std::max(inner, std::abs(f[i + 1] - f[i]));
    for (std::size_t j = 1; j + 1 < v.seg_start.size(); ++j) {
      int i = v.seg_start[j];
      if (i == 0 || i >= f.size()) continue;
      EXPECT_LE(std::abs(f[i] - f[i - 1]), 2 * inner + 1e-12);
    }
    EXPECT_LE(std::abs(f[0] - f[f.size() - 1]), 2 * inner + 1e-12);
  }
}

TEST(LabelField, UniqueArgmin) {
  ContinuumSampler cs(config(0, {1.0}, 1e-4, 12));
  for (int t = 0; t < 100; ++t) {
    LabelField f(cs, cs.sample());
    EXPECT_EQ(f.argmin_ties(), 1u);
  }
}

TEST(Distance, IdentitiesAndCactusBound) {
  ContinuumSampler cs(config(1, {1.0}, 1e-5, 31));
  Rng rng(2);
  int triples = 0;
  for (int rep = 0; rep < 4; ++rep) {
    LabelField f(cs, cs.sample());
    std::uniform_int_distribution<int> U(0, f.size() - 1);
    const int sd = f.argmin();
    for (int k = 0; k < 200; ++k) {
      int s = U(rng);
      EXPECT_EQ(f.d0(s, s), 0.0);
      EXPECT_NEAR(f.d0(s, sd), f[s] - f.min(), 1e-12);
      EXPECT_NEAR(f.d0(s, sd), f[s] - f[sd], 1e-12);
    }
    for (int k = 0; k < 250; ++k) {
      int a = U(rng);
      int end = a + 1;
      while (end < f.size() && f.same_tree(a, end)) ++end;
      int b = std::uniform_int_distribution<int>(a, end - 1)(rng);
      ASSERT_TRUE(f.same_tree(a, b));
      double bound = f[a] + f[b] - 2 * f.tree_path_min(a, b);
      EXPECT_GE(f.d0(a, b), bound - 4 * f.modulus());
      ++triples;
    }
    int a = U(rng), b = U(rng);
    std::vector<int> via;
    for (int k = 0; k < 16; ++k) via.push_back(U(rng));
    EXPECT_LE(f.chained(a, b, via), f.d0(a, b) + 1e-12);
  }
  EXPECT_EQ(triples, 1000);
}

TEST(SimpleGeodesic, MonotoneAndDualAgree) {
  ContinuumSampler cs(config(1, {1.0}, 1e-5, 17));
  Rng rng(4);
  for (int rep = 0; rep < 3; ++rep) {
    LabelField f(cs, cs.sample());
    std::uniform_int_distribution<int> U(0, f.size() - 1);
    for (int k = 0; k < 30; ++k) {
      int s = U(rng);
      double top = f[s] - f.min();
      std::vector<double> ws;
      for (int i = 0; i < 40; ++i) ws.push_back(top * i / 40);
      ws.push_back(top);
      auto sup = f.simple_geodesic(s, ws);
      auto inf = f.simple_geodesic(s, ws, true);
      EXPECT_EQ(sup.front(), f.argmin());
      EXPECT_EQ(sup.back(), s);
      for (std::size_t i = 0; i < ws.size(); ++i) {
        EXPECT_LE(f.d0(sup[i], inf[i]), 2 * f.modulus() + 1e-12);
        EXPECT_NEAR(f.d0(sup[i], f.argmin()), ws[i], f.modulus() + 1e-12);
      }
    }
  }
}

TEST(Dimension, LineHasDimensionOne) {
  const int n = 1000;
  std::vector<std::vector<double>> D(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) D[i][j] = std::abs(i - j);
  Rng rng(1);
  auto est = correlation_dimension(D, 0.005, 0.1, rng, 50);
  EXPECT_NEAR(est.exponent, 1.0, 0.1);
  EXPECT_LE(est.ci.lo, est.exponent);
  EXPECT_GE(est.ci.hi, est.exponent);
  std::vector<std::vector<double>> small(10, std::vector<double>(10));
  EXPECT_THROW(correlation_dimension(small, 0.1, 0.5, rng), Error);
}

TEST(Dimension, ScalingRecoversExponent) {
  Rng rng(6);
  std::vector<double> vol;
  std::vector<std::vector<double>> d;
  std::exponential_distribution<double> E(1);
  for (int k = 8; k <= 13; ++k) {
    double n = std::pow(2.0, k);
    vol.push_back(n);
    std::vector<double> xs;
    for (int i = 0; i < 400; ++i) xs.push_back(std::pow(n, 0.25) * E(rng));
    d.push_back(xs);
  }
  auto est = scaling_dimension(vol, d, rng);
  EXPECT_NEAR(est.exponent, 4.0, 0.5);
  EXPECT_THROW(scaling_dimension({1.0}, {{1.0}}, rng), Error);
}
