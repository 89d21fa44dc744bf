#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "qsurf/bijection.hpp"
#include "qsurf/map.hpp"

namespace qsurf::io {

inline constexpr const char* kVersion = "qsurf 1.0";

struct ParseFailure : Error {
  int line, column;
  ParseFailure(int l, int c, const std::string& msg)
      : Error(Errc::ParseError, std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), column(c) {}
};

// One map with its decorations. kind is "quad" for a (pointed) quadrangulation
// and "labeled" for a labeled map.
struct MapDoc {
  std::string kind = "quad";
  int g = 0, n = 0;
  std::vector<int> sigma;
  Map map;
  std::vector<int> label;  // labeled maps only
  int fdot2 = -1;
  int vdot = -1, vdot2 = -1, lambda = 0;
  std::vector<std::string> comments;  // echoed config, without the leading '#'
};

inline MapDoc quad_doc(const PointedQuad& pq) {
  MapDoc d;
  d.map = pq.quad;
  d.g = pq.quad.genus();
  for (int f : pq.quad.holes()) d.sigma.push_back(pq.quad.face_degree(f) / 2);
  d.n = pq.quad.num_faces() - pq.quad.num_holes();
  d.vdot = pq.vdot;
  d.vdot2 = pq.vdot2;
  d.lambda = pq.lambda;
  return d;
}

inline MapDoc labeled_doc(const LabeledMap& lm, int n) {
  MapDoc d;
  d.kind = "labeled";
  d.map = lm.map;
  d.g = lm.map.genus();
  for (int f : lm.map.holes()) d.sigma.push_back(lm.map.face_degree(f));
  d.n = n;
  d.label = lm.label;
  d.fdot2 = lm.fdot2;
  return d;
}

// Same quadrangulation with half-edges renumbered from the root.
inline PointedQuad canonical_form(const PointedQuad& pq) {
  const Map& m = pq.quad;
  auto perm = canonical_order(m);
  PointedQuad c{relabel(m, perm), 0, -1, pq.lambda};
  c.vdot = c.quad.origin(perm[m.vertex_rep(pq.vdot)]);
  if (pq.vdot2 >= 0) c.vdot2 = c.quad.origin(perm[m.vertex_rep(pq.vdot2)]);
  return c;
}

inline PointedQuad to_quad(const MapDoc& d) {
  if (d.kind != "quad") throw Error(Errc::ConfigError, "expected a quadrangulation");
  return {d.map, std::max(d.vdot, 0), d.vdot2, d.lambda};
}

inline LabeledMap to_labeled(const MapDoc& d) {
  if (d.kind != "labeled") throw Error(Errc::ConfigError, "expected a labeled map");
  return {d.map, d.label, d.fdot2};
}

inline void emit(std::ostream& os, const MapDoc& d) {
  const Map& m = d.map;
  os << kVersion << '\n';
  for (const auto& c : d.comments) os << '#' << c << '\n';
  os << "kind " << d.kind << '\n';
  os << "g " << d.g << '\n';
  os << "p " << m.num_holes() << '\n';
  os << "n " << d.n << '\n';
  os << "sigma";
  for (int s : d.sigma) os << ' ' << s;
  os << '\n';
  os << "root " << m.root() << '\n';
  os << "holes";
  for (int f : m.holes()) os << ' ' << f;
  os << '\n';
  if (d.vdot >= 0) os << "vdot " << d.vdot << '\n';
  if (d.vdot2 >= 0) os << "vdot2 " << d.vdot2 << ' ' << d.lambda << '\n';
  if (d.fdot2 >= 0) os << "fdot2 " << d.fdot2 << '\n';
  os << "halfedges " << m.size() << '\n';
  for (int h = 0; h < m.size(); ++h) os << h << ": " << m.alpha(h) << ' ' << m.next(h) << '\n';
  if (!d.label.empty()) {
    os << "labels";
    for (int l : d.label) os << ' ' << l;
    os << '\n';
  }
  os << "end\n";
}

inline std::string emit(const MapDoc& d) {
  std::ostringstream os;
  emit(os, d);
  return os.str();
}

namespace detail {

class Lines {
 public:
  explicit Lines(std::istream& is) : is_(is) {}

  // Next non-blank line; comment lines are collected separately.
  bool next(std::string& out, std::vector<std::string>* comments) {
    std::string s;
    while (std::getline(is_, s)) {
      ++line_;
      if (!s.empty() && s.back() == '\r') s.pop_back();
      if (s.find_first_not_of(" \t") == std::string::npos) continue;
      if (s[0] == '#') {
        if (comments) comments->push_back(s.substr(1));
        continue;
      }
      out = s;
      return true;
    }
    return false;
  }
  int line() const { return line_; }

 private:
  std::istream& is_;
  int line_ = 0;
};

struct Tokens {
  std::vector<std::string> tok;
  std::vector<int> col;
};

inline Tokens split(const std::string& s) {
  Tokens t;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    t.tok.push_back(s.substr(i, j - i));
    t.col.push_back(static_cast<int>(i) + 1);
    i = j;
  }
  return t;
}

inline int to_int(const std::string& s, int line, int col) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size() || v < INT32_MIN || v > INT32_MAX) throw std::invalid_argument(s);
    return static_cast<int>(v);
  } catch (const std::logic_error&) {
    throw ParseFailure(line, col, "expected an integer, got '" + s + "'");
  }
}

}  // namespace detail

// Reads one document; returns nullopt at end of input.
inline std::optional<MapDoc> parse_one(detail::Lines& in) {
  MapDoc d;
  std::string s;
  if (!in.next(s, &d.comments)) return std::nullopt;
  if (s != kVersion) throw ParseFailure(in.line(), 1, "expected header '" + std::string(kVersion) + "'");
  std::vector<int> holes;
  int p = -1, root = -1, N = -1;
  std::vector<int> alpha, next;
  while (true) {
    if (!in.next(s, &d.comments)) throw ParseFailure(in.line() + 1, 1, "missing 'end'");
    auto t = detail::split(s);
    const std::string& key = t.tok[0];
    const int L = in.line();
    if (key == "end") {
      if (t.tok.size() != 1) throw ParseFailure(L, t.col[1], "trailing tokens after 'end'");
      break;
    }
    auto ints = [&](std::size_t from) {
      std::vector<int> v;
      for (std::size_t i = from; i < t.tok.size(); ++i) v.push_back(detail::to_int(t.tok[i], L, t.col[i]));
      return v;
    };
    auto one = [&]() {
      if (t.tok.size() != 2) throw ParseFailure(L, 1, "'" + key + "' takes one value");
      return detail::to_int(t.tok[1], L, t.col[1]);
    };
    if (key == "kind") {
      if (t.tok.size() != 2 || (t.tok[1] != "quad" && t.tok[1] != "labeled"))
        throw ParseFailure(L, t.tok.size() > 1 ? t.col[1] : 1, "kind must be quad or labeled");
      d.kind = t.tok[1];
    } else if (key == "g") {
      d.g = one();
    } else if (key == "p") {
      p = one();
    } else if (key == "n") {
      d.n = one();
    } else if (key == "sigma") {
      d.sigma = ints(1);
    } else if (key == "root") {
      root = one();
    } else if (key == "holes") {
      holes = ints(1);
    } else if (key == "vdot") {
      d.vdot = one();
    } else if (key == "vdot2") {
      auto v = ints(1);
      if (v.size() != 2) throw ParseFailure(L, 1, "'vdot2' takes a vertex and a delay");
      d.vdot2 = v[0];
      d.lambda = v[1];
    } else if (key == "fdot2") {
      d.fdot2 = one();
    } else if (key == "labels") {
      d.label = ints(1);
    } else if (key == "halfedges") {
      N = one();
      if (N <= 0 || N % 2) throw ParseFailure(L, t.col[1], "half-edge count must be even and positive");
      alpha.assign(N, -1);
      next.assign(N, -1);
      for (int h = 0; h < N; ++h) {
        if (!in.next(s, nullptr)) throw ParseFailure(in.line() + 1, 1, "missing half-edge line");
        auto u = detail::split(s);
        const int LL = in.line();
        if (u.tok.size() != 3 || u.tok[0].back() != ':')
          throw ParseFailure(LL, 1, "expected 'k: alpha next'");
        int k = detail::to_int(u.tok[0].substr(0, u.tok[0].size() - 1), LL, u.col[0]);
        if (k != h) throw ParseFailure(LL, u.col[0], "half-edges must be listed in order");
        alpha[h] = detail::to_int(u.tok[1], LL, u.col[1]);
        next[h] = detail::to_int(u.tok[2], LL, u.col[2]);
        if (alpha[h] < 0 || alpha[h] >= N) throw ParseFailure(LL, u.col[1], "alpha out of range");
        if (next[h] < 0 || next[h] >= N) throw ParseFailure(LL, u.col[2], "next out of range");
      }
    } else {
      throw ParseFailure(L, 1, "unknown field '" + key + "'");
    }
  }
  const int L = in.line();
  if (N < 0) throw ParseFailure(L, 1, "no half-edges");
  if (root < 0 || root >= N) throw ParseFailure(L, 1, "root missing or out of range");
  try {
    Map bare(alpha, next, root, {});
    std::vector<int> reps;
    for (int f : holes) {
      if (f < 0 || f >= bare.num_faces()) throw ParseFailure(L, 1, "hole face " + std::to_string(f) + " out of range");
      reps.push_back(bare.face_rep(f));
    }
    d.map = Map(std::move(alpha), std::move(next), root, reps);
  } catch (const ParseFailure&) {
    throw;
  } catch (const Error& e) {
    throw ParseFailure(L, 1, e.what());
  }
  if (p >= 0 && p != d.map.num_holes()) throw ParseFailure(L, 1, "hole count mismatch");
  if (!d.label.empty() && static_cast<int>(d.label.size()) != d.map.num_vertices())
    throw ParseFailure(L, 1, "label count differs from vertex count");
  if (d.vdot >= d.map.num_vertices() || d.vdot2 >= d.map.num_vertices())
    throw ParseFailure(L, 1, "distinguished vertex out of range");
  if (d.kind == "labeled" && d.label.empty()) throw ParseFailure(L, 1, "labeled map without labels");
  return d;
}

inline std::vector<MapDoc> parse_all(std::istream& is) {
  detail::Lines in(is);
  std::vector<MapDoc> out;
  while (auto d = parse_one(in)) out.push_back(std::move(*d));
  return out;
}

inline MapDoc parse(const std::string& text) {
  std::istringstream is(text);
  auto all = parse_all(is);
  if (all.size() != 1) throw ParseFailure(1, 1, "expected exactly one map");
  return all[0];
}

// ---------------------------------------------------------------------------
// CSV

class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& header, const std::vector<std::string>& comments = {})
      : os_(os), width_(header.size()) {
    os_ << "# " << kVersion << '\n';
    for (const auto& c : comments) os_ << "# " << c << '\n';
    row_strings(header);
  }

  template <class... T>
  void row(const T&... xs) {
    std::vector<std::string> cells;
    (cells.push_back(cell(xs)), ...);
    row_strings(cells);
  }

  void row_strings(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw Error(Errc::InvariantViolation, "csv row width");
    for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
    os_ << '\n';
  }

 private:
  template <class T>
  static std::string cell(const T& x) {
    std::ostringstream s;
    if constexpr (std::is_floating_point_v<T>) s << std::setprecision(17);
    s << x;
    return s.str();
  }

  std::ostream& os_;
  std::size_t width_;
};

// ---------------------------------------------------------------------------
// Mesh export

// Force-directed 3d coordinates: springs on edges and repulsion against a
// fixed number of random partners per vertex, for a fixed iteration count.
inline std::vector<std::array<double, 3>> layout(const Map& m, int iterations, std::uint64_t seed) {
  const int V = m.num_vertices();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0, 1);
  std::vector<std::array<double, 3>> x(V);
  for (auto& p : x) p = {N(rng), N(rng), N(rng)};
  std::uniform_int_distribution<int> U(0, V - 1);
  const int partners = std::min(V - 1, 16);
  const double k = 1.0;
  for (int it = 0; it < iterations; ++it) {
    std::vector<std::array<double, 3>> f(V, {0, 0, 0});
    for (int e = 0; e < m.num_edges(); ++e) {
      int a = m.origin(2 * e), b = m.target(2 * e);
      if (a == b) continue;
      double d2 = 0;
      for (int c = 0; c < 3; ++c) d2 += (x[a][c] - x[b][c]) * (x[a][c] - x[b][c]);
      double d = std::sqrt(d2) + 1e-9, s = d / k;
      for (int c = 0; c < 3; ++c) {
        double u = (x[a][c] - x[b][c]) / d * s;
        f[a][c] -= u;
        f[b][c] += u;
      }
    }
    for (int a = 0; a < V; ++a)
      for (int r = 0; r < partners; ++r) {
        int b = U(rng);
        if (b == a) continue;
        double d2 = 1e-9;
        for (int c = 0; c < 3; ++c) d2 += (x[a][c] - x[b][c]) * (x[a][c] - x[b][c]);
        double s = k * k / d2 * static_cast<double>(V) / partners / std::sqrt(d2);
        for (int c = 0; c < 3; ++c) f[a][c] += (x[a][c] - x[b][c]) * s / static_cast<double>(V);
      }
    double temp = 0.1 * (1 - static_cast<double>(it) / iterations) + 0.005;
    for (int a = 0; a < V; ++a) {
      double n2 = 0;
      for (int c = 0; c < 3; ++c) n2 += f[a][c] * f[a][c];
      double n = std::sqrt(n2);
      if (n == 0) continue;
      double step = std::min(n, temp) / n;
      for (int c = 0; c < 3; ++c) x[a][c] += f[a][c] * step;
    }
  }
  return x;
}

// OBJ with one vertex per map vertex, the quadrangular faces, and each hole
// filled by a fan of 2 sigma - 2 triangles.
inline void export_obj(std::ostream& os, const Map& m, int iterations, std::uint64_t seed,
                       const std::vector<std::string>& comments = {}) {
  auto x = layout(m, iterations, seed);
  os << "# " << kVersion << '\n';
  for (const auto& c : comments) os << "# " << c << '\n';
  os << "# layout iterations " << iterations << " seed " << seed << '\n';
  os << std::setprecision(9);
  for (const auto& p : x) os << "v " << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
  for (int f = 0; f < m.num_faces(); ++f) {
    auto hs = m.face_half_edges(f);
    if (!m.is_hole(f)) {
      os << 'f';
      for (int h : hs) os << ' ' << m.origin(h) + 1;
      os << '\n';
      continue;
    }
    for (std::size_t i = 1; i + 1 < hs.size(); ++i)
      os << "f " << m.origin(hs[0]) + 1 << ' ' << m.origin(hs[i]) + 1 << ' ' << m.origin(hs[i + 1]) + 1 << '\n';
  }
}

}  // namespace qsurf::io
