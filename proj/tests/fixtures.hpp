#pragma once

#include "qsurf/map.hpp"

namespace fixture {

// k x k grid on the torus; vertex (i, j) is i + k * j. Half-edge 2v leaves v
// to the right, 2(k*k + v) leaves v upwards.
inline qsurf::Map torus_grid(int k) {
  const int K = k * k;
  std::vector<int> next(4 * K);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < k; ++i) {
      int v = i + k * j;
      int left = (i + k - 1) % k + k * j, down = i + k * ((j + k - 1) % k);
      int r = 2 * v, u = 2 * (K + v), l = 2 * left + 1, d = 2 * (K + down) + 1;
      next[r] = u;
      next[u] = l;
      next[l] = d;
      next[d] = r;
    }
  return qsurf::Map::from_next(next, 0, {});
}

inline int grid_vertex(const qsurf::Map& m, int k, int i, int j) {
  return m.origin(2 * (((i % k + k) % k) + k * ((j % k + k) % k)));
}

}  // namespace fixture
