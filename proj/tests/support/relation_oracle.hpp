#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <vector>

#include "qfm/finite.hpp"

namespace qfm::testing {

// Naive closure: start from the graph pairs, add identity and inverses, then
// compose until nothing changes.
inline std::vector<std::vector<bool>> naive_closure(std::size_t n,
                                                    const std::vector<Endomorphism>& gens) {
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t x = 0; x < n; ++x) r[x][x] = true;
  for (const auto& f : gens) {
    for (std::size_t x = 0; x < n; ++x) r[x][f[x]] = r[f[x]][x] = true;
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (r[x][y])
          for (std::size_t z = 0; z < n; ++z)
            if (r[y][z] && !r[x][z]) r[x][z] = changed = true;
  }
  return r;
}

// exists m, n <= bound with f^m(x) = f^n(y)
inline bool tail_related(const Endomorphism& f, std::size_t x, std::size_t y, std::size_t bound) {
  std::size_t fx = x;
  for (std::size_t m = 0; m <= bound; ++m, fx = f[fx]) {
    std::size_t fy = y;
    for (std::size_t k = 0; k <= bound; ++k, fy = f[fy]) {
      if (fx == fy) return true;
    }
  }
  return false;
}

inline Endomorphism random_map(std::mt19937_64& rng, std::size_t n) {
  Endomorphism f(n);
  std::uniform_int_distribution<std::size_t> d(0, n - 1);
  for (auto& y : f) y = d(rng);
  return f;
}

// Labels drawn uniformly from [0, k), so the partition has at most k classes.
inline Partition random_partition(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> labels(n);
  std::uniform_int_distribution<std::size_t> d(0, k == 0 ? 0 : k - 1);
  for (auto& l : labels) l = d(rng);
  return Partition::from_labels(labels);
}

// Every set partition of {0..n-1}, as restricted growth strings.
inline std::vector<Partition> all_partitions(std::size_t n) {
  std::vector<Partition> out;
  std::vector<std::size_t> a(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t used) -> void {
    if (i == n) {
      out.push_back(Partition::from_labels(a));
      return;
    }
    for (std::size_t v = 0; v <= used && v <= i; ++v) {
      a[i] = v;
      self(self, i + 1, std::max(used, v + 1));
    }
  };
  if (n == 0) {
    out.push_back(Partition::from_labels({}));
    return out;
  }
  a[0] = 0;
  rec(rec, 1, 1);
  return out;
}

// A partial injection whose graph lies in f, each point kept with odds 2/3.
inline PartialInjection random_injection_in(std::mt19937_64& rng, const Partition& f) {
  std::vector<Point> table(f.size(), kNoPoint);
  for (const auto& c : f.classes()) {
    std::vector<Point> targets = c;
    std::shuffle(targets.begin(), targets.end(), rng);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (rng() % 3 != 0) table[c[i]] = targets[i];
    }
  }
  return PartialInjection(table);
}

}  // namespace qfm::testing
