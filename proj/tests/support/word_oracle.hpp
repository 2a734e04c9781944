#pragma once

#include <cstddef>
#include <random>

#include "qfm/cantor.hpp"

namespace qfm::testing {

// Letter n of u w w w ..., straight from the raw (uncanonical) parts.
inline Letter raw_letter(const Letters& u, const Letters& w, std::size_t n) {
  return n < u.size() ? u[n] : w[(n - u.size()) % w.size()];
}

inline Letters random_letters(std::mt19937_64& rng, std::size_t k, std::size_t len) {
  Letters s(len);
  for (auto& c : s) c = static_cast<Letter>(rng() % k);
  return s;
}

inline EventuallyPeriodicWord random_word(std::mt19937_64& rng, std::size_t k, std::size_t max_u,
                                          std::size_t max_w) {
  return canonicalize(random_letters(rng, k, rng() % (max_u + 1)),
                      random_letters(rng, k, 1 + rng() % max_w), k);
}

inline std::size_t stream_bound(const EventuallyPeriodicWord& x, const EventuallyPeriodicWord& y) {
  return 4 * (x.u.size() + x.w.size() + y.u.size() + y.w.size());
}

// Tails agree: compare letter streams over the second half of a long window.
inline bool stream_e0(const EventuallyPeriodicWord& x, const EventuallyPeriodicWord& y) {
  const std::size_t b = stream_bound(x, y);
  for (std::size_t n = b / 2; n < b; ++n) {
    if (letter_at(x, n) != letter_at(y, n)) return false;
  }
  return true;
}

// Some shifts agree: try every pair of offsets below the bound.
inline bool stream_et(const EventuallyPeriodicWord& x, const EventuallyPeriodicWord& y) {
  const std::size_t b = stream_bound(x, y);
  for (std::size_t l = 0; l <= b / 4; ++l) {
    for (std::size_t m = 0; m <= b / 4; ++m) {
      bool same = true;
      for (std::size_t n = 0; n < b && same; ++n) same = letter_at(x, l + n) == letter_at(y, m + n);
      if (same) return true;
    }
  }
  return false;
}

}  // namespace qfm::testing
