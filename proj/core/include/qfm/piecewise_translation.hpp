#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qfm/intset.hpp"

namespace qfm {

// A partial map on the integers that acts on each piece of its domain by a
// fixed translation. Held in normal form: one piece per distinct offset,
// sorted by offset, empty pieces dropped. Two values are equal exactly when
// they are the same partial function.
class PiecewiseTranslation {
 public:
  struct Piece {
    IntSet domain;
    std::int64_t offset = 0;
    friend bool operator==(const Piece&, const Piece&) = default;
  };

  PiecewiseTranslation() = default;
  // Throws NotAFunction if two pieces with different offsets overlap.
  explicit PiecewiseTranslation(std::vector<Piece> pieces);

  static PiecewiseTranslation identity(const IntSet& domain);
  static PiecewiseTranslation shift(const IntSet& domain, std::int64_t offset);

  const std::vector<Piece>& pieces() const { return pieces_; }
  std::optional<std::int64_t> apply(std::int64_t x) const;
  IntSet domain() const;
  IntSet range() const;

  IntSet image(const IntSet& s) const;
  IntSet preimage(const IntSet& s) const;
  PiecewiseTranslation restrict_to(const IntSet& s) const;

  // Two pieces collide when their translated domains meet.
  std::optional<std::pair<std::int64_t, std::int64_t>> collision() const;
  bool injective() const { return !collision().has_value(); }

  // Union of two partial maps; throws NotAFunction when they disagree on a
  // common point.
  PiecewiseTranslation unite(const PiecewiseTranslation& other) const;
  // Graph containment: every (x, f(x)) of *this is a pair of `other`.
  bool graph_subset_of(const PiecewiseTranslation& other) const;
  bool is_identity() const;

  friend bool operator==(const PiecewiseTranslation&, const PiecewiseTranslation&) = default;

 private:
  std::vector<Piece> pieces_;
};

// (f o g)(x) = f(g(x)), defined where g(x) is in dom f.
PiecewiseTranslation map_compose(const PiecewiseTranslation& f, const PiecewiseTranslation& g);
// Throws NotInjective with a colliding pair as witness.
PiecewiseTranslation map_inverse(const PiecewiseTranslation& f);
IntSet map_image(const PiecewiseTranslation& f, const IntSet& s);
IntSet map_preimage(const PiecewiseTranslation& f, const IntSet& s);

// Text form: comma- or newline-separated `<intset> -> +c` pieces.
std::string to_string(const PiecewiseTranslation& f);
PiecewiseTranslation parse_translation(std::string_view text);

}  // namespace qfm
