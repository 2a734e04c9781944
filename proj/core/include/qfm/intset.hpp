#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qfm {

// One arithmetic-progression segment of a semilinear subset of the integers.
// A finite piece is {start, start + stride, ..., start + (length-1)*stride};
// an infinite piece is a ray running up (start, start+stride, ...) or down
// (start, start-stride, ...).
struct IntPiece {
  enum class Direction { Up, Down };

  std::int64_t start = 0;
  std::int64_t stride = 1;
  std::optional<std::int64_t> length;  // nullopt = infinite ray
  Direction direction = Direction::Up;

  friend bool operator==(const IntPiece&, const IntPiece&) = default;
};

// A one-dimensional semilinear set: a finite union of arithmetic progressions
// and infinite rays. Every IntSet is held in canonical form, so two values
// compare equal exactly when they denote the same set of integers.
//
// Canonical form: below `lo` membership follows a periodic pattern, at or
// above `hi` another periodic pattern, and [lo, hi) holds an explicit list of
// maximal runs. Periods are minimal, `hi` is the least threshold above which
// the upper pattern holds, and `lo` is the greatest threshold (<= hi) below
// which the lower pattern holds. A set that is periodic on all of Z uses
// lo = hi = 0 with identical patterns.
//
// Costs are linear in (hi - lo) plus the periods involved.
class IntSet {
 public:
  struct Tail {
    std::int64_t period = 1;
    std::vector<bool> mask{false};  // mask[mod(x, period)]

    bool contains(std::int64_t x) const;
    bool empty() const;
    friend bool operator==(const Tail&, const Tail&) = default;
  };

  struct Run {
    std::int64_t first;
    std::int64_t last;
    friend bool operator==(const Run&, const Run&) = default;
  };

  IntSet();

  static IntSet empty_set();
  static IntSet all();
  static IntSet point(std::int64_t x);
  static IntSet interval(std::int64_t first, std::int64_t last);
  static IntSet ray_up(std::int64_t first);
  static IntSet ray_down(std::int64_t last);
  static IntSet residue_class(std::int64_t residue, std::int64_t modulus);
  static IntSet progression(std::int64_t start, std::int64_t stride, std::int64_t length);
  static IntSet progression_ray(std::int64_t start, std::int64_t stride, IntPiece::Direction dir);
  static IntSet from_piece(const IntPiece& piece);
  static IntSet from_points(std::vector<std::int64_t> points);

  bool contains(std::int64_t x) const;
  bool empty() const;
  bool is_finite() const;
  bool bounded_below() const;
  bool bounded_above() const;
  // Number of elements; nullopt when infinite.
  std::optional<std::uint64_t> size() const;
  std::optional<std::int64_t> min() const;
  std::optional<std::int64_t> max() const;
  // Element of least absolute value, ties to the nonnegative one.
  std::optional<std::int64_t> closest_to_zero() const;
  // Elements in ascending order. Throws InvalidArgument on infinite sets.
  std::vector<std::int64_t> elements() const;
  // Elements of the set inside [first, last].
  std::vector<std::int64_t> elements_in(std::int64_t first, std::int64_t last) const;

  IntSet unite(const IntSet& other) const;
  IntSet intersect(const IntSet& other) const;
  IntSet minus(const IntSet& other) const;
  IntSet complement() const;
  IntSet translate(std::int64_t offset) const;
  IntSet negate() const;
  // {x + k*step : x in this, k >= 0}. step == 0 returns *this.
  IntSet plus_multiples(std::int64_t step) const;

  bool subset_of(const IntSet& other) const;
  bool disjoint_from(const IntSet& other) const;

  // Canonical piece list: lower rays, middle runs, upper rays, in that order.
  std::vector<IntPiece> pieces() const;

  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }
  const Tail& lower_tail() const { return down_; }
  const Tail& upper_tail() const { return up_; }
  const std::vector<Run>& runs() const { return mid_; }

  friend bool operator==(const IntSet&, const IntSet&) = default;

 private:
  // Builds the canonical form from a raw description: membership below lo0
  // follows `down`, at or above hi0 follows `up`, and `middle` decides
  // membership inside [lo0, hi0).
  static IntSet canonical(std::int64_t lo0, std::int64_t hi0, Tail down, Tail up,
                          const std::function<bool(std::int64_t)>& middle);
  static IntSet combine(const IntSet& a, const IntSet& b,
                        const std::function<bool(bool, bool)>& op);

  std::int64_t lo_ = 0;
  std::int64_t hi_ = 0;
  Tail down_;
  std::vector<Run> mid_;
  Tail up_;
};

enum class SetOp { Union, Intersect, Difference };

IntSet intset_ops(const IntSet& a, const IntSet& b, SetOp op);
IntSet intset_normalize(const std::vector<IntPiece>& pieces);

// Text form: semicolon-separated terms `a..b`, `a..`, `..a`, `a`,
// `a:+d*L`, `a:-d*L` (L may be `inf`), `..` for all of Z, `empty` for the
// empty set. Printing emits the canonical piece list.
std::string to_string(const IntSet& s);
IntSet parse_intset(std::string_view text);

std::int64_t floor_mod(std::int64_t x, std::int64_t m);

}  // namespace qfm
