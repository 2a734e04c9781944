#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qfm/finite.hpp"
#include "qfm/intset.hpp"

namespace qfm {

// Points 0..size-1, optionally with distinct display labels.
struct FiniteCarrier {
  std::size_t size = 0;
  std::vector<std::string> labels;  // empty, or exactly `size` distinct labels

  friend bool operator==(const FiniteCarrier&, const FiniteCarrier&) = default;
};

enum class CarrierKind { Finite, Integer };

// A carrier together with a countable-class equivalence relation E in
// partition form. Quotient points are the E-classes, numbered in order of
// their canonical representative (least index on finite carriers, least
// absolute value with ties to the nonnegative point on the integer line).
//
// Integer-carrier spaces here have finitely many classes, each an IntSet;
// the discrete relation on an infinite subset of Z is handled symbolically by
// the integer cover machinery instead.
class QuotientSpace {
 public:
  static QuotientSpace finite(FiniteCarrier carrier, Partition relation);
  static QuotientSpace integer(IntSet ambient, std::vector<IntSet> classes);

  CarrierKind kind() const { return kind_; }
  std::size_t point_count() const;
  // Projection pi_E; nullopt for integers outside the ambient set.
  std::optional<std::size_t> project(std::int64_t x) const;
  std::int64_t representative(std::size_t q) const;
  IntSet class_set(std::size_t q) const;
  IntSet carrier_set() const;
  std::optional<std::uint64_t> class_size(std::size_t q) const;

  const FiniteCarrier& finite_carrier() const;
  const Partition& partition() const;  // finite carriers only

  friend bool operator==(const QuotientSpace&, const QuotientSpace&) = default;

 private:
  CarrierKind kind_ = CarrierKind::Finite;
  FiniteCarrier carrier_;
  Partition partition_;
  IntSet ambient_;
  std::vector<IntSet> classes_;
};

using SpacePtr = std::shared_ptr<const QuotientSpace>;

// Validating constructors; throw InvalidPartition on overlap or non-cover.
SpacePtr make_quotient(FiniteCarrier carrier, const std::vector<std::vector<Point>>& classes);
SpacePtr make_quotient(FiniteCarrier carrier, Partition relation);
SpacePtr make_quotient(const IntSet& ambient, std::vector<IntSet> classes);

// Smallest E-invariant superset of s. Throws InvalidSubset when s leaves the
// carrier.
IntSet saturate(const QuotientSpace& q, const IntSet& s);

// A set of quotient points.
struct QuotientSubset {
  std::vector<bool> members;

  static QuotientSubset none(std::size_t n) { return {std::vector<bool>(n, false)}; }
  static QuotientSubset full(std::size_t n) { return {std::vector<bool>(n, true)}; }
  static QuotientSubset of(std::size_t n, const std::vector<std::size_t>& points);
  // Throws InvalidSubset if `s` is not E-saturated.
  static QuotientSubset from_carrier(const QuotientSpace& q, const IntSet& s);

  std::size_t count() const;
  bool contains(std::size_t q) const { return members[q]; }
  std::vector<std::size_t> points() const;
  // The E-saturated carrier set pi^{-1}[A].
  IntSet carrier_preimage(const QuotientSpace& q) const;

  QuotientSubset unite(const QuotientSubset& o) const;
  QuotientSubset intersect(const QuotientSubset& o) const;
  QuotientSubset minus(const QuotientSubset& o) const;

  friend bool operator==(const QuotientSubset&, const QuotientSubset&) = default;
};

// Total map between quotient point sets.
struct QuotientMap {
  SpacePtr source;
  SpacePtr target;
  std::vector<std::size_t> image;

  static QuotientMap identity(SpacePtr space);
  static QuotientMap constant(SpacePtr source, SpacePtr target, std::size_t value);
  std::size_t operator()(std::size_t q) const { return image[q]; }

  friend bool operator==(const QuotientMap& a, const QuotientMap& b) {
    return *a.source == *b.source && *a.target == *b.target && a.image == b.image;
  }
};

// Pairs of quotient points.
struct QuotientRelation {
  SpacePtr source;
  SpacePtr target;
  Relation pairs;
};

// Carrier-level map, piecewise constant or piecewise translation on IntSet
// domains with pairwise disjoint domains.
class CarrierMap {
 public:
  struct Piece {
    enum class Kind { Constant, Translate };
    IntSet domain;
    Kind kind = Kind::Constant;
    std::int64_t value = 0;
  };

  CarrierMap() = default;
  explicit CarrierMap(std::vector<Piece> pieces);
  // From an explicit table over a finite carrier.
  static CarrierMap from_table(const std::vector<std::int64_t>& table);
  static CarrierMap identity(const IntSet& domain);

  const std::vector<Piece>& pieces() const { return pieces_; }
  std::optional<std::int64_t> apply(std::int64_t x) const;
  IntSet domain() const;

 private:
  std::vector<Piece> pieces_;
};

QuotientSubset dom_of_relation(const QuotientRelation& r);
QuotientSubset image_under(const QuotientMap& f, const QuotientSubset& a);
QuotientSubset preimage_under(const QuotientMap& f, const QuotientSubset& b);

// x -> rep(f(pi_E(x))); pi_F o lift(f) = f o pi_E.
CarrierMap lift(const QuotientMap& f);
// The quotient map induced by g. Throws NotAMorphism with a witness pair
// (x, x') such that x E x' but not g(x) F g(x'), or when g is not total on
// the source carrier.
QuotientMap descend(const CarrierMap& g, const SpacePtr& source, const SpacePtr& target);

// (g o f); throws EndpointMismatch.
QuotientMap compose(const QuotientMap& g, const QuotientMap& f);

// Product of finite quotient spaces with its projections. Carrier points and
// quotient points are encoded in mixed radix, first factor most significant,
// which keeps the canonical class order.
struct Product {
  SpacePtr space;
  std::vector<SpacePtr> factors;

  std::size_t encode_point(const std::vector<std::size_t>& coords) const;
  std::vector<std::size_t> decode_point(std::size_t q) const;
  QuotientMap projection(std::size_t i) const;
};

// Throws UnsupportedCarrier for integer-carrier factors.
Product product(const std::vector<SpacePtr>& factors);
// (f_1, ..., f_n) into `into`; throws EndpointMismatch.
QuotientMap pair(const std::vector<QuotientMap>& components, const Product& into);

}  // namespace qfm
