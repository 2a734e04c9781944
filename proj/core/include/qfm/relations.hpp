#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qfm/finite.hpp"
#include "qfm/piecewise_translation.hpp"
#include "qfm/quotient.hpp"

namespace qfm {

// One step of a linking chain: z_{k+1} = f_j(z_k) (Forward) or
// z_k = f_j(z_{k+1}) (Reverse).
struct ChainStep {
  enum class Direction { Forward, Reverse };
  std::size_t generator = 0;
  Direction direction = Direction::Forward;
  Point from = 0;
  Point to = 0;

  friend bool operator==(const ChainStep&, const ChainStep&) = default;
};

struct Chain {
  std::vector<Point> points;  // z_0, ..., z_r
  std::vector<ChainStep> steps;
};

// The equivalence relation generated by finitely many endomorphisms of a
// finite quotient, together with its layers F_(r): the pairs linked by a
// chain of at most r generator steps.
class Closure {
 public:
  Closure(std::size_t n, std::vector<Endomorphism> generators);

  const Partition& partition() const { return partition_; }
  const std::vector<Endomorphism>& generators() const { return generators_; }
  std::size_t size() const { return n_; }
  // Least chain length linking x and y, or kNoPoint when unlinked.
  std::size_t distance(Point x, Point y) const { return dist_[x * n_ + y]; }
  Relation layer(std::size_t r) const;
  // Least r with F_(r) equal to the closure.
  std::size_t stabilization() const { return stabilization_; }

 private:
  std::size_t n_;
  std::vector<Endomorphism> generators_;
  std::vector<std::size_t> dist_;
  Partition partition_;
  std::size_t stabilization_ = 0;
};

Closure generate_equivalence(std::size_t n, std::vector<Endomorphism> generators);

// Shortest chain from x to y; among shortest chains the one whose step
// sequence is lexicographically least by (generator, forward-before-reverse,
// target point).
std::optional<Chain> chain_witness(const Closure& closure, Point x, Point y);

// Grand orbits of f.
Partition tail_equivalence(const Endomorphism& f);

// Maximum class cardinality; nullopt stands for "unbounded".
struct IndexValue {
  std::optional<std::uint64_t> value;
  bool unbounded() const { return !value.has_value(); }
  friend bool operator==(const IndexValue&, const IndexValue&) = default;
};

IndexValue index_over(const Partition& f);
// Index of the space's own relation E (class sizes on the carrier).
IndexValue index_over(const QuotientSpace& q);
std::string to_string(const IndexValue& v);

// Throws NotATransversal naming a class hit zero or several times.
Endomorphism transversal_to_selector(const QuotientSubset& t, const Partition& f);
// Throws NotASelector with a witness.
QuotientSubset selector_to_transversal(const Endomorphism& phi, const Partition& f);
// First violation of the selector laws, if any, as text.
std::optional<std::string> selector_violation(const Endomorphism& phi, const Partition& f);

// Each point goes to the least point of its class.
Endomorphism min_selector(const Partition& f);

// The involution swapping the two points of every 2-element class. Throws
// IndexTooLarge for classes with more than two points.
Permutation index2_involution(const Partition& f);

struct InvolutionSearch {
  bool found = false;
  std::vector<Permutation> involutions;
  // Fewest involutions in [F] that generate F.
  std::size_t minimum = 0;
  std::string note;
};

// Involutions in [F] generating F, at most `max_count` of them. On a finite
// quotient the minimum is 0, 1 or 2 (a single involution only produces
// classes of size <= 2; a path through each class splits into two
// matchings), so the report either carries a generating set of that size or
// explains why the budget is too small.
InvolutionSearch involution_generation_search(const Partition& f, std::size_t max_count);

// Graph-membership checks for [[F]] and [F].
bool in_partial_group(const PartialInjection& g, const Partition& f);
bool in_full_group(const Permutation& g, const Partition& f);

// An equivalence presented as a union of endomorphism graphs.
struct EnumeratedEquivalence {
  std::size_t size = 0;
  std::vector<Endomorphism> graphs;
};

// The integer-line counterpart: the graphs are piecewise translations of
// the ambient set, which carries the discrete relation.
struct TranslationPresentation {
  IntSet ambient;
  std::vector<PiecewiseTranslation> graphs;
};

struct ClosureReport {
  bool endomorphisms = true;  // every graph is a total self-map of the space
  bool reflexive = true;
  bool symmetric = true;
  bool transitive = true;
  std::optional<std::string> endomorphism_witness;
  std::optional<std::string> reflexive_witness;
  std::optional<std::string> symmetric_witness;
  std::optional<std::string> transitive_witness;
  // Integer presentations: an offset whose pairs are missing.
  std::optional<std::int64_t> missing_offset;

  bool ok() const { return endomorphisms && reflexive && symmetric && transitive; }
};

ClosureReport verify_enumeration(const EnumeratedEquivalence& f);
ClosureReport verify_enumeration(const TranslationPresentation& f);

// The union of the graphs as a relation.
Relation union_of_graphs(const EnumeratedEquivalence& f);
// Offset-indexed union of the graphs: offset c maps to {x : (x, x+c) covered}.
std::vector<std::pair<std::int64_t, IntSet>> offset_cover(
    const std::vector<PiecewiseTranslation>& graphs);

// A canonical enumeration of F: map i sends x to the i-th least point of its
// class, or to x itself when the class is smaller.
EnumeratedEquivalence canonical_enumeration(const Partition& f);

}  // namespace qfm
