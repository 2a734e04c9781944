#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "qfm/feldman_moore.hpp"
#include "qfm/intset.hpp"
#include "qfm/piecewise_translation.hpp"
#include "qfm/relations.hpp"

namespace qfm {

// An equivalence on an ambient IntSet: the listed blocks are classes (any
// size, pairwise disjoint), every other ambient point is a singleton.
struct BlockPartition {
  IntSet ambient;
  std::vector<IntSet> blocks;
};

// Throws InvalidPartition for overlapping blocks or blocks outside the ambient.
void validate(const BlockPartition& f);

// The relation an integer cover is checked against: a block partition, or the
// equivalence generated by a translation presentation (checked on the pairs
// the presentation lists).
using IntegerRelation = std::variant<BlockPartition, TranslationPresentation>;

const IntSet& ambient_of(const IntegerRelation& f);

// Every pair (x, g(x)) lies in F.
bool graph_inside(const PiecewiseTranslation& g, const IntegerRelation& f);

PiecewiseTranslation greedy_extend(const PiecewiseTranslation& g0,
                                   const std::vector<PiecewiseTranslation>& psis,
                                   const IntSet& ambient);

std::optional<std::pair<std::int64_t, std::int64_t>> maximality_violation(
    const PiecewiseTranslation& g, const IntegerRelation& f);

// X_{start + k*period + r} = X_{start + r} + k*shift for all k >= 0.
struct Acceleration {
  std::size_t start = 1;
  std::size_t period = 1;
  std::int64_t shift = 0;
};

// One side of the level partition (n >= 1, or n <= -1 read as -n).
struct LevelSide {
  std::vector<IntSet> explicit_levels;  // X_1 .. X_m
  std::optional<Acceleration> acceleration;
  IntSet odd;   // union of the odd levels
  IntSet even;  // union of the even levels

  // Level n >= 1 from the explicit list or the acceleration.
  IntSet level(std::size_t n) const;
};

struct IntegerLevels {
  LevelSide positive;
  LevelSide negative;
  IntSet zero;
};

inline constexpr std::size_t kDefaultLevelBound = 32;
inline constexpr std::size_t kMaxLevelPeriod = 8;

// Throws NotMaximal, or NoAcceleration when a side does not die out or turn
// periodic within `bound` levels.
IntegerLevels levels_partition(const PiecewiseTranslation& g, const IntegerRelation& f,
                               std::size_t bound = kDefaultLevelBound);

std::pair<PiecewiseTranslation, PiecewiseTranslation> schroeder_bernstein_cover(
    const PiecewiseTranslation& g, const IntegerLevels& levels);

struct IntegerCoverCertificate {
  PiecewiseTranslation g0;
  std::vector<PiecewiseTranslation> psis;
  PiecewiseTranslation g;
  IntegerLevels levels;
  PiecewiseTranslation g1;  // g'
  PiecewiseTranslation g2;  // g''
  std::vector<Check> checks;

  bool ok() const { return all_passed(checks); }
};

IntegerCoverCertificate cover(const IntegerRelation& f, const PiecewiseTranslation& g0,
                              const std::vector<PiecewiseTranslation>& psis,
                              std::size_t bound = kDefaultLevelBound);
std::vector<Check> recheck(const IntegerCoverCertificate& c, const IntegerRelation& f);

// psi[a * k + b] = phi_a intersected with the inverse of phi_b. Throws
// NotAnEnumeration unless the union of graphs is reflexive and symmetric.
std::vector<PiecewiseTranslation> psi_split(const TranslationPresentation& phi);

struct IntegerFmResult {
  std::vector<PiecewiseTranslation> psis;
  std::vector<PiecewiseTranslation> generators;
  std::vector<Check> checks;

  bool ok() const { return all_passed(checks); }
};

// The orbit relation is compared with the equivalence generated by the
// presentation, offset by offset in both directions.
IntegerFmResult fm_quotient(const TranslationPresentation& f, std::size_t bound = kDefaultLevelBound);

}  // namespace qfm
