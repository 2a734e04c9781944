#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qfm/finite.hpp"
#include "qfm/quotient.hpp"
#include "qfm/relations.hpp"

namespace qfm {

// Partial self-map; kNoPoint marks "undefined". Not necessarily injective.
using PartialMap = std::vector<Point>;

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

bool all_passed(const std::vector<Check>& checks);

struct Decomposition {
  // graphs[i](x) = i-th least element of the section R_x.
  std::vector<PartialMap> graphs;
  // graphs[0] on dom R.
  PartialMap uniformization;
};

Decomposition lusin_novikov_decompose(const Relation& r);

struct ClassicalInvolution {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t p = 0;
  Permutation map;
};

struct ClassicalFm {
  std::vector<PartialMap> enumeration;  // the f_m
  std::size_t bits = 0;                 // A_p = {x : bit p of x is set}, p < bits
  std::vector<ClassicalInvolution> involutions;
  // Distinct non-identity involutions, in emission order.
  std::vector<Permutation> generators;
  Partition orbits;
  std::vector<Check> checks;

  bool ok() const { return all_passed(checks); }
};

// The classical construction on a finite carrier. Every f_{m,n,p} is emitted
// with m, n below the largest class size.
ClassicalFm classical_fm(const Partition& e);

// The involution f_{m,n,p} of the three-case formula.
Permutation classical_involution(const std::vector<PartialMap>& f, std::size_t m, std::size_t n,
                                 std::size_t p);

// psi[a * k + b] = phi_a intersected with the inverse of phi_b. Throws
// NotAnEnumeration unless the graphs pass verify_enumeration.
std::vector<PartialInjection> psi_split(const EnumeratedEquivalence& phi);

// Runs the recurrence g_{n+1} = g_n + (the part of psi_n leaving dom g_n and
// avoiding rng g_n) over psis followed by the identity.
PartialInjection greedy_extend(const PartialInjection& g0, const std::vector<PartialInjection>& psis);

// A pair (y, z) in F with y outside dom g and z outside rng g.
std::optional<std::pair<Point, Point>> maximality_violation(const PartialInjection& g,
                                                            const Partition& f);

struct FiniteLevels {
  std::vector<QuotientSubset> positive;  // X_1, X_2, ... (nonempty ones)
  std::vector<QuotientSubset> negative;  // X_-1, X_-2, ...
  QuotientSubset zero;

  // 0 for X_0, n for X_n, -n for X_-n.
  long level_of(Point x) const;
};

// Throws NotMaximal with the witness pair.
FiniteLevels levels_partition(const PartialInjection& g, const Partition& f);

// Level assembly of g' and g''.
std::pair<Permutation, Permutation> schroeder_bernstein_cover(const PartialInjection& g,
                                                              const FiniteLevels& levels);

struct CoverCertificate {
  PartialInjection g0;
  std::vector<PartialInjection> psis;
  PartialInjection g;
  FiniteLevels levels;
  Permutation g1;  // g'
  Permutation g2;  // g''
  std::vector<Check> checks;

  bool ok() const { return all_passed(checks); }
};

// greedy_extend, levels_partition and schroeder_bernstein_cover in one go,
// with every law recorded as a check.
CoverCertificate cover(const Partition& f, const PartialInjection& g0,
                       const std::vector<PartialInjection>& psis);
// Recomputes every check from the stored data.
std::vector<Check> recheck(const CoverCertificate& c, const Partition& f);

struct FmResult {
  std::vector<PartialInjection> psis;
  // psi'_n, psi''_n for each n in psi order.
  std::vector<Permutation> generators;
  Partition orbits;
  std::vector<Check> checks;

  bool ok() const { return all_passed(checks); }
};

FmResult fm_quotient(const EnumeratedEquivalence& f);

struct Uniformization {
  PartialMap phi;
  // Least covering index per point, kNoPoint off dom R.
  std::vector<std::size_t> index;
};

// Throws NotCovered when some pair of R lies on no f_n.
Uniformization weak_uniformize(const Relation& r, const std::vector<PartialMap>& cover);

}  // namespace qfm
