#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qfm/finite.hpp"
#include "qfm/quotient.hpp"

namespace qfm {

using Element = std::size_t;
inline constexpr Element kNoElement = static_cast<Element>(-1);

// A finite group by its multiplication table, element 0 the identity.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(trivial()) {}

  // table[a][b] = ab. Throws InvalidGroup naming the first failed law.
  static FiniteGroup from_table(std::vector<std::vector<Element>> table,
                                std::vector<std::string> names = {});
  static FiniteGroup trivial();
  static FiniteGroup cyclic(std::size_t n);
  // All permutations of {0..k-1}, identity first then lexicographic;
  // (ab)(x) = a(b(x)).
  static FiniteGroup symmetric(std::size_t k);

  std::size_t order() const { return table_.size(); }
  Element multiply(Element a, Element b) const { return table_[a][b]; }
  Element inverse(Element a) const { return inverse_[a]; }
  const std::vector<std::vector<Element>>& table() const { return table_; }
  const std::string& name(Element a) const { return names_[a]; }
  std::optional<Element> find(const std::string& name) const;
  // The permutation behind an element of a symmetric group, else empty.
  const std::vector<Permutation>& permutations() const { return perms_; }

  bool is_subgroup(const std::vector<Element>& elements) const;
  // Throws NotASubgroup.
  void require_subgroup(const std::vector<Element>& elements) const;

  friend bool operator==(const FiniteGroup&, const FiniteGroup&) = default;

 private:
  FiniteGroup(std::vector<std::vector<Element>> table, std::vector<std::string> names, int);

  std::vector<std::vector<Element>> table_;
  std::vector<Element> inverse_;
  std::vector<std::string> names_;
  std::vector<Permutation> perms_;
};

// A group acting on the points {0..n-1} of a finite quotient.
class GroupAction {
 public:
  // Throws InvalidAction when an element does not act by a bijection, the
  // identity does not act trivially, or the homomorphism law fails.
  GroupAction(FiniteGroup group, std::size_t points, std::vector<Permutation> act);

  const FiniteGroup& group() const { return group_; }
  std::size_t points() const { return points_; }
  Point apply(Element g, Point x) const { return act_[g][x]; }
  const Permutation& permutation(Element g) const { return act_[g]; }

 private:
  FiniteGroup group_;
  std::size_t points_;
  std::vector<Permutation> act_;
};

// The action of a subgroup, renumbered in the order given.
GroupAction restrict_action(const GroupAction& a, const std::vector<Element>& subgroup);

Partition orbit_equivalence(const GroupAction& a);

// The action on the points with trivial stabilizer (an invariant set).
// points[i] is the original index of new point i.
struct FreePart {
  GroupAction action;
  std::vector<Point> points;
};

FreePart free_part(const GroupAction& a);

struct FreenessReport {
  bool free = true;
  std::optional<std::pair<Element, Point>> witness;  // (g, x) with g x = x, g != 1
};

FreenessReport is_free(const GroupAction& a);

// theta(x, y) for x F y, kNoElement elsewhere.
struct Cocycle {
  Partition relation;
  std::vector<Element> table;  // row-major n x n

  Element at(Point x, Point y) const { return table[x * relation.size() + y]; }
  void set(Point x, Point y, Element g) { table[x * relation.size() + y] = g; }
};

// Throws NotFree with a fixed point as witness.
Cocycle cocycle_from_free_action(const GroupAction& a);

struct CocycleReport {
  bool total = true;      // defined exactly on F
  bool property1 = true;  // y = theta(x,y) x
  bool property2 = true;  // theta(x,z) = theta(y,z) theta(x,y)
  std::optional<std::string> witness;

  bool ok() const { return total && property1 && property2; }
};

CocycleReport verify_cocycle(const GroupAction& a, const Cocycle& theta);

struct GammaPartition {
  std::vector<QuotientSubset> zones;  // indexed by group element
  std::vector<std::size_t> sizes;
  // d Z_g and Z_g never meet for d != 1.
  bool translates_disjoint = true;
};

// Z_g = {x : theta(x, phi(x)) = g}. Throws NotFree or NotASelector.
GammaPartition selector_to_gamma_partition(const GroupAction& a, const Endomorphism& phi);

// {g : g D g^-1 = D}, ascending. Throws NotASubgroup.
std::vector<Element> normalizer(const FiniteGroup& g, const std::vector<Element>& d);

// Points whose F-class is not inside their E_N-class.
QuotientSubset excess_domain(const Partition& f, const Partition& en);

}  // namespace qfm
