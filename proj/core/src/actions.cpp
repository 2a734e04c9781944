#include "qfm/actions.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "qfm/error.hpp"
#include "qfm/relations.hpp"

namespace qfm {

namespace {

std::string cycle_name(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (Point x = 0; x < p.size(); ++x) {
    if (seen[x] || p[x] == x) continue;
    out += "(";
    for (Point y = x; !seen[y]; y = p[y]) {
      seen[y] = true;
      if (y != x) out += " ";
      out += std::to_string(y);
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

std::string pair_text(std::size_t a, std::size_t b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}  // namespace

FiniteGroup::FiniteGroup(std::vector<std::vector<Element>> table, std::vector<std::string> names, int)
    : table_(std::move(table)), names_(std::move(names)) {
  const std::size_t n = table_.size();
  auto fail = [](const std::string& what, const std::string& witness) {
    throw Error(ErrorKind::InvalidGroup, what, witness);
  };
  if (n == 0) fail("a group needs at least one element", "");
  for (const auto& row : table_) {
    if (row.size() != n) fail("table is not square", "");
    for (Element v : row) {
      if (v >= n) fail("table entry out of range", std::to_string(v));
    }
  }
  for (Element a = 0; a < n; ++a) {
    if (table_[0][a] != a || table_[a][0] != a) fail("element 0 is not the identity", std::to_string(a));
  }
  inverse_.assign(n, kNoElement);
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (table_[a][b] == 0 && table_[b][a] == 0) {
        inverse_[a] = b;
        break;
      }
    }
    if (inverse_[a] == kNoElement) fail("element has no inverse", std::to_string(a));
  }
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      for (Element c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
          fail("multiplication is not associative",
               "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
        }
  if (names_.empty()) {
    names_.push_back("e");
    for (Element a = 1; a < n; ++a) names_.push_back("g" + std::to_string(a));
  }
  if (names_.size() != n) fail("wrong number of element names", "");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (names_[i] == names_[j]) fail("duplicate element name", names_[i]);
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<Element>> table,
                                    std::vector<std::string> names) {
  return FiniteGroup(std::move(table), std::move(names), 0);
}

FiniteGroup FiniteGroup::trivial() { return FiniteGroup({{0}}, {"e"}, 0); }

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidGroup, "cyclic group of order 0", "0");
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  std::vector<std::string> names;
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) table[a][b] = (a + b) % n;
    names.push_back(a == 0 ? "e" : a == 1 ? "r" : "r" + std::to_string(a));
  }
  return FiniteGroup(std::move(table), std::move(names), 0);
}

FiniteGroup FiniteGroup::symmetric(std::size_t k) {
  if (k > 5) throw Error(ErrorKind::InvalidGroup, "symmetric groups above S_5 are not tabulated", std::to_string(k));
  std::vector<Permutation> perms;
  Permutation p = identity_map(k);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<Permutation, Element> index;
  for (Element i = 0; i < perms.size(); ++i) index[perms[i]] = i;
  std::vector<std::vector<Element>> table(perms.size(), std::vector<Element>(perms.size()));
  std::vector<std::string> names;
  for (Element a = 0; a < perms.size(); ++a) {
    for (Element b = 0; b < perms.size(); ++b) table[a][b] = index.at(compose(perms[a], perms[b]));
    names.push_back(cycle_name(perms[a]));
  }
  FiniteGroup g(std::move(table), std::move(names), 0);
  g.perms_ = std::move(perms);
  return g;
}

std::optional<Element> FiniteGroup::find(const std::string& name) const {
  for (Element a = 0; a < names_.size(); ++a) {
    if (names_[a] == name) return a;
  }
  return std::nullopt;
}

bool FiniteGroup::is_subgroup(const std::vector<Element>& elements) const {
  std::vector<bool> in(order(), false);
  for (Element a : elements) {
    if (a >= order()) return false;
    in[a] = true;
  }
  if (!in[0]) return false;
  for (Element a : elements) {
    if (!in[inverse(a)]) return false;
    for (Element b : elements) {
      if (!in[multiply(a, b)]) return false;
    }
  }
  return true;
}

void FiniteGroup::require_subgroup(const std::vector<Element>& elements) const {
  if (is_subgroup(elements)) return;
  std::string list;
  for (Element a : elements) list += (list.empty() ? "" : ",") + std::to_string(a);
  throw Error(ErrorKind::NotASubgroup, "elements {" + list + "} are not closed under product and inverse",
              list);
}

GroupAction::GroupAction(FiniteGroup group, std::size_t points, std::vector<Permutation> act)
    : group_(std::move(group)), points_(points), act_(std::move(act)) {
  auto fail = [](const std::string& what, const std::string& witness) {
    throw Error(ErrorKind::InvalidAction, what, witness);
  };
  if (act_.size() != group_.order()) fail("one permutation per group element is needed", "");
  for (Element g = 0; g < act_.size(); ++g) {
    if (act_[g].size() != points_ || !is_permutation(act_[g])) {
      fail("element " + group_.name(g) + " does not act by a bijection", group_.name(g));
    }
  }
  if (act_[0] != identity_map(points_)) fail("the identity does not act trivially", "e");
  for (Element a = 0; a < act_.size(); ++a) {
    for (Element b = 0; b < act_.size(); ++b) {
      if (act_[group_.multiply(a, b)] != compose(act_[a], act_[b])) {
        fail("the action is not a homomorphism", "(" + group_.name(a) + "," + group_.name(b) + ")");
      }
    }
  }
}

GroupAction restrict_action(const GroupAction& a, const std::vector<Element>& subgroup) {
  const FiniteGroup& g = a.group();
  g.require_subgroup(subgroup);
  std::vector<Element> order = subgroup;
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  std::map<Element, Element> pos;
  for (Element i = 0; i < order.size(); ++i) pos[order[i]] = i;
  std::vector<std::vector<Element>> table(order.size(), std::vector<Element>(order.size()));
  std::vector<std::string> names;
  std::vector<Permutation> act;
  for (Element i = 0; i < order.size(); ++i) {
    for (Element j = 0; j < order.size(); ++j) table[i][j] = pos.at(g.multiply(order[i], order[j]));
    names.push_back(g.name(order[i]));
    act.push_back(a.permutation(order[i]));
  }
  return GroupAction(FiniteGroup::from_table(std::move(table), std::move(names)), a.points(),
                     std::move(act));
}

Partition orbit_equivalence(const GroupAction& a) {
  UnionFind uf(a.points());
  for (Element g = 0; g < a.group().order(); ++g) {
    for (Point x = 0; x < a.points(); ++x) uf.unite(x, a.apply(g, x));
  }
  return uf.partition();
}

FreePart free_part(const GroupAction& a) {
  std::vector<Point> keep;
  std::vector<Point> renumber(a.points(), kNoPoint);
  for (Point x = 0; x < a.points(); ++x) {
    bool fixed = false;
    for (Element g = 1; g < a.group().order() && !fixed; ++g) fixed = a.apply(g, x) == x;
    if (!fixed) {
      renumber[x] = keep.size();
      keep.push_back(x);
    }
  }
  std::vector<Permutation> act;
  for (Element g = 0; g < a.group().order(); ++g) {
    Permutation p(keep.size());
    for (Point i = 0; i < keep.size(); ++i) p[i] = renumber[a.apply(g, keep[i])];
    act.push_back(std::move(p));
  }
  return {GroupAction(a.group(), keep.size(), std::move(act)), std::move(keep)};
}

FreenessReport is_free(const GroupAction& a) {
  for (Point x = 0; x < a.points(); ++x) {
    for (Element g = 1; g < a.group().order(); ++g) {
      if (a.apply(g, x) == x) return {false, std::pair{g, x}};
    }
  }
  return {};
}

Cocycle cocycle_from_free_action(const GroupAction& a) {
  const auto free = is_free(a);
  if (!free.free) {
    const auto [g, x] = *free.witness;
    throw Error(ErrorKind::NotFree,
                "element " + a.group().name(g) + " fixes point " + std::to_string(x),
                "(" + a.group().name(g) + "," + std::to_string(x) + ")");
  }
  const std::size_t n = a.points();
  Cocycle c{orbit_equivalence(a), std::vector<Element>(n * n, kNoElement)};
  for (Element g = 0; g < a.group().order(); ++g) {
    for (Point x = 0; x < n; ++x) c.set(x, a.apply(g, x), g);
  }
  return c;
}

CocycleReport verify_cocycle(const GroupAction& a, const Cocycle& theta) {
  CocycleReport r;
  const Partition& f = theta.relation;
  const std::size_t n = f.size();
  if (n != a.points() || theta.table.size() != n * n) {
    r.total = false;
    r.witness = "size mismatch";
    return r;
  }
  for (Point x = 0; x < n && r.ok(); ++x) {
    for (Point y = 0; y < n; ++y) {
      const Element g = theta.at(x, y);
      if ((g != kNoElement) != f.equivalent(x, y) || (g != kNoElement && g >= a.group().order())) {
        r.total = false;
        r.witness = pair_text(x, y);
        break;
      }
      if (g != kNoElement && a.apply(g, x) != y) {
        r.property1 = false;
        r.witness = pair_text(x, y);
        break;
      }
    }
  }
  if (!r.ok()) return r;
  for (const auto& cls : f.classes()) {
    for (Point x : cls) {
      for (Point y : cls) {
        for (Point z : cls) {
          if (theta.at(x, z) != a.group().multiply(theta.at(y, z), theta.at(x, y))) {
            r.property2 = false;
            r.witness = "(" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) + ")";
            return r;
          }
        }
      }
    }
  }
  return r;
}

GammaPartition selector_to_gamma_partition(const GroupAction& a, const Endomorphism& phi) {
  const Cocycle theta = cocycle_from_free_action(a);
  if (auto bad = selector_violation(phi, theta.relation)) {
    throw Error(ErrorKind::NotASelector, *bad, *bad);
  }
  const std::size_t n = a.points();
  const std::size_t order = a.group().order();
  GammaPartition out;
  out.zones.assign(order, QuotientSubset::none(n));
  for (Point x = 0; x < n; ++x) out.zones[theta.at(x, phi[x])].members[x] = true;
  for (const auto& z : out.zones) out.sizes.push_back(z.count());
  for (Element d = 1; d < order && out.translates_disjoint; ++d) {
    for (const auto& z : out.zones) {
      for (Point x : z.points()) {
        if (z.members[a.apply(d, x)]) {
          out.translates_disjoint = false;
          break;
        }
      }
      if (!out.translates_disjoint) break;
    }
  }
  return out;
}

std::vector<Element> normalizer(const FiniteGroup& g, const std::vector<Element>& d) {
  g.require_subgroup(d);
  std::vector<bool> in(g.order(), false);
  for (Element x : d) in[x] = true;
  std::vector<Element> out;
  for (Element a = 0; a < g.order(); ++a) {
    const bool keeps = std::all_of(d.begin(), d.end(), [&](Element x) {
      return in[g.multiply(g.multiply(a, x), g.inverse(a))];
    });
    if (keeps) out.push_back(a);
  }
  return out;
}

QuotientSubset excess_domain(const Partition& f, const Partition& en) {
  if (f.size() != en.size()) throw Error(ErrorKind::InvalidArgument, "relations over different spaces");
  QuotientSubset out = QuotientSubset::none(f.size());
  for (Point x = 0; x < f.size(); ++x) {
    for (Point y : f.members(f.class_of(x))) {
      if (!en.equivalent(x, y)) {
        out.members[x] = true;
        break;
      }
    }
  }
  return out;
}

}  // namespace qfm
