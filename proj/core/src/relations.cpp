#include "qfm/relations.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "qfm/error.hpp"

namespace qfm {

namespace {

std::string pair_text(std::int64_t a, std::int64_t b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

// preimages[j][z] = ascending list of w with f_j(w) = z
std::vector<std::vector<std::vector<Point>>> preimage_lists(std::size_t n,
                                                             const std::vector<Endomorphism>& gens) {
  std::vector<std::vector<std::vector<Point>>> pre(gens.size(), std::vector<std::vector<Point>>(n));
  for (std::size_t j = 0; j < gens.size(); ++j) {
    for (Point w = 0; w < n; ++w) pre[j][gens[j][w]].push_back(w);
  }
  return pre;
}

}  // namespace

Closure::Closure(std::size_t n, std::vector<Endomorphism> generators)
    : n_(n), generators_(std::move(generators)), dist_(n * n, kNoPoint) {
  for (const auto& f : generators_) {
    if (f.size() != n) throw Error(ErrorKind::InvalidArgument, "generator has the wrong size");
    for (Point y : f) {
      if (y >= n) throw Error(ErrorKind::InvalidArgument, "generator value out of range");
    }
  }
  const auto pre = preimage_lists(n, generators_);
  std::vector<Point> queue;
  queue.reserve(n);
  for (Point x = 0; x < n; ++x) {
    std::size_t* d = &dist_[x * n];
    d[x] = 0;
    queue.assign(1, x);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Point z = queue[head];
      auto visit = [&](Point w) {
        if (d[w] == kNoPoint) {
          d[w] = d[z] + 1;
          queue.push_back(w);
        }
      };
      for (std::size_t j = 0; j < generators_.size(); ++j) {
        visit(generators_[j][z]);
        for (Point w : pre[j][z]) visit(w);
      }
    }
  }
  std::vector<std::size_t> labels(n);
  for (Point x = 0; x < n; ++x) {
    // least point linked to x
    Point least = x;
    for (Point y = 0; y < x; ++y) {
      if (dist_[x * n + y] != kNoPoint) {
        least = y;
        break;
      }
    }
    labels[x] = least;
    for (Point y = 0; y < n; ++y) {
      if (dist_[x * n + y] != kNoPoint) stabilization_ = std::max(stabilization_, dist_[x * n + y]);
    }
  }
  partition_ = Partition::from_labels(labels);
}

Relation Closure::layer(std::size_t r) const {
  Relation out(n_, n_);
  for (Point x = 0; x < n_; ++x) {
    for (Point y = 0; y < n_; ++y) {
      if (distance(x, y) <= r) out.insert(x, y);
    }
  }
  return out;
}

Closure generate_equivalence(std::size_t n, std::vector<Endomorphism> generators) {
  return Closure(n, std::move(generators));
}

std::optional<Chain> chain_witness(const Closure& closure, Point x, Point y) {
  const std::size_t n = closure.size();
  if (x >= n || y >= n) throw Error(ErrorKind::InvalidArgument, "point out of range");
  if (closure.distance(x, y) == kNoPoint) return std::nullopt;
  const auto& gens = closure.generators();
  const auto pre = preimage_lists(n, gens);
  std::vector<bool> seen(n, false);
  std::vector<ChainStep> via(n);
  std::deque<Point> queue{x};
  seen[x] = true;
  while (!queue.empty() && !seen[y]) {
    const Point z = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < gens.size(); ++j) {
      auto visit = [&](Point w, ChainStep::Direction dir) {
        if (seen[w]) return;
        seen[w] = true;
        via[w] = {j, dir, z, w};
        queue.push_back(w);
      };
      visit(gens[j][z], ChainStep::Direction::Forward);
      for (Point w : pre[j][z]) visit(w, ChainStep::Direction::Reverse);
    }
  }
  Chain chain;
  for (Point z = y; z != x; z = via[z].from) chain.steps.push_back(via[z]);
  std::reverse(chain.steps.begin(), chain.steps.end());
  chain.points.push_back(x);
  for (const auto& s : chain.steps) chain.points.push_back(s.to);
  return chain;
}

Partition tail_equivalence(const Endomorphism& f) {
  // no chain layers needed here, so skip the distance matrix
  UnionFind uf(f.size());
  for (Point x = 0; x < f.size(); ++x) uf.unite(x, f[x]);
  return uf.partition();
}

IndexValue index_over(const Partition& f) { return {f.max_class_size()}; }

IndexValue index_over(const QuotientSpace& q) {
  std::uint64_t m = 0;
  for (std::size_t c = 0; c < q.point_count(); ++c) {
    const auto s = q.class_size(c);
    if (!s) return {};
    m = std::max(m, *s);
  }
  return {m};
}

std::string to_string(const IndexValue& v) {
  return v.unbounded() ? "unbounded" : std::to_string(*v.value);
}

Endomorphism transversal_to_selector(const QuotientSubset& t, const Partition& f) {
  if (t.members.size() != f.size()) {
    throw Error(ErrorKind::InvalidArgument, "transversal and relation sizes differ");
  }
  Endomorphism phi(f.size());
  for (std::size_t c = 0; c < f.class_count(); ++c) {
    std::vector<Point> hits;
    for (Point x : f.members(c)) {
      if (t.members[x]) hits.push_back(x);
    }
    if (hits.size() != 1) {
      throw Error(ErrorKind::NotATransversal,
                  "class of " + std::to_string(f.members(c).front()) + " is met " +
                      std::to_string(hits.size()) + " times",
                  std::to_string(f.members(c).front()));
    }
    for (Point x : f.members(c)) phi[x] = hits.front();
  }
  return phi;
}

std::optional<std::string> selector_violation(const Endomorphism& phi, const Partition& f) {
  if (phi.size() != f.size()) return "size mismatch";
  for (Point x = 0; x < phi.size(); ++x) {
    if (phi[x] >= f.size() || !f.equivalent(x, phi[x])) {
      return "phi(" + std::to_string(x) + ") not F-equivalent to " + std::to_string(x);
    }
  }
  for (const auto& c : f.classes()) {
    for (Point y : c) {
      if (phi[y] != phi[c.front()]) {
        return "phi differs on F-equivalent points " + pair_text(static_cast<std::int64_t>(c.front()),
                                                                  static_cast<std::int64_t>(y));
      }
    }
  }
  return std::nullopt;
}

QuotientSubset selector_to_transversal(const Endomorphism& phi, const Partition& f) {
  if (auto bad = selector_violation(phi, f)) throw Error(ErrorKind::NotASelector, *bad, *bad);
  QuotientSubset t = QuotientSubset::none(f.size());
  for (Point x = 0; x < phi.size(); ++x) t.members[x] = phi[x] == x;
  return t;
}

Endomorphism min_selector(const Partition& f) {
  Endomorphism phi(f.size());
  for (Point x = 0; x < f.size(); ++x) phi[x] = f.members(f.class_of(x)).front();
  return phi;
}

Permutation index2_involution(const Partition& f) {
  Permutation inv = identity_map(f.size());
  for (const auto& c : f.classes()) {
    if (c.size() > 2) {
      throw Error(ErrorKind::IndexTooLarge,
                  "class of " + std::to_string(c.front()) + " has " + std::to_string(c.size()) +
                      " points",
                  std::to_string(c.front()));
    }
    if (c.size() == 2) {
      inv[c[0]] = c[1];
      inv[c[1]] = c[0];
    }
  }
  return inv;
}

InvolutionSearch involution_generation_search(const Partition& f, std::size_t max_count) {
  InvolutionSearch out;
  const std::size_t largest = f.max_class_size();
  out.minimum = largest <= 1 ? 0 : largest == 2 ? 1 : 2;
  if (out.minimum > max_count) {
    out.found = false;
    if (largest == 2) {
      out.note = "a nontrivial relation needs at least one involution";
    } else {
      out.note = "a class of size " + std::to_string(largest) +
                 " needs two involutions: one involution only links points in pairs";
    }
    return out;
  }
  out.found = true;
  if (out.minimum == 0) {
    out.note = "equality is generated by the empty family";
    return out;
  }
  // Path c0 - c1 - ... through every class; even edges go to the first
  // involution, odd edges to the second.
  Permutation even = identity_map(f.size());
  Permutation odd = identity_map(f.size());
  for (const auto& c : f.classes()) {
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
      Permutation& target = (i % 2 == 0) ? even : odd;
      target[c[i]] = c[i + 1];
      target[c[i + 1]] = c[i];
    }
  }
  out.involutions.push_back(std::move(even));
  if (out.minimum == 2) out.involutions.push_back(std::move(odd));
  out.note = "finite quotients always admit such a family; the bound is 2";
  return out;
}

bool in_partial_group(const PartialInjection& g, const Partition& f) {
  if (g.size() != f.size()) return false;
  for (Point x = 0; x < g.size(); ++x) {
    if (g.defined_at(x) && !f.equivalent(x, g(x))) return false;
  }
  return true;
}

bool in_full_group(const Permutation& g, const Partition& f) {
  if (g.size() != f.size() || !is_permutation(g)) return false;
  for (Point x = 0; x < g.size(); ++x) {
    if (!f.equivalent(x, g[x])) return false;
  }
  return true;
}

Relation union_of_graphs(const EnumeratedEquivalence& f) {
  Relation u(f.size, f.size);
  for (const auto& g : f.graphs) {
    for (Point x = 0; x < f.size; ++x) u.insert(x, g[x]);
  }
  return u;
}

ClosureReport verify_enumeration(const EnumeratedEquivalence& f) {
  ClosureReport r;
  for (std::size_t j = 0; j < f.graphs.size(); ++j) {
    const auto& g = f.graphs[j];
    const bool ok = g.size() == f.size &&
                    std::all_of(g.begin(), g.end(), [&](Point y) { return y < f.size; });
    if (!ok) {
      r.endomorphisms = false;
      r.endomorphism_witness = "graph " + std::to_string(j) + " is not a total self-map";
      return r;
    }
  }
  const Relation u = union_of_graphs(f);
  for (Point x = 0; x < f.size && r.reflexive; ++x) {
    if (!u.contains(x, x)) {
      r.reflexive = false;
      r.reflexive_witness = pair_text(static_cast<std::int64_t>(x), static_cast<std::int64_t>(x));
    }
  }
  for (auto [x, y] : u.pairs()) {
    if (!u.contains(y, x)) {
      r.symmetric = false;
      r.symmetric_witness = pair_text(static_cast<std::int64_t>(y), static_cast<std::int64_t>(x));
      break;
    }
  }
  for (Point x = 0; x < f.size && r.transitive; ++x) {
    for (Point y : u.section(x)) {
      for (Point z : u.section(y)) {
        if (!u.contains(x, z)) {
          r.transitive = false;
          r.transitive_witness =
              pair_text(static_cast<std::int64_t>(x), static_cast<std::int64_t>(z));
          break;
        }
      }
      if (!r.transitive) break;
    }
  }
  return r;
}

std::vector<std::pair<std::int64_t, IntSet>> offset_cover(
    const std::vector<PiecewiseTranslation>& graphs) {
  std::map<std::int64_t, IntSet> cover;
  for (const auto& g : graphs) {
    for (const auto& p : g.pieces()) {
      auto [it, inserted] = cover.try_emplace(p.offset, p.domain);
      if (!inserted) it->second = it->second.unite(p.domain);
    }
  }
  return {cover.begin(), cover.end()};
}

ClosureReport verify_enumeration(const TranslationPresentation& f) {
  ClosureReport r;
  for (std::size_t j = 0; j < f.graphs.size(); ++j) {
    const auto& g = f.graphs[j];
    if (g.domain() != f.ambient || !g.range().subset_of(f.ambient)) {
      r.endomorphisms = false;
      r.endomorphism_witness = "graph " + std::to_string(j) + " is not a total self-map";
      return r;
    }
  }
  const auto cover = offset_cover(f.graphs);
  auto covered = [&](std::int64_t c) {
    for (const auto& [off, dom] : cover) {
      if (off == c) return dom;
    }
    return IntSet::empty_set();
  };
  if (const IntSet miss = f.ambient.minus(covered(0)); !miss.empty()) {
    const std::int64_t x = *miss.closest_to_zero();
    r.reflexive = false;
    r.reflexive_witness = pair_text(x, x);
    r.missing_offset = 0;
    return r;
  }
  for (const auto& [c, dom] : cover) {
    const IntSet miss = dom.translate(c).minus(covered(-c));
    if (!miss.empty()) {
      const std::int64_t y = *miss.closest_to_zero();
      r.symmetric = false;
      r.symmetric_witness = pair_text(y, y - c);
      r.missing_offset = -c;
      return r;
    }
  }
  for (const auto& g1 : f.graphs) {
    for (const auto& p1 : g1.pieces()) {
      for (const auto& g2 : f.graphs) {
        for (const auto& p2 : g2.pieces()) {
          const std::int64_t c = p1.offset + p2.offset;
          const IntSet reach = p1.domain.intersect(p2.domain.translate(-p1.offset));
          const IntSet miss = reach.minus(covered(c));
          if (!miss.empty()) {
            const std::int64_t x = *miss.closest_to_zero();
            r.transitive = false;
            r.transitive_witness = pair_text(x, x + c);
            r.missing_offset = c;
            return r;
          }
        }
      }
    }
  }
  return r;
}

EnumeratedEquivalence canonical_enumeration(const Partition& f) {
  EnumeratedEquivalence e{f.size(), {}};
  const std::size_t k = std::max<std::size_t>(f.max_class_size(), 1);
  for (std::size_t i = 0; i < k && f.size() > 0; ++i) {
    Endomorphism g(f.size());
    for (Point x = 0; x < f.size(); ++x) {
      const auto& c = f.members(f.class_of(x));
      g[x] = i < c.size() ? c[i] : x;
    }
    e.graphs.push_back(std::move(g));
  }
  return e;
}

}  // namespace qfm
