// One PASS/FAIL line per acceptance criterion. Every check below recomputes
// its verdict from first principles rather than trusting the library's own
// check lists.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "qfm/actions.hpp"
#include "qfm/cantor.hpp"
#include "qfm/error.hpp"
#include "qfm/feldman_moore.hpp"
#include "qfm/gallery.hpp"
#include "qfm/integer_cover.hpp"
#include "qfm/relations.hpp"
#include "support/intset_oracle.hpp"
#include "support/relation_oracle.hpp"
#include "support/word_oracle.hpp"

using namespace qfm;
using namespace qfm::testing;

namespace {

// Counts cases and keeps the first failure.
struct Tally {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ == 0) first = what;
  }
};

bool is_involution(const Permutation& p) {
  for (Point x = 0; x < p.size(); ++x) {
    if (p[p[x]] != x) return false;
  }
  return true;
}

bool inside(const Permutation& p, const Partition& f) {
  for (Point x = 0; x < p.size(); ++x) {
    if (!f.equivalent(x, p[x])) return false;
  }
  return true;
}

bool closure_is(const std::vector<std::vector<bool>>& r, const Partition& f) {
  for (Point x = 0; x < f.size(); ++x) {
    for (Point y = 0; y < f.size(); ++y) {
      if (r[x][y] != f.equivalent(x, y)) return false;
    }
  }
  return true;
}

std::string describe(const Partition& f) {
  std::ostringstream os;
  for (const auto& c : f.classes()) {
    os << '{';
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << '}';
  }
  return os.str();
}

// Canonical enumeration plus a few random maps inside F, shuffled.
EnumeratedEquivalence random_enumeration(std::mt19937_64& rng, const Partition& f) {
  EnumeratedEquivalence en = canonical_enumeration(f);
  const std::size_t extra = rng() % 3;
  for (std::size_t k = 0; k < extra; ++k) {
    Endomorphism g(f.size());
    for (Point x = 0; x < f.size(); ++x) {
      const auto& c = f.members(f.class_of(x));
      g[x] = c[rng() % c.size()];
    }
    en.graphs.push_back(std::move(g));
  }
  std::shuffle(en.graphs.begin(), en.graphs.end(), rng);
  return en;
}

// The quotient sizes used by criteria 1 and 4.
std::vector<Partition> partition_corpus(std::mt19937_64& rng, std::size_t random_count) {
  std::vector<Partition> out;
  for (std::size_t n = 1; n <= 5; ++n) {
    for (auto& p : all_partitions(n)) out.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < random_count; ++i) {
    const std::size_t n = 6 + rng() % 3;
    out.push_back(random_partition(rng, n, 1 + rng() % n));
  }
  return out;
}

// --- 1 -------------------------------------------------------------------
Tally criterion1() {
  Tally t;
  std::mt19937_64 rng(101);
  for (const Partition& f : partition_corpus(rng, 500)) {
    // F lives on the quotient of a carrier with a random E over it
    const std::size_t n = f.size();
    std::vector<std::size_t> labels;
    for (Point q = 0; q < n; ++q) {
      for (std::size_t copies = 1 + rng() % 2; copies > 0; --copies) labels.push_back(q);
    }
    const SpacePtr space = make_quotient(FiniteCarrier{labels.size(), {}}, Partition::from_labels(labels));
    t.expect(space->point_count() == n, "quotient size");
    for (const bool canonical : {true, false}) {
      ++t.cases;
      const EnumeratedEquivalence en = canonical ? canonical_enumeration(f) : random_enumeration(rng, f);
      t.expect(verify_enumeration(en).ok(), "enumeration of " + describe(f));
      const FmResult r = fm_quotient(en);
      for (const auto& g : r.generators) t.expect(is_permutation(g) && inside(g, f), "generator outside [F] for " + describe(f));
      t.expect(closure_is(naive_closure(n, r.generators), f), "orbits differ from " + describe(f));
    }
  }
  return t;
}

// --- 2 and 3 ---------------------------------------------------------------
struct FiniteCoverCase {
  Partition f;
  PartialInjection g0;
  CoverCertificate c;
};

std::vector<FiniteCoverCase> finite_cover_cases() {
  std::mt19937_64 rng(202);
  std::vector<FiniteCoverCase> out;
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 1 + rng() % 10;
    Partition f = random_partition(rng, n, 1 + rng() % n);
    PartialInjection g0 = random_injection_in(rng, f);
    const auto psis = psi_split(i % 2 ? canonical_enumeration(f) : random_enumeration(rng, f));
    CoverCertificate c = cover(f, g0, psis);
    out.push_back({std::move(f), std::move(g0), std::move(c)});
  }
  return out;
}

IntegerCoverCertificate shift_certificate() { return *example_gallery("et_shift").integer_cover; }

constexpr std::int64_t kWindow = 64;

std::optional<std::int64_t> preimage_near(const PiecewiseTranslation& g, std::int64_t y) {
  std::int64_t reach = 0;
  for (const auto& p : g.pieces()) reach = std::max(reach, p.offset < 0 ? -p.offset : p.offset);
  for (std::int64_t x = y - reach; x <= y + reach; ++x) {
    if (g.apply(x) == y) return x;
  }
  return std::nullopt;
}

Tally criterion2(const std::vector<FiniteCoverCase>& cases) {
  Tally t;
  for (const auto& k : cases) {
    ++t.cases;
    const auto& g1 = k.c.g1;
    const auto& g2 = k.c.g2;
    t.expect(is_permutation(g1) && is_permutation(g2), "g' or g'' not a bijection on " + describe(k.f));
    t.expect(inside(g1, k.f) && inside(g2, k.f), "g' or g'' leaves F on " + describe(k.f));
    for (const auto& [x, y] : k.g0.pairs()) {
      t.expect(g1[x] == y || g2[x] == y, "g0 pair not covered on " + describe(k.f));
      t.expect(g1[y] == x || g2[y] == x, "inverse g0 pair not covered on " + describe(k.f));
    }
  }
  // integer carrier, pointwise on the window
  ++t.cases;
  const auto c = shift_certificate();
  for (std::int64_t x = -kWindow; x <= kWindow; ++x) {
    for (const auto* g : {&c.g1, &c.g2}) {
      const auto y = g->apply(x);
      t.expect(y.has_value(), "g' or g'' undefined at " + std::to_string(x));
      t.expect(preimage_near(*g, x).has_value(), "g' or g'' misses " + std::to_string(x));
      // F: the ray [0, inf) is one block, every other point a singleton
      if (y) t.expect(*y == x || (x >= 0 && *y >= 0), "pair outside F at " + std::to_string(x));
    }
    if (x >= 0) {
      t.expect(c.g1.apply(x) == x + 1 || c.g2.apply(x) == x + 1, "g0 pair at " + std::to_string(x));
      t.expect(c.g1.apply(x + 1) == x || c.g2.apply(x + 1) == x, "inverse g0 pair at " + std::to_string(x));
    }
  }
  return t;
}

Tally criterion3(const std::vector<FiniteCoverCase>& cases) {
  Tally t;
  for (const auto& k : cases) {
    ++t.cases;
    const auto& g = k.c.g;
    const std::size_t n = k.f.size();
    const auto dom = g.domain_mask();
    const auto rng = g.range_mask();
    // X_1, X_-1 and the recurrences, from g alone
    std::vector<bool> x1(n), xm1(n);
    for (Point x = 0; x < n; ++x) {
      x1[x] = dom[x] && !rng[x];
      xm1[x] = rng[x] && !dom[x];
    }
    const auto& lv = k.c.levels;
    const auto level = [&](const std::vector<QuotientSubset>& side, std::size_t i) {
      return i < side.size() ? side[i].members : std::vector<bool>(n, false);
    };
    t.expect(level(lv.positive, 0) == x1, "X_1 law on " + describe(k.f));
    t.expect(level(lv.negative, 0) == xm1, "X_-1 law on " + describe(k.f));
    for (std::size_t i = 0; i + 1 < std::max<std::size_t>(lv.positive.size(), 1) + 1; ++i) {
      std::vector<bool> next(n, false);
      const auto cur = level(lv.positive, i);
      for (Point x = 0; x < n; ++x) {
        if (cur[x] && g.defined_at(x)) next[g(x)] = true;
      }
      t.expect(level(lv.positive, i + 1) == next, "recurrence on " + describe(k.f));
    }
    std::vector<int> hits(n, 0);
    for (const auto* side : {&lv.positive, &lv.negative}) {
      for (const auto& s : *side) {
        for (Point x = 0; x < n; ++x) hits[x] += s.members[x];
      }
    }
    for (Point x = 0; x < n; ++x) hits[x] += lv.zero.members[x];
    t.expect(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }), "levels not a partition on " + describe(k.f));
    // finite carriers: a maximal g leaves no X_n with n != 0
    t.expect(std::none_of(x1.begin(), x1.end(), [](bool b) { return b; }) &&
                 std::none_of(xm1.begin(), xm1.end(), [](bool b) { return b; }),
             "nonzero level on a finite carrier " + describe(k.f));
  }
  ++t.cases;
  const auto c = shift_certificate();
  const auto in_dom = [&](std::int64_t x) { return c.g.apply(x).has_value(); };
  const auto in_rng = [&](std::int64_t x) { return preimage_near(c.g, x).has_value(); };
  for (std::int64_t x = -kWindow; x <= kWindow; ++x) {
    t.expect(c.levels.positive.level(1).contains(x) == (in_dom(x) && !in_rng(x)), "X_1 at " + std::to_string(x));
    t.expect(c.levels.negative.level(1).contains(x) == (in_rng(x) && !in_dom(x)), "X_-1 at " + std::to_string(x));
    int hits = c.levels.zero.contains(x) ? 1 : 0;
    for (std::size_t lvl = 1; lvl <= 4 * kWindow; ++lvl) {
      hits += c.levels.positive.level(lvl).contains(x);
      hits += c.levels.negative.level(lvl).contains(x);
    }
    t.expect(hits == 1, "point " + std::to_string(x) + " in " + std::to_string(hits) + " levels");
  }
  for (std::size_t lvl = 1; lvl <= 2 * kWindow; ++lvl) {
    for (std::int64_t x = -kWindow; x <= kWindow; ++x) {
      const bool next = c.levels.positive.level(lvl + 1).contains(x);
      const auto pre = preimage_near(c.g, x);
      const bool from = pre && c.levels.positive.level(lvl).contains(*pre);
      t.expect(next == from, "X_" + std::to_string(lvl + 1) + " at " + std::to_string(x));
    }
  }
  return t;
}

// --- 4 -------------------------------------------------------------------
Tally criterion4() {
  Tally t;
  std::mt19937_64 rng(404);
  for (const Partition& e : partition_corpus(rng, 500)) {
    ++t.cases;
    const ClassicalFm r = classical_fm(e);
    for (const auto& inv : r.involutions) {
      t.expect(is_involution(inv.map) && inside(inv.map, e), "f_{m,n,p} on " + describe(e));
    }
    for (Point x = 0; x < e.size(); ++x) {
      for (Point y : e.members(e.class_of(x))) {
        if (x == y) continue;
        bool swapped = false;
        for (const auto& inv : r.involutions) swapped = swapped || inv.map[x] == y;
        t.expect(swapped, "no involution takes " + std::to_string(x) + " to " + std::to_string(y) + " in " + describe(e));
      }
    }
  }
  return t;
}

// --- 5 -------------------------------------------------------------------
Tally criterion5() {
  Tally t;
  std::mt19937_64 rng(505);
  for (int i = 0; i < 1000; ++i) {
    ++t.cases;
    const std::size_t n = 1 + rng() % 10;
    std::vector<Endomorphism> gens;
    for (std::size_t k = rng() % 4; k > 0; --k) gens.push_back(random_map(rng, n));
    t.expect(closure_is(naive_closure(n, gens), generate_equivalence(n, gens).partition()), "closure mismatch");
    const Endomorphism f = random_map(rng, n);
    const Partition tail = tail_equivalence(f);
    for (Point x = 0; x < n; ++x) {
      for (Point y = 0; y < n; ++y) t.expect(tail.equivalent(x, y) == tail_related(f, x, y, n), "tail mismatch");
    }
  }
  return t;
}

// --- 6 -------------------------------------------------------------------
Tally criterion6() {
  Tally t;
  std::mt19937_64 rng(606);
  for (int i = 0; i < 500; ++i) {
    ++t.cases;
    const std::size_t rows = 1 + rng() % 9;
    const std::size_t cols = 1 + rng() % 9;
    Relation r(rows, cols);
    for (Point x = 0; x < rows; ++x) {
      for (Point y = 0; y < cols; ++y) {
        if (rng() % 3 == 0) r.insert(x, y);
      }
    }
    // a covering family: each pair placed on some map, plus noise off R
    std::size_t widest = 0;
    for (Point x = 0; x < rows; ++x) widest = std::max(widest, r.section(x).size());
    std::vector<PartialMap> maps(widest + rng() % 3, PartialMap(rows, kNoPoint));
    for (Point x = 0; x < rows; ++x) {
      std::vector<std::size_t> slots(maps.size());
      for (std::size_t k = 0; k < slots.size(); ++k) slots[k] = k;
      std::shuffle(slots.begin(), slots.end(), rng);
      const auto sec = r.section(x);
      for (std::size_t j = 0; j < sec.size(); ++j) maps[slots[j]][x] = sec[j];
      for (std::size_t j = sec.size(); j < slots.size(); ++j) {
        if (rng() % 2) maps[slots[j]][x] = rng() % cols;
      }
    }
    const Uniformization u = weak_uniformize(r, maps);
    for (Point x = 0; x < rows; ++x) {
      const bool in_dom = !r.section(x).empty();
      t.expect((u.phi[x] != kNoPoint) == in_dom, "dom phi != dom R");
      if (u.phi[x] != kNoPoint) t.expect(r.contains(x, u.phi[x]), "phi outside R");
      std::size_t least = kNoPoint;
      for (std::size_t k = 0; k < maps.size() && least == kNoPoint; ++k) {
        if (maps[k][x] != kNoPoint && r.contains(x, maps[k][x])) least = k;
      }
      t.expect(u.index[x] == least && (least == kNoPoint || u.phi[x] == maps[least][x]), "not the least covering index");
    }
    const Decomposition d = lusin_novikov_decompose(r);
    Relation unite(rows, cols);
    for (const auto& g : d.graphs) {
      t.expect(g.size() == rows, "graph is not a function on the rows");
      for (Point x = 0; x < g.size(); ++x) {
        if (g[x] == kNoPoint) continue;
        t.expect(r.contains(x, g[x]), "decomposition graph outside R");
        unite.insert(x, g[x]);
      }
    }
    t.expect(unite == r, "decomposition union differs from R");
    for (Point x = 0; x < rows; ++x) {
      const bool in_dom = !r.section(x).empty();
      t.expect((d.uniformization[x] != kNoPoint) == in_dom, "uniformization not full-domain");
      if (in_dom) t.expect(r.contains(x, d.uniformization[x]), "uniformization outside R");
    }
  }
  return t;
}

// --- 7 -------------------------------------------------------------------
void check_cocycle(Tally& t, const GroupAction& a, const std::string& label) {
  ++t.cases;
  const Cocycle theta = cocycle_from_free_action(a);
  t.expect(verify_cocycle(a, theta).ok(), label + ": library verification");
  const FiniteGroup& g = a.group();
  const Partition orbits = orbit_equivalence(a);
  for (Point x = 0; x < a.points(); ++x) {
    for (Point y = 0; y < a.points(); ++y) {
      const Element e = theta.at(x, y);
      t.expect((e != kNoElement) == orbits.equivalent(x, y), label + ": domain");
      if (e == kNoElement) continue;
      t.expect(a.apply(e, x) == y, label + ": property (1)");
      for (Point z = 0; z < a.points(); ++z) {
        if (!orbits.equivalent(y, z)) continue;
        t.expect(theta.at(x, z) == g.multiply(theta.at(y, z), e), label + ": property (2)");
      }
    }
  }
}

Tally criterion7() {
  Tally t;
  for (const char* name : {"ex34", "ex36", "ex37"}) {
    const GalleryInstance g = example_gallery(name);
    if (g.action) check_cocycle(t, *g.action, name);
  }
  std::mt19937_64 rng(707);
  std::vector<FiniteGroup> groups;
  for (std::size_t n = 1; n <= 6; ++n) groups.push_back(FiniteGroup::cyclic(n));
  groups.push_back(FiniteGroup::symmetric(3));
  groups.push_back(FiniteGroup::from_table({{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}));
  for (int i = 0; i < 200; ++i) {
    const FiniteGroup& g = groups[rng() % groups.size()];
    const std::size_t copies = 1 + rng() % 3;
    const std::size_t n = copies * g.order();
    // disjoint regular actions, then scrambled point names
    Permutation relabel(n);
    for (Point x = 0; x < n; ++x) relabel[x] = x;
    std::shuffle(relabel.begin(), relabel.end(), rng);
    std::vector<Permutation> act(g.order(), Permutation(n));
    for (Element e = 0; e < g.order(); ++e) {
      for (std::size_t c = 0; c < copies; ++c) {
        for (Element h = 0; h < g.order(); ++h) {
          act[e][relabel[c * g.order() + h]] = relabel[c * g.order() + g.multiply(e, h)];
        }
      }
    }
    check_cocycle(t, GroupAction(g, n, act), "random free action " + std::to_string(i));
  }
  return t;
}

// --- 8 -------------------------------------------------------------------
Tally criterion8() {
  Tally t;
  ++t.cases;
  const GalleryInstance ex35 = example_gallery("ex35");
  t.expect(ex35.fact("index of F over E") == "3", "ex35 index " + ex35.fact("index of F over E"));
  t.expect(ex35.relation && index_over(*ex35.relation) == IndexValue{3}, "ex35 relation index");
  t.expect(ex35.ok(), "ex35 checks");
  ++t.cases;
  const GalleryInstance ex36 = example_gallery("ex36");
  t.expect(ex36.fact("normalizer of S_2") == "{e,(0 1)}", "ex36 normalizer " + ex36.fact("normalizer of S_2"));
  const FiniteGroup s3 = FiniteGroup::symmetric(3);
  const Element swap = *s3.find("(0 1)");
  std::vector<Element> brute;
  for (Element x = 0; x < s3.order(); ++x) {
    std::set<Element> conj;
    for (Element y : {Element{0}, swap}) conj.insert(s3.multiply(s3.multiply(x, y), s3.inverse(x)));
    if (conj == std::set<Element>{0, swap}) brute.push_back(x);
  }
  t.expect(brute == std::vector<Element>{0, swap}, "S_2 is not self-normalizing by brute force");
  t.expect(ex36.ok(), "ex36 checks");
  ++t.cases;
  const GalleryInstance ex34 = example_gallery("ex34");
  t.expect(ex34.relation && index_over(*ex34.relation) == IndexValue{2}, "ex34 index");
  const Permutation inv = index2_involution(*ex34.relation);
  t.expect(is_involution(inv) && inside(inv, *ex34.relation), "ex34 involution");
  t.expect(closure_is(naive_closure(inv.size(), {inv}), *ex34.relation), "ex34 involution does not generate");
  t.expect(ex34.ok(), "ex34 checks");
  return t;
}

// --- 9 -------------------------------------------------------------------
Tally criterion9() {
  Tally t;
  std::mt19937_64 rng(909);
  for (int i = 0; i < 2000; ++i) {
    ++t.cases;
    const std::size_t k = 2 + rng() % 2;
    const auto x = random_word(rng, k, 4, 4);
    auto z = random_word(rng, k, 4, 4);
    if (i % 2 == 0) {
      // a new prefix on a shifted tail of x: always E_t-related, E_0-related
      // exactly when the prefix length matches the shift
      auto tail = x;
      const std::size_t p = rng() % 5;
      for (std::size_t s = 0; s < p; ++s) tail = shift(tail);
      Letters u = random_letters(rng, k, i % 4 == 0 ? p : rng() % 5);
      u.insert(u.end(), tail.u.begin(), tail.u.end());
      z = canonicalize(u, tail.w, k);
    }
    t.expect(e0_equivalent(x, z) == stream_e0(x, z), "E_0 disagrees on " + to_string(x) + " " + to_string(z));
    t.expect(et_equivalent(x, z) == stream_et(x, z), "E_t disagrees on " + to_string(x) + " " + to_string(z));
  }
  // every canonical word with |u| <= 4, |w| <= 4 over two letters
  std::set<EventuallyPeriodicWord> pool_set;
  for (std::size_t lu = 0; lu <= 4; ++lu) {
    for (std::size_t lw = 1; lw <= 4; ++lw) {
      for (std::size_t bits = 0; bits < (1u << (lu + lw)); ++bits) {
        Letters u(lu), w(lw);
        for (std::size_t i = 0; i < lu; ++i) u[i] = (bits >> i) & 1;
        for (std::size_t i = 0; i < lw; ++i) w[i] = (bits >> (lu + i)) & 1;
        pool_set.insert(canonicalize(u, w, 2));
      }
    }
  }
  const std::vector<EventuallyPeriodicWord> pool(pool_set.begin(), pool_set.end());
  t.expect(pool.size() >= 100, "pool has only " + std::to_string(pool.size()) + " words");
  using Decide = bool (*)(const EventuallyPeriodicWord&, const EventuallyPeriodicWord&);
  for (const Decide rel : {Decide{&e0_equivalent}, Decide{&et_equivalent}}) {
    ++t.cases;
    const std::size_t n = pool.size();
    std::vector<char> m(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) m[a * n + b] = rel(pool[a], pool[b]);
    }
    for (std::size_t a = 0; a < n; ++a) {
      t.expect(m[a * n + a], "not reflexive at " + to_string(pool[a]));
      for (std::size_t b = 0; b < n; ++b) {
        t.expect(m[a * n + b] == m[b * n + a], "not symmetric");
        if (!m[a * n + b]) continue;
        for (std::size_t c = 0; c < n; ++c) {
          if (m[b * n + c]) t.expect(m[a * n + c], "not transitive");
        }
      }
    }
  }
  return t;
}

// --- 10 ------------------------------------------------------------------
// A random piecewise translation with pairwise disjoint piece domains, and
// its brute-force evaluation.
struct RawTranslation {
  std::vector<std::pair<std::shared_ptr<SetExpr>, std::int64_t>> pieces;

  std::optional<std::int64_t> apply(std::int64_t x) const {
    for (const auto& [dom, off] : pieces) {
      if (dom->contains(x)) return x + off;
    }
    return std::nullopt;
  }

  PiecewiseTranslation build() const {
    std::vector<PiecewiseTranslation::Piece> out;
    IntSet used = IntSet::empty_set();
    for (const auto& [dom, off] : pieces) {
      const IntSet d = dom->evaluate().minus(used);
      used = used.unite(d);
      out.push_back({d, off});
    }
    return PiecewiseTranslation(out);
  }
};

RawTranslation random_translation(std::mt19937_64& rng) {
  RawTranslation r;
  for (std::size_t k = 1 + rng() % 3; k > 0; --k) {
    r.pieces.emplace_back(random_expr(rng, static_cast<int>(rng() % 3)),
                          static_cast<std::int64_t>(rng() % 11) - 5);
  }
  return r;
}

Tally criterion10() {
  Tally t;
  std::mt19937_64 rng(1010);
  constexpr std::int64_t w = 64;
  constexpr std::int64_t reach = 10;  // |offsets| stay within 5, compositions within 10
  for (int i = 0; i < 2000; ++i) {
    ++t.cases;
    const auto tree = random_expr(rng, static_cast<int>(rng() % 6));
    const IntSet s = tree->evaluate();
    for (std::int64_t x = -w; x <= w; ++x) t.expect(s.contains(x) == tree->contains(x), "tree membership at " + std::to_string(x));
    t.expect(intset_normalize(s.pieces()) == s, "normalization not idempotent for " + to_string(s));
    t.expect(parse_intset(to_string(s)) == s, "text round trip for " + to_string(s));

    // raw pieces overlap freely; the disjoint version keeps first-listed priority
    RawTranslation rf = random_translation(rng);
    RawTranslation rg = random_translation(rng);
    PiecewiseTranslation f, g;
    try {
      f = rf.build();
      g = rg.build();
    } catch (const Error& e) {
      t.expect(false, std::string("building a translation: ") + e.what());
      continue;
    }
    const PiecewiseTranslation fg = map_compose(f, g);
    const IntSet img = f.image(s);
    const IntSet pre = f.preimage(s);
    const PiecewiseTranslation res = f.restrict_to(s);
    for (std::int64_t x = -w; x <= w; ++x) {
      t.expect(f.apply(x) == rf.apply(x), "apply at " + std::to_string(x));
      const auto gx = rg.apply(x);
      t.expect(fg.apply(x) == (gx ? rf.apply(*gx) : std::nullopt), "compose at " + std::to_string(x));
      t.expect(pre.contains(x) == (rf.apply(x) && tree->contains(*rf.apply(x))), "preimage at " + std::to_string(x));
      t.expect(res.apply(x) == (tree->contains(x) ? rf.apply(x) : std::nullopt), "restrict at " + std::to_string(x));
      bool hit = false;
      for (std::int64_t y = x - reach; y <= x + reach && !hit; ++y) hit = tree->contains(y) && rf.apply(y) == x;
      t.expect(img.contains(x) == hit, "image at " + std::to_string(x));
    }
    if (f.injective()) {
      const PiecewiseTranslation inv = map_inverse(f);
      for (std::int64_t x = -w; x <= w; ++x) {
        if (const auto y = rf.apply(x)) t.expect(inv.apply(*y) == x, "inverse at " + std::to_string(*y));
      }
    }
  }
  return t;
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  int failed = 0;
  std::vector<FiniteCoverCase> covers;
  const std::vector<std::pair<int, std::function<Tally()>>> criteria{
      {1, criterion1},
      {2, [&] {
         covers = finite_cover_cases();
         return criterion2(covers);
       }},
      {3, [&] { return criterion3(covers); }},
      {4, criterion4},
      {5, criterion5},
      {6, criterion6},
      {7, criterion7},
      {8, criterion8},
      {9, criterion9},
      {10, criterion10},
  };
  for (const auto& [id, run] : criteria) {
    const auto start = clock::now();
    Tally t;
    std::string crash;
    try {
      t = run();
    } catch (const std::exception& e) {
      crash = e.what();
    }
    const double secs = std::chrono::duration<double>(clock::now() - start).count();
    const bool ok = crash.empty() && t.failures == 0 && t.cases > 0;
    failed += !ok;
    std::printf("criterion %d %s  cases=%zu failures=%zu time=%.2fs", id, ok ? "PASS" : "FAIL", t.cases, t.failures, secs);
    if (!crash.empty()) std::printf("  exception: %s", crash.c_str());
    if (!t.first.empty()) std::printf("  first: %s", t.first.c_str());
    std::printf("\n");
  }
  return failed == 0 ? 0 : 1;
}
