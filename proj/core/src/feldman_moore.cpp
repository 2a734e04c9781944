#include "qfm/feldman_moore.hpp"

#include <algorithm>
#include <bit>
#include <tuple>

#include "qfm/error.hpp"

namespace qfm {

namespace {

std::string pair_text(Point a, Point b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

bool in_relation(const PartialInjection& g, const Partition& f) {
  for (auto [x, y] : g.pairs()) {
    if (!f.equivalent(x, y)) return false;
  }
  return true;
}

bool in_relation(const Permutation& g, const Partition& f) {
  for (Point x = 0; x < g.size(); ++x) {
    if (!f.equivalent(x, g[x])) return false;
  }
  return true;
}

QuotientSubset mask_minus(const std::vector<bool>& a, const std::vector<bool>& b) {
  QuotientSubset s = QuotientSubset::none(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s.members[i] = a[i] && !b[i];
  return s;
}

QuotientSubset image_of(const PartialInjection& g, const QuotientSubset& s) {
  QuotientSubset out = QuotientSubset::none(g.size());
  for (Point x = 0; x < g.size(); ++x) {
    if (s.members[x] && g.defined_at(x)) out.members[g(x)] = true;
  }
  return out;
}

// Pairs of h that are neither a pair of a nor of b, as text; empty when
// covered.
std::string uncovered(const PartialInjection& h, const Permutation& a, const Permutation& b) {
  for (auto [x, y] : h.pairs()) {
    if (a[x] != y && b[x] != y) return pair_text(x, y);
  }
  return {};
}

Check covering_check(const std::string& name, const PartialInjection& h, const Permutation& g1,
                     const Permutation& g2) {
  std::string miss = uncovered(h, g1, g2);
  if (miss.empty()) miss = uncovered(h.inverse(), g1, g2);
  return {name, miss.empty(), miss.empty() ? "" : "missing " + miss};
}

}  // namespace

bool all_passed(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

Decomposition lusin_novikov_decompose(const Relation& r) {
  Decomposition d;
  d.uniformization.assign(r.rows(), kNoPoint);
  for (Point x = 0; x < r.rows(); ++x) {
    const auto sec = r.section(x);
    if (sec.size() > d.graphs.size()) d.graphs.resize(sec.size(), PartialMap(r.rows(), kNoPoint));
    for (std::size_t i = 0; i < sec.size(); ++i) d.graphs[i][x] = sec[i];
    if (!sec.empty()) d.uniformization[x] = sec.front();
  }
  return d;
}

Permutation classical_involution(const std::vector<PartialMap>& f, std::size_t m, std::size_t n,
                                 std::size_t p) {
  const std::size_t size = f.empty() ? 0 : f.front().size();
  auto in_a = [p](Point x) { return ((x >> p) & 1U) != 0; };
  Permutation out = identity_map(size);
  for (Point x = 0; x < size; ++x) {
    const Point fm = f[m][x];
    const Point fn = f[n][x];
    if (in_a(x) && fm != kNoPoint && !in_a(fm) && f[n][fm] == x) {
      out[x] = fm;
    } else if (!in_a(x) && fn != kNoPoint && in_a(fn) && f[m][fn] == x) {
      out[x] = fn;
    }
  }
  return out;
}

ClassicalFm classical_fm(const Partition& e) {
  ClassicalFm out;
  const std::size_t size = e.size();
  out.enumeration = lusin_novikov_decompose(Relation::from_partition(e)).graphs;
  out.bits = size <= 2 ? 1 : static_cast<std::size_t>(std::bit_width(size - 1));
  const std::size_t k = out.enumeration.size();
  for (std::size_t m = 0; m < k; ++m) {
    for (std::size_t n = 0; n < k; ++n) {
      for (std::size_t p = 0; p < out.bits; ++p) {
        out.involutions.push_back({m, n, p, classical_involution(out.enumeration, m, n, p)});
      }
    }
  }
  const Permutation id = identity_map(size);
  for (const auto& inv : out.involutions) {
    if (inv.map != id &&
        std::find(out.generators.begin(), out.generators.end(), inv.map) == out.generators.end()) {
      out.generators.push_back(inv.map);
    }
  }
  out.orbits = generate_equivalence(size, out.generators).partition();

  Check involutive{"involutions", true, ""};
  Check contained{"graphs inside E", true, ""};
  for (const auto& inv : out.involutions) {
    const std::string name = "f(" + std::to_string(inv.m) + "," + std::to_string(inv.n) + "," +
                             std::to_string(inv.p) + ")";
    if (involutive.passed && compose(inv.map, inv.map) != id) {
      involutive = {involutive.name, false, name + " is not an involution"};
    }
    if (contained.passed && !in_relation(inv.map, e)) {
      contained = {contained.name, false, name + " leaves E"};
    }
  }
  out.checks.push_back(involutive);
  out.checks.push_back(contained);
  out.checks.push_back({"orbits equal E", out.orbits == e, ""});

  Check single{"each E-pair is swapped by one involution", true, ""};
  for (Point x = 0; x < size && single.passed; ++x) {
    for (Point y : e.members(e.class_of(x))) {
      if (y == x) continue;
      const bool hit = std::any_of(out.involutions.begin(), out.involutions.end(),
                                   [&](const ClassicalInvolution& inv) { return inv.map[x] == y; });
      if (!hit) {
        single = {single.name, false, "no involution maps " + pair_text(x, y)};
        break;
      }
    }
  }
  out.checks.push_back(single);
  return out;
}

std::vector<PartialInjection> psi_split(const EnumeratedEquivalence& phi) {
  const ClosureReport report = verify_enumeration(phi);
  if (!report.ok()) {
    std::string witness;
    for (const auto& w : {report.endomorphism_witness, report.reflexive_witness,
                          report.symmetric_witness, report.transitive_witness}) {
      if (w) {
        witness = *w;
        break;
      }
    }
    throw Error(ErrorKind::NotAnEnumeration, "graphs do not enumerate an equivalence relation",
                witness);
  }
  const std::size_t k = phi.graphs.size();
  std::vector<PartialInjection> out;
  out.reserve(k * k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      std::vector<Point> table(phi.size, kNoPoint);
      for (Point x = 0; x < phi.size; ++x) {
        const Point y = phi.graphs[a][x];
        if (phi.graphs[b][y] == x) table[x] = y;
      }
      out.emplace_back(std::move(table));
    }
  }
  return out;
}

PartialInjection greedy_extend(const PartialInjection& g0, const std::vector<PartialInjection>& psis) {
  const std::size_t n = g0.size();
  std::vector<Point> table = g0.table();
  std::vector<bool> dom = g0.domain_mask();
  std::vector<bool> rng = g0.range_mask();
  auto step = [&](const PartialInjection& psi) {
    if (psi.size() != n) throw Error(ErrorKind::InvalidArgument, "injection sizes differ");
    std::vector<std::pair<Point, Point>> add;
    for (auto [x, y] : psi.pairs()) {
      if (!dom[x] && !rng[y]) add.emplace_back(x, y);
    }
    for (auto [x, y] : add) {
      table[x] = y;
      dom[x] = true;
      rng[y] = true;
    }
  };
  for (const auto& psi : psis) step(psi);
  step(PartialInjection::identity(n));
  return PartialInjection(std::move(table));
}

std::optional<std::pair<Point, Point>> maximality_violation(const PartialInjection& g,
                                                            const Partition& f) {
  const auto dom = g.domain_mask();
  const auto rng = g.range_mask();
  for (const auto& c : f.classes()) {
    Point y = kNoPoint;
    Point fresh = kNoPoint;
    Point z = kNoPoint;
    for (Point x : c) {
      if (!dom[x] && y == kNoPoint) y = x;
      if (!dom[x] && !rng[x] && fresh == kNoPoint) fresh = x;
      if (!rng[x] && z == kNoPoint) z = x;
    }
    if (y != kNoPoint && z != kNoPoint) return std::pair{fresh != kNoPoint ? fresh : y, z};
  }
  return std::nullopt;
}

long FiniteLevels::level_of(Point x) const {
  for (std::size_t i = 0; i < positive.size(); ++i) {
    if (positive[i].members[x]) return static_cast<long>(i + 1);
  }
  for (std::size_t i = 0; i < negative.size(); ++i) {
    if (negative[i].members[x]) return -static_cast<long>(i + 1);
  }
  return 0;
}

FiniteLevels levels_partition(const PartialInjection& g, const Partition& f) {
  if (auto w = maximality_violation(g, f)) {
    const std::string text = pair_text(w->first, w->second);
    throw Error(ErrorKind::NotMaximal, "g can still be extended at " + text, text);
  }
  const std::size_t n = g.size();
  const auto dom = g.domain_mask();
  const auto rng = g.range_mask();
  FiniteLevels lv;
  lv.zero = QuotientSubset::full(n);
  const PartialInjection inv = g.inverse();
  auto run = [&](QuotientSubset level, const PartialInjection& step,
                 std::vector<QuotientSubset>& into) {
    while (level.count() > 0) {
      lv.zero = lv.zero.minus(level);
      into.push_back(level);
      level = image_of(step, level);
    }
  };
  run(mask_minus(dom, rng), g, lv.positive);
  run(mask_minus(rng, dom), inv, lv.negative);
  return lv;
}

std::pair<Permutation, Permutation> schroeder_bernstein_cover(const PartialInjection& g,
                                                              const FiniteLevels& levels) {
  const std::size_t n = g.size();
  const PartialInjection inv = g.inverse();
  Permutation g1(n);
  Permutation g2(n);
  for (Point x = 0; x < n; ++x) {
    const long l = levels.level_of(x);
    const bool odd = (l % 2) != 0;
    if (l == 0) {
      g1[x] = g(x);
      g2[x] = inv(x);
    } else if (l > 0) {
      g1[x] = odd ? g(x) : inv(x);
      g2[x] = l == 1 ? x : odd ? inv(x) : g(x);
    } else {
      g1[x] = odd ? inv(x) : g(x);
      g2[x] = l == -1 ? x : odd ? g(x) : inv(x);
    }
    if (g1[x] == kNoPoint || g2[x] == kNoPoint) {
      throw Error(ErrorKind::InvalidArgument, "levels do not fit g at " + std::to_string(x),
                  std::to_string(x));
    }
  }
  return {g1, g2};
}

std::vector<Check> recheck(const CoverCertificate& c, const Partition& f) {
  std::vector<Check> out;
  const std::size_t n = f.size();
  out.push_back({"g0 inside F", in_relation(c.g0, f), ""});
  out.push_back({"g extends g0", c.g0.subset_of(c.g), ""});
  out.push_back({"g inside F", in_relation(c.g, f), ""});
  const auto w = maximality_violation(c.g, f);
  out.push_back({"g is maximal", !w, w ? "extendable at " + pair_text(w->first, w->second) : ""});

  const auto dom = c.g.domain_mask();
  const auto rng = c.g.range_mask();
  const QuotientSubset x1 = mask_minus(dom, rng);
  const QuotientSubset xm1 = mask_minus(rng, dom);
  const QuotientSubset none = QuotientSubset::none(n);
  const auto& lv = c.levels;
  out.push_back({"X_1 = dom g \\ rng g", (lv.positive.empty() ? none : lv.positive[0]) == x1, ""});
  out.push_back({"X_-1 = rng g \\ dom g", (lv.negative.empty() ? none : lv.negative[0]) == xm1, ""});
  bool rec = true;
  const PartialInjection inv = c.g.inverse();
  for (std::size_t i = 0; i < lv.positive.size(); ++i) {
    const QuotientSubset next = i + 1 < lv.positive.size() ? lv.positive[i + 1] : none;
    rec = rec && image_of(c.g, lv.positive[i]) == next;
  }
  for (std::size_t i = 0; i < lv.negative.size(); ++i) {
    const QuotientSubset next = i + 1 < lv.negative.size() ? lv.negative[i + 1] : none;
    rec = rec && image_of(inv, lv.negative[i]) == next;
  }
  out.push_back({"level recurrences", rec, ""});
  std::vector<int> hits(n, 0);
  auto tally = [&](const QuotientSubset& s) {
    for (Point x = 0; x < n; ++x) hits[x] += s.members[x] ? 1 : 0;
  };
  for (const auto& s : lv.positive) tally(s);
  for (const auto& s : lv.negative) tally(s);
  tally(lv.zero);
  out.push_back({"levels partition the space",
                 std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }), ""});
  out.push_back({"nonzero levels empty", lv.positive.empty() && lv.negative.empty(), ""});

  out.push_back({"g' is a bijection", c.g1.size() == n && is_permutation(c.g1), ""});
  out.push_back({"g'' is a bijection", c.g2.size() == n && is_permutation(c.g2), ""});
  out.push_back({"g' inside F", c.g1.size() == n && in_relation(c.g1, f), ""});
  out.push_back({"g'' inside F", c.g2.size() == n && in_relation(c.g2, f), ""});
  if (c.g1.size() == n && c.g2.size() == n) {
    out.push_back(covering_check("g0 and its inverse covered", c.g0, c.g1, c.g2));
    out.push_back(covering_check("g and its inverse covered", c.g, c.g1, c.g2));
  }
  return out;
}

CoverCertificate cover(const Partition& f, const PartialInjection& g0,
                       const std::vector<PartialInjection>& psis) {
  CoverCertificate c;
  c.g0 = g0;
  c.psis = psis;
  c.g = greedy_extend(g0, psis);
  c.levels = levels_partition(c.g, f);
  std::tie(c.g1, c.g2) = schroeder_bernstein_cover(c.g, c.levels);
  c.checks = recheck(c, f);
  return c;
}

FmResult fm_quotient(const EnumeratedEquivalence& f) {
  FmResult out;
  out.psis = psi_split(f);
  const Partition rel = generate_equivalence(f.size, f.graphs).partition();
  bool covers_ok = true;
  std::string first_bad;
  for (std::size_t i = 0; i < out.psis.size(); ++i) {
    const CoverCertificate c = cover(rel, out.psis[i], out.psis);
    if (!c.ok() && covers_ok) {
      covers_ok = false;
      first_bad = "psi_" + std::to_string(i);
    }
    out.generators.push_back(c.g1);
    out.generators.push_back(c.g2);
  }
  out.orbits = generate_equivalence(f.size, out.generators).partition();
  out.checks.push_back({"every cover certificate passes", covers_ok, first_bad});
  const bool inside = std::all_of(out.generators.begin(), out.generators.end(),
                                  [&](const Permutation& g) { return in_full_group(g, rel); });
  out.checks.push_back({"generators in the full group", inside, ""});
  out.checks.push_back({"orbit relation equals F", out.orbits == rel, ""});
  return out;
}

Uniformization weak_uniformize(const Relation& r, const std::vector<PartialMap>& cover_maps) {
  for (const auto& f : cover_maps) {
    if (f.size() != r.rows()) throw Error(ErrorKind::InvalidArgument, "covering map has the wrong size");
  }
  for (auto [x, y] : r.pairs()) {
    const bool hit = std::any_of(cover_maps.begin(), cover_maps.end(),
                                 [&](const PartialMap& f) { return f[x] == y; });
    if (!hit) {
      const std::string w = pair_text(x, y);
      throw Error(ErrorKind::NotCovered, "pair " + w + " lies on no covering map", w);
    }
  }
  Uniformization u{PartialMap(r.rows(), kNoPoint), std::vector<std::size_t>(r.rows(), kNoPoint)};
  for (Point x = 0; x < r.rows(); ++x) {
    for (std::size_t i = 0; i < cover_maps.size(); ++i) {
      const Point y = cover_maps[i][x];
      if (y != kNoPoint && y < r.cols() && r.contains(x, y)) {
        u.phi[x] = y;
        u.index[x] = i;
        break;
      }
    }
  }
  return u;
}

}  // namespace qfm
