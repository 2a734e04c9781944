#include "qfm/integer_cover.hpp"

#include <map>
#include <tuple>
#include <string>

#include "qfm/error.hpp"

namespace qfm {

namespace {

std::string pair_text(std::int64_t a, std::int64_t b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

// Offset -> {x : (x, x+c) is a pair of some graph}, optionally also counting
// the inverse pairs.
std::map<std::int64_t, IntSet> pair_cover(const std::vector<PiecewiseTranslation>& graphs,
                                          bool with_inverses) {
  std::map<std::int64_t, IntSet> out;
  auto add = [&](std::int64_t c, const IntSet& d) {
    auto [it, fresh] = out.try_emplace(c, d);
    if (!fresh) it->second = it->second.unite(d);
  };
  for (const auto& g : graphs) {
    for (const auto& p : g.pieces()) {
      add(p.offset, p.domain);
      if (with_inverses) add(-p.offset, p.domain.translate(p.offset));
    }
  }
  return out;
}

IntSet at(const std::map<std::int64_t, IntSet>& cover, std::int64_t c) {
  const auto it = cover.find(c);
  return it == cover.end() ? IntSet::empty_set() : it->second;
}

// First pair of h, or of its inverse, with no matching pair in `cover`.
std::optional<std::pair<std::int64_t, std::int64_t>> first_uncovered(
    const PiecewiseTranslation& h, const std::map<std::int64_t, IntSet>& cover, bool inverse_too) {
  for (const auto& p : h.pieces()) {
    const IntSet miss = p.domain.minus(at(cover, p.offset));
    if (!miss.empty()) {
      const auto x = *miss.closest_to_zero();
      return std::pair{x, x + p.offset};
    }
    if (inverse_too) {
      const IntSet back = p.domain.translate(p.offset).minus(at(cover, -p.offset));
      if (!back.empty()) {
        const auto y = *back.closest_to_zero();
        return std::pair{y, y - p.offset};
      }
    }
  }
  return std::nullopt;
}

bool is_total_bijection(const PiecewiseTranslation& g, const IntSet& ambient) {
  return g.domain() == ambient && g.range() == ambient && g.injective();
}

void add_pieces(std::vector<PiecewiseTranslation::Piece>& into, const PiecewiseTranslation& g,
                const IntSet& on) {
  const PiecewiseTranslation part = g.restrict_to(on);
  for (const auto& p : part.pieces()) into.push_back(p);
}

LevelSide build_side(const IntSet& first, const PiecewiseTranslation& step, std::size_t bound) {
  LevelSide side;
  side.odd = IntSet::empty_set();
  side.even = IntSet::empty_set();
  IntSet cur = first;
  while (!cur.empty() && side.explicit_levels.size() < bound) {
    side.explicit_levels.push_back(cur);
    cur = step.image(cur);
  }
  const auto& lv = side.explicit_levels;
  if (cur.empty()) {
    for (std::size_t i = 0; i < lv.size(); ++i) {
      IntSet& into = (i % 2 == 0) ? side.odd : side.even;
      into = into.unite(lv[i]);
    }
    return side;
  }
  const std::size_t m = lv.size();
  for (std::size_t p = 1; p <= kMaxLevelPeriod && 2 * p <= m; ++p) {
    const IntSet& a = lv[m - 1 - p];
    const IntSet& b = lv[m - 1];
    std::int64_t c = 0;
    if (a.bounded_below() && b.bounded_below()) {
      c = *b.min() - *a.min();
    } else if (a.bounded_above() && b.bounded_above()) {
      c = *b.max() - *a.max();
    }
    if (c == 0) continue;
    std::size_t i0 = m - 1 - p;
    while (i0 > 0 && lv[i0 - 1 + p] == lv[i0 - 1].translate(c)) --i0;
    if (lv[m - 1 - p + p] != lv[m - 1 - p].translate(c) || i0 + 2 * p > m) continue;
    side.acceleration = Acceleration{i0 + 1, p, c};
    for (std::size_t i = 0; i < i0; ++i) {
      IntSet& into = (i % 2 == 0) ? side.odd : side.even;
      into = into.unite(lv[i]);
    }
    for (std::size_t r = 0; r < 2 * p; ++r) {
      IntSet& into = ((i0 + r) % 2 == 0) ? side.odd : side.even;
      into = into.unite(lv[i0 + r].plus_multiples(2 * c));
    }
    return side;
  }
  throw Error(ErrorKind::NoAcceleration,
              "levels neither die out nor repeat up to a translation within " +
                  std::to_string(bound) + " steps",
              std::to_string(bound));
}

}  // namespace

void validate(const BlockPartition& f) {
  for (std::size_t i = 0; i < f.blocks.size(); ++i) {
    if (!f.blocks[i].subset_of(f.ambient)) {
      throw Error(ErrorKind::InvalidPartition, "block " + std::to_string(i) + " leaves the ambient set",
                  to_string(f.blocks[i].minus(f.ambient)));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (!f.blocks[i].disjoint_from(f.blocks[j])) {
        throw Error(ErrorKind::InvalidPartition,
                    "blocks " + std::to_string(j) + " and " + std::to_string(i) + " overlap",
                    to_string(f.blocks[i].intersect(f.blocks[j])));
      }
    }
  }
}

const IntSet& ambient_of(const IntegerRelation& f) {
  return std::visit([](const auto& r) -> const IntSet& { return r.ambient; }, f);
}

bool graph_inside(const PiecewiseTranslation& g, const IntegerRelation& f) {
  const IntSet& ambient = ambient_of(f);
  if (!g.domain().subset_of(ambient) || !g.range().subset_of(ambient)) return false;
  if (const auto* b = std::get_if<BlockPartition>(&f)) {
    for (const auto& p : g.pieces()) {
      if (p.offset == 0) continue;
      IntSet ok = IntSet::empty_set();
      for (const auto& blk : b->blocks) ok = ok.unite(blk.intersect(blk.translate(-p.offset)));
      if (!p.domain.subset_of(ok)) return false;
    }
    return true;
  }
  const auto& t = std::get<TranslationPresentation>(f);
  auto cover = pair_cover(t.graphs, true);
  cover[0] = at(cover, 0).unite(ambient);
  return !first_uncovered(g, cover, false);
}

PiecewiseTranslation greedy_extend(const PiecewiseTranslation& g0,
                                   const std::vector<PiecewiseTranslation>& psis,
                                   const IntSet& ambient) {
  PiecewiseTranslation g = g0;
  auto step = [&](const PiecewiseTranslation& psi) {
    const IntSet allowed = psi.domain().minus(g.domain()).minus(psi.preimage(g.range()));
    g = g.unite(psi.restrict_to(allowed));
  };
  for (const auto& psi : psis) step(psi);
  step(PiecewiseTranslation::identity(ambient));
  return g;
}

std::optional<std::pair<std::int64_t, std::int64_t>> maximality_violation(
    const PiecewiseTranslation& g, const IntegerRelation& f) {
  const IntSet dom = g.domain();
  const IntSet rng = g.range();
  if (const auto* b = std::get_if<BlockPartition>(&f)) {
    IntSet rest = b->ambient;
    for (const auto& blk : b->blocks) {
      rest = rest.minus(blk);
      const IntSet no_dom = blk.minus(dom);
      const IntSet no_rng = blk.minus(rng);
      if (no_dom.empty() || no_rng.empty()) continue;
      const IntSet fresh = no_dom.minus(rng);
      const auto y = fresh.empty() ? *no_dom.closest_to_zero() : *fresh.closest_to_zero();
      return std::pair{y, *no_rng.closest_to_zero()};
    }
    const IntSet lone = rest.minus(dom).minus(rng);
    if (!lone.empty()) {
      const auto y = *lone.closest_to_zero();
      return std::pair{y, y};
    }
    return std::nullopt;
  }
  const auto& t = std::get<TranslationPresentation>(f);
  for (const auto& [c, d] : pair_cover(t.graphs, true)) {
    const IntSet bad = d.minus(dom).minus(rng.translate(-c));
    if (!bad.empty()) {
      const auto y = *bad.closest_to_zero();
      return std::pair{y, y + c};
    }
  }
  return std::nullopt;
}

IntSet LevelSide::level(std::size_t n) const {
  if (n == 0) return IntSet::empty_set();
  if (n <= explicit_levels.size()) return explicit_levels[n - 1];
  if (!acceleration) return IntSet::empty_set();
  const auto& a = *acceleration;
  const std::size_t k = (n - a.start) / a.period;
  const std::size_t r = (n - a.start) % a.period;
  return explicit_levels[a.start + r - 1].translate(static_cast<std::int64_t>(k) * a.shift);
}

IntegerLevels levels_partition(const PiecewiseTranslation& g, const IntegerRelation& f,
                               std::size_t bound) {
  if (auto w = maximality_violation(g, f)) {
    const std::string text = pair_text(w->first, w->second);
    throw Error(ErrorKind::NotMaximal, "g can still be extended at " + text, text);
  }
  const IntSet dom = g.domain();
  const IntSet rng = g.range();
  IntegerLevels lv;
  lv.positive = build_side(dom.minus(rng), g, bound);
  lv.negative = build_side(rng.minus(dom), map_inverse(g), bound);
  lv.zero = ambient_of(f)
                .minus(lv.positive.odd)
                .minus(lv.positive.even)
                .minus(lv.negative.odd)
                .minus(lv.negative.even);
  return lv;
}

std::pair<PiecewiseTranslation, PiecewiseTranslation> schroeder_bernstein_cover(
    const PiecewiseTranslation& g, const IntegerLevels& levels) {
  const PiecewiseTranslation inv = map_inverse(g);
  const auto& pos = levels.positive;
  const auto& neg = levels.negative;
  const IntSet x1 = pos.level(1);
  const IntSet xm1 = neg.level(1);
  std::vector<PiecewiseTranslation::Piece> a;
  add_pieces(a, g, levels.zero);
  add_pieces(a, g, pos.odd);
  add_pieces(a, inv, pos.even);
  add_pieces(a, inv, neg.odd);
  add_pieces(a, g, neg.even);
  std::vector<PiecewiseTranslation::Piece> b;
  add_pieces(b, inv, levels.zero);
  add_pieces(b, PiecewiseTranslation::identity(x1.unite(xm1)), IntSet::all());
  add_pieces(b, g, pos.even);
  add_pieces(b, inv, pos.odd.minus(x1));
  add_pieces(b, inv, neg.even);
  add_pieces(b, g, neg.odd.minus(xm1));
  return {PiecewiseTranslation(std::move(a)), PiecewiseTranslation(std::move(b))};
}

std::vector<Check> recheck(const IntegerCoverCertificate& c, const IntegerRelation& f) {
  std::vector<Check> out;
  const IntSet& ambient = ambient_of(f);
  out.push_back({"g0 inside F", graph_inside(c.g0, f), ""});
  out.push_back({"g extends g0", c.g0.graph_subset_of(c.g), ""});
  out.push_back({"g inside F", graph_inside(c.g, f) && c.g.injective(), ""});
  const auto w = maximality_violation(c.g, f);
  out.push_back({"g is maximal", !w, w ? "extendable at " + pair_text(w->first, w->second) : ""});

  const IntSet dom = c.g.domain();
  const IntSet rng = c.g.range();
  const auto& lv = c.levels;
  out.push_back({"X_1 = dom g \\ rng g", lv.positive.level(1) == dom.minus(rng), ""});
  out.push_back({"X_-1 = rng g \\ dom g", lv.negative.level(1) == rng.minus(dom), ""});

  if (!c.g.injective()) {
    out.push_back({"level recurrences", false, "g is not injective"});
    return out;
  }
  const PiecewiseTranslation inv = map_inverse(c.g);
  bool rec = true;
  std::string why;
  auto side_laws = [&](const LevelSide& s, const PiecewiseTranslation& step, const char* label) {
    const auto& e = s.explicit_levels;
    for (std::size_t i = 0; i + 1 < e.size(); ++i) {
      if (step.image(e[i]) != e[i + 1]) {
        rec = false;
        why = std::string(label) + " level " + std::to_string(i + 2);
      }
    }
    if (!s.acceleration && !e.empty() && !step.image(e.back()).empty()) {
      rec = false;
      why = std::string(label) + " levels do not die out";
    }
    if (s.acceleration) {
      for (std::size_t n = s.acceleration->start + s.acceleration->period; n <= e.size(); ++n) {
        const Acceleration& a = *s.acceleration;
        if (e[n - 1] != e[n - 1 - a.period].translate(a.shift)) {
          rec = false;
          why = std::string(label) + " period breaks at level " + std::to_string(n);
        }
      }
    }
    const IntSet first = s.level(1);
    if (step.image(s.odd) != s.even || step.image(s.even).unite(first) != s.odd) {
      rec = false;
      why = std::string(label) + " parity unions are not closed under g";
    }
  };
  side_laws(lv.positive, c.g, "positive");
  side_laws(lv.negative, inv, "negative");
  out.push_back({"level recurrences", rec, why});

  const std::vector<IntSet> parts{lv.positive.odd, lv.positive.even, lv.negative.odd,
                                  lv.negative.even, lv.zero};
  bool disjoint = true;
  IntSet all = IntSet::empty_set();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) disjoint = disjoint && parts[i].disjoint_from(parts[j]);
    all = all.unite(parts[i]);
  }
  for (const auto* s : {&lv.positive, &lv.negative}) {
    const auto& e = s->explicit_levels;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) disjoint = disjoint && e[i].disjoint_from(e[j]);
  }
  out.push_back({"levels disjoint", disjoint, ""});
  out.push_back({"levels cover the space", all == ambient, ""});
  out.push_back({"X_0 is g-invariant",
                 lv.zero.subset_of(dom.intersect(rng)) && c.g.image(lv.zero) == lv.zero, ""});

  out.push_back({"g' is a total bijection", is_total_bijection(c.g1, ambient), ""});
  out.push_back({"g'' is a total bijection", is_total_bijection(c.g2, ambient), ""});
  out.push_back({"g' inside F", graph_inside(c.g1, f), ""});
  out.push_back({"g'' inside F", graph_inside(c.g2, f), ""});
  const auto both = pair_cover({c.g1, c.g2}, false);
  for (const auto& [name, h] : {std::pair{"g0 and its inverse covered", &c.g0},
                                std::pair{"g and its inverse covered", &c.g}}) {
    const auto miss = first_uncovered(*h, both, true);
    out.push_back({name, !miss, miss ? "missing " + pair_text(miss->first, miss->second) : ""});
  }
  return out;
}

IntegerCoverCertificate cover(const IntegerRelation& f, const PiecewiseTranslation& g0,
                              const std::vector<PiecewiseTranslation>& psis, std::size_t bound) {
  if (const auto* b = std::get_if<BlockPartition>(&f)) validate(*b);
  IntegerCoverCertificate c;
  c.g0 = g0;
  c.psis = psis;
  c.g = greedy_extend(g0, psis, ambient_of(f));
  c.levels = levels_partition(c.g, f, bound);
  std::tie(c.g1, c.g2) = schroeder_bernstein_cover(c.g, c.levels);
  c.checks = recheck(c, f);
  return c;
}

std::vector<PiecewiseTranslation> psi_split(const TranslationPresentation& phi) {
  const ClosureReport r = verify_enumeration(phi);
  if (!r.endomorphisms || !r.reflexive || !r.symmetric) {
    const auto& w = !r.endomorphisms ? r.endomorphism_witness
                    : !r.reflexive   ? r.reflexive_witness
                                     : r.symmetric_witness;
    throw Error(ErrorKind::NotAnEnumeration, "presentation is not reflexive and symmetric",
                w.value_or(""));
  }
  std::vector<PiecewiseTranslation> out;
  for (const auto& a : phi.graphs) {
    for (const auto& b : phi.graphs) {
      std::vector<PiecewiseTranslation::Piece> pieces;
      for (const auto& pa : a.pieces()) {
        for (const auto& pb : b.pieces()) {
          if (pb.offset != -pa.offset) continue;
          pieces.push_back({pa.domain.intersect(pb.domain.translate(-pa.offset)), pa.offset});
        }
      }
      out.emplace_back(std::move(pieces));
    }
  }
  return out;
}

IntegerFmResult fm_quotient(const TranslationPresentation& f, std::size_t bound) {
  IntegerFmResult out;
  out.psis = psi_split(f);
  const IntegerRelation rel = f;
  bool covers_ok = true;
  std::string first_bad;
  for (std::size_t i = 0; i < out.psis.size(); ++i) {
    const auto c = cover(rel, out.psis[i], out.psis, bound);
    if (!c.ok() && covers_ok) {
      covers_ok = false;
      first_bad = "psi_" + std::to_string(i);
    }
    out.generators.push_back(c.g1);
    out.generators.push_back(c.g2);
  }
  out.checks.push_back({"every cover certificate passes", covers_ok, first_bad});
  bool inside = true;
  for (const auto& g : out.generators) inside = inside && graph_inside(g, rel);
  out.checks.push_back({"generator pairs lie in F", inside, ""});
  const auto gens = pair_cover(out.generators, true);
  std::optional<std::pair<std::int64_t, std::int64_t>> miss;
  for (const auto& g : f.graphs) {
    if (!miss) miss = first_uncovered(g, gens, false);
  }
  out.checks.push_back({"presented pairs lie on generators", !miss,
                        miss ? "missing " + pair_text(miss->first, miss->second) : ""});
  return out;
}

}  // namespace qfm
