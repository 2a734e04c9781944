#include "qfm/gallery.hpp"

#include <algorithm>
#include <map>

#include "qfm/error.hpp"
#include "qfm/relations.hpp"

namespace qfm {

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string list_points(const QuotientSubset& s) {
  std::string out = "{";
  for (Point x : s.points()) out += (out.size() > 1 ? "," : "") + std::to_string(x);
  return out + "}";
}

struct Dims {
  std::size_t k, n, t;
};

Dims dims(const GalleryParams& p, std::size_t k, std::size_t n, std::size_t t, const std::string& name) {
  Dims d{p.k.value_or(k), p.n.value_or(n), p.t.value_or(t)};
  if (d.k != k) {
    throw Error(ErrorKind::BadParameters, name + " is built over " + std::to_string(k) + " letters",
                "k=" + std::to_string(d.k));
  }
  return d;
}

// The permutations behind the elements of S_k, as letter maps.
std::vector<Permutation> letter_maps(const FiniteGroup& g) { return g.permutations(); }

Check descends_check(const TruncatedModel& m, const FiniteGroup& g, const std::vector<Permutation>& perms,
                     const GroupAction& on_quotient) {
  const GroupAction on_carrier = carrier_action(m, g, perms);
  for (Element e = 0; e < g.order(); ++e) {
    const auto& p = on_carrier.permutation(e);
    const QuotientMap q =
        descend(CarrierMap::from_table(std::vector<std::int64_t>(p.begin(), p.end())), m.space, m.space);
    if (q.image != on_quotient.permutation(e)) {
      return {"letterwise action descends to the quotient", false, "element " + g.name(e)};
    }
  }
  return {"letterwise action descends to the quotient", true, ""};
}

GalleryInstance ex34(const GalleryParams& params) {
  const auto [k, n, t] = dims(params, 2, 3, 1, "ex34");
  const TruncatedModel m = make_truncated_model(k, n, t);
  const FiniteGroup s2 = FiniteGroup::symmetric(2);
  GroupAction act = suffix_action(m, s2, letter_maps(s2));
  const Partition f = orbit_equivalence(act);
  GalleryInstance g{"ex34", "bit flip on the truncated binary model", k, n, t};
  g.facts.emplace_back("carrier points", std::to_string(m.carrier_size()));
  g.facts.emplace_back("quotient points", std::to_string(m.suffix_count()));
  const IndexValue idx = index_over(f);
  g.facts.emplace_back("index of the orbit relation", to_string(idx));
  g.checks.push_back(descends_check(m, s2, letter_maps(s2), act));
  g.checks.push_back({"flip acts freely", is_free(act).free, ""});
  g.checks.push_back({"index is 2", idx == IndexValue{2}, ""});
  try {
    const Permutation inv = index2_involution(f);
    g.facts.emplace_back("involution", format_map(inv));
    g.checks.push_back({"involution squares to the identity", compose(inv, inv) == identity_map(inv.size()), ""});
    g.checks.push_back({"involution generates the orbit relation",
                        generate_equivalence(inv.size(), {inv}).partition() == f, ""});
  } catch (const Error& e) {
    g.checks.push_back({"involution exists", false, e.what()});
  }
  g.space = m.space;
  g.relation = f;
  g.action = std::move(act);
  return g;
}

GalleryInstance ex35(const GalleryParams& params) {
  const auto [k, n, t] = dims(params, 2, 3, 1, "ex35");
  const TruncatedModel m = make_truncated_model(k, n, t);
  const std::size_t half = m.carrier_size();
  const std::size_t suffixes = m.suffix_count();
  auto flip = [&](std::size_t s) { return suffixes - 1 - s; };  // complement every bit
  auto joined = [&](std::size_t s) { return std::min(s, flip(s)); };

  // carrier point (x, i) is x + i * 2^n
  std::vector<std::size_t> e_labels(2 * half);
  std::vector<std::string> names(2 * half);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t x = 0; x < half; ++x) {
      const std::size_t s = m.suffix(x);
      e_labels[x + i * half] = i == 0 ? joined(s) : suffixes + s;
      names[x + i * half] = m.space->finite_carrier().labels[x] + "," + std::to_string(i);
    }
  }
  const SpacePtr space = make_quotient(FiniteCarrier{2 * half, names}, Partition::from_labels(e_labels));
  std::vector<std::size_t> f_labels(space->point_count());
  for (std::size_t q = 0; q < space->point_count(); ++q) {
    const auto rep = static_cast<std::size_t>(space->representative(q));
    f_labels[q] = joined(m.suffix(rep % half));
  }
  const Partition f = Partition::from_labels(f_labels);

  GalleryInstance g{"ex35", "index 3 relation over the joined binary model", k, n, t};
  g.facts.emplace_back("carrier points", std::to_string(2 * half));
  g.facts.emplace_back("quotient points", std::to_string(space->point_count()));
  const IndexValue idx = index_over(f);
  g.facts.emplace_back("index of F over E", to_string(idx));
  g.checks.push_back({"index is 3", idx == IndexValue{3}, ""});

  std::vector<std::int64_t> to_zero(2 * half);
  for (std::size_t p = 0; p < 2 * half; ++p) to_zero[p] = static_cast<std::int64_t>(p % half);
  try {
    const QuotientMap phi = descend(CarrierMap::from_table(to_zero), space, space);
    g.facts.emplace_back("selector", format_map(phi.image));
    const auto bad = selector_violation(phi.image, f);
    g.checks.push_back({"(x,i) -> (x,0) induces an F-selector", !bad, bad.value_or("")});
  } catch (const Error& e) {
    g.checks.push_back({"(x,i) -> (x,0) induces an F-selector", false, e.what()});
  }
  g.space = space;
  g.relation = f;
  return g;
}

GalleryInstance ex36(const GalleryParams& params) {
  const auto [k, n, t] = dims(params, 3, 3, 1, "ex36");
  const TruncatedModel m = make_truncated_model(k, n, t);
  const FiniteGroup s3 = FiniteGroup::symmetric(3);
  const GroupAction full = suffix_action(m, s3, letter_maps(s3));
  FreePart fp = free_part(full);

  // carrier restricted to words with a free suffix
  std::vector<bool> keep(m.suffix_count(), false);
  for (Point q : fp.points) keep[q] = true;
  std::vector<std::string> names;
  std::vector<std::size_t> labels;
  for (std::size_t x = 0; x < m.carrier_size(); ++x) {
    if (!keep[m.suffix(x)]) continue;
    names.push_back(m.space->finite_carrier().labels[x]);
    labels.push_back(m.suffix(x));
  }
  const SpacePtr space = make_quotient(FiniteCarrier{names.size(), names}, Partition::from_labels(labels));

  const Element swap01 = *s3.find("(0 1)");
  const std::vector<Element> s2{0, swap01};
  const Partition f = orbit_equivalence(fp.action);
  const Partition e_s2 = orbit_equivalence(restrict_action(fp.action, s2));
  const std::vector<Element> nz = normalizer(s3, s2);
  const Partition e_n = orbit_equivalence(restrict_action(fp.action, nz));
  const QuotientSubset excess = excess_domain(f, e_n);

  GalleryInstance g{"ex36", "S_3 against S_2 on the restricted ternary model", k, n, t};
  g.facts.emplace_back("carrier points", std::to_string(names.size()));
  g.facts.emplace_back("quotient points", std::to_string(fp.points.size()));
  g.facts.emplace_back("index of S_3 orbits over S_2 orbits", std::to_string(relative_index(f, e_s2)));
  std::string nz_names;
  for (Element a : nz) nz_names += (nz_names.empty() ? "" : ",") + s3.name(a);
  g.facts.emplace_back("normalizer of S_2", "{" + nz_names + "}");
  g.facts.emplace_back("excess domain size", std::to_string(excess.count()));
  g.checks.push_back({"S_3 acts freely on the restricted model", is_free(fp.action).free, ""});
  g.checks.push_back({"normalizer of S_2 is S_2", nz == s2, ""});
  g.checks.push_back({"index of S_3 orbits over S_2 orbits is 3", relative_index(f, e_s2) == 3, ""});
  g.space = space;
  g.relation = f;
  g.action = std::move(fp.action);
  return g;
}

GalleryInstance ex37(const GalleryParams& params) {
  const auto [k, n, t] = dims(params, 3, 3, 1, "ex37");
  const TruncatedModel m = make_truncated_model(k, n, t);
  const FiniteGroup z3 = FiniteGroup::cyclic(3);
  std::vector<Permutation> rot;
  for (Element j = 0; j < 3; ++j) rot.push_back({j % 3, (1 + j) % 3, (2 + j) % 3});
  GroupAction act = suffix_action(m, z3, rot);
  const Partition f = orbit_equivalence(act);

  GalleryInstance g{"ex37", "Z/3 rotation on the truncated ternary model", k, n, t};
  g.facts.emplace_back("quotient points", std::to_string(m.suffix_count()));
  g.checks.push_back(descends_check(m, z3, rot, act));
  g.checks.push_back({"rotation acts freely", is_free(act).free, ""});
  const Cocycle theta = cocycle_from_free_action(act);
  const CocycleReport rep = verify_cocycle(act, theta);
  g.checks.push_back({"cocycle properties hold", rep.ok(), rep.witness.value_or("")});

  const Endomorphism phi = min_selector(f);
  const GammaPartition zones = selector_to_gamma_partition(act, phi);
  for (Element a = 0; a < 3; ++a) {
    g.facts.emplace_back("|Z_" + std::to_string(a) + "|", std::to_string(zones.sizes[a]));
  }

  std::vector<Permutation> invs = params.involutions;
  if (invs.empty()) {
    // within each orbit m0 < m1 < m2: swap m1, m2; and swap m0, m1
    Permutation keep_min = identity_map(act.points());
    Permutation move_min = identity_map(act.points());
    for (const auto& c : f.classes()) {
      std::swap(keep_min[c[1]], keep_min[c[2]]);
      std::swap(move_min[c[0]], move_min[c[1]]);
    }
    invs = {keep_min, move_min};
  }
  for (std::size_t i = 0; i < invs.size(); ++i) {
    const Permutation& inv = invs[i];
    if (inv.size() != act.points() || !is_permutation(inv) || compose(inv, inv) != identity_map(inv.size()) ||
        !in_full_group(inv, f)) {
      throw Error(ErrorKind::InvalidArgument,
                  "involution " + std::to_string(i) + " is not an involution inside the orbit relation",
                  format_map(inv));
    }
    auto image = [&](const QuotientSubset& s) {
      QuotientSubset out = QuotientSubset::none(s.members.size());
      for (Point x : s.points()) out.members[inv[x]] = true;
      return out;
    };
    const std::string key = "involution " + std::to_string(i);
    g.facts.emplace_back(key, format_map(inv));
    g.facts.emplace_back(key + ": f[Z_0] = Z_0", yes_no(image(zones.zones[0]) == zones.zones[0]));
    g.facts.emplace_back(key + ": f[Z_1] = Z_2", yes_no(image(zones.zones[1]) == zones.zones[2]));
  }
  g.facts.emplace_back("Z_0", list_points(zones.zones[0]));
  g.space = m.space;
  g.relation = f;
  g.action = std::move(act);
  return g;
}

GalleryInstance et_shift(const GalleryParams& params) {
  const IntSet z = IntSet::all();
  const BlockPartition blocks{z, {IntSet::ray_up(0)}};
  const IntegerRelation f = blocks;
  const auto g0 = PiecewiseTranslation::shift(IntSet::ray_up(0), 1);
  IntegerCoverCertificate c = cover(f, g0, {PiecewiseTranslation::identity(z)}, params.level_bound);
  GalleryInstance g{"et_shift", "shifted ray on the integers"};
  g.facts.emplace_back("g0", to_string(g0));
  g.facts.emplace_back("g", to_string(c.g));
  g.facts.emplace_back("X_1", to_string(c.levels.positive.level(1)));
  if (const auto& a = c.levels.positive.acceleration) {
    g.facts.emplace_back("period", std::to_string(a->period) + " shift " + std::to_string(a->shift));
  }
  g.facts.emplace_back("X_0", to_string(c.levels.zero));
  g.facts.emplace_back("g'", to_string(c.g1));
  g.facts.emplace_back("g''", to_string(c.g2));
  g.checks = c.checks;
  g.integer_relation = blocks;
  g.integer_cover = std::move(c);
  return g;
}

}  // namespace

const std::string& GalleryInstance::fact(const std::string& key) const {
  for (const auto& [k, v] : facts) {
    if (k == key) return v;
  }
  throw Error(ErrorKind::UnknownReference, "no fact named " + key, key);
}

const std::vector<std::string>& gallery_names() {
  static const std::vector<std::string> names{"ex34", "ex35", "ex36", "ex37", "et_shift"};
  return names;
}

GalleryInstance example_gallery(const std::string& name, const GalleryParams& params) {
  if (name == "ex34") return ex34(params);
  if (name == "ex35") return ex35(params);
  if (name == "ex36") return ex36(params);
  if (name == "ex37") return ex37(params);
  if (name == "et_shift") return et_shift(params);
  throw Error(ErrorKind::UnknownExample, "no example named " + name, name);
}

std::size_t relative_index(const Partition& f, const Partition& e) {
  std::size_t best = 0;
  for (const auto& c : f.classes()) {
    std::vector<std::size_t> ids;
    for (Point x : c) ids.push_back(e.class_of(x));
    std::sort(ids.begin(), ids.end());
    best = std::max<std::size_t>(best, std::unique(ids.begin(), ids.end()) - ids.begin());
  }
  return best;
}

}  // namespace qfm
