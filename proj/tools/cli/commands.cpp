#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include "qfm/error.hpp"

namespace qfm::cli {

namespace {

using Outputs = std::vector<std::pair<std::string, std::string>>;

std::optional<std::string> arg(const Args& args, std::string_view key) {
  for (const auto& [k, v] : args) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string need(const Args& args, std::string_view key, std::string_view command) {
  if (auto v = arg(args, key)) return *v;
  throw Error(ErrorKind::InvalidArgument, std::string(command) + " needs " + std::string(key) + "=...",
              std::string(key));
}

std::size_t number(const Args& args, std::string_view key, std::size_t fallback) {
  const auto v = arg(args, key);
  if (!v) return fallback;
  std::size_t out = 0;
  const auto* end = v->data() + v->size();
  auto [p, ec] = std::from_chars(v->data(), end, out);
  if (ec != std::errc() || p != end || v->empty()) {
    throw Error(ErrorKind::InvalidArgument, std::string(key) + " must be a number", *v);
  }
  return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string join_points(const std::vector<Point>& pts) {
  std::string s;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) s += ',';
    s += pts[i] == kNoPoint ? std::string("-") : std::to_string(pts[i]);
  }
  return s;
}

std::string set_text(const std::vector<Point>& pts) { return "{" + join_points(pts) + "}"; }

std::string partition_text(const Partition& p) {
  std::string s;
  for (const auto& c : p.classes()) s += (s.empty() ? "" : " ") + set_text(c);
  return s.empty() ? "{}" : s;
}

std::string pairs_text(const std::vector<std::pair<Point, Point>>& pairs) {
  std::string s;
  for (const auto& [x, y] : pairs) s += (s.empty() ? "" : " ") + std::to_string(x) + ":" + std::to_string(y);
  return s.empty() ? "none" : s;
}

void add(std::vector<Check>& checks, std::string name, bool passed, std::string detail = {}) {
  checks.push_back({std::move(name), passed, passed ? std::string() : std::move(detail)});
}

const SpaceDecl& finite_space(const Instance& inst, const std::string& name) {
  const SpaceDecl& s = inst.space(name);
  if (s.integer()) throw Error(ErrorKind::UnsupportedCarrier, "'" + s.name + "' is an integer space", s.name);
  return s;
}

// The equivalence a finite relation declaration stands for.
Partition partition_of(const Instance& inst, const RelDecl& r) {
  finite_space(inst, r.on);
  switch (r.form) {
    case RelDecl::Form::Classes:
      return r.classes;
    case RelDecl::Form::Graphs:
      return generate_equivalence(r.graphs.size, r.graphs.graphs).partition();
    case RelDecl::Form::Pairs: {
      UnionFind uf(r.pairs.rows());
      for (const auto& [x, y] : r.pairs.pairs()) uf.unite(x, y);
      Partition p = uf.partition();
      if (!(Relation::from_partition(p) == r.pairs)) {
        throw Error(ErrorKind::InvalidPartition, "'" + r.name + "' is not an equivalence relation", r.name);
      }
      return p;
    }
    default:
      throw Error(ErrorKind::UnsupportedCarrier, "'" + r.name + "' lives on an integer space", r.name);
  }
}

EnumeratedEquivalence enumeration_of(const Instance& inst, const RelDecl& r) {
  if (r.form == RelDecl::Form::Graphs) return r.graphs;
  return canonical_enumeration(partition_of(inst, r));
}

Relation relation_of(const Instance& inst, const RelDecl& r) {
  if (r.form == RelDecl::Form::Pairs) return r.pairs;
  if (r.form == RelDecl::Form::Graphs) return union_of_graphs(r.graphs);
  return Relation::from_partition(partition_of(inst, r));
}

IntegerRelation integer_relation_of(const RelDecl& r) {
  if (r.form == RelDecl::Form::Blocks) return r.blocks;
  if (r.form == RelDecl::Form::Translations) return r.translations;
  throw Error(ErrorKind::UnsupportedCarrier, "'" + r.name + "' lives on a finite space", r.name);
}

bool is_integer(const RelDecl& r) {
  return r.form == RelDecl::Form::Blocks || r.form == RelDecl::Form::Translations;
}

const MapDecl& map_of(const Instance& inst, const std::string& name, MapDecl::Form form, const std::string& on) {
  const MapDecl& m = inst.map(name);
  static const char* kinds[] = {"map", "pmap", "pinj", "tmap"};
  if (m.form != form) {
    throw Error(ErrorKind::InvalidArgument,
                "'" + name + "' must be a " + kinds[static_cast<int>(form)] + " declaration", name);
  }
  if (!on.empty() && m.on != on) {
    throw Error(ErrorKind::InvalidArgument, "'" + name + "' is not on space '" + on + "'", name);
  }
  return m;
}

void append(std::vector<Check>& to, const std::vector<Check>& from) { to.insert(to.end(), from.begin(), from.end()); }

bool same_checks(const std::vector<Check>& a, const std::vector<Check>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].name != b[i].name || a[i].passed != b[i].passed) return false;
  }
  return true;
}

// --- operations -----------------------------------------------------------

void fm_classical(const Instance& inst, const Args& args, Outputs& out, std::vector<Check>& checks) {
  const Partition e = partition_of(inst, inst.rel(need(args, "rel", "fm-classical")));
  const ClassicalFm r = classical_fm(e);
  out.emplace_back("bits", std::to_string(r.bits));
  out.emplace_back("involutions emitted", std::to_string(r.involutions.size()));
  out.emplace_back("distinct generators", std::to_string(r.generators.size()));
  for (std::size_t i = 0; i < r.generators.size(); ++i) {
    out.emplace_back("generator " + std::to_string(i), join_points(r.generators[i]));
  }
  out.emplace_back("orbits", partition_text(r.orbits));
  append(checks, r.checks);
}

void window_probe(const IntegerRelation& f, const PiecewiseTranslation& g0, const PiecewiseTranslation& g1,
                  const PiecewiseTranslation& g2, std::int64_t w, std::vector<Check>& checks) {
  const IntSet& amb = ambient_of(f);
  const auto* blocks = std::get_if<BlockPartition>(&f);
  auto same_block = [&](std::int64_t x, std::int64_t y) {
    if (x == y) return true;
    if (!blocks) return true;
    for (const auto& b : blocks->blocks) {
      if (b.contains(x)) return b.contains(y);
    }
    return false;
  };
  const PiecewiseTranslation inv1 = map_inverse(g1);
  const PiecewiseTranslation inv2 = map_inverse(g2);
  std::string bij, inside, covered;
  for (std::int64_t x = -w; x <= w; ++x) {
    if (!amb.contains(x)) continue;
    for (const auto* g : {&g1, &g2}) {
      const auto y = g->apply(x);
      const auto back = (g == &g1 ? inv1 : inv2).apply(x);
      if (bij.empty() && (!y || !amb.contains(*y) || !back)) bij = std::to_string(x);
      if (inside.empty() && y && !same_block(x, *y)) inside = std::to_string(x) + ":" + std::to_string(*y);
    }
    if (const auto y = g0.apply(x); y && covered.empty()) {
      const bool ok = g1.apply(x) == y || g2.apply(x) == y || g1.apply(*y) == x || g2.apply(*y) == x;
      if (!ok) covered = std::to_string(x) + ":" + std::to_string(*y);
    }
  }
  const std::string range = " on [-" + std::to_string(w) + "," + std::to_string(w) + "]";
  add(checks, "g' and g'' total and onto" + range, bij.empty(), "at " + bij);
  if (blocks) add(checks, "g' and g'' inside F" + range, inside.empty(), inside);
  add(checks, "g0 pairs on g' or g''" + range, covered.empty(), covered);
}

void fm_quotient_cmd(const Instance& inst, const Args& args, Outputs& out, std::vector<Check>& checks) {
  const RelDecl& r = inst.rel(need(args, "rel", "fm-quotient"));
  if (is_integer(r)) {
    if (r.form != RelDecl::Form::Translations) {
      throw Error(ErrorKind::InvalidArgument, "integer fm-quotient needs a translations presentation", r.name);
    }
    const std::size_t bound = number(args, "K", kDefaultLevelBound);
    const auto w = static_cast<std::int64_t>(number(args, "window", 64));
    const IntegerFmResult res = fm_quotient(r.translations, bound);
    out.emplace_back("psis", std::to_string(res.psis.size()));
    out.emplace_back("generators", std::to_string(res.generators.size()));
    for (std::size_t i = 0; i < res.generators.size(); ++i) {
      out.emplace_back("generator " + std::to_string(i), to_string(res.generators[i]));
    }
    append(checks, res.checks);
    std::string missing;
    for (const auto& g : r.translations.graphs) {
      for (std::int64_t x = -w; x <= w && missing.empty(); ++x) {
        const auto y = g.apply(x);
        if (!y || !r.translations.ambient.contains(x)) continue;
        bool hit = false;
        for (const auto& h : res.generators) hit = hit || h.apply(x) == y || h.apply(*y) == x;
        if (!hit) missing = std::to_string(x) + ":" + std::to_string(*y);
      }
    }
    add(checks, "presented pairs in the window lie on generators", missing.empty(), missing);
    return;
  }
  const EnumeratedEquivalence en = enumeration_of(inst, r);
  const ClosureReport rep = verify_enumeration(en);
  add(checks, "presentation is an enumeration", rep.ok(),
      rep.reflexive_witness.value_or(rep.symmetric_witness.value_or(rep.transitive_witness.value_or(""))));
  if (!rep.ok()) return;
  const FmResult res = fm_quotient(en);
  out.emplace_back("psis", std::to_string(res.psis.size()));
  out.emplace_back("generators", std::to_string(res.generators.size()));
  for (std::size_t i = 0; i < res.generators.size(); ++i) {
    out.emplace_back("generator " + std::to_string(i), join_points(res.generators[i]));
  }
  out.emplace_back("orbits", partition_text(res.orbits));
  append(checks, res.checks);
  const Partition target = partition_of(inst, r);
  const Partition brute = generate_equivalence(en.size, res.generators).partition();
  add(checks, "orbit partition equals F", brute == target, partition_text(brute));
}

std::string levels_text(const FiniteLevels& l, long n) {
  const auto& side = n > 0 ? l.positive : l.negative;
  const std::size_t i = static_cast<std::size_t>(n > 0 ? n : -n) - 1;
  return set_text(side[i].points());
}

void cover_cmd(const Instance& inst, const Args& args, Outputs& out, std::vector<Check>& checks) {
  const RelDecl& r = inst.rel(need(args, "rel", "cover"));
  const std::string g0_name = need(args, "g0", "cover");
  const auto psi_names = arg(args, "psis");
  if (is_integer(r)) {
    const IntegerRelation f = integer_relation_of(r);
    const PiecewiseTranslation g0 = map_of(inst, g0_name, MapDecl::Form::Translation, r.on).translation;
    std::vector<PiecewiseTranslation> psis;
    if (psi_names) {
      for (const auto& n : split_list(*psi_names)) psis.push_back(map_of(inst, n, MapDecl::Form::Translation, r.on).translation);
    } else if (r.form == RelDecl::Form::Translations) {
      psis = psi_split(r.translations);
    } else {
      throw Error(ErrorKind::InvalidArgument, "cover on blocks needs psis=...", r.name);
    }
    const std::size_t bound = number(args, "K", kDefaultLevelBound);
    const auto w = static_cast<std::int64_t>(number(args, "window", 64));
    const IntegerCoverCertificate c = cover(f, g0, psis, bound);
    out.emplace_back("g", to_string(c.g));
    out.emplace_back("X_0", to_string(c.levels.zero));
    for (const auto* side : {&c.levels.positive, &c.levels.negative}) {
      const std::string sign = side == &c.levels.positive ? "" : "-";
      std::size_t shown = side->explicit_levels.size();
      if (const auto& a = side->acceleration) shown = std::min(shown, std::max<std::size_t>(4, a->start + a->period));
      for (std::size_t n = 1; n <= shown; ++n) {
        out.emplace_back("X_" + sign + std::to_string(n), to_string(side->level(n)));
      }
      if (const auto& a = side->acceleration) {
        out.emplace_back("acceleration " + (sign.empty() ? std::string("+") : sign),
                         "start " + std::to_string(a->start) + " period " + std::to_string(a->period) +
                             " shift " + std::to_string(a->shift));
      }
    }
    out.emplace_back("g'", to_string(c.g1));
    out.emplace_back("g''", to_string(c.g2));
    append(checks, c.checks);
    add(checks, "recheck agrees", same_checks(recheck(c, f), c.checks));
    window_probe(f, g0, c.g1, c.g2, w, checks);
    return;
  }
  const Partition f = partition_of(inst, r);
  const PartialInjection g0 = map_of(inst, g0_name, MapDecl::Form::Injection, r.on).injection;
  std::vector<PartialInjection> psis;
  if (psi_names) {
    for (const auto& n : split_list(*psi_names)) psis.push_back(map_of(inst, n, MapDecl::Form::Injection, r.on).injection);
  } else {
    psis = psi_split(enumeration_of(inst, r));
  }
  const CoverCertificate c = cover(f, g0, psis);
  out.emplace_back("g", pairs_text(c.g.pairs()));
  out.emplace_back("X_0", set_text(c.levels.zero.points()));
  for (std::size_t n = 1; n <= c.levels.positive.size(); ++n) {
    out.emplace_back("X_" + std::to_string(n), levels_text(c.levels, static_cast<long>(n)));
  }
  for (std::size_t n = 1; n <= c.levels.negative.size(); ++n) {
    out.emplace_back("X_-" + std::to_string(n), levels_text(c.levels, -static_cast<long>(n)));
  }
  out.emplace_back("g'", join_points(c.g1));
  out.emplace_back("g''", join_points(c.g2));
  append(checks, c.checks);
  add(checks, "recheck agrees", same_checks(recheck(c, f), c.checks));
}

void uniformize_cmd(const Instance& inst, const Args& args, Outputs& out, std::vector<Check>& checks) {
  const RelDecl& rd = inst.rel(need(args, "rel", "uniformize"));
  const Relation r = relation_of(inst, rd);
  std::vector<PartialMap> maps;
  if (const auto names = arg(args, "cover")) {
    for (const auto& n : split_list(*names)) {
      const MapDecl& m = inst.map(n);
      if (m.on != rd.on || (m.form != MapDecl::Form::Partial && m.form != MapDecl::Form::Total)) {
        throw Error(ErrorKind::InvalidArgument, "'" + n + "' must be a map or pmap on '" + rd.on + "'", n);
      }
      maps.push_back(m.table);
    }
  } else {
    const Decomposition d = lusin_novikov_decompose(r);
    maps = d.graphs;
    out.emplace_back("decomposition graphs", std::to_string(d.graphs.size()));
    Relation unite(r.rows(), r.cols());
    bool functions_inside = true;
    for (const auto& g : d.graphs) {
      for (Point x = 0; x < g.size(); ++x) {
        if (g[x] == kNoPoint) continue;
        functions_inside = functions_inside && r.contains(x, g[x]);
        unite.insert(x, g[x]);
      }
    }
    add(checks, "decomposition graphs lie in R", functions_inside);
    add(checks, "decomposition union equals R", unite == r);
  }
  const Uniformization u = weak_uniformize(r, maps);
  out.emplace_back("phi", join_points(u.phi));
  out.emplace_back("index", join_points(u.index));
  bool inside = true;
  bool domain = true;
  bool least = true;
  std::string where;
  for (Point x = 0; x < r.rows(); ++x) {
    const bool in_dom = !r.section(x).empty();
    domain = domain && in_dom == (u.phi[x] != kNoPoint);
    if (u.phi[x] != kNoPoint) inside = inside && r.contains(x, u.phi[x]);
    std::size_t first = kNoPoint;
    for (std::size_t i = 0; i < maps.size() && first == kNoPoint; ++i) {
      if (maps[i][x] != kNoPoint && r.contains(x, maps[i][x])) first = i;
    }
    const bool ok = u.index[x] == first && (first == kNoPoint || u.phi[x] == maps[first][x]);
    if (!ok && least) where = std::to_string(x);
    least = least && ok;
  }
  add(checks, "graph of phi inside R", inside);
  add(checks, "dom phi equals dom R", domain);
  add(checks, "phi follows the least covering map", least, "at " + where);
}

void generate_cmd(const Instance& inst, const Args& args, Outputs& out, std::vector<Check>& checks) {
  std::vector<Endomorphism> gens;
  std::string on;
  for (const auto& n : split_list(need(args, "maps", "generate"))) {
    const MapDecl& m = map_of(inst, n, MapDecl::Form::Total, on);
    on = m.on;
    gens.push_back(m.table);
  }
  const std::size_t size = finite_space(inst, on).points();
  const Closure c = generate_equivalence(size, gens);
  out.emplace_back("classes", partition_text(c.partition()));
  out.emplace_back("class count", std::to_string(c.partition().class_count()));
  out.emplace_back("stabilization", std::to_string(c.stabilization()));
  bool graphs_inside = true;
  for (const auto& g : gens) {
    for (Point x = 0; x < size; ++x) graphs_inside = graphs_inside && c.partition().equivalent(x, g[x]);
  }
  add(checks, "generator graphs lie in the closure", graphs_inside);
  std::string unlinked;
  for (const auto& cls : c.partition().classes()) {
    for (Point y : cls) {
      if (unlinked.empty() && !chain_witness(c, cls.front(), y)) unlinked = std::to_string(cls.front()) + ":" + std::to_string(y);
    }
  }
  add(checks, "every class is chain-linked", unlinked.empty(), unlinked);
  if (const auto rel = arg(args, "rel")) {
    const Partition f = partition_of(inst, inst.rel(*rel));
    add(checks, "closure equals " + *rel, f == c.partition(), partition_text(f));
  }
}

void tail_cmd(const Instance& inst, const Args& args, Outputs& out, std::vector<Check>& checks) {
  const MapDecl& m = map_of(inst, need(args, "map", "tail"), MapDecl::Form::Total, "");
  const Endomorphism& f = m.table;
  const Partition p = tail_equivalence(f);
  out.emplace_back("classes", partition_text(p));
  out.emplace_back("class count", std::to_string(p.class_count()));
  // x ~ y iff f^a(x) = f^b(y) for some a, b <= n
  const std::size_t n = f.size();
  std::vector<std::vector<Point>> orbit(n);
  for (Point x = 0; x < n; ++x) {
    Point z = x;
    for (std::size_t a = 0; a <= n; ++a, z = f[z]) orbit[x].push_back(z);
  }
  std::string bad;
  for (Point x = 0; x < n && bad.empty(); ++x) {
    for (Point y = 0; y < n && bad.empty(); ++y) {
      bool meet = false;
      for (Point a : orbit[x]) meet = meet || std::find(orbit[y].begin(), orbit[y].end(), a) != orbit[y].end();
      if (meet != p.equivalent(x, y)) bad = std::to_string(x) + ":" + std::to_string(y);
    }
  }
  add(checks, "classes match the direct tail test", bad.empty(), bad);
}

void index_cmd(const Instance& inst, const Args& args, Outputs& out, std::vector<Check>& checks) {
  if (const auto s = arg(args, "space")) {
    const SpaceDecl& sd = finite_space(inst, *s);
    const IndexValue v = index_over(*sd.space);
    out.emplace_back("index", to_string(v));
    add(checks, "index is finite", !v.unbounded());
    return;
  }
  const Partition f = partition_of(inst, inst.rel(need(args, "rel", "index")));
  const IndexValue v = index_over(f);
  out.emplace_back("index", to_string(v));
  out.emplace_back("classes", std::to_string(f.class_count()));
  bool attained = false;
  for (const auto& c : f.classes()) attained = attained || c.size() == v.value;
  add(checks, "some class has exactly that many points", attained);
}

void selector_cmd(const Instance& inst, const Args& args, Outputs& out, std::vector<Check>& checks) {
  const RelDecl& r = inst.rel(need(args, "rel", "selector"));
  const Partition f = partition_of(inst, r);
  Endomorphism phi = min_selector(f);
  if (const auto m = arg(args, "map")) phi = map_of(inst, *m, MapDecl::Form::Total, r.on).table;
  out.emplace_back("selector", join_points(phi));
  const auto violation = selector_violation(phi, f);
  add(checks, "selector laws hold", !violation, violation.value_or(""));
  if (violation) return;
  const QuotientSubset t = selector_to_transversal(phi, f);
  out.emplace_back("transversal", set_text(t.points()));
  add(checks, "transversal gives back the selector", transversal_to_selector(t, f) == phi);
}

void involution2_cmd(const Instance& inst, const Args& args, Outputs& out, std::vector<Check>& checks) {
  const Partition f = partition_of(inst, inst.rel(need(args, "rel", "involution2")));
  const IndexValue v = index_over(f);
  out.emplace_back("index", to_string(v));
  const InvolutionSearch s = involution_generation_search(f, 2);
  out.emplace_back("fewest generating involutions", std::to_string(s.minimum));
  if (!s.note.empty()) out.emplace_back("note", s.note);
  add(checks, "index at most 2", v.value && *v.value <= 2, to_string(v));
  if (!(v.value && *v.value <= 2)) return;
  const Permutation inv = index2_involution(f);
  out.emplace_back("involution", join_points(inv));
  add(checks, "involution lies in [F]", in_full_group(inv, f));
  add(checks, "involution squares to the identity", compose(inv, inv) == identity_map(inv.size()));
  add(checks, "involution generates F", generate_equivalence(f.size(), {inv}).partition() == f);
}

void action_orbits_cmd(const Instance& inst, const Args& args, Outputs& out, std::vector<Check>& checks) {
  const GroupAction& a = *inst.action(need(args, "action", "action-orbits")).action;
  const Partition orbits = orbit_equivalence(a);
  out.emplace_back("orbits", partition_text(orbits));
  out.emplace_back("orbit count", std::to_string(orbits.class_count()));
  const FreenessReport fr = is_free(a);
  out.emplace_back("free", yes_no(fr.free));
  if (fr.witness) {
    out.emplace_back("fixed point", a.group().name(fr.witness->first) + " fixes " + std::to_string(fr.witness->second));
  }
  std::string bad;
  for (Point x = 0; x < a.points() && bad.empty(); ++x) {
    std::vector<bool> hit(a.points(), false);
    for (Element g = 0; g < a.group().order(); ++g) hit[a.apply(g, x)] = true;
    for (Point y = 0; y < a.points(); ++y) {
      if (hit[y] != orbits.equivalent(x, y) && bad.empty()) bad = std::to_string(x) + ":" + std::to_string(y);
    }
  }
  add(checks, "orbits match a direct sweep", bad.empty(), bad);
}

void cocycle_cmd(const Instance& inst, const Args& args, Outputs& out, std::vector<Check>& checks) {
  const GroupAction& a = *inst.action(need(args, "action", "cocycle")).action;
  const Cocycle theta = cocycle_from_free_action(a);
  const CocycleReport rep = verify_cocycle(a, theta);
  std::size_t defined = 0;
  for (Element e : theta.table) defined += e != kNoElement;
  out.emplace_back("defined pairs", std::to_string(defined));
  if (a.points() <= 12) {
    for (Point x = 0; x < a.points(); ++x) {
      std::string row;
      for (Point y = 0; y < a.points(); ++y) {
        const Element g = theta.at(x, y);
        row += (y ? " " : "") + (g == kNoElement ? std::string("-") : a.group().name(g));
      }
      out.emplace_back("theta(" + std::to_string(x) + ",*)", row);
    }
  }
  const std::string w = rep.witness.value_or("");
  add(checks, "theta defined exactly on F", rep.total, w);
  add(checks, "y = theta(x,y) x", rep.property1, w);
  add(checks, "theta(x,z) = theta(y,z) theta(x,y)", rep.property2, w);
}

std::vector<Element> elements(const FiniteGroup& g, const std::string& list) {
  std::vector<Element> out;
  for (const auto& s : split_list(list)) {
    Element e = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), e);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
      const auto named = g.find(s);
      if (!named) throw Error(ErrorKind::InvalidArgument, "no group element " + s, s);
      e = *named;
    }
    if (e >= g.order()) throw Error(ErrorKind::InvalidArgument, "no group element " + s, s);
    out.push_back(e);
  }
  return out;
}

std::string element_set(const FiniteGroup& g, const std::vector<Element>& els) {
  std::string s;
  for (Element e : els) s += (s.empty() ? "" : ",") + g.name(e);
  return "{" + s + "}";
}

void normalizer_cmd(const Instance& inst, const Args& args, Outputs& out, std::vector<Check>& checks) {
  const FiniteGroup& g = inst.group(need(args, "group", "normalizer")).group;
  std::vector<Element> d = elements(g, need(args, "sub", "normalizer"));
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  add(checks, "sub is a subgroup", g.is_subgroup(d));
  if (!g.is_subgroup(d)) return;
  const std::vector<Element> n = normalizer(g, d);
  out.emplace_back("normalizer", element_set(g, n));
  out.emplace_back("normalizer order", std::to_string(n.size()));
  std::vector<Element> brute;
  for (Element x = 0; x < g.order(); ++x) {
    std::vector<Element> conj;
    for (Element y : d) conj.push_back(g.multiply(g.multiply(x, y), g.inverse(x)));
    std::sort(conj.begin(), conj.end());
    if (conj == d) brute.push_back(x);
  }
  add(checks, "normalizer matches conjugation by every element", brute == n, element_set(g, brute));
  add(checks, "normalizer is a subgroup containing sub",
      g.is_subgroup(n) && std::includes(n.begin(), n.end(), d.begin(), d.end()));
}

GalleryParams gallery_params(const Args& args) {
  GalleryParams p;
  if (arg(args, "k")) p.k = number(args, "k", 0);
  if (arg(args, "n")) p.n = number(args, "n", 0);
  if (arg(args, "t")) p.t = number(args, "t", 0);
  p.level_bound = number(args, "K", kDefaultLevelBound);
  return p;
}

void gallery_cmd(const Args& args, Outputs& out, std::vector<Check>& checks) {
  const GalleryInstance g = example_gallery(need(args, "name", "gallery"), gallery_params(args));
  out.emplace_back("title", g.title);
  if (g.k) {
    out.emplace_back("k", std::to_string(g.k));
    out.emplace_back("n", std::to_string(g.n));
    out.emplace_back("t", std::to_string(g.t));
  }
  for (const auto& f : g.facts) out.push_back(f);
  append(checks, g.checks);
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"fm-classical", "fm-quotient", "cover",         "uniformize", "generate",
                                              "tail",         "index",       "selector",      "involution2", "action-orbits",
                                              "cocycle",      "normalizer",  "gallery",       "verify"};
  return names;
}

bool is_usage_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError:
    case ErrorKind::UnknownReference:
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidCertificate:
    case ErrorKind::UnknownExample:
    case ErrorKind::BadParameters:
      return true;
    default:
      return false;
  }
}

Certificate run_command(const std::string& command, const Instance& inst, const Args& args) {
  Certificate c;
  c.operation = command;
  c.args = args;
  if (command != "gallery") c.input = print_instance(inst);
  using Fn = void (*)(const Instance&, const Args&, Outputs&, std::vector<Check>&);
  static const std::map<std::string, Fn, std::less<>> table{
      {"fm-classical", fm_classical}, {"fm-quotient", fm_quotient_cmd}, {"cover", cover_cmd},
      {"uniformize", uniformize_cmd}, {"generate", generate_cmd},       {"tail", tail_cmd},
      {"index", index_cmd},           {"selector", selector_cmd},       {"involution2", involution2_cmd},
      {"action-orbits", action_orbits_cmd}, {"cocycle", cocycle_cmd},   {"normalizer", normalizer_cmd},
  };
  if (command == "gallery") {
    gallery_cmd(args, c.outputs, c.checks);
  } else if (command == "verify") {
    throw Error(ErrorKind::InvalidArgument, "verify reads a certificate file, not an instance", command);
  } else if (const auto it = table.find(command); it != table.end()) {
    it->second(inst, args, c.outputs, c.checks);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown command '" + command + "'", command);
  }
  normalize(c);
  return c;
}

Certificate verify_certificates(std::string_view text) {
  const std::vector<Certificate> stored = read_certificates(text);
  Certificate v;
  v.operation = "verify";
  v.input = std::string(text);
  if (!v.input.empty() && v.input.back() != '\n') v.input += '\n';
  v.outputs.emplace_back("certificates", std::to_string(stored.size()));
  for (std::size_t i = 0; i < stored.size(); ++i) {
    const Certificate& s = stored[i];
    const std::string tag = "certificate " + std::to_string(i) + " (" + s.operation + ")";
    v.outputs.emplace_back(tag + " stored verdict", s.passed() ? "PASS" : "FAIL");
    Certificate again;
    std::string failure;
    try {
      again = s.operation == "verify" ? verify_certificates(s.input) : run_command(s.operation, parse_instance(s.input), s.args);
    } catch (const Error& e) {
      failure = std::string(to_string(e.kind())) + ": " + message_of(e);
    }
    if (!failure.empty()) {
      add(v.checks, tag + " reruns", false, failure);
      continue;
    }
    add(v.checks, tag + " input digest", again.digest() == s.digest(), again.digest());
    add(v.checks, tag + " outputs reproduce", again.outputs == s.outputs);
    bool same = again.checks.size() == s.checks.size();
    for (std::size_t k = 0; same && k < s.checks.size(); ++k) {
      same = again.checks[k].name == s.checks[k].name && again.checks[k].passed == s.checks[k].passed &&
             again.checks[k].detail == s.checks[k].detail;
    }
    add(v.checks, tag + " checks reproduce", same);
  }
  normalize(v);
  return v;
}

std::string export_graph(const Instance& inst, const std::string& name) {
  std::string space;
  std::vector<std::pair<std::string, Endomorphism>> gens;  // label, map with kNoPoint holes
  for (const auto& item : inst.items) {
    if (const auto* m = std::get_if<MapDecl>(&item); m && m->name == name) {
      if (m->form == MapDecl::Form::Translation) {
        throw Error(ErrorKind::UnsupportedCarrier, "orbit graphs need a finite quotient", name);
      }
      space = m->on;
      gens.emplace_back(name, m->form == MapDecl::Form::Injection ? m->injection.table() : m->table);
    } else if (const auto* r = std::get_if<RelDecl>(&item); r && r->name == name) {
      if (is_integer(*r)) throw Error(ErrorKind::UnsupportedCarrier, "orbit graphs need a finite quotient", name);
      space = r->on;
      if (r->form == RelDecl::Form::Pairs) {
        Endomorphism none(r->pairs.rows(), kNoPoint);
        for (const auto& [x, y] : r->pairs.pairs()) {
          Endomorphism one = none;
          one[x] = y;
          gens.emplace_back(name, one);
        }
      } else {
        const EnumeratedEquivalence en = enumeration_of(inst, *r);
        for (std::size_t i = 0; i < en.graphs.size(); ++i) gens.emplace_back("f" + std::to_string(i), en.graphs[i]);
      }
    } else if (const auto* a = std::get_if<ActionDecl>(&item); a && a->name == name) {
      space = a->on;
      for (Element g = 1; g < a->action->group().order(); ++g) {
        gens.emplace_back(a->action->group().name(g), a->action->permutation(g));
      }
    }
  }
  if (space.empty()) throw Error(ErrorKind::UnknownReference, "nothing named '" + name + "' to draw", name);
  const SpaceDecl& s = finite_space(inst, space);
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  for (Point q = 0; q < s.points(); ++q) os << "  " << q << ";\n";
  for (const auto& [label, f] : gens) {
    for (Point x = 0; x < f.size(); ++x) {
      if (f[x] != kNoPoint && f[x] != x) os << "  " << x << " -> " << f[x] << " [label=\"" << label << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

Instance gallery_instance(const GalleryInstance& g) {
  Instance inst;
  if (g.integer_relation && g.integer_cover) {
    inst.items.emplace_back(SpaceDecl{"Z", nullptr, g.integer_relation->ambient});
    RelDecl f;
    f.name = "F";
    f.on = "Z";
    f.form = RelDecl::Form::Blocks;
    f.blocks = *g.integer_relation;
    inst.items.emplace_back(f);
    MapDecl g0;
    g0.name = "g0";
    g0.on = "Z";
    g0.form = MapDecl::Form::Translation;
    g0.translation = g.integer_cover->g0;
    inst.items.emplace_back(g0);
    std::string psis;
    for (std::size_t i = 0; i < g.integer_cover->psis.size(); ++i) {
      MapDecl p = g0;
      p.name = "psi" + std::to_string(i);
      p.translation = g.integer_cover->psis[i];
      inst.items.emplace_back(p);
      psis += (i ? "," : "") + p.name;
    }
    inst.items.emplace_back(RunDirective{"cover", {{"rel", "F"}, {"g0", "g0"}, {"psis", psis}}, {}});
    return inst;
  }
  inst.items.emplace_back(SpaceDecl{"X", g.space, std::nullopt});
  RelDecl f;
  f.name = "F";
  f.on = "X";
  f.form = RelDecl::Form::Classes;
  f.classes = *g.relation;
  inst.items.emplace_back(f);
  if (g.action) {
    const FiniteGroup& grp = g.action->group();
    GroupDecl gd;
    gd.name = "G";
    gd.group = grp;
    gd.form = GroupDecl::Form::Table;
    for (std::size_t k = 1; k <= 5; ++k) {
      if (grp == FiniteGroup::symmetric(k)) {
        gd.form = GroupDecl::Form::Symmetric;
        gd.param = k;
        break;
      }
    }
    if (gd.form == GroupDecl::Form::Table && grp == FiniteGroup::cyclic(grp.order())) {
      gd.form = GroupDecl::Form::Cyclic;
      gd.param = grp.order();
    }
    inst.items.emplace_back(gd);
    ActionDecl a;
    a.name = "A";
    a.group = "G";
    a.on = "X";
    for (Element e = 0; e < grp.order(); ++e) a.perms.push_back(g.action->permutation(e));
    a.action = *g.action;
    inst.items.emplace_back(a);
  }
  const Args rel{{"rel", "F"}};
  if (g.name == "ex34") {
    inst.items.emplace_back(RunDirective{"index", rel, {}});
    inst.items.emplace_back(RunDirective{"involution2", rel, {}});
    inst.items.emplace_back(RunDirective{"action-orbits", {{"action", "A"}}, {}});
  } else if (g.name == "ex35") {
    inst.items.emplace_back(RunDirective{"index", rel, {}});
    inst.items.emplace_back(RunDirective{"fm-quotient", rel, {}});
  } else if (g.name == "ex36") {
    const auto swap = g.action->group().find("(0 1)");
    inst.items.emplace_back(RunDirective{"normalizer", {{"group", "G"}, {"sub", "0," + std::to_string(swap.value_or(0))}}, {}});
    inst.items.emplace_back(RunDirective{"cocycle", {{"action", "A"}}, {}});
  } else if (g.name == "ex37") {
    inst.items.emplace_back(RunDirective{"cocycle", {{"action", "A"}}, {}});
    inst.items.emplace_back(RunDirective{"fm-quotient", rel, {}});
  }
  return inst;
}

}  // namespace qfm::cli
