#include "instance.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "qfm/error.hpp"

namespace qfm::cli {

namespace {

struct Token {
  std::string text;
  Location at;
  bool quoted = false;
};

std::string where(Location at) { return std::to_string(at.line) + ":" + std::to_string(at.column); }

[[noreturn]] void syntax(Location at, const std::string& message) {
  throw Error(ErrorKind::SyntaxError, "line " + std::to_string(at.line) + ", column " +
                                          std::to_string(at.column) + ": " + message,
              where(at));
}

std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '#') break;
    Token t{{}, {line_no, i + 1}, false};
    if (c == '"') {
      t.quoted = true;
      ++i;
      bool closed = false;
      while (i < line.size()) {
        if (line[i] == '\\' && i + 1 < line.size()) {
          t.text += line[i + 1];
          i += 2;
        } else if (line[i] == '"') {
          ++i;
          closed = true;
          break;
        } else {
          t.text += line[i++];
        }
      }
      if (!closed) syntax(t.at, "unterminated string");
    } else {
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#') {
        t.text += line[i++];
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::size_t to_size(const Token& t) {
  std::size_t v = 0;
  const auto* end = t.text.data() + t.text.size();
  auto [p, ec] = std::from_chars(t.text.data(), end, v);
  if (ec != std::errc() || p != end || t.text.empty()) syntax(t.at, "expected a number, got '" + t.text + "'");
  return v;
}

std::size_t to_size(std::string_view s, Location at) { return to_size(Token{std::string(s), at}); }

// "1,0,2"; '-' allowed when partial.
std::vector<Point> point_list(const Token& t, bool partial = false) {
  std::vector<Point> out;
  for (const auto& part : split_list(t.text)) {
    if (partial && part == "-") {
      out.push_back(kNoPoint);
    } else {
      out.push_back(to_size(part, t.at));
    }
  }
  if (out.empty()) syntax(t.at, "empty list");
  return out;
}

std::pair<Point, Point> point_pair(const Token& t) {
  const auto colon = t.text.find(':');
  if (colon == std::string::npos) syntax(t.at, "expected x:y, got '" + t.text + "'");
  return {to_size(std::string_view(t.text).substr(0, colon), t.at),
          to_size(std::string_view(t.text).substr(colon + 1), t.at)};
}

void check_points(const std::vector<Point>& pts, std::size_t n, const Token& t) {
  for (Point p : pts) {
    if (p != kNoPoint && p >= n) syntax(t.at, "point " + std::to_string(p) + " outside 0.." + std::to_string(n - 1));
  }
}

// Partition from listed classes, unlisted points singletons.
Partition listed_classes(std::size_t n, const std::vector<Token>& toks, std::size_t from) {
  std::vector<std::vector<Point>> classes;
  std::vector<bool> seen(n, false);
  for (std::size_t i = from; i < toks.size(); ++i) {
    auto c = point_list(toks[i]);
    check_points(c, n, toks[i]);
    for (Point p : c) {
      if (seen[p]) {
        throw Error(ErrorKind::InvalidPartition,
                    "line " + std::to_string(toks[i].at.line) + ": point " + std::to_string(p) +
                        " is listed twice",
                    where(toks[i].at));
      }
      seen[p] = true;
    }
    classes.push_back(std::move(c));
  }
  for (Point p = 0; p < n; ++p) {
    if (!seen[p]) classes.push_back({p});
  }
  return Partition::from_classes(n, classes);
}

bool is_plain(const std::string& s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '"' || c == '#' || c == '\\'; });
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<Point>& pts) {
  std::string s;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) s += ',';
    s += pts[i] == kNoPoint ? std::string("-") : std::to_string(pts[i]);
  }
  return s;
}

std::string non_singleton_classes(const Partition& p) {
  std::string s;
  for (const auto& c : p.classes()) {
    if (c.size() > 1) s += " " + join(c);
  }
  return s;
}

bool is_keyword(const std::string& s) { return s == "labels" || s == "classes"; }

class Parser {
 public:
  Instance inst;

  void line(const std::vector<Token>& t) {
    const std::string& head = t[0].text;
    if (head == "space") {
      space(t);
    } else if (head == "rel") {
      rel(t);
    } else if (head == "map" || head == "pmap" || head == "pinj" || head == "tmap") {
      map(t);
    } else if (head == "group") {
      group(t);
    } else if (head == "action") {
      action(t);
    } else if (head == "run") {
      run(t);
    } else {
      syntax(t[0].at, "unknown statement '" + head + "'");
    }
  }

 private:
  std::vector<std::string> names_;

  void need(const std::vector<Token>& t, std::size_t count, const char* shape) {
    if (t.size() < count) syntax(t.back().at, std::string("expected ") + shape);
  }

  void declare(const Token& t) {
    if (t.quoted || !is_plain(t.text) || t.text.find(',') != std::string::npos ||
        t.text.find('=') != std::string::npos) {
      syntax(t.at, "bad name '" + t.text + "'");
    }
    if (std::find(names_.begin(), names_.end(), t.text) != names_.end()) {
      syntax(t.at, "'" + t.text + "' is already declared");
    }
    names_.push_back(t.text);
  }

  template <class F>
  auto located(const Token& t, F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::SyntaxError && e.witness() == where(t.at)) throw;
      throw Error(e.kind(), "line " + std::to_string(t.at.line) + ", column " + std::to_string(t.at.column) + ": " + message_of(e),
                  where(t.at));
    }
  }

  template <class F>
  auto referenced(const Token& t, F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnknownReference) throw;
      throw Error(ErrorKind::UnknownReference,
                  "line " + std::to_string(t.at.line) + ", column " + std::to_string(t.at.column) +
                      ": '" + t.text + "' is not declared above",
                  where(t.at));
    }
  }

  void space(const std::vector<Token>& t) {
    need(t, 4, "space NAME carrier N ... or space NAME integer SET");
    declare(t[1]);
    SpaceDecl d{t[1].text, nullptr, std::nullopt};
    if (t[2].text == "integer") {
      if (t.size() != 4) syntax(t[3].at, "integer spaces take one set");
      d.ambient = located(t[3], [&] { return parse_intset(t[3].text); });
    } else if (t[2].text == "carrier") {
      const std::size_t n = to_size(t[3]);
      FiniteCarrier carrier{n, {}};
      std::vector<Token> classes;
      std::size_t i = 4;
      std::string section;
      for (; i < t.size(); ++i) {
        if (!t[i].quoted && is_keyword(t[i].text)) {
          section = t[i].text;
          if (section == "labels" && !carrier.labels.empty()) syntax(t[i].at, "labels given twice");
          continue;
        }
        if (section == "labels") {
          carrier.labels.push_back(t[i].text);
        } else if (section == "classes") {
          classes.push_back(t[i]);
        } else {
          syntax(t[i].at, "expected 'labels' or 'classes'");
        }
      }
      const Partition e = listed_classes(n, classes, 0);
      d.space = located(t[3], [&] { return make_quotient(std::move(carrier), e); });
    } else {
      syntax(t[2].at, "expected 'carrier' or 'integer'");
    }
    inst.items.emplace_back(std::move(d));
  }

  const SpaceDecl& on_space(const std::vector<Token>& t, std::size_t i) {
    if (t.size() <= i + 1 || t[i].text != "on") syntax(t[std::min(i, t.size() - 1)].at, "expected 'on SPACE'");
    return referenced(t[i + 1], [&]() -> const SpaceDecl& { return inst.space(t[i + 1].text); });
  }

  void rel(const std::vector<Token>& t) {
    need(t, 5, "rel NAME on SPACE FORM ...");
    declare(t[1]);
    const SpaceDecl& s = on_space(t, 2);
    RelDecl d;
    d.name = t[1].text;
    d.on = s.name;
    const std::string& form = t[4].text;
    if (s.integer()) {
      if (form == "blocks") {
        d.form = RelDecl::Form::Blocks;
        d.blocks.ambient = *s.ambient;
        for (std::size_t i = 5; i < t.size(); ++i) {
          d.blocks.blocks.push_back(located(t[i], [&] { return parse_intset(t[i].text); }));
        }
        located(t[4], [&] { validate(d.blocks); });
      } else if (form == "translations") {
        d.form = RelDecl::Form::Translations;
        d.translations.ambient = *s.ambient;
        for (std::size_t i = 5; i < t.size(); ++i) {
          d.translations.graphs.push_back(located(t[i], [&] { return parse_translation(t[i].text); }));
        }
      } else {
        syntax(t[4].at, "integer relations are 'blocks' or 'translations'");
      }
    } else {
      const std::size_t n = s.points();
      if (form == "classes") {
        d.form = RelDecl::Form::Classes;
        d.classes = listed_classes(n, t, 5);
      } else if (form == "graphs") {
        d.form = RelDecl::Form::Graphs;
        d.graphs.size = n;
        for (std::size_t i = 5; i < t.size(); ++i) {
          auto f = point_list(t[i]);
          if (f.size() != n) syntax(t[i].at, "a graph lists " + std::to_string(n) + " images");
          check_points(f, n, t[i]);
          d.graphs.graphs.push_back(std::move(f));
        }
      } else if (form == "pairs") {
        d.form = RelDecl::Form::Pairs;
        d.pairs = Relation(n, n);
        for (std::size_t i = 5; i < t.size(); ++i) {
          const auto [x, y] = point_pair(t[i]);
          check_points({x, y}, n, t[i]);
          d.pairs.insert(x, y);
        }
      } else {
        syntax(t[4].at, "finite relations are 'classes', 'graphs' or 'pairs'");
      }
    }
    inst.items.emplace_back(std::move(d));
  }

  void map(const std::vector<Token>& t) {
    need(t, 4, "MAPKIND NAME on SPACE ...");
    declare(t[1]);
    const SpaceDecl& s = on_space(t, 2);
    MapDecl d;
    d.name = t[1].text;
    d.on = s.name;
    const std::string& kind = t[0].text;
    if ((kind == "tmap") != s.integer()) {
      syntax(t[0].at, kind == "tmap" ? "tmap needs an integer space" : kind + " needs a finite space");
    }
    const std::size_t n = s.points();
    if (kind == "tmap") {
      if (t.size() != 5) syntax(t.back().at, "tmap takes one translation");
      d.form = MapDecl::Form::Translation;
      d.translation = located(t[4], [&] { return parse_translation(t[4].text); });
    } else if (kind == "pinj") {
      d.form = MapDecl::Form::Injection;
      std::vector<std::pair<Point, Point>> pairs;
      for (std::size_t i = 4; i < t.size(); ++i) {
        pairs.push_back(point_pair(t[i]));
        check_points({pairs.back().first, pairs.back().second}, n, t[i]);
        for (std::size_t j = 0; j + 1 < pairs.size(); ++j) {
          if (pairs[j].first == pairs.back().first) syntax(t[i].at, "point mapped twice");
        }
      }
      d.injection = located(t[0], [&] { return PartialInjection::from_pairs(n, pairs); });
    } else {
      if (t.size() != 5) syntax(t.back().at, kind + " takes one comma list");
      d.form = kind == "map" ? MapDecl::Form::Total : MapDecl::Form::Partial;
      d.table = point_list(t[4], kind == "pmap");
      if (d.table.size() != n) syntax(t[4].at, "expected " + std::to_string(n) + " images");
      check_points(d.table, n, t[4]);
    }
    inst.items.emplace_back(std::move(d));
  }

  void group(const std::vector<Token>& t) {
    need(t, 4, "group NAME symmetric K | cyclic N | table ROWS");
    declare(t[1]);
    GroupDecl d;
    d.name = t[1].text;
    const std::string& form = t[2].text;
    if (form == "symmetric" || form == "cyclic") {
      if (t.size() != 4) syntax(t.back().at, "expected one size");
      d.param = to_size(t[3]);
      d.form = form == "symmetric" ? GroupDecl::Form::Symmetric : GroupDecl::Form::Cyclic;
      d.group = located(t[3], [&] {
        return form == "symmetric" ? FiniteGroup::symmetric(d.param) : FiniteGroup::cyclic(d.param);
      });
    } else if (form == "table") {
      d.form = GroupDecl::Form::Table;
      std::vector<std::vector<Element>> rows;
      for (std::size_t i = 3; i < t.size(); ++i) rows.push_back(point_list(t[i]));
      d.group = located(t[2], [&] { return FiniteGroup::from_table(rows); });
    } else {
      syntax(t[2].at, "expected 'symmetric', 'cyclic' or 'table'");
    }
    inst.items.emplace_back(std::move(d));
  }

  void action(const std::vector<Token>& t) {
    need(t, 6, "action NAME group G on SPACE PERMS");
    declare(t[1]);
    if (t[2].text != "group") syntax(t[2].at, "expected 'group'");
    const GroupDecl& g = referenced(t[3], [&]() -> const GroupDecl& { return inst.group(t[3].text); });
    const SpaceDecl& s = on_space(t, 4);
    if (s.integer()) syntax(t[5].at, "actions need a finite space");
    ActionDecl d;
    d.name = t[1].text;
    d.group = g.name;
    d.on = s.name;
    for (std::size_t i = 6; i < t.size(); ++i) {
      d.perms.push_back(point_list(t[i]));
      check_points(d.perms.back(), s.points(), t[i]);
    }
    d.action = located(t[1], [&] { return GroupAction(g.group, s.points(), d.perms); });
    inst.items.emplace_back(std::move(d));
  }

  void run(const std::vector<Token>& t) {
    need(t, 2, "run COMMAND key=value ...");
    RunDirective r{t[1].text, {}, t[0].at};
    for (std::size_t i = 2; i < t.size(); ++i) {
      const auto eq = t[i].text.find('=');
      if (eq == std::string::npos || eq == 0) syntax(t[i].at, "expected key=value, got '" + t[i].text + "'");
      std::string key = t[i].text.substr(0, eq);
      std::string value = t[i].text.substr(eq + 1);
      if (is_reference_key(key)) {
        for (const auto& name : split_list(value)) {
          if (std::find(names_.begin(), names_.end(), name) == names_.end()) {
            throw Error(ErrorKind::UnknownReference,
                        "line " + std::to_string(t[i].at.line) + ", column " + std::to_string(t[i].at.column) +
                            ": '" + name + "' is not declared above",
                        where(t[i].at));
          }
        }
      }
      r.args.emplace_back(std::move(key), std::move(value));
    }
    inst.items.emplace_back(std::move(r));
  }
};

template <class T>
const T& lookup(const Instance& inst, const std::string& name, const char* what) {
  for (const auto& item : inst.items) {
    if (const auto* d = std::get_if<T>(&item); d && d->name == name) return *d;
  }
  throw Error(ErrorKind::UnknownReference, std::string("no ") + what + " named '" + name + "'", name);
}

}  // namespace

std::string message_of(const Error& e) {
  const std::string what = e.what();
  const std::string prefix = std::string(to_string(e.kind())) + ": ";
  return what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what;
}

bool is_reference_key(std::string_view key) {
  static constexpr std::string_view keys[] = {"rel", "over", "map", "maps", "g0", "psis", "cover", "action", "group", "of", "space"};
  return std::find(std::begin(keys), std::end(keys), key) != std::end(keys);
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.emplace_back(text.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

const SpaceDecl& Instance::space(const std::string& name) const { return lookup<SpaceDecl>(*this, name, "space"); }
const RelDecl& Instance::rel(const std::string& name) const { return lookup<RelDecl>(*this, name, "relation"); }
const MapDecl& Instance::map(const std::string& name) const { return lookup<MapDecl>(*this, name, "map"); }
const GroupDecl& Instance::group(const std::string& name) const { return lookup<GroupDecl>(*this, name, "group"); }
const ActionDecl& Instance::action(const std::string& name) const { return lookup<ActionDecl>(*this, name, "action"); }

std::vector<RunDirective> Instance::runs() const {
  std::vector<RunDirective> out;
  for (const auto& item : items) {
    if (const auto* r = std::get_if<RunDirective>(&item)) out.push_back(*r);
  }
  return out;
}

std::size_t Instance::count(std::size_t variant_index) const {
  return static_cast<std::size_t>(
      std::count_if(items.begin(), items.end(), [&](const Item& i) { return i.index() == variant_index; }));
}

Instance parse_instance(std::string_view text) {
  Parser p;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const auto toks = tokenize(line, line_no);
    if (!toks.empty()) p.line(toks);
  }
  return std::move(p.inst);
}

Instance read_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path, path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

std::string print_instance(const Instance& inst) {
  std::ostringstream os;
  auto word = [](const std::string& s) { return is_plain(s) && !is_keyword(s) ? s : quote(s); };
  for (const auto& item : inst.items) {
    if (const auto* s = std::get_if<SpaceDecl>(&item)) {
      os << "space " << s->name;
      if (s->integer()) {
        os << " integer " << quote(to_string(*s->ambient));
      } else {
        const auto& c = s->space->finite_carrier();
        os << " carrier " << c.size;
        if (!c.labels.empty()) {
          os << " labels";
          for (const auto& l : c.labels) os << ' ' << word(l);
        }
        const std::string cls = non_singleton_classes(s->space->partition());
        if (!cls.empty()) os << " classes" << cls;
      }
    } else if (const auto* r = std::get_if<RelDecl>(&item)) {
      os << "rel " << r->name << " on " << r->on;
      switch (r->form) {
        case RelDecl::Form::Classes:
          os << " classes" << non_singleton_classes(r->classes);
          break;
        case RelDecl::Form::Graphs:
          os << " graphs";
          for (const auto& g : r->graphs.graphs) os << ' ' << join(g);
          break;
        case RelDecl::Form::Pairs:
          os << " pairs";
          for (const auto& [x, y] : r->pairs.pairs()) os << ' ' << x << ':' << y;
          break;
        case RelDecl::Form::Blocks:
          os << " blocks";
          for (const auto& b : r->blocks.blocks) os << ' ' << quote(to_string(b));
          break;
        case RelDecl::Form::Translations:
          os << " translations";
          for (const auto& g : r->translations.graphs) os << ' ' << quote(to_string(g));
          break;
      }
    } else if (const auto* m = std::get_if<MapDecl>(&item)) {
      switch (m->form) {
        case MapDecl::Form::Total:
          os << "map " << m->name << " on " << m->on << ' ' << join(m->table);
          break;
        case MapDecl::Form::Partial:
          os << "pmap " << m->name << " on " << m->on << ' ' << join(m->table);
          break;
        case MapDecl::Form::Injection:
          os << "pinj " << m->name << " on " << m->on;
          for (const auto& [x, y] : m->injection.pairs()) os << ' ' << x << ':' << y;
          break;
        case MapDecl::Form::Translation:
          os << "tmap " << m->name << " on " << m->on << ' ' << quote(to_string(m->translation));
          break;
      }
    } else if (const auto* g = std::get_if<GroupDecl>(&item)) {
      os << "group " << g->name;
      if (g->form == GroupDecl::Form::Symmetric) {
        os << " symmetric " << g->param;
      } else if (g->form == GroupDecl::Form::Cyclic) {
        os << " cyclic " << g->param;
      } else {
        os << " table";
        for (const auto& row : g->group.table()) os << ' ' << join(row);
      }
    } else if (const auto* a = std::get_if<ActionDecl>(&item)) {
      os << "action " << a->name << " group " << a->group << " on " << a->on;
      for (const auto& p : a->perms) os << ' ' << join(p);
    } else if (const auto* run = std::get_if<RunDirective>(&item)) {
      os << "run " << run->command;
      for (const auto& [k, v] : run->args) os << ' ' << k << '=' << v;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace qfm::cli
