#include "qfm/piecewise_translation.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "qfm/error.hpp"

namespace qfm {

PiecewiseTranslation::PiecewiseTranslation(std::vector<Piece> pieces) {
  std::map<std::int64_t, IntSet> by_offset;
  for (Piece& p : pieces) {
    if (p.domain.empty()) continue;
    auto [it, inserted] = by_offset.try_emplace(p.offset, p.domain);
    if (!inserted) it->second = it->second.unite(p.domain);
  }
  for (auto a = by_offset.begin(); a != by_offset.end(); ++a) {
    for (auto b = std::next(a); b != by_offset.end(); ++b) {
      const IntSet common = a->second.intersect(b->second);
      if (!common.empty()) {
        const std::int64_t x = *common.closest_to_zero();
        throw Error(ErrorKind::NotAFunction,
                    "point " + std::to_string(x) + " has offsets " + std::to_string(a->first) +
                        " and " + std::to_string(b->first),
                    std::to_string(x));
      }
    }
  }
  pieces_.reserve(by_offset.size());
  for (auto& [offset, domain] : by_offset) pieces_.push_back({std::move(domain), offset});
}

PiecewiseTranslation PiecewiseTranslation::identity(const IntSet& domain) {
  return PiecewiseTranslation({{domain, 0}});
}

PiecewiseTranslation PiecewiseTranslation::shift(const IntSet& domain, std::int64_t offset) {
  return PiecewiseTranslation({{domain, offset}});
}

std::optional<std::int64_t> PiecewiseTranslation::apply(std::int64_t x) const {
  for (const Piece& p : pieces_) {
    if (p.domain.contains(x)) return x + p.offset;
  }
  return std::nullopt;
}

IntSet PiecewiseTranslation::domain() const {
  IntSet out;
  for (const Piece& p : pieces_) out = out.unite(p.domain);
  return out;
}

IntSet PiecewiseTranslation::range() const {
  IntSet out;
  for (const Piece& p : pieces_) out = out.unite(p.domain.translate(p.offset));
  return out;
}

IntSet PiecewiseTranslation::image(const IntSet& s) const {
  IntSet out;
  for (const Piece& p : pieces_) out = out.unite(p.domain.intersect(s).translate(p.offset));
  return out;
}

IntSet PiecewiseTranslation::preimage(const IntSet& s) const {
  IntSet out;
  for (const Piece& p : pieces_) out = out.unite(p.domain.intersect(s.translate(-p.offset)));
  return out;
}

PiecewiseTranslation PiecewiseTranslation::restrict_to(const IntSet& s) const {
  std::vector<Piece> out;
  for (const Piece& p : pieces_) out.push_back({p.domain.intersect(s), p.offset});
  return PiecewiseTranslation(std::move(out));
}

std::optional<std::pair<std::int64_t, std::int64_t>> PiecewiseTranslation::collision() const {
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const IntSet ri = pieces_[i].domain.translate(pieces_[i].offset);
    for (std::size_t j = i + 1; j < pieces_.size(); ++j) {
      const IntSet common = ri.intersect(pieces_[j].domain.translate(pieces_[j].offset));
      if (common.empty()) continue;
      const std::int64_t y = *common.closest_to_zero();
      return std::pair{y - pieces_[i].offset, y - pieces_[j].offset};
    }
  }
  return std::nullopt;
}

PiecewiseTranslation PiecewiseTranslation::unite(const PiecewiseTranslation& other) const {
  std::vector<Piece> all = pieces_;
  all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
  return PiecewiseTranslation(std::move(all));
}

bool PiecewiseTranslation::graph_subset_of(const PiecewiseTranslation& other) const {
  for (const Piece& p : pieces_) {
    auto it = std::find_if(other.pieces_.begin(), other.pieces_.end(),
                           [&](const Piece& q) { return q.offset == p.offset; });
    if (it == other.pieces_.end() || !p.domain.subset_of(it->domain)) return false;
  }
  return true;
}

bool PiecewiseTranslation::is_identity() const {
  return std::all_of(pieces_.begin(), pieces_.end(), [](const Piece& p) { return p.offset == 0; });
}

PiecewiseTranslation map_compose(const PiecewiseTranslation& f, const PiecewiseTranslation& g) {
  std::vector<PiecewiseTranslation::Piece> out;
  for (const auto& gp : g.pieces()) {
    for (const auto& fp : f.pieces()) {
      IntSet dom = gp.domain.intersect(fp.domain.translate(-gp.offset));
      out.push_back({std::move(dom), gp.offset + fp.offset});
    }
  }
  return PiecewiseTranslation(std::move(out));
}

PiecewiseTranslation map_inverse(const PiecewiseTranslation& f) {
  if (auto c = f.collision()) {
    throw Error(ErrorKind::NotInjective,
                "points " + std::to_string(c->first) + " and " + std::to_string(c->second) +
                    " share an image",
                "(" + std::to_string(c->first) + "," + std::to_string(c->second) + ")");
  }
  std::vector<PiecewiseTranslation::Piece> out;
  for (const auto& p : f.pieces()) out.push_back({p.domain.translate(p.offset), -p.offset});
  return PiecewiseTranslation(std::move(out));
}

IntSet map_image(const PiecewiseTranslation& f, const IntSet& s) { return f.image(s); }
IntSet map_preimage(const PiecewiseTranslation& f, const IntSet& s) { return f.preimage(s); }

std::string to_string(const PiecewiseTranslation& f) {
  if (f.pieces().empty()) return "empty";
  std::ostringstream os;
  bool first = true;
  for (const auto& p : f.pieces()) {
    if (!first) os << ", ";
    first = false;
    os << to_string(p.domain) << " -> " << (p.offset >= 0 ? "+" : "") << p.offset;
  }
  return os.str();
}

PiecewiseTranslation parse_translation(std::string_view text) {
  std::vector<PiecewiseTranslation::Piece> pieces;
  auto trimmed = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
      s.remove_suffix(1);
    }
    return s;
  };
  text = trimmed(text);
  if (text == "empty") return {};
  while (!text.empty()) {
    const auto sep = text.find_first_of(",\n");
    const std::string_view item = trimmed(text.substr(0, sep));
    text = sep == std::string_view::npos ? std::string_view{} : text.substr(sep + 1);
    if (item.empty()) continue;
    const auto arrow = item.find("->");
    if (arrow == std::string_view::npos) {
      throw Error(ErrorKind::SyntaxError, "expected '<set> -> +c' in '" + std::string(item) + "'");
    }
    const IntSet dom = parse_intset(item.substr(0, arrow));
    std::string_view off = trimmed(item.substr(arrow + 2));
    if (off.empty() || (off.front() != '+' && off.front() != '-')) {
      throw Error(ErrorKind::SyntaxError, "offset must carry a sign in '" + std::string(item) + "'");
    }
    const bool neg = off.front() == '-';
    off.remove_prefix(1);
    std::int64_t v = 0;
    for (char ch : off) {
      if (ch < '0' || ch > '9') {
        throw Error(ErrorKind::SyntaxError, "bad offset in '" + std::string(item) + "'");
      }
      v = v * 10 + (ch - '0');
    }
    if (off.empty()) throw Error(ErrorKind::SyntaxError, "bad offset in '" + std::string(item) + "'");
    pieces.push_back({dom, neg ? -v : v});
  }
  return PiecewiseTranslation(std::move(pieces));
}

}  // namespace qfm
