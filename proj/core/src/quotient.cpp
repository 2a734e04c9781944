#include "qfm/quotient.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "qfm/error.hpp"

namespace qfm {

namespace {

std::string pair_text(std::int64_t a, std::int64_t b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

void require_finite(const QuotientSpace& q, const char* what) {
  if (q.kind() != CarrierKind::Finite) {
    throw Error(ErrorKind::UnsupportedCarrier, std::string(what) + " needs a finite carrier");
  }
}

}  // namespace

QuotientSpace QuotientSpace::finite(FiniteCarrier carrier, Partition relation) {
  if (relation.size() != carrier.size) {
    throw Error(ErrorKind::InvalidPartition, "partition size differs from carrier size");
  }
  if (!carrier.labels.empty()) {
    if (carrier.labels.size() != carrier.size) {
      throw Error(ErrorKind::InvalidArgument, "labels must cover every carrier point");
    }
    std::set<std::string> distinct(carrier.labels.begin(), carrier.labels.end());
    if (distinct.size() != carrier.labels.size()) {
      throw Error(ErrorKind::InvalidArgument, "carrier labels must be distinct");
    }
  }
  QuotientSpace q;
  q.kind_ = CarrierKind::Finite;
  q.carrier_ = std::move(carrier);
  q.partition_ = std::move(relation);
  return q;
}

QuotientSpace QuotientSpace::integer(IntSet ambient, std::vector<IntSet> classes) {
  IntSet covered;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].empty()) throw Error(ErrorKind::InvalidPartition, "empty class");
    const IntSet overlap = covered.intersect(classes[i]);
    if (!overlap.empty()) {
      throw Error(ErrorKind::InvalidPartition, "classes overlap",
                  std::to_string(*overlap.closest_to_zero()));
    }
    covered = covered.unite(classes[i]);
  }
  if (covered != ambient) {
    const IntSet diff = covered.minus(ambient).unite(ambient.minus(covered));
    throw Error(ErrorKind::InvalidPartition, "classes do not cover the ambient set exactly",
                std::to_string(*diff.closest_to_zero()));
  }
  std::sort(classes.begin(), classes.end(), [](const IntSet& a, const IntSet& b) {
    const std::int64_t ra = *a.closest_to_zero();
    const std::int64_t rb = *b.closest_to_zero();
    if (std::llabs(ra) != std::llabs(rb)) return std::llabs(ra) < std::llabs(rb);
    return ra > rb;
  });
  QuotientSpace q;
  q.kind_ = CarrierKind::Integer;
  q.ambient_ = std::move(ambient);
  q.classes_ = std::move(classes);
  return q;
}

std::size_t QuotientSpace::point_count() const {
  return kind_ == CarrierKind::Finite ? partition_.class_count() : classes_.size();
}

std::optional<std::size_t> QuotientSpace::project(std::int64_t x) const {
  if (kind_ == CarrierKind::Finite) {
    if (x < 0 || static_cast<std::size_t>(x) >= carrier_.size) return std::nullopt;
    return partition_.class_of(static_cast<std::size_t>(x));
  }
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (classes_[i].contains(x)) return i;
  }
  return std::nullopt;
}

std::int64_t QuotientSpace::representative(std::size_t q) const {
  if (kind_ == CarrierKind::Finite) return static_cast<std::int64_t>(partition_.members(q).front());
  return *classes_[q].closest_to_zero();
}

IntSet QuotientSpace::class_set(std::size_t q) const {
  if (kind_ == CarrierKind::Integer) return classes_[q];
  const auto& m = partition_.members(q);
  return IntSet::from_points(std::vector<std::int64_t>(m.begin(), m.end()));
}

IntSet QuotientSpace::carrier_set() const {
  if (kind_ == CarrierKind::Integer) return ambient_;
  if (carrier_.size == 0) return IntSet::empty_set();
  return IntSet::interval(0, static_cast<std::int64_t>(carrier_.size) - 1);
}

std::optional<std::uint64_t> QuotientSpace::class_size(std::size_t q) const {
  if (kind_ == CarrierKind::Finite) return partition_.members(q).size();
  return classes_[q].size();
}

const FiniteCarrier& QuotientSpace::finite_carrier() const {
  require_finite(*this, "finite_carrier");
  return carrier_;
}

const Partition& QuotientSpace::partition() const {
  require_finite(*this, "partition");
  return partition_;
}

SpacePtr make_quotient(FiniteCarrier carrier, const std::vector<std::vector<Point>>& classes) {
  const std::size_t n = carrier.size;
  return make_quotient(std::move(carrier), Partition::from_classes(n, classes));
}

SpacePtr make_quotient(FiniteCarrier carrier, Partition relation) {
  return std::make_shared<const QuotientSpace>(
      QuotientSpace::finite(std::move(carrier), std::move(relation)));
}

SpacePtr make_quotient(const IntSet& ambient, std::vector<IntSet> classes) {
  return std::make_shared<const QuotientSpace>(QuotientSpace::integer(ambient, std::move(classes)));
}

IntSet saturate(const QuotientSpace& q, const IntSet& s) {
  if (!s.subset_of(q.carrier_set())) {
    throw Error(ErrorKind::InvalidSubset, "set leaves the carrier");
  }
  if (q.kind() == CarrierKind::Finite) {
    std::vector<bool> hit(q.point_count(), false);
    for (std::int64_t x : s.elements()) hit[*q.project(x)] = true;
    std::vector<std::int64_t> out;
    for (std::size_t c = 0; c < hit.size(); ++c) {
      if (!hit[c]) continue;
      for (Point x : q.partition().members(c)) out.push_back(static_cast<std::int64_t>(x));
    }
    return IntSet::from_points(std::move(out));
  }
  IntSet out;
  for (std::size_t c = 0; c < q.point_count(); ++c) {
    if (!q.class_set(c).disjoint_from(s)) out = out.unite(q.class_set(c));
  }
  return out;
}

QuotientSubset QuotientSubset::of(std::size_t n, const std::vector<std::size_t>& points) {
  QuotientSubset s = none(n);
  for (std::size_t p : points) {
    if (p >= n) throw Error(ErrorKind::InvalidSubset, "quotient point out of range");
    s.members[p] = true;
  }
  return s;
}

QuotientSubset QuotientSubset::from_carrier(const QuotientSpace& q, const IntSet& s) {
  if (saturate(q, s) != s) throw Error(ErrorKind::InvalidSubset, "set is not E-saturated");
  QuotientSubset out = none(q.point_count());
  for (std::size_t c = 0; c < q.point_count(); ++c) {
    out.members[c] = !q.class_set(c).disjoint_from(s);
  }
  return out;
}

std::size_t QuotientSubset::count() const {
  return static_cast<std::size_t>(std::count(members.begin(), members.end(), true));
}

std::vector<std::size_t> QuotientSubset::points() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i]) out.push_back(i);
  }
  return out;
}

IntSet QuotientSubset::carrier_preimage(const QuotientSpace& q) const {
  IntSet out;
  for (std::size_t c = 0; c < members.size(); ++c) {
    if (members[c]) out = out.unite(q.class_set(c));
  }
  return out;
}

QuotientSubset QuotientSubset::unite(const QuotientSubset& o) const {
  QuotientSubset r = *this;
  for (std::size_t i = 0; i < members.size(); ++i) r.members[i] = members[i] || o.members[i];
  return r;
}

QuotientSubset QuotientSubset::intersect(const QuotientSubset& o) const {
  QuotientSubset r = *this;
  for (std::size_t i = 0; i < members.size(); ++i) r.members[i] = members[i] && o.members[i];
  return r;
}

QuotientSubset QuotientSubset::minus(const QuotientSubset& o) const {
  QuotientSubset r = *this;
  for (std::size_t i = 0; i < members.size(); ++i) r.members[i] = members[i] && !o.members[i];
  return r;
}

QuotientMap QuotientMap::identity(SpacePtr space) {
  const std::size_t n = space->point_count();
  return {space, space, identity_map(n)};
}

QuotientMap QuotientMap::constant(SpacePtr source, SpacePtr target, std::size_t value) {
  if (value >= target->point_count()) {
    throw Error(ErrorKind::InvalidArgument, "constant value out of range");
  }
  const std::size_t n = source->point_count();
  return {std::move(source), std::move(target), std::vector<std::size_t>(n, value)};
}

CarrierMap::CarrierMap(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  IntSet seen;
  for (const Piece& p : pieces_) {
    const IntSet overlap = seen.intersect(p.domain);
    if (!overlap.empty()) {
      throw Error(ErrorKind::NotAFunction, "carrier map pieces overlap",
                  std::to_string(*overlap.closest_to_zero()));
    }
    seen = seen.unite(p.domain);
  }
}

CarrierMap CarrierMap::from_table(const std::vector<std::int64_t>& table) {
  std::vector<std::pair<std::int64_t, std::int64_t>> by_value;
  for (std::size_t x = 0; x < table.size(); ++x) {
    by_value.emplace_back(table[x], static_cast<std::int64_t>(x));
  }
  std::sort(by_value.begin(), by_value.end());
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < by_value.size();) {
    std::size_t j = i;
    std::vector<std::int64_t> pts;
    while (j < by_value.size() && by_value[j].first == by_value[i].first) {
      pts.push_back(by_value[j].second);
      ++j;
    }
    pieces.push_back({IntSet::from_points(std::move(pts)), Piece::Kind::Constant, by_value[i].first});
    i = j;
  }
  return CarrierMap(std::move(pieces));
}

CarrierMap CarrierMap::identity(const IntSet& domain) {
  return CarrierMap({{domain, Piece::Kind::Translate, 0}});
}

std::optional<std::int64_t> CarrierMap::apply(std::int64_t x) const {
  for (const Piece& p : pieces_) {
    if (!p.domain.contains(x)) continue;
    return p.kind == Piece::Kind::Constant ? p.value : x + p.value;
  }
  return std::nullopt;
}

IntSet CarrierMap::domain() const {
  IntSet out;
  for (const Piece& p : pieces_) out = out.unite(p.domain);
  return out;
}

QuotientSubset dom_of_relation(const QuotientRelation& r) {
  QuotientSubset out = QuotientSubset::none(r.pairs.rows());
  for (auto [x, y] : r.pairs.pairs()) out.members[x] = true;
  return out;
}

QuotientSubset image_under(const QuotientMap& f, const QuotientSubset& a) {
  QuotientSubset out = QuotientSubset::none(f.target->point_count());
  for (std::size_t q = 0; q < f.image.size(); ++q) {
    if (a.members[q]) out.members[f.image[q]] = true;
  }
  return out;
}

QuotientSubset preimage_under(const QuotientMap& f, const QuotientSubset& b) {
  QuotientSubset out = QuotientSubset::none(f.source->point_count());
  for (std::size_t q = 0; q < f.image.size(); ++q) out.members[q] = b.members[f.image[q]];
  return out;
}

CarrierMap lift(const QuotientMap& f) {
  std::vector<CarrierMap::Piece> pieces;
  for (std::size_t q = 0; q < f.source->point_count(); ++q) {
    pieces.push_back({f.source->class_set(q), CarrierMap::Piece::Kind::Constant,
                      f.target->representative(f.image[q])});
  }
  return CarrierMap(std::move(pieces));
}

QuotientMap descend(const CarrierMap& g, const SpacePtr& source, const SpacePtr& target) {
  const IntSet dom = g.domain();
  const IntSet target_carrier = target->carrier_set();
  QuotientMap out{source, target, std::vector<std::size_t>(source->point_count(), 0)};
  for (std::size_t q = 0; q < source->point_count(); ++q) {
    const IntSet cls = source->class_set(q);
    if (const IntSet missing = cls.minus(dom); !missing.empty()) {
      const std::int64_t x = *missing.closest_to_zero();
      throw Error(ErrorKind::NotAMorphism, "map undefined at " + std::to_string(x),
                  std::to_string(x));
    }
    std::optional<std::size_t> hit;
    std::int64_t hit_witness = 0;
    for (const auto& p : g.pieces()) {
      const IntSet part = cls.intersect(p.domain);
      if (part.empty()) continue;
      const bool is_const = p.kind == CarrierMap::Piece::Kind::Constant;
      const IntSet img = is_const ? IntSet::point(p.value) : part.translate(p.value);
      if (const IntSet outside = img.minus(target_carrier); !outside.empty()) {
        const std::int64_t y = *outside.closest_to_zero();
        const std::int64_t x = is_const ? *part.closest_to_zero() : y - p.value;
        throw Error(ErrorKind::NotAMorphism, "image of " + std::to_string(x) + " leaves the target",
                    std::to_string(x));
      }
      for (std::size_t t = 0; t < target->point_count(); ++t) {
        const IntSet in_t = img.intersect(target->class_set(t));
        if (in_t.empty()) continue;
        const std::int64_t x =
            is_const ? *part.closest_to_zero() : *in_t.closest_to_zero() - p.value;
        if (!hit) {
          hit = t;
          hit_witness = x;
        } else if (*hit != t) {
          throw Error(ErrorKind::NotAMorphism,
                      "E-equivalent points " + std::to_string(hit_witness) + " and " +
                          std::to_string(x) + " land in different F-classes",
                      pair_text(hit_witness, x));
        }
      }
    }
    out.image[q] = *hit;
  }
  return out;
}

QuotientMap compose(const QuotientMap& g, const QuotientMap& f) {
  if (!(*f.target == *g.source)) {
    throw Error(ErrorKind::EndpointMismatch, "target of the inner map is not the source of the outer");
  }
  QuotientMap out{f.source, g.target, std::vector<std::size_t>(f.image.size())};
  for (std::size_t q = 0; q < f.image.size(); ++q) out.image[q] = g.image[f.image[q]];
  return out;
}

std::size_t Product::encode_point(const std::vector<std::size_t>& coords) const {
  std::size_t code = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    code = code * factors[i]->point_count() + coords[i];
  }
  return code;
}

std::vector<std::size_t> Product::decode_point(std::size_t q) const {
  std::vector<std::size_t> coords(factors.size());
  for (std::size_t i = factors.size(); i-- > 0;) {
    const std::size_t m = factors[i]->point_count();
    coords[i] = q % m;
    q /= m;
  }
  return coords;
}

QuotientMap Product::projection(std::size_t i) const {
  QuotientMap out{space, factors.at(i), std::vector<std::size_t>(space->point_count())};
  for (std::size_t q = 0; q < out.image.size(); ++q) out.image[q] = decode_point(q)[i];
  return out;
}

Product product(const std::vector<SpacePtr>& factors) {
  std::size_t n = 1;
  for (const auto& f : factors) {
    require_finite(*f, "product");
    n *= f->finite_carrier().size;
  }
  std::vector<std::size_t> labels(n);
  for (std::size_t p = 0; p < n; ++p) {
    std::size_t rest = p;
    std::vector<std::size_t> coords(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
      const std::size_t size = factors[i]->finite_carrier().size;
      coords[i] = rest % size;
      rest /= size;
    }
    std::size_t label = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      label = label * factors[i]->point_count() + factors[i]->partition().class_of(coords[i]);
    }
    labels[p] = label;
  }
  Product out;
  out.factors = factors;
  out.space = make_quotient(FiniteCarrier{n, {}}, Partition::from_labels(labels));
  return out;
}

QuotientMap pair(const std::vector<QuotientMap>& components, const Product& into) {
  if (components.size() != into.factors.size() || components.empty()) {
    throw Error(ErrorKind::EndpointMismatch, "component count differs from factor count");
  }
  const SpacePtr& source = components.front().source;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (!(*components[i].source == *source) || !(*components[i].target == *into.factors[i])) {
      throw Error(ErrorKind::EndpointMismatch,
                  "component " + std::to_string(i) + " does not match the product factor");
    }
  }
  QuotientMap out{source, into.space, std::vector<std::size_t>(source->point_count())};
  std::vector<std::size_t> coords(components.size());
  for (std::size_t q = 0; q < out.image.size(); ++q) {
    for (std::size_t i = 0; i < components.size(); ++i) coords[i] = components[i].image[q];
    out.image[q] = into.encode_point(coords);
  }
  return out;
}

}  // namespace qfm
