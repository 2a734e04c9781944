#include "qfm/intset.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "qfm/error.hpp"

namespace qfm {

namespace {

constexpr std::int64_t kMaxPeriod = std::int64_t{1} << 22;

IntSet::Tail empty_tail() { return IntSet::Tail{1, {false}}; }
IntSet::Tail full_tail() { return IntSet::Tail{1, {true}}; }

IntSet::Tail reduce(IntSet::Tail t) {
  for (std::int64_t d = 1; d < t.period; ++d) {
    if (t.period % d != 0) continue;
    bool ok = true;
    for (std::int64_t i = d; i < t.period && ok; ++i) {
      ok = t.mask[static_cast<std::size_t>(i)] == t.mask[static_cast<std::size_t>(i % d)];
    }
    if (ok) {
      t.mask.resize(static_cast<std::size_t>(d));
      t.period = d;
      break;
    }
  }
  return t;
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  const std::int64_t l = std::lcm(a, b);
  if (l > kMaxPeriod) {
    throw Error(ErrorKind::InvalidArgument, "combined period " + std::to_string(l) + " too large");
  }
  return l;
}

IntSet::Tail tabulate(std::int64_t period, const std::function<bool(std::int64_t)>& f) {
  IntSet::Tail t;
  t.period = period;
  t.mask.assign(static_cast<std::size_t>(period), false);
  for (std::int64_t r = 0; r < period; ++r) t.mask[static_cast<std::size_t>(r)] = f(r);
  return t;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, std::string_view term) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::SyntaxError, "bad integer '" + std::string(s) + "' in term '" +
                                            std::string(term) + "'");
  }
  return v;
}

}  // namespace

std::int64_t floor_mod(std::int64_t x, std::int64_t m) {
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

bool IntSet::Tail::contains(std::int64_t x) const {
  return mask[static_cast<std::size_t>(floor_mod(x, period))];
}

bool IntSet::Tail::empty() const {
  return std::none_of(mask.begin(), mask.end(), [](bool b) { return b; });
}

IntSet::IntSet() : down_(empty_tail()), up_(empty_tail()) {}

IntSet IntSet::canonical(std::int64_t lo0, std::int64_t hi0, Tail down, Tail up,
                         const std::function<bool(std::int64_t)>& middle) {
  down = reduce(std::move(down));
  up = reduce(std::move(up));
  auto member = [&](std::int64_t x) {
    if (x < lo0) return down.contains(x);
    if (x >= hi0) return up.contains(x);
    return middle(x);
  };

  std::int64_t hi = hi0;
  while (hi > lo0 && member(hi - 1) == up.contains(hi - 1)) --hi;
  if (hi == lo0) {
    if (down == up) {
      IntSet s;
      s.lo_ = s.hi_ = 0;
      s.down_ = down;
      s.up_ = up;
      return s;
    }
    // The two patterns differ somewhere in every window of lcm length.
    while (down.contains(hi - 1) == up.contains(hi - 1)) --hi;
  }
  std::int64_t lo = std::min(lo0, hi);
  while (lo < hi && member(lo) == down.contains(lo)) ++lo;

  IntSet s;
  s.lo_ = lo;
  s.hi_ = hi;
  s.down_ = std::move(down);
  s.up_ = std::move(up);
  for (std::int64_t x = lo; x < hi; ++x) {
    if (!member(x)) continue;
    if (!s.mid_.empty() && s.mid_.back().last == x - 1) {
      s.mid_.back().last = x;
    } else {
      s.mid_.push_back({x, x});
    }
  }
  return s;
}

IntSet IntSet::empty_set() { return IntSet(); }

IntSet IntSet::all() {
  IntSet s;
  s.down_ = full_tail();
  s.up_ = full_tail();
  return s;
}

IntSet IntSet::point(std::int64_t x) { return interval(x, x); }

IntSet IntSet::interval(std::int64_t first, std::int64_t last) {
  if (first > last) return empty_set();
  return canonical(first, last + 1, empty_tail(), empty_tail(), [](std::int64_t) { return true; });
}

IntSet IntSet::ray_up(std::int64_t first) {
  return canonical(first, first, empty_tail(), full_tail(), [](std::int64_t) { return false; });
}

IntSet IntSet::ray_down(std::int64_t last) {
  return canonical(last + 1, last + 1, full_tail(), empty_tail(),
                   [](std::int64_t) { return false; });
}

IntSet IntSet::residue_class(std::int64_t residue, std::int64_t modulus) {
  if (modulus <= 0) throw Error(ErrorKind::InvalidArgument, "modulus must be positive");
  const std::int64_t r = floor_mod(residue, modulus);
  Tail t = tabulate(modulus, [r](std::int64_t i) { return i == r; });
  return canonical(0, 0, t, t, [](std::int64_t) { return false; });
}

IntSet IntSet::progression(std::int64_t start, std::int64_t stride, std::int64_t length) {
  if (length <= 0) throw Error(ErrorKind::InvalidArgument, "progression length must be positive");
  if (stride == 0 || length == 1) return point(start);
  const std::int64_t end = start + (length - 1) * stride;
  const std::int64_t first = std::min(start, end);
  const std::int64_t last = std::max(start, end);
  const std::int64_t step = std::abs(stride);
  return canonical(first, last + 1, empty_tail(), empty_tail(),
                   [first, step](std::int64_t x) { return (x - first) % step == 0; });
}

IntSet IntSet::progression_ray(std::int64_t start, std::int64_t stride, IntPiece::Direction dir) {
  if (stride <= 0) throw Error(ErrorKind::InvalidArgument, "ray stride must be positive");
  const std::int64_t r = floor_mod(start, stride);
  Tail t = tabulate(stride, [r](std::int64_t i) { return i == r; });
  if (dir == IntPiece::Direction::Up) {
    return canonical(start, start, empty_tail(), t, [](std::int64_t) { return false; });
  }
  return canonical(start + 1, start + 1, t, empty_tail(), [](std::int64_t) { return false; });
}

IntSet IntSet::from_piece(const IntPiece& piece) {
  if (!piece.length) return progression_ray(piece.start, piece.stride, piece.direction);
  const std::int64_t signed_stride =
      piece.direction == IntPiece::Direction::Up ? piece.stride : -piece.stride;
  return progression(piece.start, signed_stride, *piece.length);
}

IntSet IntSet::from_points(std::vector<std::int64_t> points) {
  if (points.empty()) return empty_set();
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return canonical(points.front(), points.back() + 1, empty_tail(), empty_tail(),
                   [&points](std::int64_t x) {
                     return std::binary_search(points.begin(), points.end(), x);
                   });
}

bool IntSet::contains(std::int64_t x) const {
  if (x < lo_) return down_.contains(x);
  if (x >= hi_) return up_.contains(x);
  auto it = std::upper_bound(mid_.begin(), mid_.end(), x,
                             [](std::int64_t v, const Run& r) { return v < r.first; });
  if (it == mid_.begin()) return false;
  --it;
  return x <= it->last;
}

bool IntSet::empty() const { return down_.empty() && up_.empty() && mid_.empty(); }
bool IntSet::is_finite() const { return down_.empty() && up_.empty(); }
bool IntSet::bounded_below() const { return down_.empty(); }
bool IntSet::bounded_above() const { return up_.empty(); }

std::optional<std::uint64_t> IntSet::size() const {
  if (!is_finite()) return std::nullopt;
  std::uint64_t n = 0;
  for (const Run& r : mid_) n += static_cast<std::uint64_t>(r.last - r.first + 1);
  return n;
}

std::optional<std::int64_t> IntSet::min() const {
  if (!bounded_below()) return std::nullopt;
  if (!mid_.empty()) return mid_.front().first;
  if (up_.empty()) return std::nullopt;
  for (std::int64_t x = hi_;; ++x) {
    if (up_.contains(x)) return x;
  }
}

std::optional<std::int64_t> IntSet::max() const {
  if (!bounded_above()) return std::nullopt;
  if (!mid_.empty()) return mid_.back().last;
  if (down_.empty()) return std::nullopt;
  for (std::int64_t x = lo_ - 1;; --x) {
    if (down_.contains(x)) return x;
  }
}

std::optional<std::int64_t> IntSet::closest_to_zero() const {
  if (empty()) return std::nullopt;
  if (contains(0)) return 0;
  const auto above = intersect(ray_up(1)).min();
  const auto below = intersect(ray_down(-1)).max();
  if (!above) return below;
  if (!below) return above;
  return (-*below < *above) ? below : above;
}

std::vector<std::int64_t> IntSet::elements() const {
  if (!is_finite()) throw Error(ErrorKind::InvalidArgument, "cannot list an infinite set");
  std::vector<std::int64_t> out;
  for (const Run& r : mid_) {
    for (std::int64_t x = r.first; x <= r.last; ++x) out.push_back(x);
  }
  return out;
}

std::vector<std::int64_t> IntSet::elements_in(std::int64_t first, std::int64_t last) const {
  std::vector<std::int64_t> out;
  for (std::int64_t x = first; x <= last; ++x) {
    if (contains(x)) out.push_back(x);
  }
  return out;
}

IntSet IntSet::combine(const IntSet& a, const IntSet& b,
                       const std::function<bool(bool, bool)>& op) {
  const std::int64_t lo0 = std::min(a.lo_, b.lo_);
  const std::int64_t hi0 = std::max(a.hi_, b.hi_);
  const std::int64_t pd = checked_lcm(a.down_.period, b.down_.period);
  const std::int64_t pu = checked_lcm(a.up_.period, b.up_.period);
  Tail down = tabulate(pd, [&](std::int64_t r) {
    return op(a.down_.contains(r), b.down_.contains(r));
  });
  Tail up = tabulate(pu, [&](std::int64_t r) { return op(a.up_.contains(r), b.up_.contains(r)); });
  return canonical(lo0, hi0, std::move(down), std::move(up),
                   [&](std::int64_t x) { return op(a.contains(x), b.contains(x)); });
}

IntSet IntSet::unite(const IntSet& other) const {
  return combine(*this, other, [](bool x, bool y) { return x || y; });
}

IntSet IntSet::intersect(const IntSet& other) const {
  return combine(*this, other, [](bool x, bool y) { return x && y; });
}

IntSet IntSet::minus(const IntSet& other) const {
  return combine(*this, other, [](bool x, bool y) { return x && !y; });
}

IntSet IntSet::complement() const { return all().minus(*this); }

IntSet IntSet::translate(std::int64_t offset) const {
  if (offset == 0) return *this;
  IntSet s;
  s.lo_ = lo_ + offset;
  s.hi_ = hi_ + offset;
  s.down_ = tabulate(down_.period, [&](std::int64_t r) { return down_.contains(r - offset); });
  s.up_ = tabulate(up_.period, [&](std::int64_t r) { return up_.contains(r - offset); });
  s.mid_.reserve(mid_.size());
  for (const Run& r : mid_) s.mid_.push_back({r.first + offset, r.last + offset});
  if (lo_ == 0 && hi_ == 0 && mid_.empty() && down_ == up_) {
    // Fully periodic sets keep the lo = hi = 0 convention.
    s.lo_ = s.hi_ = 0;
  }
  return s;
}

IntSet IntSet::negate() const {
  Tail down = tabulate(up_.period, [&](std::int64_t r) { return up_.contains(-r); });
  Tail up = tabulate(down_.period, [&](std::int64_t r) { return down_.contains(-r); });
  return canonical(-hi_ + 1, -lo_ + 1, std::move(down), std::move(up),
                   [&](std::int64_t x) { return contains(-x); });
}

IntSet IntSet::plus_multiples(std::int64_t step) const {
  if (step == 0) return *this;
  if (step < 0) return negate().plus_multiples(-step).negate();
  IntSet out;
  for (std::int64_t r = 0; r < step; ++r) {
    const IntSet cls = residue_class(r, step);
    const IntSet part = intersect(cls);
    if (part.empty()) continue;
    if (!part.bounded_below()) {
      out = out.unite(cls);
    } else {
      out = out.unite(progression_ray(*part.min(), step, IntPiece::Direction::Up));
    }
  }
  return out;
}

bool IntSet::subset_of(const IntSet& other) const { return minus(other).empty(); }
bool IntSet::disjoint_from(const IntSet& other) const { return intersect(other).empty(); }

std::vector<IntPiece> IntSet::pieces() const {
  std::vector<IntPiece> out;
  for (std::int64_t r = 0; r < down_.period; ++r) {
    if (!down_.mask[static_cast<std::size_t>(r)]) continue;
    const std::int64_t start = lo_ - 1 - floor_mod(lo_ - 1 - r, down_.period);
    out.push_back({start, down_.period, std::nullopt, IntPiece::Direction::Down});
  }
  std::sort(out.begin(), out.end(),
            [](const IntPiece& a, const IntPiece& b) { return a.start < b.start; });
  for (const Run& run : mid_) {
    out.push_back({run.first, 1, run.last - run.first + 1, IntPiece::Direction::Up});
  }
  std::vector<IntPiece> upper;
  for (std::int64_t r = 0; r < up_.period; ++r) {
    if (!up_.mask[static_cast<std::size_t>(r)]) continue;
    const std::int64_t start = hi_ + floor_mod(r - hi_, up_.period);
    upper.push_back({start, up_.period, std::nullopt, IntPiece::Direction::Up});
  }
  std::sort(upper.begin(), upper.end(),
            [](const IntPiece& a, const IntPiece& b) { return a.start < b.start; });
  out.insert(out.end(), upper.begin(), upper.end());
  return out;
}

IntSet intset_ops(const IntSet& a, const IntSet& b, SetOp op) {
  switch (op) {
    case SetOp::Union: return a.unite(b);
    case SetOp::Intersect: return a.intersect(b);
    case SetOp::Difference: return a.minus(b);
  }
  return {};
}

IntSet intset_normalize(const std::vector<IntPiece>& pieces) {
  IntSet out;
  for (const IntPiece& p : pieces) out = out.unite(IntSet::from_piece(p));
  return out;
}

std::string to_string(const IntSet& s) {
  if (s.empty()) return "empty";
  if (s == IntSet::all()) return "..";
  std::ostringstream os;
  bool first = true;
  for (const IntPiece& p : s.pieces()) {
    if (!first) os << "; ";
    first = false;
    if (!p.length) {
      if (p.stride == 1) {
        if (p.direction == IntPiece::Direction::Up) {
          os << p.start << "..";
        } else {
          os << ".." << p.start;
        }
      } else {
        os << p.start << (p.direction == IntPiece::Direction::Up ? ":+" : ":-") << p.stride
           << "*inf";
      }
    } else if (*p.length == 1) {
      os << p.start;
    } else {
      os << p.start << ".." << p.start + (*p.length - 1) * p.stride;
    }
  }
  return os.str();
}

IntSet parse_intset(std::string_view text) {
  IntSet out;
  text = trim(text);
  if (text.empty()) {
    throw Error(ErrorKind::SyntaxError, "empty set literal (write 'empty')");
  }
  while (!text.empty()) {
    const auto semi = text.find(';');
    const std::string_view term = trim(text.substr(0, semi));
    text = semi == std::string_view::npos ? std::string_view{} : text.substr(semi + 1);
    if (term.empty()) throw Error(ErrorKind::SyntaxError, "empty term in set literal");
    if (term == "empty") continue;
    if (term == "..") {
      out = IntSet::all();
      continue;
    }
    if (const auto colon = term.find(':'); colon != std::string_view::npos) {
      // a:+d*L or a:-d*L
      const std::int64_t start = parse_int(term.substr(0, colon), term);
      std::string_view rest = trim(term.substr(colon + 1));
      if (rest.empty() || (rest.front() != '+' && rest.front() != '-')) {
        throw Error(ErrorKind::SyntaxError, "expected ':+' or ':-' in '" + std::string(term) + "'");
      }
      const auto dir = rest.front() == '+' ? IntPiece::Direction::Up : IntPiece::Direction::Down;
      rest.remove_prefix(1);
      const auto star = rest.find('*');
      if (star == std::string_view::npos) {
        throw Error(ErrorKind::SyntaxError, "missing '*length' in '" + std::string(term) + "'");
      }
      const std::int64_t stride = parse_int(rest.substr(0, star), term);
      if (stride <= 0) throw Error(ErrorKind::SyntaxError, "stride must be positive");
      const std::string_view len = trim(rest.substr(star + 1));
      IntPiece piece{start, stride, std::nullopt, dir};
      if (len != "inf") {
        piece.length = parse_int(len, term);
        if (*piece.length <= 0) throw Error(ErrorKind::SyntaxError, "length must be positive");
      }
      out = out.unite(IntSet::from_piece(piece));
      continue;
    }
    if (const auto dots = term.find(".."); dots != std::string_view::npos) {
      const std::string_view left = trim(term.substr(0, dots));
      const std::string_view right = trim(term.substr(dots + 2));
      if (left.empty()) {
        out = out.unite(IntSet::ray_down(parse_int(right, term)));
      } else if (right.empty()) {
        out = out.unite(IntSet::ray_up(parse_int(left, term)));
      } else {
        out = out.unite(IntSet::interval(parse_int(left, term), parse_int(right, term)));
      }
      continue;
    }
    out = out.unite(IntSet::point(parse_int(term, term)));
  }
  return out;
}

}  // namespace qfm
