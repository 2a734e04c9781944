#include "qfm/finite.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "qfm/error.hpp"

namespace qfm {

Endomorphism identity_map(std::size_t n) {
  Endomorphism f(n);
  std::iota(f.begin(), f.end(), Point{0});
  return f;
}

bool is_permutation(std::span<const Point> f) {
  std::vector<bool> seen(f.size(), false);
  for (Point y : f) {
    if (y >= f.size() || seen[y]) return false;
    seen[y] = true;
  }
  return true;
}

Permutation invert(std::span<const Point> p) {
  if (!is_permutation(p)) throw Error(ErrorKind::NotInjective, "not a permutation");
  Permutation inv(p.size());
  for (Point x = 0; x < p.size(); ++x) inv[p[x]] = x;
  return inv;
}

Endomorphism compose(std::span<const Point> f, std::span<const Point> g) {
  Endomorphism out(g.size());
  for (Point x = 0; x < g.size(); ++x) out[x] = f[g[x]];
  return out;
}

Partition Partition::from_labels(std::span<const std::size_t> labels) {
  Partition p;
  p.class_of_.resize(labels.size());
  std::map<std::size_t, std::size_t> canon;
  for (Point x = 0; x < labels.size(); ++x) {
    auto [it, inserted] = canon.try_emplace(labels[x], p.classes_.size());
    if (inserted) p.classes_.emplace_back();
    p.class_of_[x] = it->second;
    p.classes_[it->second].push_back(x);
  }
  return p;
}

Partition Partition::from_classes(std::size_t n, const std::vector<std::vector<Point>>& classes) {
  std::vector<std::size_t> labels(n, kNoPoint);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c].empty()) throw Error(ErrorKind::InvalidPartition, "empty class");
    for (Point x : classes[c]) {
      if (x >= n) {
        throw Error(ErrorKind::InvalidPartition, "point " + std::to_string(x) + " out of range");
      }
      if (labels[x] != kNoPoint) {
        throw Error(ErrorKind::InvalidPartition, "point " + std::to_string(x) + " in two classes",
                    std::to_string(x));
      }
      labels[x] = c;
    }
  }
  for (Point x = 0; x < n; ++x) {
    if (labels[x] == kNoPoint) {
      throw Error(ErrorKind::InvalidPartition, "point " + std::to_string(x) + " not covered",
                  std::to_string(x));
    }
  }
  return from_labels(labels);
}

Partition Partition::discrete(std::size_t n) {
  std::vector<std::size_t> labels(n);
  std::iota(labels.begin(), labels.end(), std::size_t{0});
  return from_labels(labels);
}

Partition Partition::indiscrete(std::size_t n) {
  return from_labels(std::vector<std::size_t>(n, 0));
}

std::size_t Partition::max_class_size() const {
  std::size_t m = 0;
  for (const auto& c : classes_) m = std::max(m, c.size());
  return m;
}

bool Partition::refines(const Partition& coarser) const {
  for (const auto& c : classes_) {
    for (Point x : c) {
      if (!coarser.equivalent(x, c.front())) return false;
    }
  }
  return true;
}

UnionFind::UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool UnionFind::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
  return true;
}

Partition UnionFind::partition() {
  std::vector<std::size_t> labels(parent_.size());
  for (std::size_t x = 0; x < parent_.size(); ++x) labels[x] = find(x);
  return Partition::from_labels(labels);
}

Relation Relation::from_partition(const Partition& p) {
  Relation r(p.size(), p.size());
  for (const auto& c : p.classes()) {
    for (Point x : c) {
      for (Point y : c) r.insert(x, y);
    }
  }
  return r;
}

Relation Relation::graph_of(std::span<const Point> f, std::size_t cols) {
  Relation r(f.size(), cols);
  for (Point x = 0; x < f.size(); ++x) {
    if (f[x] != kNoPoint) r.insert(x, f[x]);
  }
  return r;
}

Relation Relation::identity(std::size_t n) {
  Relation r(n, n);
  for (Point x = 0; x < n; ++x) r.insert(x, x);
  return r;
}

std::vector<Point> Relation::section(Point x) const {
  std::vector<Point> out;
  for (Point y = 0; y < cols_; ++y) {
    if (contains(x, y)) out.push_back(y);
  }
  return out;
}

std::vector<std::pair<Point, Point>> Relation::pairs() const {
  std::vector<std::pair<Point, Point>> out;
  for (Point x = 0; x < rows_; ++x) {
    for (Point y = 0; y < cols_; ++y) {
      if (contains(x, y)) out.emplace_back(x, y);
    }
  }
  return out;
}

std::size_t Relation::pair_count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

bool Relation::subset_of(const Relation& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.bits_[i]) return false;
  }
  return true;
}

Relation Relation::inverse() const {
  Relation r(cols_, rows_);
  for (Point x = 0; x < rows_; ++x) {
    for (Point y = 0; y < cols_; ++y) {
      if (contains(x, y)) r.insert(y, x);
    }
  }
  return r;
}

Relation Relation::unite(const Relation& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error(ErrorKind::EndpointMismatch, "relation shapes differ");
  }
  Relation r = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (other.bits_[i]) r.bits_[i] = true;
  }
  return r;
}

PartialInjection::PartialInjection(std::vector<Point> image) : image_(std::move(image)) {
  std::vector<Point> seen(image_.size(), kNoPoint);
  for (Point x = 0; x < image_.size(); ++x) {
    const Point y = image_[x];
    if (y == kNoPoint) continue;
    if (y >= image_.size()) {
      throw Error(ErrorKind::InvalidArgument, "image " + std::to_string(y) + " out of range");
    }
    if (seen[y] != kNoPoint) {
      throw Error(ErrorKind::NotInjective,
                  "points " + std::to_string(seen[y]) + " and " + std::to_string(x) +
                      " both map to " + std::to_string(y),
                  "(" + std::to_string(seen[y]) + "," + std::to_string(x) + ")");
    }
    seen[y] = x;
  }
}

PartialInjection PartialInjection::identity(std::size_t n) {
  return PartialInjection(identity_map(n));
}

PartialInjection PartialInjection::from_pairs(std::size_t n,
                                              std::span<const std::pair<Point, Point>> pairs) {
  std::vector<Point> image(n, kNoPoint);
  for (auto [x, y] : pairs) {
    if (x >= n || y >= n) throw Error(ErrorKind::InvalidArgument, "pair out of range");
    if (image[x] != kNoPoint && image[x] != y) {
      throw Error(ErrorKind::NotAFunction, "point " + std::to_string(x) + " has two images",
                  std::to_string(x));
    }
    image[x] = y;
  }
  return PartialInjection(std::move(image));
}

bool PartialInjection::in_range(Point y) const {
  return std::find(image_.begin(), image_.end(), y) != image_.end();
}

std::vector<bool> PartialInjection::domain_mask() const {
  std::vector<bool> m(image_.size(), false);
  for (Point x = 0; x < image_.size(); ++x) m[x] = image_[x] != kNoPoint;
  return m;
}

std::vector<bool> PartialInjection::range_mask() const {
  std::vector<bool> m(image_.size(), false);
  for (Point y : image_) {
    if (y != kNoPoint) m[y] = true;
  }
  return m;
}

PartialInjection PartialInjection::inverse() const {
  std::vector<Point> inv(image_.size(), kNoPoint);
  for (Point x = 0; x < image_.size(); ++x) {
    if (image_[x] != kNoPoint) inv[image_[x]] = x;
  }
  return PartialInjection(std::move(inv));
}

bool PartialInjection::total() const {
  return std::none_of(image_.begin(), image_.end(), [](Point y) { return y == kNoPoint; });
}

std::vector<std::pair<Point, Point>> PartialInjection::pairs() const {
  std::vector<std::pair<Point, Point>> out;
  for (Point x = 0; x < image_.size(); ++x) {
    if (image_[x] != kNoPoint) out.emplace_back(x, image_[x]);
  }
  return out;
}

bool PartialInjection::subset_of(const PartialInjection& other) const {
  for (Point x = 0; x < image_.size(); ++x) {
    if (image_[x] != kNoPoint && other.image_[x] != image_[x]) return false;
  }
  return true;
}

std::string format_map(std::span<const Point> f) {
  std::ostringstream os;
  bool first = true;
  for (Point x = 0; x < f.size(); ++x) {
    if (f[x] == kNoPoint) continue;
    if (!first) os << ", ";
    first = false;
    os << x << "->" << f[x];
  }
  return first ? std::string("empty") : os.str();
}

}  // namespace qfm
