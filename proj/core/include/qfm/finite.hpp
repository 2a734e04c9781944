#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qfm {

// Index of a point of a finite set (a carrier point or a quotient point).
using Point = std::size_t;
inline constexpr Point kNoPoint = static_cast<Point>(-1);

// Total self-map of {0..n-1}.
using Endomorphism = std::vector<Point>;
// Bijective self-map of {0..n-1}.
using Permutation = std::vector<Point>;

Endomorphism identity_map(std::size_t n);
bool is_permutation(std::span<const Point> f);
Permutation invert(std::span<const Point> p);
// (f o g)(x) = f(g(x))
Endomorphism compose(std::span<const Point> f, std::span<const Point> g);

// An equivalence relation on {0..n-1} in partition form. Class ids are
// canonical: classes are numbered in order of their least member, so equal
// relations have identical representations.
class Partition {
 public:
  Partition() = default;

  // Any labelling of points (equal label = same class) is accepted.
  static Partition from_labels(std::span<const std::size_t> labels);
  static Partition from_classes(std::size_t n, const std::vector<std::vector<Point>>& classes);
  static Partition discrete(std::size_t n);
  static Partition indiscrete(std::size_t n);

  std::size_t size() const { return class_of_.size(); }
  std::size_t class_count() const { return classes_.size(); }
  std::size_t class_of(Point x) const { return class_of_[x]; }
  const std::vector<Point>& members(std::size_t c) const { return classes_[c]; }
  const std::vector<std::vector<Point>>& classes() const { return classes_; }
  bool equivalent(Point x, Point y) const { return class_of_[x] == class_of_[y]; }
  std::size_t max_class_size() const;
  bool refines(const Partition& coarser) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::size_t> class_of_;
  std::vector<std::vector<Point>> classes_;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n);
  std::size_t find(std::size_t x);
  bool unite(std::size_t a, std::size_t b);
  Partition partition();

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
};

// Binary relation between {0..rows-1} and {0..cols-1}.
class Relation {
 public:
  Relation() = default;
  Relation(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), bits_(rows * cols) {}

  static Relation from_partition(const Partition& p);
  static Relation graph_of(std::span<const Point> f, std::size_t cols);
  static Relation identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool contains(Point x, Point y) const { return bits_[x * cols_ + y]; }
  void insert(Point x, Point y) { bits_[x * cols_ + y] = true; }
  void erase(Point x, Point y) { bits_[x * cols_ + y] = false; }
  // Elements y with (x, y) in the relation, ascending.
  std::vector<Point> section(Point x) const;
  std::vector<std::pair<Point, Point>> pairs() const;
  std::size_t pair_count() const;
  bool subset_of(const Relation& other) const;
  Relation inverse() const;
  Relation unite(const Relation& other) const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<bool> bits_;
};

// Injective partial self-map of {0..n-1}; kNoPoint marks "undefined".
class PartialInjection {
 public:
  PartialInjection() = default;
  explicit PartialInjection(std::size_t n) : image_(n, kNoPoint) {}
  // Throws NotInjective when two points share an image.
  explicit PartialInjection(std::vector<Point> image);

  static PartialInjection identity(std::size_t n);
  static PartialInjection from_pairs(std::size_t n, std::span<const std::pair<Point, Point>> pairs);

  std::size_t size() const { return image_.size(); }
  Point operator()(Point x) const { return image_[x]; }
  bool defined_at(Point x) const { return image_[x] != kNoPoint; }
  bool in_range(Point y) const;
  std::vector<bool> domain_mask() const;
  std::vector<bool> range_mask() const;
  PartialInjection inverse() const;
  bool total() const;
  const std::vector<Point>& table() const { return image_; }
  std::vector<std::pair<Point, Point>> pairs() const;
  // Graph containment.
  bool subset_of(const PartialInjection& other) const;

  friend bool operator==(const PartialInjection&, const PartialInjection&) = default;

 private:
  std::vector<Point> image_;
};

std::string format_map(std::span<const Point> f);

}  // namespace qfm
