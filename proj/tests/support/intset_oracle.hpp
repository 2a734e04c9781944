#pragma once

// Brute-force membership oracle for semilinear sets. Pieces and expression
// trees are evaluated arithmetically, independent of the IntSet canonical
// form, so the two routes can be compared point by point.

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "qfm/intset.hpp"

namespace qfm::testing {

inline bool piece_contains(const IntPiece& p, std::int64_t x) {
  const std::int64_t step = p.direction == IntPiece::Direction::Up ? p.stride : -p.stride;
  const std::int64_t delta = x - p.start;
  if (delta % step != 0) return false;
  const std::int64_t k = delta / step;
  if (k < 0) return false;
  return !p.length || k < *p.length;
}

inline IntPiece random_piece(std::mt19937_64& rng, std::int64_t span = 40) {
  std::uniform_int_distribution<std::int64_t> start(-span, span);
  std::uniform_int_distribution<std::int64_t> stride(1, 5);
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<std::int64_t> len(1, 12);
  IntPiece p;
  p.start = start(rng);
  p.stride = stride(rng);
  switch (kind(rng)) {
    case 0: p.length = len(rng); p.direction = IntPiece::Direction::Up; break;
    case 1: p.length = len(rng); p.direction = IntPiece::Direction::Down; break;
    case 2: p.direction = IntPiece::Direction::Up; break;
    default: p.direction = IntPiece::Direction::Down; break;
  }
  return p;
}

// Random expression tree over pieces with union / intersect / difference.
struct SetExpr {
  enum class Kind { Leaf, Union, Intersect, Difference, Translate };
  Kind kind = Kind::Leaf;
  std::vector<IntPiece> leaf;
  std::int64_t offset = 0;
  std::unique_ptr<SetExpr> left, right;

  bool contains(std::int64_t x) const {
    switch (kind) {
      case Kind::Leaf:
        for (const auto& p : leaf) {
          if (piece_contains(p, x)) return true;
        }
        return false;
      case Kind::Union: return left->contains(x) || right->contains(x);
      case Kind::Intersect: return left->contains(x) && right->contains(x);
      case Kind::Difference: return left->contains(x) && !right->contains(x);
      case Kind::Translate: return left->contains(x - offset);
    }
    return false;
  }

  IntSet evaluate() const {
    switch (kind) {
      case Kind::Leaf: return intset_normalize(leaf);
      case Kind::Union: return intset_ops(left->evaluate(), right->evaluate(), SetOp::Union);
      case Kind::Intersect: return intset_ops(left->evaluate(), right->evaluate(), SetOp::Intersect);
      case Kind::Difference:
        return intset_ops(left->evaluate(), right->evaluate(), SetOp::Difference);
      case Kind::Translate: return left->evaluate().translate(offset);
    }
    return {};
  }
};

inline std::unique_ptr<SetExpr> random_expr(std::mt19937_64& rng, int depth) {
  auto e = std::make_unique<SetExpr>();
  std::uniform_int_distribution<int> pick(0, 4);
  const int k = depth <= 0 ? 0 : pick(rng);
  if (k == 0) {
    std::uniform_int_distribution<int> count(0, 3);
    const int n = count(rng);
    for (int i = 0; i < n; ++i) e->leaf.push_back(random_piece(rng));
    return e;
  }
  e->left = random_expr(rng, depth - 1);
  if (k == 4) {
    e->kind = SetExpr::Kind::Translate;
    e->offset = std::uniform_int_distribution<std::int64_t>(-7, 7)(rng);
    return e;
  }
  e->right = random_expr(rng, depth - 1);
  e->kind = k == 1 ? SetExpr::Kind::Union : k == 2 ? SetExpr::Kind::Intersect : SetExpr::Kind::Difference;
  return e;
}

}  // namespace qfm::testing
