#pragma once

#include <cstdint>
#include <vector>

#include "randgrp/words.hpp"

namespace randgrp::groups {

/// A finite group given by dense tables, with identity fixed at index 0 and an
/// ordered list of n marked elements (the images of the free generators
/// x_1..x_n). Immutable after construction; safe for shared concurrent reads.
class MarkedFiniteGroup {
public:
  static constexpr std::size_t kDefaultOrderCap = 100000;

  /// Validate a user-supplied multiplication table (row = left factor).
  /// Index 0 must be the identity; every element needs a two-sided inverse;
  /// associativity is checked exhaustively. Throws StructureError naming the
  /// first violated triple, InvalidInputError for shape problems.
  static MarkedFiniteGroup from_mul_table(const std::vector<std::vector<int>>& table,
                                          std::vector<int> marks);

  /// Closure of the given permutations of {0..degree-1} under composition,
  /// elements ordered by first occurrence in a breadth-first sweep (identity
  /// first). Marks are the input generators. Composition convention:
  /// (a·b)(x) = a(b(x)).
  static MarkedFiniteGroup from_permutations(const std::vector<std::vector<int>>& gens,
                                             std::size_t order_cap = kDefaultOrderCap);

  /// Construction for tables that are groups by construction (direct products,
  /// split extensions, catalog groups); skips the O(k^3) associativity sweep
  /// but still verifies identity and inverses.
  static MarkedFiniteGroup from_trusted_table(std::vector<int> mul_flat, int order,
                                              std::vector<int> marks);

  int order() const { return order_; }
  int num_marks() const { return static_cast<int>(marks_.size()); }
  int mark(int i) const { return marks_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& marks() const { return marks_; }

  int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * order_ + b]; }
  int inv(int a) const { return inv_[static_cast<std::size_t>(a)]; }
  static constexpr int identity = 0;

  /// Image of x_i^eps for a letter (sign = eps, magnitude = i).
  int mark_of_letter(words::Letter a) const;

private:
  MarkedFiniteGroup(std::vector<int> mul_flat, std::vector<int> inv, int order,
                    std::vector<int> marks)
      : mul_(std::move(mul_flat)), inv_(std::move(inv)), order_(order),
        marks_(std::move(marks)) {}

  std::vector<int> mul_; // row-major order x order
  std::vector<int> inv_;
  int order_;
  std::vector<int> marks_;
};

/// Subgroup as a sorted member list plus a membership bitmap.
class Subgroup {
public:
  Subgroup(std::vector<int> members, int parent_order);
  const std::vector<int>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(int g) const { return bitmap_[static_cast<std::size_t>(g)]; }

private:
  std::vector<int> members_;
  std::vector<char> bitmap_;
};

/// Product of the marked images along the word; the empty word evaluates to
/// the identity. Throws InvalidInputError if w's rank != number of marks.
int evaluate(const MarkedFiniteGroup& g, const words::ReducedWord& w);

/// Smallest subgroup containing the seed elements.
Subgroup subgroup_closure(const MarkedFiniteGroup& g, const std::vector<int>& seed);

/// Closure of all products m_a·m_b and m_a·m_b^{-1} of marked images: the set
/// of elements reachable by even-length reduced words. Has index 1 or 2 in
/// the subgroup generated by the marks.
Subgroup even_subgroup(const MarkedFiniteGroup& g);

// Families used as walk targets and as building blocks for quotient groups.
MarkedFiniteGroup cyclic(int k, std::vector<int> marks);
MarkedFiniteGroup dihedral(int k, std::vector<int> marks); // order 2k, element r^a s^b
MarkedFiniteGroup quaternion8(std::vector<int> marks);
MarkedFiniteGroup direct_product(const MarkedFiniteGroup& a,
                                 const MarkedFiniteGroup& b,
                                 std::vector<int> marks);

} // namespace randgrp::groups
