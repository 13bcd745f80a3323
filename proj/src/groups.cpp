#include "randgrp/groups.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <string>

#include "randgrp/errors.hpp"

namespace randgrp::groups {

namespace {

std::vector<int> compute_inverses(const std::vector<int>& mul_flat, int order) {
  std::vector<int> inv(static_cast<std::size_t>(order), -1);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      if (mul_flat[static_cast<std::size_t>(a) * order + b] == 0 &&
          mul_flat[static_cast<std::size_t>(b) * order + a] == 0) {
        inv[static_cast<std::size_t>(a)] = b;
        break;
      }
    }
    if (inv[static_cast<std::size_t>(a)] < 0)
      throw StructureError("no inverse for element " + std::to_string(a));
  }
  return inv;
}

void check_identity_and_range(const std::vector<int>& mul_flat, int order) {
  for (std::size_t i = 0; i < mul_flat.size(); ++i)
    if (mul_flat[i] < 0 || mul_flat[i] >= order)
      throw StructureError("table entry out of range at flat index " +
                           std::to_string(i));
  for (int b = 0; b < order; ++b)
    if (mul_flat[static_cast<std::size_t>(0) * order + b] != b)
      throw StructureError("index 0 is not a left identity: 0*" +
                           std::to_string(b) + " != " + std::to_string(b));
  for (int a = 0; a < order; ++a)
    if (mul_flat[static_cast<std::size_t>(a) * order + 0] != a)
      throw StructureError("index 0 is not a right identity: " +
                           std::to_string(a) + "*0 != " + std::to_string(a));
}

void check_marks(const std::vector<int>& marks, int order) {
  if (marks.size() < 2)
    throw InvalidInputError("at least 2 marks required, got " +
                            std::to_string(marks.size()));
  for (int m : marks)
    if (m < 0 || m >= order)
      throw InvalidInputError("mark " + std::to_string(m) + " out of range");
}

} // namespace

MarkedFiniteGroup MarkedFiniteGroup::from_mul_table(
    const std::vector<std::vector<int>>& table, std::vector<int> marks) {
  const int k = static_cast<int>(table.size());
  if (k == 0) throw InvalidInputError("empty multiplication table");
  std::vector<int> flat;
  flat.reserve(static_cast<std::size_t>(k) * k);
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != k)
      throw InvalidInputError("multiplication table is not square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  check_identity_and_range(flat, k);
  std::vector<int> inv = compute_inverses(flat, k);
  const auto mul = [&](int a, int b) {
    return flat[static_cast<std::size_t>(a) * k + b];
  };
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw StructureError("associativity fails at triple (" +
                               std::to_string(a) + "," + std::to_string(b) +
                               "," + std::to_string(c) + ")");
  check_marks(marks, k);
  return MarkedFiniteGroup(std::move(flat), std::move(inv), k, std::move(marks));
}

MarkedFiniteGroup MarkedFiniteGroup::from_trusted_table(std::vector<int> mul_flat,
                                                        int order,
                                                        std::vector<int> marks) {
  if (mul_flat.size() != static_cast<std::size_t>(order) * order)
    throw InvalidInputError("trusted table has wrong size");
  check_identity_and_range(mul_flat, order);
  std::vector<int> inv = compute_inverses(mul_flat, order);
  check_marks(marks, order);
  return MarkedFiniteGroup(std::move(mul_flat), std::move(inv), order,
                           std::move(marks));
}

MarkedFiniteGroup MarkedFiniteGroup::from_permutations(
    const std::vector<std::vector<int>>& gens, std::size_t order_cap) {
  if (gens.empty()) throw InvalidInputError("no generator permutations given");
  const std::size_t degree = gens[0].size();
  if (degree == 0) throw InvalidInputError("permutation degree must be positive");
  for (const auto& p : gens) {
    if (p.size() != degree)
      throw InvalidInputError("generator permutations have differing degrees");
    std::vector<char> seen(degree, 0);
    for (int img : p) {
      if (img < 0 || img >= static_cast<int>(degree) || seen[static_cast<std::size_t>(img)])
        throw InvalidInputError("generator is not a bijection on {0..degree-1}");
      seen[static_cast<std::size_t>(img)] = 1;
    }
  }

  using Perm = std::vector<int>;
  const auto compose = [](const Perm& a, const Perm& b) {
    // (a·b)(x) = a(b(x))
    Perm c(a.size());
    for (std::size_t x = 0; x < a.size(); ++x)
      c[x] = a[static_cast<std::size_t>(b[x])];
    return c;
  };

  Perm id(degree);
  std::iota(id.begin(), id.end(), 0);

  std::vector<Perm> elements{id};
  std::map<Perm, int> index{{id, 0}};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& g : gens) {
      Perm p = compose(elements[head], g);
      if (index.emplace(p, static_cast<int>(elements.size())).second) {
        elements.push_back(std::move(p));
        if (elements.size() > order_cap)
          throw CapacityError("permutation closure exceeds cap of " +
                              std::to_string(order_cap) + " elements");
      }
    }
  }

  const int k = static_cast<int>(elements.size());
  std::vector<int> flat(static_cast<std::size_t>(k) * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      flat[static_cast<std::size_t>(a) * k + b] =
          index.at(compose(elements[static_cast<std::size_t>(a)],
                           elements[static_cast<std::size_t>(b)]));

  std::vector<int> marks;
  marks.reserve(gens.size());
  for (const auto& g : gens) marks.push_back(index.at(g));

  std::vector<int> inv = compute_inverses(flat, k);
  check_marks(marks, k);
  return MarkedFiniteGroup(std::move(flat), std::move(inv), k, std::move(marks));
}

int MarkedFiniteGroup::mark_of_letter(words::Letter a) const {
  const int i = std::abs(a) - 1;
  if (i < 0 || i >= num_marks())
    throw InvalidInputError("letter index out of range for marks");
  const int m = marks_[static_cast<std::size_t>(i)];
  return a > 0 ? m : inv(m);
}

Subgroup::Subgroup(std::vector<int> members, int parent_order)
    : members_(std::move(members)),
      bitmap_(static_cast<std::size_t>(parent_order), 0) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (int m : members_) bitmap_[static_cast<std::size_t>(m)] = 1;
}

int evaluate(const MarkedFiniteGroup& g, const words::ReducedWord& w) {
  if (w.rank() != g.num_marks())
    throw InvalidInputError("word rank " + std::to_string(w.rank()) +
                            " does not match number of marks " +
                            std::to_string(g.num_marks()));
  int acc = MarkedFiniteGroup::identity;
  for (words::Letter a : w.letters()) acc = g.mul(acc, g.mark_of_letter(a));
  return acc;
}

Subgroup subgroup_closure(const MarkedFiniteGroup& g, const std::vector<int>& seed) {
  std::vector<char> in(static_cast<std::size_t>(g.order()), 0);
  std::vector<int> members{MarkedFiniteGroup::identity};
  in[MarkedFiniteGroup::identity] = 1;
  std::queue<int> frontier;
  frontier.push(MarkedFiniteGroup::identity);

  std::vector<int> gens;
  for (int s : seed) {
    if (s < 0 || s >= g.order())
      throw InvalidInputError("seed element out of range");
    gens.push_back(s);
    gens.push_back(g.inv(s));
  }
  while (!frontier.empty()) {
    const int a = frontier.front();
    frontier.pop();
    for (int s : gens) {
      const int b = g.mul(a, s);
      if (!in[static_cast<std::size_t>(b)]) {
        in[static_cast<std::size_t>(b)] = 1;
        members.push_back(b);
        frontier.push(b);
      }
    }
  }
  return Subgroup(std::move(members), g.order());
}

Subgroup even_subgroup(const MarkedFiniteGroup& g) {
  std::vector<int> seed;
  for (int a : g.marks())
    for (int b : g.marks()) {
      seed.push_back(g.mul(a, b));
      seed.push_back(g.mul(a, g.inv(b)));
    }
  return subgroup_closure(g, seed);
}

MarkedFiniteGroup cyclic(int k, std::vector<int> marks) {
  if (k < 1) throw InvalidInputError("cyclic group order must be positive");
  std::vector<int> flat(static_cast<std::size_t>(k) * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      flat[static_cast<std::size_t>(a) * k + b] = (a + b) % k;
  return MarkedFiniteGroup::from_trusted_table(std::move(flat), k, std::move(marks));
}

MarkedFiniteGroup dihedral(int k, std::vector<int> marks) {
  if (k < 1) throw InvalidInputError("dihedral parameter must be positive");
  // Element 2a+b = r^a s^b with s r s = r^{-1}; index 0 = identity.
  const int n = 2 * k;
  const auto idx = [&](int a, int b) { return 2 * a + b; };
  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  for (int a1 = 0; a1 < k; ++a1)
    for (int b1 = 0; b1 < 2; ++b1)
      for (int a2 = 0; a2 < k; ++a2)
        for (int b2 = 0; b2 < 2; ++b2) {
          // (r^a1 s^b1)(r^a2 s^b2) = r^{a1 + (-1)^{b1} a2} s^{b1+b2}
          const int a = ((a1 + (b1 ? k - a2 : a2)) % k + k) % k;
          const int b = (b1 + b2) % 2;
          flat[static_cast<std::size_t>(idx(a1, b1)) * n + idx(a2, b2)] = idx(a, b);
        }
  return MarkedFiniteGroup::from_trusted_table(std::move(flat), n, std::move(marks));
}

MarkedFiniteGroup quaternion8(std::vector<int> marks) {
  // Elements 0..7 = 1, -1, i, -i, j, -j, k, -k.
  // Encode as (sign, axis): axis 0 = scalar, 1 = i, 2 = j, 3 = k.
  const auto enc = [](int sign, int axis) { return axis * 2 + (sign < 0 ? 1 : 0); };
  const auto dec_sign = [](int e) { return (e & 1) ? -1 : +1; };
  const auto dec_axis = [](int e) { return e / 2; };
  // Quaternion axis multiplication table: axis x axis -> (sign, axis).
  static const int axis_tab[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign_tab[4][4] = {{+1, +1, +1, +1},
                                     {+1, -1, +1, -1},
                                     {+1, -1, -1, +1},
                                     {+1, +1, -1, -1}};
  std::vector<int> flat(64);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const int axis = axis_tab[dec_axis(a)][dec_axis(b)];
      const int sign = dec_sign(a) * dec_sign(b) * sign_tab[dec_axis(a)][dec_axis(b)];
      flat[static_cast<std::size_t>(a) * 8 + b] = enc(sign, axis);
    }
  return MarkedFiniteGroup::from_trusted_table(std::move(flat), 8, std::move(marks));
}

MarkedFiniteGroup direct_product(const MarkedFiniteGroup& a,
                                 const MarkedFiniteGroup& b,
                                 std::vector<int> marks) {
  const int ka = a.order(), kb = b.order();
  const int k = ka * kb;
  // Element index = ia*kb + ib, so identity (0,0) stays at 0.
  std::vector<int> flat(static_cast<std::size_t>(k) * k);
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      const int xa = x / kb, xb = x % kb, ya = y / kb, yb = y % kb;
      flat[static_cast<std::size_t>(x) * k + y] = a.mul(xa, ya) * kb + b.mul(xb, yb);
    }
  return MarkedFiniteGroup::from_trusted_table(std::move(flat), k, std::move(marks));
}

} // namespace randgrp::groups
