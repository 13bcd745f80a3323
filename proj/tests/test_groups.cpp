#include <doctest.h>

#include "randgrp/errors.hpp"
#include "randgrp/groups.hpp"
#include "randgrp/rng.hpp"
#include "randgrp/words.hpp"
#include "support/group_catalog.hpp"

using namespace randgrp;
using groups::MarkedFiniteGroup;

TEST_SUITE("groups") {

TEST_CASE("from_mul_table accepts valid tables") {
  const auto z2 = MarkedFiniteGroup::from_mul_table({{0, 1}, {1, 0}}, {1, 1});
  CHECK(z2.order() == 2);
  CHECK(z2.inv(1) == 1);
  const auto z3 =
      MarkedFiniteGroup::from_mul_table({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, {1, 0});
  CHECK(z3.order() == 3);
  CHECK(z3.inv(1) == 2);
}

TEST_CASE("from_mul_table reports structure violations") {
  CHECK_THROWS_AS(MarkedFiniteGroup::from_mul_table({{0, 1}, {1, 1}}, {1, 1}),
                  StructureError); // no inverse for 1
  // Two-sided inverses present, identity fine, but (2*2)*1 != 2*(2*1).
  CHECK_THROWS_AS(
      MarkedFiniteGroup::from_mul_table({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}}, {1, 2}),
      StructureError);
  CHECK_THROWS_AS(MarkedFiniteGroup::from_mul_table({{1, 0}, {0, 1}}, {1, 1}),
                  StructureError); // index 0 is not the identity
  CHECK_THROWS_AS(MarkedFiniteGroup::from_mul_table({{0, 1}, {1, 0}}, {1}),
                  InvalidInputError); // fewer than 2 marks
}

TEST_CASE("from_permutations closes and orders canonically") {
  const auto s3 = MarkedFiniteGroup::from_permutations({{1, 0, 2}, {1, 2, 0}});
  CHECK(s3.order() == 6);
  CHECK(s3.num_marks() == 2);

  const auto z2 = MarkedFiniteGroup::from_permutations({{1, 0}, {1, 0}});
  CHECK(z2.order() == 2);
  CHECK(z2.mark(0) == z2.mark(1));

  const auto klein =
      MarkedFiniteGroup::from_permutations({{1, 0, 3, 2}, {2, 3, 0, 1}});
  CHECK(klein.order() == 4);
  for (int g = 0; g < 4; ++g) CHECK(klein.mul(g, g) == 0);

  CHECK_THROWS_AS(MarkedFiniteGroup::from_permutations({{0, 0, 1}}),
                  InvalidInputError);
  CHECK_THROWS_AS(MarkedFiniteGroup::from_permutations({{1, 2, 3, 4, 0}}, 3),
                  CapacityError); // 5-cycle exceeds a cap of 3
}

TEST_CASE("evaluate words against marks") {
  const auto z3 = groups::cyclic(3, {1, 0});
  CHECK(evaluate(z3, words::reduce({1, 1, 2}, 2)) == 2);
  CHECK(evaluate(z3, words::ReducedWord(2)) == 0);
  CHECK_THROWS_AS(evaluate(z3, words::ReducedWord(3)), InvalidInputError);

  // S_3 with marks (0 1) and (0 1 2): x1 x2 x1^{-1} is a 3-cycle.
  const auto s3 = MarkedFiniteGroup::from_permutations({{1, 0, 2}, {1, 2, 0}});
  const int conj = evaluate(s3, words::reduce({1, 2, -1}, 2));
  CHECK(conj != 0);
  CHECK(s3.mul(conj, s3.mul(conj, conj)) == 0); // order 3
  // The commutator witnesses non-commutativity.
  CHECK(evaluate(s3, words::reduce({1, 2, -1, -2}, 2)) != 0);
}

TEST_CASE("evaluate is a homomorphism on reduced words") {
  SplitMix64 rng(41);
  const auto s3 = MarkedFiniteGroup::from_permutations({{1, 0, 2}, {1, 2, 0}});
  const auto z6 = groups::cyclic(6, {1, 3});
  for (const auto& g : {s3, z6}) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto a = words::sample_reduced(2, rng.next_below(10), rng);
      const auto b = words::sample_reduced(2, rng.next_below(10), rng);
      CHECK(evaluate(g, words::concat_reduce(a, b)) ==
            g.mul(evaluate(g, a), evaluate(g, b)));
    }
  }
}

TEST_CASE("subgroup_closure") {
  const auto z4 = groups::cyclic(4, {1, 1});
  CHECK(subgroup_closure(z4, {2}).members() == std::vector<int>{0, 2});
  CHECK(subgroup_closure(z4, {1}).size() == 4);
  CHECK(subgroup_closure(z4, {}).members() == std::vector<int>{0});

  const auto s3 = MarkedFiniteGroup::from_permutations({{1, 0, 2}, {1, 2, 0}});
  CHECK(subgroup_closure(s3, {s3.mark(1)}).size() == 3);
}

TEST_CASE("even_subgroup") {
  CHECK(even_subgroup(groups::cyclic(2, {1, 1})).members() == std::vector<int>{0});
  CHECK(even_subgroup(groups::cyclic(3, {1, 0})).size() == 3);
  CHECK(even_subgroup(groups::cyclic(4, {1, 1})).members() ==
        std::vector<int>{0, 2});
}

TEST_CASE("even subgroup has index 1 or 2 in the subgroup of the marks") {
  SplitMix64 rng(43);
  for (const auto& entry : testsupport::small_group_catalog(8)) {
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<int> marks{static_cast<int>(rng.next_below(entry.order)),
                             static_cast<int>(rng.next_below(entry.order))};
      const auto g = entry.make(marks);
      const auto generated = subgroup_closure(g, g.marks());
      const auto even = even_subgroup(g);
      const std::size_t index = generated.size() / even.size();
      CHECK(generated.size() % even.size() == 0);
      CHECK((index == 1 || index == 2));
      if (index == 2)
        for (int m : g.marks()) CHECK_FALSE(even.contains(m));
    }
  }
}

TEST_CASE("catalog groups are valid under full validation") {
  // Re-validate every catalog table through the untrusted path.
  for (const auto& entry : testsupport::small_group_catalog(8)) {
    const auto g = entry.make({0, 0});
    std::vector<std::vector<int>> table(
        static_cast<std::size_t>(g.order()),
        std::vector<int>(static_cast<std::size_t>(g.order())));
    for (int a = 0; a < g.order(); ++a)
      for (int b = 0; b < g.order(); ++b)
        table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = g.mul(a, b);
    CHECK_NOTHROW(MarkedFiniteGroup::from_mul_table(table, {0, 0}));
    CHECK(g.order() == entry.order);
  }
}

TEST_CASE("quaternion and dihedral sanity") {
  const auto q8 = groups::quaternion8({2, 4}); // marks i, j
  CHECK(q8.order() == 8);
  const int i = 2, j = 4;
  CHECK(q8.mul(i, i) == 1);            // i^2 = -1
  CHECK(q8.mul(i, j) != q8.mul(j, i)); // ij = k, ji = -k
  const auto d4 = groups::dihedral(4, {2, 1});
  CHECK(d4.order() == 8);
  CHECK(d4.mul(1, 1) == 0); // reflection is an involution
}

} // TEST_SUITE
