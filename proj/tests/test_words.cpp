#include <doctest.h>

#include <map>

#include "randgrp/errors.hpp"
#include "randgrp/rng.hpp"
#include "randgrp/words.hpp"
#include "support/oracles.hpp"

using namespace randgrp;
using words::ReducedWord;

namespace {

ReducedWord w(std::vector<int> letters, int rank = 2) {
  return words::reduce(letters, rank);
}

std::vector<int> random_letters(SplitMix64& rng, int n, int len) {
  std::vector<int> out;
  for (int i = 0; i < len; ++i)
    out.push_back(words::letter_from_index(static_cast<int>(rng.next_below(2 * n))));
  return out;
}

} // namespace

TEST_SUITE("words") {

TEST_CASE("reduce cancels adjacent inverse pairs") {
  CHECK(w({1, -1}).empty());
  CHECK(w({1, 2, -2, -1}).empty());
  CHECK(w({1, 2, -1}).letters() == std::vector<int>{1, 2, -1});
}

TEST_CASE("reduce rejects bad input") {
  CHECK_THROWS_AS(words::reduce({1}, 1), InvalidInputError);
  CHECK_THROWS_AS(words::reduce({3}, 2), InvalidInputError);
  CHECK_THROWS_AS(words::reduce({0}, 2), InvalidInputError);
}

TEST_CASE("reduce is idempotent, length-nonincreasing, leaves no inverse pair") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(3));
    const auto letters = random_letters(rng, n, static_cast<int>(rng.next_below(30)));
    const ReducedWord r = words::reduce(letters, n);
    CHECK(r.length() <= letters.size());
    for (std::size_t i = 0; i + 1 < r.length(); ++i)
      CHECK(r.letter(i) != -r.letter(i + 1));
    CHECK(words::reduce(r.letters(), n) == r);
  }
}

TEST_CASE("cyclic reduction strips conjugating letters") {
  CHECK(words::cyclically_reduce(w({1, 2, -1})).letters() == std::vector<int>{2});
  CHECK(words::cyclically_reduce(w({1, 2})).letters() == std::vector<int>{1, 2});
  CHECK(words::cyclically_reduce(w({1, 2, -2, -1})).empty());
}

TEST_CASE("concat_reduce") {
  CHECK(words::concat_reduce(w({1, 2}), w({-2, 1})).letters() ==
        std::vector<int>{1, 1});
  CHECK(words::concat_reduce(w({1}), w({-1})).empty());
  CHECK(words::concat_reduce(w({1, 2}), w({2, 1})).letters() ==
        std::vector<int>{1, 2, 2, 1});
  CHECK_THROWS_AS(words::concat_reduce(w({1}), words::reduce({1}, 3)),
                  InvalidInputError);
}

TEST_CASE("concat_reduce equals reduce of the concatenation; parity preserved") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(2));
    auto la = random_letters(rng, n, static_cast<int>(rng.next_below(20)));
    auto lb = random_letters(rng, n, static_cast<int>(rng.next_below(20)));
    const ReducedWord a = words::reduce(la, n), b = words::reduce(lb, n);
    std::vector<int> joined = a.letters();
    joined.insert(joined.end(), b.letters().begin(), b.letters().end());
    const ReducedWord c = words::concat_reduce(a, b);
    CHECK(c == words::reduce(joined, n));
    CHECK((a.length() + b.length()) % 2 == c.length() % 2);
  }
}

TEST_CASE("inverse is a group inverse") {
  SplitMix64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const ReducedWord a = words::sample_reduced(2, 12, rng);
    CHECK(words::concat_reduce(a, words::inverse(a)).empty());
  }
}

TEST_CASE("count_reduced matches 2n(2n-1)^(l-1) and exhaustive enumeration") {
  CHECK(words::count_reduced(2, 1) == 4);
  CHECK(words::count_reduced(2, 2) == 12);
  CHECK(words::count_reduced(3, 3) == 150);
  CHECK(words::count_reduced(2, 0) == 1);
  CHECK_THROWS_AS(words::count_reduced(1, 3), InvalidInputError);
  for (int n = 2; n <= 3; ++n)
    for (long l = 1; l <= 6; ++l)
      CHECK(words::count_reduced(n, l) ==
            mpz_class(static_cast<unsigned long>(
                testsupport::all_reduced_words(n, l).size())));
  // Recurrence |S_{l+1}| = (2n-1)|S_l| holds far past native-integer range.
  for (int n = 2; n <= 4; ++n)
    for (long l : {1L, 10L, 60L, 200L})
      CHECK(words::count_reduced(n, l + 1) ==
            words::count_reduced(n, l) * (2 * n - 1));
}

TEST_CASE("sampled words are reduced of exact length") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const ReducedWord s = words::sample_reduced(3, 25, rng);
    CHECK(s.length() == 25);
    CHECK(words::reduce(s.letters(), 3) == s);
  }
}

TEST_CASE("sampling is uniform over S_l (chi-square, alpha = 0.001)") {
  // Critical values of chi-square at 0.999 for df = |S_l| - 1.
  const std::map<long, double> critical = {{3, 16.27}, {11, 31.27}, {35, 66.62}};
  SplitMix64 rng(20240001);
  for (long l = 1; l <= 3; ++l) {
    const auto all = testsupport::all_reduced_words(2, l);
    std::map<std::string, long> counts;
    const long draws = 100000;
    for (long i = 0; i < draws; ++i)
      ++counts[words::to_string(words::sample_reduced(2, l, rng))];
    CHECK(counts.size() == all.size());
    const double expected = static_cast<double>(draws) / all.size();
    double chi2 = 0;
    for (const auto& [_, c] : counts) {
      const double d = c - expected;
      chi2 += d * d / expected;
    }
    CHECK(chi2 < critical.at(static_cast<long>(all.size()) - 1));
  }
}

TEST_CASE("serialization round trip") {
  CHECK(words::to_string(w({1, 2, -1})) == "1 2 -1");
  CHECK(words::to_string(ReducedWord(2)) == "");
  SplitMix64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const ReducedWord a = words::sample_reduced(3, 10, rng);
    CHECK(words::parse_word(words::to_string(a), 3) == a);
  }
  CHECK_THROWS_AS(words::parse_word("1 x 2", 2), InvalidInputError);
}

} // TEST_SUITE
