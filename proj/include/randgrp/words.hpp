#pragma once

#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "randgrp/rng.hpp"

namespace randgrp::words {

/// A letter of the alphabet {x_1^{±1}, ..., x_n^{±1}}, encoded as a nonzero
/// integer in {-n..-1, 1..n}: sign = exponent, magnitude = generator index.
using Letter = int;

/// Letters also carry a dense index in [0, 2n): x_1, x_1^{-1}, x_2, x_2^{-1}, ...
/// This ordering is the canonical one used everywhere (sampling, walk states,
/// Schreier transversals).
inline int letter_index(Letter a) { return 2 * (std::abs(a) - 1) + (a < 0 ? 1 : 0); }
inline Letter letter_from_index(int idx) {
  const int i = idx / 2 + 1;
  return (idx & 1) ? -i : i;
}
inline int inverse_letter_index(int idx) { return idx ^ 1; }

/// A freely reduced word over a rank-n alphabet. Immutable after construction;
/// the empty word (identity) is valid.
class ReducedWord {
public:
  /// Empty word of the given rank.
  explicit ReducedWord(int rank);

  int rank() const { return rank_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }
  Letter letter(std::size_t i) const { return letters_[i]; }

  bool operator==(const ReducedWord& other) const = default;

private:
  ReducedWord(std::vector<Letter> letters, int rank)
      : letters_(std::move(letters)), rank_(rank) {}

  std::vector<Letter> letters_;
  int rank_;

  friend ReducedWord reduce(const std::vector<Letter>&, int);
  friend ReducedWord cyclically_reduce(const ReducedWord&);
  friend ReducedWord concat_reduce(const ReducedWord&, const ReducedWord&);
  friend ReducedWord inverse(const ReducedWord&);
};

/// Freely reduce a letter sequence: cancel every adjacent (a, -a) pair until
/// none remains. Idempotent; length-nonincreasing.
/// Throws InvalidInputError if rank < 2 or a letter is out of range.
ReducedWord reduce(const std::vector<Letter>& letters, int rank);

/// Strip cancelling first/last pairs; the result is conjugate to w.
ReducedWord cyclically_reduce(const ReducedWord& w);

/// Reduced form of a·b. Length parity equals that of len(a)+len(b).
/// Throws InvalidInputError on rank mismatch.
ReducedWord concat_reduce(const ReducedWord& a, const ReducedWord& b);

/// Formal inverse (reverse and negate); reduced whenever w is.
ReducedWord inverse(const ReducedWord& w);

/// |S_l| = 2n·(2n-1)^{l-1} for l ≥ 1, and 1 for l = 0.
mpz_class count_reduced(int n, long l);

/// Exactly uniform sample from S_l: first letter uniform over 2n, each later
/// letter uniform over the 2n-1 letters other than its predecessor's inverse.
ReducedWord sample_reduced(int n, long l, SplitMix64& rng);

/// Space-separated signed integers, e.g. "1 2 -1". Empty word -> "".
std::string to_string(const ReducedWord& w);

/// Parse the serialization above (reducing if the input happens not to be).
ReducedWord parse_word(std::string_view text, int rank);

} // namespace randgrp::words
