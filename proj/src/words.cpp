#include "randgrp/words.hpp"

#include <sstream>

#include "randgrp/errors.hpp"

namespace randgrp::words {

namespace {

void check_rank(int rank) {
  if (rank < 2)
    throw InvalidInputError("alphabet rank must be at least 2, got " +
                            std::to_string(rank));
}

void check_letter(Letter a, int rank) {
  if (a == 0 || std::abs(a) > rank)
    throw InvalidInputError("letter " + std::to_string(a) +
                            " out of range for rank " + std::to_string(rank));
}

} // namespace

ReducedWord::ReducedWord(int rank) : rank_(rank) { check_rank(rank); }

ReducedWord reduce(const std::vector<Letter>& letters, int rank) {
  check_rank(rank);
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter a : letters) {
    check_letter(a, rank);
    if (!out.empty() && out.back() == -a)
      out.pop_back();
    else
      out.push_back(a);
  }
  return ReducedWord(std::move(out), rank);
}

ReducedWord cyclically_reduce(const ReducedWord& w) {
  std::size_t lo = 0, hi = w.length();
  const auto& ls = w.letters();
  while (hi - lo >= 2 && ls[lo] == -ls[hi - 1]) {
    ++lo;
    --hi;
  }
  return ReducedWord(std::vector<Letter>(ls.begin() + lo, ls.begin() + hi),
                     w.rank());
}

ReducedWord concat_reduce(const ReducedWord& a, const ReducedWord& b) {
  if (a.rank() != b.rank())
    throw InvalidInputError("concat_reduce: rank mismatch (" +
                            std::to_string(a.rank()) + " vs " +
                            std::to_string(b.rank()) + ")");
  std::vector<Letter> out = a.letters();
  out.reserve(a.length() + b.length());
  for (Letter x : b.letters()) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return ReducedWord(std::move(out), a.rank());
}

ReducedWord inverse(const ReducedWord& w) {
  std::vector<Letter> out(w.length());
  for (std::size_t i = 0; i < w.length(); ++i)
    out[i] = -w.letter(w.length() - 1 - i);
  return ReducedWord(std::move(out), w.rank());
}

mpz_class count_reduced(int n, long l) {
  check_rank(n);
  if (l < 0) throw InvalidInputError("word length must be nonnegative");
  if (l == 0) return 1;
  mpz_class count = 2 * n;
  mpz_class base = 2 * n - 1;
  mpz_class pw;
  mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(l - 1));
  return count * pw;
}

ReducedWord sample_reduced(int n, long l, SplitMix64& rng) {
  check_rank(n);
  if (l < 0) throw InvalidInputError("word length must be nonnegative");
  std::vector<Letter> out;
  out.reserve(static_cast<std::size_t>(l));
  if (l > 0) {
    int idx = static_cast<int>(rng.next_below(2 * n));
    out.push_back(letter_from_index(idx));
    for (long t = 1; t < l; ++t) {
      const int forbidden = inverse_letter_index(letter_index(out.back()));
      int r = static_cast<int>(rng.next_below(2 * n - 1));
      if (r >= forbidden) ++r; // skip the predecessor's inverse
      out.push_back(letter_from_index(r));
    }
  }
  // No adjacent inverse pair can occur by construction.
  return reduce(out, n);
}

std::string to_string(const ReducedWord& w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.length(); ++i) {
    if (i) os << ' ';
    os << w.letter(i);
  }
  return os.str();
}

ReducedWord parse_word(std::string_view text, int rank) {
  std::istringstream is{std::string(text)};
  std::vector<Letter> letters;
  long v;
  while (is >> v) letters.push_back(static_cast<Letter>(v));
  if (!is.eof())
    throw InvalidInputError("word parse error: expected signed integers");
  return reduce(letters, rank);
}

} // namespace randgrp::words
