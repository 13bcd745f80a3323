#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace randgrp::fqlin {

/// Trial division up to sqrt(q). Primality is cheap at the scales used here
/// (q < 2^16 so every product fits a 64-bit word before reduction).
bool is_prime(std::uint32_t q);

/// Throws InvalidInputError unless q is a prime below 2^16.
void check_prime_modulus(std::uint32_t q);

std::uint32_t fq_inverse(std::uint32_t a, std::uint32_t q);

/// Dense vector of residues mod a prime q.
class FqVector {
public:
  FqVector(std::uint32_t q, std::size_t dim);
  FqVector(std::uint32_t q, std::vector<std::uint32_t> entries);

  std::uint32_t q() const { return q_; }
  std::size_t dim() const { return e_.size(); }
  std::uint32_t operator[](std::size_t i) const { return e_[i]; }
  std::uint32_t& operator[](std::size_t i) { return e_[i]; }
  const std::vector<std::uint32_t>& entries() const { return e_; }
  bool is_zero() const;

  void add_scaled(const FqVector& other, std::uint32_t c); // *this += c*other
  bool operator==(const FqVector&) const = default;

private:
  std::uint32_t q_;
  std::vector<std::uint32_t> e_;
};

/// Dense row-major matrix of residues mod a prime q.
class FqMatrix {
public:
  FqMatrix(std::uint32_t q, std::size_t rows, std::size_t cols);

  static FqMatrix identity(std::uint32_t q, std::size_t n);
  static FqMatrix from_rows(const std::vector<FqVector>& rows);

  std::uint32_t q() const { return q_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  std::uint32_t& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }

  FqVector col(std::size_t c) const;
  FqVector apply(const FqVector& v) const; // matrix * column vector
  FqMatrix mul(const FqMatrix& other) const;
  bool operator==(const FqMatrix&) const = default;

private:
  std::uint32_t q_;
  std::size_t rows_, cols_;
  std::vector<std::uint32_t> a_;
};

/// Row rank by Gaussian elimination (first nonzero pivot per column).
int rank(FqMatrix m);

/// True iff the vectors span F_q^dim. Throws on length/modulus mismatch.
bool generates_space(const std::vector<FqVector>& vectors, std::size_t dim);

/// Incremental row-echelon basis; insert() reduces against existing pivots
/// and reports whether the rank grew. Used by every span/closure test.
class EchelonBasis {
public:
  EchelonBasis(std::uint32_t q, std::size_t dim);

  bool insert(FqVector v);
  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<FqVector>& rows() const { return rows_; }

  /// Reduced row echelon form with rows in pivot order: a canonical key for
  /// the subspace spanned.
  std::vector<std::uint32_t> canonical_key() const;

private:
  std::uint32_t q_;
  std::size_t dim_;
  std::vector<FqVector> rows_; // echelon rows, pivot columns strictly increasing
  std::vector<int> pivot_;     // pivot_[col] = row index or -1
};

/// |{m-tuples of E^m generating E^m over J}| = prod_{j=1..m}(1 - |E|^{-j}) · |E|^{m²},
/// returned exactly (the product is integral).
mpz_class generating_tuple_count(std::uint64_t E_size, int m);

/// Probability that `count` i.i.d. uniform vectors of F_q^dim span it:
/// 0 if count < dim, else prod_{i=0}^{dim-1}(1 - q^{i-count}).
double generation_probability(std::uint32_t q, int dim, long count);

/// Basis of the smallest subspace containing `vectors` and stable under every
/// matrix in `action`. Validates that the action set is closed under products
/// (it must represent a group). Throws InvalidInputError on dimension mismatch.
std::vector<FqVector> submodule_closure(const std::vector<FqVector>& vectors,
                                        const std::vector<FqMatrix>& action);

/// Same, without the action-set validation; for callers that already hold a
/// validated action (hot paths).
std::vector<FqVector> submodule_closure_unchecked(
    const std::vector<FqVector>& vectors, const std::vector<FqMatrix>& action);

} // namespace randgrp::fqlin
