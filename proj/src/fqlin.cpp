#include "randgrp/fqlin.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "randgrp/errors.hpp"

namespace randgrp::fqlin {

bool is_prime(std::uint32_t q) {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

void check_prime_modulus(std::uint32_t q) {
  if (q >= (1u << 16))
    throw InvalidInputError("modulus " + std::to_string(q) +
                            " too large (primes below 2^16 only)");
  if (!is_prime(q))
    throw InvalidInputError("modulus " + std::to_string(q) + " is not prime");
}

std::uint32_t fq_inverse(std::uint32_t a, std::uint32_t q) {
  // Fermat: a^(q-2) mod q.
  std::uint64_t base = a % q, result = 1;
  std::uint32_t e = q - 2;
  while (e) {
    if (e & 1) result = result * base % q;
    base = base * base % q;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

FqVector::FqVector(std::uint32_t q, std::size_t dim) : q_(q), e_(dim, 0) {
  check_prime_modulus(q);
}

FqVector::FqVector(std::uint32_t q, std::vector<std::uint32_t> entries)
    : q_(q), e_(std::move(entries)) {
  check_prime_modulus(q);
  for (auto& x : e_) x %= q_;
}

bool FqVector::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](std::uint32_t x) { return x == 0; });
}

void FqVector::add_scaled(const FqVector& other, std::uint32_t c) {
  if (other.dim() != dim() || other.q() != q_)
    throw InvalidInputError("vector shape/modulus mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i)
    e_[i] = static_cast<std::uint32_t>(
        (e_[i] + static_cast<std::uint64_t>(c) * other.e_[i]) % q_);
}

FqMatrix::FqMatrix(std::uint32_t q, std::size_t rows, std::size_t cols)
    : q_(q), rows_(rows), cols_(cols), a_(rows * cols, 0) {
  check_prime_modulus(q);
}

FqMatrix FqMatrix::identity(std::uint32_t q, std::size_t n) {
  FqMatrix m(q, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FqMatrix FqMatrix::from_rows(const std::vector<FqVector>& rows) {
  if (rows.empty()) throw InvalidInputError("from_rows: empty row list");
  FqMatrix m(rows[0].q(), rows.size(), rows[0].dim());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].dim() != m.cols() || rows[r].q() != m.q())
      throw InvalidInputError("from_rows: inconsistent row shapes");
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

FqVector FqMatrix::col(std::size_t c) const {
  FqVector v(q_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

FqVector FqMatrix::apply(const FqVector& v) const {
  if (v.dim() != cols_ || v.q() != q_)
    throw InvalidInputError("apply: dimension/modulus mismatch");
  FqVector out(q_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      acc += static_cast<std::uint64_t>(at(r, c)) * v[c];
      if (acc >= (1ull << 62)) acc %= q_;
    }
    out[r] = static_cast<std::uint32_t>(acc % q_);
  }
  return out;
}

FqMatrix FqMatrix::mul(const FqMatrix& other) const {
  if (other.rows_ != cols_ || other.q_ != q_)
    throw InvalidInputError("mul: dimension/modulus mismatch");
  FqMatrix out(q_, rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < other.cols_; ++c) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < cols_; ++k) {
        acc += static_cast<std::uint64_t>(at(r, k)) * other.at(k, c);
        if (acc >= (1ull << 62)) acc %= q_;
      }
      out.at(r, c) = static_cast<std::uint32_t>(acc % q_);
    }
  return out;
}

int rank(FqMatrix m) {
  const std::uint32_t q = m.q();
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && m.at(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    for (std::size_t k = 0; k < m.cols(); ++k)
      std::swap(m.at(r, k), m.at(pivot, k));
    const std::uint32_t inv = fq_inverse(m.at(r, c), q);
    for (std::size_t k = c; k < m.cols(); ++k)
      m.at(r, k) = static_cast<std::uint32_t>(
          static_cast<std::uint64_t>(m.at(r, k)) * inv % q);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      const std::uint32_t f = m.at(i, c);
      if (f == 0) continue;
      for (std::size_t k = c; k < m.cols(); ++k) {
        std::uint64_t sub = static_cast<std::uint64_t>(f) * m.at(r, k) % q;
        m.at(i, k) = static_cast<std::uint32_t>((m.at(i, k) + q - sub) % q);
      }
    }
    ++r;
  }
  return static_cast<int>(r);
}

bool generates_space(const std::vector<FqVector>& vectors, std::size_t dim) {
  if (vectors.empty()) return dim == 0;
  EchelonBasis basis(vectors[0].q(), dim);
  for (const auto& v : vectors) {
    if (v.dim() != dim)
      throw InvalidInputError("generates_space: vector length mismatch");
    if (v.q() != vectors[0].q())
      throw InvalidInputError("generates_space: modulus mismatch");
    basis.insert(v);
  }
  return basis.rank() == dim;
}

EchelonBasis::EchelonBasis(std::uint32_t q, std::size_t dim)
    : q_(q), dim_(dim), pivot_(dim, -1) {
  check_prime_modulus(q);
}

bool EchelonBasis::insert(FqVector v) {
  if (v.dim() != dim_ || v.q() != q_)
    throw InvalidInputError("EchelonBasis: dimension/modulus mismatch");
  for (std::size_t c = 0; c < dim_; ++c) {
    if (v[c] == 0) continue;
    const int row = pivot_[c];
    if (row < 0) {
      // Normalize the pivot to 1 and clear the row's entries at every later
      // pivot column, then back-substitute into the existing rows, keeping
      // the whole basis in reduced row echelon form (so canonical_key really
      // is canonical for the span).
      const std::uint32_t inv = fq_inverse(v[c], q_);
      for (std::size_t k = 0; k < dim_; ++k)
        v[k] = static_cast<std::uint32_t>(
            static_cast<std::uint64_t>(v[k]) * inv % q_);
      for (std::size_t k = c + 1; k < dim_; ++k) {
        if (v[k] == 0 || pivot_[k] < 0) continue;
        v.add_scaled(rows_[static_cast<std::size_t>(pivot_[k])], q_ - v[k]);
      }
      for (auto& existing : rows_) {
        const std::uint32_t f = existing[c];
        if (f == 0) continue;
        existing.add_scaled(v, q_ - f);
      }
      pivot_[c] = static_cast<int>(rows_.size());
      rows_.push_back(std::move(v));
      return true;
    }
    v.add_scaled(rows_[static_cast<std::size_t>(row)], q_ - v[c]);
  }
  return false;
}

std::vector<std::uint32_t> EchelonBasis::canonical_key() const {
  // Rows are fully reduced; emitting them in pivot-column order is canonical.
  std::vector<std::uint32_t> key;
  key.reserve(rank() * dim_);
  for (std::size_t c = 0; c < dim_; ++c) {
    if (pivot_[c] < 0) continue;
    const auto& row = rows_[static_cast<std::size_t>(pivot_[c])];
    key.insert(key.end(), row.entries().begin(), row.entries().end());
  }
  return key;
}

mpz_class generating_tuple_count(std::uint64_t E_size, int m) {
  if (E_size < 2) throw InvalidInputError("generating_tuple_count: |E| must be >= 2");
  if (m < 1) throw InvalidInputError("generating_tuple_count: m must be >= 1");
  // prod_{j=1..m}(1 - |E|^{-j}) · |E|^{m²} = prod_{j=1..m}(|E|^j - 1) · |E|^{m(m-1)/2}
  mpz_class e = mpz_class(static_cast<unsigned long>(E_size));
  mpz_class result = 1;
  mpz_class epow = 1;
  for (int j = 1; j <= m; ++j) {
    epow *= e;
    result *= epow - 1;
  }
  mpz_class tail;
  mpz_pow_ui(tail.get_mpz_t(), e.get_mpz_t(),
             static_cast<unsigned long>(m) * (m - 1) / 2);
  return result * tail;
}

double generation_probability(std::uint32_t q, int dim, long count) {
  check_prime_modulus(q);
  if (dim < 0 || count < 0)
    throw InvalidInputError("generation_probability: negative argument");
  if (count < dim) return 0.0;
  double p = 1.0;
  for (int i = 0; i < dim; ++i)
    p *= 1.0 - std::pow(static_cast<double>(q), static_cast<double>(i - count));
  return p;
}

namespace {

void check_action_shapes(const std::vector<FqVector>& vectors,
                         const std::vector<FqMatrix>& action) {
  if (action.empty()) throw InvalidInputError("submodule_closure: empty action set");
  const std::size_t dim = action[0].rows();
  const std::uint32_t q = action[0].q();
  for (const auto& a : action)
    if (a.rows() != dim || a.cols() != dim || a.q() != q)
      throw InvalidInputError("submodule_closure: action matrices must be square "
                              "of a common dimension and modulus");
  for (const auto& v : vectors)
    if (v.dim() != dim || v.q() != q)
      throw InvalidInputError("submodule_closure: vector dimension mismatch");
}

} // namespace

std::vector<FqVector> submodule_closure_unchecked(
    const std::vector<FqVector>& vectors, const std::vector<FqMatrix>& action) {
  check_action_shapes(vectors, action);
  const std::size_t dim = action[0].rows();
  const std::uint32_t q = action[0].q();

  EchelonBasis basis(q, dim);
  std::vector<FqVector> worklist;
  for (const auto& v : vectors)
    if (basis.insert(v)) worklist.push_back(v);

  // Apply every action matrix to each new basis member until the rank stops
  // growing; stability of the echelon span under the action is the fixpoint.
  while (!worklist.empty()) {
    FqVector v = std::move(worklist.back());
    worklist.pop_back();
    for (const auto& a : action) {
      FqVector w = a.apply(v);
      if (basis.insert(w)) worklist.push_back(std::move(w));
    }
  }
  return basis.rows();
}

std::vector<FqVector> submodule_closure(const std::vector<FqVector>& vectors,
                                        const std::vector<FqMatrix>& action) {
  check_action_shapes(vectors, action);
  // The supplied matrices must represent a group: closed under products.
  for (const auto& a : action)
    for (const auto& b : action) {
      const FqMatrix p = a.mul(b);
      if (std::find(action.begin(), action.end(), p) == action.end())
        throw InvalidInputError(
            "submodule_closure: action set is not closed under products");
    }
  return submodule_closure_unchecked(vectors, action);
}

} // namespace randgrp::fqlin
