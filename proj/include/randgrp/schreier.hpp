#pragma once

#include <cstdint>
#include <vector>

#include "randgrp/fqlin.hpp"
#include "randgrp/groups.hpp"
#include "randgrp/words.hpp"

namespace randgrp::schreier {

/// Image of a word in the split extension K' ⋊ J: a vector in F_q^D together
/// with the element f(w) of J.
struct CrossedImage {
  fqlin::FqVector vector;
  int jpart;
};

/// Bounds on the minimal number of module generators of K' over J.
/// lower == upper means the value is certified exact.
struct GeneratorBounds {
  int lower;
  int upper;
  bool certified() const { return lower == upper; }
};

/// Coset machinery for K = ker(f: F(x_1..x_n) -> J), where J is a finite
/// group marked with the images f(x_i) (which must generate J).
///
/// Cosets of K are identified with elements of J. A breadth-first transversal
/// (letters in the order x_1, x_1^{-1}, x_2, ...) determines, per coset j and
/// generator index i, a Schreier generator t_j x_i (t_{j f(x_i)})^{-1}; the
/// D = 1 + |J|(n-1) non-tree pairs freely generate K and index the basis of
/// K' = H_1(K; F_q). J acts on K' by conjugation.
///
/// crossed_evaluate maps words into K' ⋊ J. On kernel words it is exactly the
/// Reidemeister-Schreier rewriting abelianized mod q; on arbitrary words the
/// raw rewriting is offset by the transversal cocycle, which is a coboundary
/// because gcd(q, |J|) = 1, so adding the averaged splitting correction makes
/// the crossed-homomorphism law v(uv) = v(u) + f(u)·v(v) hold exactly.
class SchreierSystem {
public:
  /// Throws InvalidInputError if the marks do not generate J, and
  /// PreconditionError unless q is a prime exceeding |J|.
  static SchreierSystem build(const groups::MarkedFiniteGroup& J, std::uint32_t q);

  int n() const { return j_.num_marks(); }
  std::uint32_t q() const { return q_; }
  int D() const { return D_; }
  const groups::MarkedFiniteGroup& jgroup() const { return j_; }

  const words::ReducedWord& transversal(int j) const {
    return transversal_[static_cast<std::size_t>(j)];
  }
  /// Cosets in breadth-first discovery order (identity first).
  const std::vector<int>& bfs_order() const { return bfs_order_; }
  /// Column of the Schreier generator for (coset, generator index), or -1 for
  /// a spanning-tree pair.
  int sgen_column(int coset, int gen) const {
    return sgen_col_[static_cast<std::size_t>(coset) * n() + gen];
  }

  const fqlin::FqMatrix& action(int j) const {
    return action_[static_cast<std::size_t>(j)];
  }
  const std::vector<fqlin::FqMatrix>& actions() const { return action_; }

  CrossedImage crossed_evaluate(const words::ReducedWord& w) const;

  /// True iff the vectors generate K' as a J-module (submodule closure spans
  /// F_q^D). False is exactly the event that some extension of J by an
  /// irreducible F_q[J]-module admits a surjection from the presented group
  /// carrying f: by semisimplicity a proper submodule exists iff some
  /// isotypic component fails to be generated.
  bool module_generates(const std::vector<fqlin::FqVector>& relator_vectors) const;

  /// lower = ceil(D/|J|); upper from greedily pruning the standard basis.
  /// Exhaustive search certifies exactness while q^{D·m} <= 10^7.
  GeneratorBounds min_module_generators() const;

  /// The group K' ⋊ J of order q^D·|J| with multiplication
  /// (v1,j1)(v2,j2) = (v1 + action(j1)v2, j1j2), marked with the images of the
  /// generators, so that evaluate agrees with crossed_evaluate componentwise.
  groups::MarkedFiniteGroup build_split_extension(
      std::size_t order_cap = groups::MarkedFiniteGroup::kDefaultOrderCap) const;

  // Element layout of the split extension: index = v_index·|J| + j with
  // v_index = sum_t v[t]·q^t (little-endian digits).
  long split_order() const;
  long split_element_index(const fqlin::FqVector& v, int j) const;
  fqlin::FqVector split_vector_of(long element_index) const;
  int split_jpart_of(long element_index) const;

  /// Raw coset-walk rewriting (no splitting correction): the class of
  /// w·t_{f(w)}^{-1} in K'. Exposed for oracles and diagnostics.
  CrossedImage rewrite_raw(const std::vector<words::Letter>& letters) const;

private:
  SchreierSystem(groups::MarkedFiniteGroup j, std::uint32_t q);

  groups::MarkedFiniteGroup j_;
  std::uint32_t q_;
  int D_;
  std::vector<words::ReducedWord> transversal_;
  std::vector<int> bfs_order_;
  std::vector<int> sgen_col_; // |J| x n, -1 on tree pairs
  std::vector<fqlin::FqMatrix> action_;
  std::vector<fqlin::FqVector> psi_; // splitting correction, psi_[identity] = 0
};

} // namespace randgrp::schreier
