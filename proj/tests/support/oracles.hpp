#pragma once

#include <vector>

#include <gmpxx.h>

#include "randgrp/fqlin.hpp"
#include "randgrp/groups.hpp"
#include "randgrp/schreier.hpp"
#include "randgrp/walk.hpp"
#include "randgrp/words.hpp"

// Independent oracles used to freeze expected values. Deliberately naive:
// exhaustive enumeration, cofactor determinants, boolean matrix powers,
// free-group identities. None of them share code with the implementation
// paths they check.
namespace randgrp::testsupport {

/// All freely reduced words of length l over rank n, by direct enumeration.
std::vector<words::ReducedWord> all_reduced_words(int n, long l);

/// Law of evaluate(uniform word of length l) by enumerating all of S_l and
/// weighting each word by 1/|S_l|.
std::vector<double> summed_law_by_enumeration(const groups::MarkedFiniteGroup& g,
                                              long l);

/// gcd of the lengths <= max_len of closed walks through state 0 of the chain
/// digraph, by boolean adjacency-matrix powers. 0 if no loop was found.
long period_by_loop_gcd(const walk::WalkChain& chain, int max_len);

/// Rank of a matrix of size <= 3 as the largest k with a nonzero k x k minor
/// (cofactor determinants mod q).
int rank_by_minors(const fqlin::FqMatrix& m);

/// |{m-tuples of (F_E^m) generating F_E^m}| by enumerating all (E^m)^m tuples
/// and Gauss-testing each; E must be prime here.
mpz_class brute_force_generating_tuples(std::uint32_t E, int m);

/// Number of spanning `count`-tuples of vectors in F_q^dim, by enumeration.
long brute_force_spanning_tuples(std::uint32_t q, int dim, int count);

/// Reidemeister-Schreier rewriting oracle: express w (which must lie in
/// ker f) as the product of explicit Schreier-generator words along its coset
/// path, verify that the concatenation freely reduces back to w, and return
/// the per-column letter counts mod q.
fqlin::FqVector rs_rewrite_oracle(const schreier::SchreierSystem& sys,
                                  const words::ReducedWord& w);

/// All index-2 subgroups (as member bitmaps) of a group of small order.
std::vector<std::vector<int>> index2_subgroups_brute_force(
    const groups::MarkedFiniteGroup& g);

} // namespace randgrp::testsupport
