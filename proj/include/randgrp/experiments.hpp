#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "randgrp/groups.hpp"
#include "randgrp/rng.hpp"
#include "randgrp/schreier.hpp"
#include "randgrp/words.hpp"

namespace randgrp::experiments {

/// Parameters of a surjection-probability experiment. J carries the f-images
/// as its marks; relators are rho independent uniform reduced words of length
/// l, repetitions allowed.
struct ExperimentConfig {
  groups::MarkedFiniteGroup J;
  int n = 2;
  std::uint32_t q = 3;
  int rho = 1;
  long l_min = 1;
  long l_max = 1;
  long l_step = 1;
  long trials = 10000;
  std::uint64_t seed = 0;
};

/// Throws InvalidInputError on out-of-range fields.
void validate(const ExperimentConfig& cfg);

struct EstimateResult {
  double estimate = 0;
  double half_width = 0; // 1.96·sqrt(p(1-p)/trials)
  long trials = 0;
  long events = 0;
  long relators_in_kernel = 0; // across all trials and relator slots
  long relators_total = 0;
};

/// rho independent uniform draws from S_l.
std::vector<words::ReducedWord> sample_presentation(int n, long l, int rho,
                                                    SplitMix64& rng);

/// Monte-Carlo estimate of P(all rho relators lie in K and their rewriting
/// vectors fail to generate K' as a J-module) — the probability that the
/// random presentation admits a surjection onto some extension of J by an
/// irreducible F_q[J]-module, carrying f. Trials run in parallel with
/// counter-derived per-trial streams, so the result is independent of thread
/// count and bit-identical to the serial path.
EstimateResult estimate_surjection_probability(const schreier::SchreierSystem& sys,
                                               const ExperimentConfig& cfg, long l);

/// Serial reference implementation of the same estimator (identical output).
EstimateResult estimate_surjection_probability_serial(
    const schreier::SchreierSystem& sys, const ExperimentConfig& cfg, long l);

/// Exact value of the same probability: evolve the walk on the split
/// extension H to step l, restrict to the kernel fiber, and sum the product
/// masses of all rho-tuples whose vectors fail module generation.
/// Requires q^D·|J| <= group_cap and (q^D)^rho <= tuple_cap.
double exact_surjection_probability(
    const schreier::SchreierSystem& sys, int rho, long l,
    std::size_t group_cap = groups::MarkedFiniteGroup::kDefaultOrderCap,
    long tuple_cap = 10000000);

/// (1 - (1-eps)^m · prod_{j=1..m}(1 - |E|^{-j})) · (factor/|J|)^m, with
/// factor = 2+2eps as stated, or 1+eps for the aperiodic proof variant.
double lemma_bound(double epsilon, int m, std::uint64_t E_size, int J_size,
                   bool stated);

/// Upper bound M·n on the relator count needed for index-M kernels.
long c_of_M(long M, int n);

struct SweepRow {
  long l;
  int rho;
  std::uint32_t q;
  double estimate;
  double ci;
  std::optional<double> exact; // empty when the exact path exceeds its caps
  double bound;
  int parity;
  double epsilon; // measured from the walk on H at this l
};

/// One row per l in the configured range. epsilon is computed exactly from
/// the walk on H (max per-element relative deviation over the step-l support
/// and over the kernel fiber), and the bound column is the stated lemma bound
/// at the certified-or-upper minimal generator count.
std::vector<SweepRow> sweep(const ExperimentConfig& cfg);

} // namespace randgrp::experiments
