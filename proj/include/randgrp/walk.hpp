#pragma once

#include <memory>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "randgrp/groups.hpp"

namespace randgrp::walk {

/// Transition/initial weights of a non-backtracking walk with n generators.
/// alpha[b][a] is the probability of appending letter a (dense letter index)
/// after letter b; the entry with a = inverse(b) must be zero and every row
/// must sum to 1 over its 2n-1 allowed entries. beta[a] is the initial mass
/// on letter a.
struct WalkWeights {
  std::vector<double> beta;
  std::vector<std::vector<double>> alpha;

  static WalkWeights unbiased(int n);
};

/// The walk's state space is Omega = G x {letters}, indexed g*2n + a.
/// Transitions go from (h, b) to (g, a) exactly when g = h·x_a and
/// a != inverse(b); the initial law puts beta[a] on (x_a, a).
/// Immutable after construction.
class WalkChain {
public:
  explicit WalkChain(const groups::MarkedFiniteGroup& g);
  WalkChain(const groups::MarkedFiniteGroup& g, WalkWeights weights);

  const groups::MarkedFiniteGroup& group() const { return *group_; }
  int n() const { return n_; }
  int num_letters() const { return 2 * n_; }
  std::size_t num_states() const {
    return static_cast<std::size_t>(group_->order()) * num_letters();
  }
  bool unbiased() const { return unbiased_; }
  const WalkWeights& weights() const { return weights_; }

  std::size_t state(int g, int letter_idx) const {
    return static_cast<std::size_t>(g) * num_letters() + letter_idx;
  }
  int state_group(std::size_t s) const { return static_cast<int>(s) / num_letters(); }
  int state_letter(std::size_t s) const { return static_cast<int>(s) % num_letters(); }

  /// Image in G of the single letter with dense index a.
  int letter_elem(int a) const { return letter_elem_[static_cast<std::size_t>(a)]; }
  /// g · letter_elem(a)^{-1}: the group part of the predecessor along letter a.
  int pred_elem(int a, int g) const {
    return pred_elem_[static_cast<std::size_t>(a)][static_cast<std::size_t>(g)];
  }

private:
  void init(const groups::MarkedFiniteGroup& g);

  std::shared_ptr<const groups::MarkedFiniteGroup> group_;
  int n_;
  WalkWeights weights_;
  bool unbiased_;
  std::vector<int> letter_elem_;
  std::vector<std::vector<int>> pred_elem_;
};

/// The law of the chain after l steps (step 1 = initial law), indexed by state.
struct StepDistribution {
  long step;
  std::vector<double> mass;
};

/// True iff the marks generate G (for finite G the free-generation exclusion
/// is automatic; the trivial group counts as generated).
bool lemma1_criterion(const groups::MarkedFiniteGroup& g);

/// True iff the state digraph is strongly connected. Agrees with
/// lemma1_criterion on every finite input.
bool is_irreducible(const WalkChain& chain);

/// Period of an irreducible chain: gcd over all edges (u,v) of
/// level(u)+1-level(v) for a breadth-first level map. Always 1 or 2 here.
/// Throws PreconditionError on a reducible chain.
int period(const WalkChain& chain);

/// For an irreducible period-2 chain, the unique index-2 subgroup containing
/// no mark (the even-word subgroup). Throws PreconditionError otherwise.
groups::Subgroup index2_subgroup(const WalkChain& chain);

// One step of distribution evolution: next[(g,a)] = sum over allowed
// predecessor letters b of alpha[b][a] * cur[(g·x_a^{-1}, b)]. The serial and
// OpenMP kernels accumulate in the same order, so their outputs are
// bit-identical.
void step_serial(const WalkChain& chain, const std::vector<double>& cur,
                 std::vector<double>& next);
void step_parallel(const WalkChain& chain, const std::vector<double>& cur,
                   std::vector<double>& next);

/// Incremental distribution evolution starting from the initial law (step 1).
class DistributionEvolver {
public:
  explicit DistributionEvolver(const WalkChain& chain);

  long step() const { return step_; }
  const std::vector<double>& mass() const { return cur_; }
  void advance();
  void advance_to(long l);

  /// Marginal over the letter coordinate at the current step.
  std::vector<double> summed() const;

private:
  const WalkChain* chain_;
  long step_;
  std::vector<double> cur_, next_;
};

/// Exact law at step l (l >= 1).
StepDistribution distribution_at(const WalkChain& chain, long l);

/// Group marginal of distribution_at: the law of the image of a uniform
/// random reduced word of length l.
std::vector<double> summed_distribution(const WalkChain& chain, long l);

/// Exact-rational evolution of the unbiased chain, for validating the float
/// path. Requires |Omega| <= 200 and l <= 30 and an unbiased chain.
std::vector<mpq_class> summed_distribution_exact(const WalkChain& chain, long l);

/// (1/2)·sum_{s in support}|dist(s) - 1/|support|| + (1/2)·sum_{s not in support} dist(s).
double tv_to_uniform(const std::vector<double>& dist, const std::vector<int>& support);

/// Smallest step counts reaching TV <= tol against the limiting uniform law;
/// per parity for period-2 chains. Unset optionals mean "not mixed by max_l".
struct MixingResult {
  int period = 1;
  std::optional<long> length;      // period 1
  std::optional<long> even_length; // period 2: target uniform on H
  std::optional<long> odd_length;  // period 2: target uniform on G \ H
};

MixingResult mixing_length(const WalkChain& chain, double tol, long max_l);

} // namespace randgrp::walk
