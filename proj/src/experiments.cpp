#include "randgrp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "randgrp/errors.hpp"
#include "randgrp/fqlin.hpp"
#include "randgrp/walk.hpp"

namespace randgrp::experiments {

using fqlin::EchelonBasis;
using fqlin::FqMatrix;
using fqlin::FqVector;
using schreier::SchreierSystem;
using words::ReducedWord;

void validate(const ExperimentConfig& cfg) {
  if (cfg.n < 2) throw InvalidInputError("config: n must be >= 2");
  if (cfg.J.num_marks() != cfg.n)
    throw InvalidInputError("config: J must carry exactly n f-images as marks");
  if (cfg.rho < 0) throw InvalidInputError("config: rho must be nonnegative");
  if (cfg.trials < 1) throw InvalidInputError("config: trials must be >= 1");
  if (cfg.l_min < 1 || cfg.l_max < cfg.l_min || cfg.l_step < 1)
    throw InvalidInputError("config: need 1 <= l_min <= l_max and l_step >= 1");
  fqlin::check_prime_modulus(cfg.q);
  if (cfg.q <= static_cast<std::uint32_t>(cfg.J.order()))
    throw InvalidInputError("config: q must exceed |J|");
}

std::vector<ReducedWord> sample_presentation(int n, long l, int rho,
                                             SplitMix64& rng) {
  std::vector<ReducedWord> out;
  out.reserve(static_cast<std::size_t>(rho));
  for (int r = 0; r < rho; ++r) out.push_back(words::sample_reduced(n, l, rng));
  return out;
}

namespace {

constexpr double kZ95 = 1.96;

std::uint64_t trial_stream(long l, long trial) {
  return (static_cast<std::uint64_t>(l) << 32) ^ static_cast<std::uint64_t>(trial);
}

struct TrialOutcome {
  bool event;
  int relators_in_kernel;
};

TrialOutcome run_trial(const SchreierSystem& sys, int rho, long l,
                       std::uint64_t master_seed, long trial) {
  SplitMix64 rng = SplitMix64::for_stream(master_seed, trial_stream(l, trial));
  bool all_in_kernel = true;
  int in_kernel = 0;
  std::vector<FqVector> vectors;
  vectors.reserve(static_cast<std::size_t>(rho));
  for (int r = 0; r < rho; ++r) {
    const ReducedWord w = words::sample_reduced(sys.n(), l, rng);
    schreier::CrossedImage img = sys.crossed_evaluate(w);
    if (img.jpart == groups::MarkedFiniteGroup::identity) {
      ++in_kernel;
      vectors.push_back(std::move(img.vector));
    } else {
      all_in_kernel = false;
    }
  }
  const bool event = all_in_kernel && !sys.module_generates(vectors);
  return TrialOutcome{event, in_kernel};
}

EstimateResult finalize(long trials, long events, long in_kernel, long rho) {
  EstimateResult res;
  res.trials = trials;
  res.events = events;
  res.relators_in_kernel = in_kernel;
  res.relators_total = trials * rho;
  res.estimate = static_cast<double>(events) / static_cast<double>(trials);
  res.half_width =
      kZ95 * std::sqrt(res.estimate * (1.0 - res.estimate) /
                       static_cast<double>(trials));
  return res;
}

} // namespace

EstimateResult estimate_surjection_probability_serial(const SchreierSystem& sys,
                                                      const ExperimentConfig& cfg,
                                                      long l) {
  validate(cfg);
  long events = 0, in_kernel = 0;
  for (long t = 0; t < cfg.trials; ++t) {
    const TrialOutcome o = run_trial(sys, cfg.rho, l, cfg.seed, t);
    events += o.event ? 1 : 0;
    in_kernel += o.relators_in_kernel;
  }
  return finalize(cfg.trials, events, in_kernel, cfg.rho);
}

EstimateResult estimate_surjection_probability(const SchreierSystem& sys,
                                               const ExperimentConfig& cfg,
                                               long l) {
  validate(cfg);
  long events = 0, in_kernel = 0;
  const long trials = cfg.trials;
#pragma omp parallel for reduction(+ : events, in_kernel) schedule(static)
  for (long t = 0; t < trials; ++t) {
    const TrialOutcome o = run_trial(sys, cfg.rho, l, cfg.seed, t);
    events += o.event ? 1 : 0;
    in_kernel += o.relators_in_kernel;
  }
  return finalize(trials, events, in_kernel, cfg.rho);
}

namespace {

// Grow an action-stable echelon basis by one vector.
void extend_module(EchelonBasis& basis, const FqVector& v,
                   const std::vector<FqMatrix>& action) {
  std::vector<FqVector> work{v};
  while (!work.empty()) {
    FqVector u = std::move(work.back());
    work.pop_back();
    if (basis.insert(u))
      for (const auto& a : action) work.push_back(a.apply(u));
  }
}

FqVector fq_vector_from_index(std::uint32_t q, int dim, long idx) {
  FqVector v(q, static_cast<std::size_t>(dim));
  for (int t = 0; t < dim; ++t) {
    v[static_cast<std::size_t>(t)] = static_cast<std::uint32_t>(idx % q);
    idx /= q;
  }
  return v;
}

/// Mass of each kernel-fiber vector under the step-l summed law on H.
std::vector<double> kernel_fiber_masses(const SchreierSystem& sys,
                                        const std::vector<double>& summed_on_h) {
  const long vcount =
      static_cast<long>(summed_on_h.size()) / sys.jgroup().order();
  std::vector<double> fiber(static_cast<std::size_t>(vcount));
  for (long v = 0; v < vcount; ++v)
    fiber[static_cast<std::size_t>(v)] =
        summed_on_h[static_cast<std::size_t>(v) * sys.jgroup().order() +
                    groups::MarkedFiniteGroup::identity];
  return fiber;
}

// Sum over all rho-tuples of fiber vectors, of the product of their masses
// times the indicator that the tuple fails module generation. Tuples sharing
// a submodule closure are merged, so the cost is (#distinct submodules
// reached) x (fiber size) per relator slot instead of (fiber size)^rho.
double exact_failure_probability(const SchreierSystem& sys,
                                 const std::vector<double>& fiber, int rho) {
  struct Node {
    EchelonBasis basis;
    double prob;
  };
  std::map<std::vector<std::uint32_t>, Node> states;
  EchelonBasis empty(sys.q(), static_cast<std::size_t>(sys.D()));
  states.emplace(empty.canonical_key(), Node{empty, 1.0});

  const long vcount = static_cast<long>(fiber.size());
  for (int t = 0; t < rho; ++t) {
    std::map<std::vector<std::uint32_t>, Node> next;
    for (const auto& [key, node] : states) {
      for (long v = 0; v < vcount; ++v) {
        const double mass = fiber[static_cast<std::size_t>(v)];
        if (mass == 0.0) continue;
        EchelonBasis grown = node.basis;
        extend_module(grown, fq_vector_from_index(sys.q(), sys.D(), v),
                      sys.actions());
        auto k = grown.canonical_key();
        auto it = next.find(k);
        if (it == next.end())
          next.emplace(std::move(k), Node{std::move(grown), node.prob * mass});
        else
          it->second.prob += node.prob * mass;
      }
    }
    states = std::move(next);
  }

  double fail = 0.0;
  for (const auto& [key, node] : states)
    if (node.basis.rank() < static_cast<std::size_t>(sys.D())) fail += node.prob;
  return fail;
}

long checked_pow_long(std::uint32_t q, int e, long limit) {
  long r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > limit / static_cast<long>(q)) return -1;
    r *= static_cast<long>(q);
  }
  return r;
}

} // namespace

double exact_surjection_probability(const SchreierSystem& sys, int rho, long l,
                                    std::size_t group_cap, long tuple_cap) {
  if (rho < 0) throw InvalidInputError("rho must be nonnegative");
  // No relators: every word trivially lies in K and the empty set never
  // generates (D >= 1).
  if (rho == 0) return 1.0;
  if (checked_pow_long(sys.q(), sys.D() * rho, tuple_cap) < 0)
    throw CapacityError("exact path: (q^D)^rho exceeds the tuple cap");
  const groups::MarkedFiniteGroup h = sys.build_split_extension(group_cap);
  const walk::WalkChain chain(h);
  const std::vector<double> summed = walk::summed_distribution(chain, l);
  return exact_failure_probability(sys, kernel_fiber_masses(sys, summed), rho);
}

double lemma_bound(double epsilon, int m, std::uint64_t E_size, int J_size,
                   bool stated) {
  if (epsilon < 0) throw InvalidInputError("lemma_bound: epsilon must be >= 0");
  if (m < 1) throw InvalidInputError("lemma_bound: m must be >= 1");
  if (E_size < 2) throw InvalidInputError("lemma_bound: |E| must be >= 2");
  if (J_size < 1) throw InvalidInputError("lemma_bound: |J| must be >= 1");
  double prod = 1.0;
  for (int j = 1; j <= m; ++j)
    prod *= 1.0 - std::pow(static_cast<double>(E_size), -static_cast<double>(j));
  const double survive = std::max(0.0, 1.0 - epsilon);
  const double first = 1.0 - std::pow(survive, m) * prod;
  const double factor =
      (stated ? 2.0 + 2.0 * epsilon : 1.0 + epsilon) / static_cast<double>(J_size);
  return first * std::pow(factor, m);
}

long c_of_M(long M, int n) {
  if (M < 1) throw InvalidInputError("c_of_M: M must be >= 1");
  if (n < 2) throw InvalidInputError("c_of_M: n must be >= 2");
  return M * n;
}

namespace {

/// Max relative deviation of the step-l law from uniform on its support,
/// combined with the same deviation conditioned on the kernel fiber. This is
/// the smallest eps for which both factors of the lemma bound hold at this l.
double epsilon_from_summed(const SchreierSystem& sys,
                           const std::vector<double>& summed, int chain_period,
                           long l, const std::vector<int>& even_members) {
  std::vector<char> in_support(summed.size(), 1);
  std::size_t support_size = summed.size();
  if (chain_period == 2) {
    std::fill(in_support.begin(), in_support.end(), 0);
    if (l % 2 == 0) {
      for (int m : even_members) in_support[static_cast<std::size_t>(m)] = 1;
      support_size = even_members.size();
    } else {
      std::vector<char> even(summed.size(), 0);
      for (int m : even_members) even[static_cast<std::size_t>(m)] = 1;
      support_size = 0;
      for (std::size_t i = 0; i < summed.size(); ++i)
        if (!even[i]) {
          in_support[i] = 1;
          ++support_size;
        }
    }
  }

  double eps = 0.0;
  const double u = 1.0 / static_cast<double>(support_size);
  for (std::size_t i = 0; i < summed.size(); ++i)
    if (in_support[i]) eps = std::max(eps, std::abs(summed[i] / u - 1.0));

  const std::vector<double> fiber = kernel_fiber_masses(sys, summed);
  double fiber_mass = 0.0;
  for (double x : fiber) fiber_mass += x;
  if (fiber_mass > 0.0) {
    const double fu = fiber_mass / static_cast<double>(fiber.size());
    for (double x : fiber) eps = std::max(eps, std::abs(x / fu - 1.0));
  }
  return eps;
}

} // namespace

std::vector<SweepRow> sweep(const ExperimentConfig& cfg) {
  validate(cfg);
  const SchreierSystem sys = SchreierSystem::build(cfg.J, cfg.q);
  const schreier::GeneratorBounds gb = sys.min_module_generators();
  const int m = gb.upper; // certified-or-upper

  const groups::MarkedFiniteGroup h = sys.build_split_extension();
  const walk::WalkChain chain(h);
  const int chain_period = walk::period(chain);
  std::vector<int> even_members;
  if (chain_period == 2)
    even_members = walk::index2_subgroup(chain).members();

  const bool exact_feasible =
      checked_pow_long(sys.q(), sys.D() * std::max(cfg.rho, 1), 10000000) > 0;

  std::vector<SweepRow> rows;
  walk::DistributionEvolver evolver(chain);
  for (long l = cfg.l_min; l <= cfg.l_max; l += cfg.l_step) {
    evolver.advance_to(l);
    const std::vector<double> summed = evolver.summed();
    const double eps =
        epsilon_from_summed(sys, summed, chain_period, l, even_members);
    const double bound =
        lemma_bound(eps, m, sys.q(), sys.jgroup().order(), /*stated=*/true);
    const EstimateResult est = estimate_surjection_probability(sys, cfg, l);

    SweepRow row;
    row.l = l;
    row.rho = cfg.rho;
    row.q = cfg.q;
    row.estimate = est.estimate;
    row.ci = est.half_width;
    if (exact_feasible)
      row.exact = exact_failure_probability(sys, kernel_fiber_masses(sys, summed),
                                            cfg.rho);
    row.bound = bound;
    row.parity = static_cast<int>(l % 2);
    row.epsilon = eps;
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace randgrp::experiments
