#include "randgrp/walk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>

#include "randgrp/errors.hpp"

namespace randgrp::walk {

using groups::MarkedFiniteGroup;

WalkWeights WalkWeights::unbiased(int n) {
  WalkWeights w;
  w.beta.assign(static_cast<std::size_t>(2 * n), 1.0 / (2 * n));
  w.alpha.assign(static_cast<std::size_t>(2 * n),
                 std::vector<double>(static_cast<std::size_t>(2 * n),
                                     1.0 / (2 * n - 1)));
  for (int b = 0; b < 2 * n; ++b)
    w.alpha[static_cast<std::size_t>(b)]
           [static_cast<std::size_t>(words::inverse_letter_index(b))] = 0.0;
  return w;
}

namespace {

constexpr double kRowSumTol = 1e-9;

void validate_weights(const WalkWeights& w, int n) {
  const std::size_t m = static_cast<std::size_t>(2 * n);
  if (w.beta.size() != m || w.alpha.size() != m)
    throw InvalidInputError("weights must have 2n rows/entries");
  double bsum = 0;
  for (double b : w.beta) {
    if (!(b > 0)) throw InvalidInputError("initial weights must be positive");
    bsum += b;
  }
  if (std::abs(bsum - 1.0) > kRowSumTol)
    throw InvalidInputError("initial weights do not sum to 1");
  for (std::size_t b = 0; b < m; ++b) {
    if (w.alpha[b].size() != m)
      throw InvalidInputError("weight rows must have 2n entries");
    const std::size_t forbidden =
        static_cast<std::size_t>(words::inverse_letter_index(static_cast<int>(b)));
    double rsum = 0;
    for (std::size_t a = 0; a < m; ++a) {
      const double x = w.alpha[b][a];
      if (a == forbidden) {
        if (x != 0.0)
          throw InvalidInputError("backtracking entry must be exactly zero");
        continue;
      }
      if (!(x > 0)) throw InvalidInputError("transition weights must be positive");
      rsum += x;
    }
    if (std::abs(rsum - 1.0) > kRowSumTol)
      throw InvalidInputError("transition row " + std::to_string(b) +
                              " does not sum to 1");
  }
}

bool is_unbiased(const WalkWeights& w, int n) {
  const double a0 = 1.0 / (2 * n - 1), b0 = 1.0 / (2 * n);
  for (double b : w.beta)
    if (b != b0) return false;
  for (int b = 0; b < 2 * n; ++b)
    for (int a = 0; a < 2 * n; ++a) {
      if (a == words::inverse_letter_index(b)) continue;
      if (w.alpha[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] != a0)
        return false;
    }
  return true;
}

} // namespace

WalkChain::WalkChain(const MarkedFiniteGroup& g)
    : WalkChain(g, WalkWeights::unbiased(g.num_marks())) {}

WalkChain::WalkChain(const MarkedFiniteGroup& g, WalkWeights weights)
    : group_(std::make_shared<MarkedFiniteGroup>(g)), n_(g.num_marks()),
      weights_(std::move(weights)) {
  if (n_ < 2) throw InvalidInputError("walk needs at least 2 marks");
  validate_weights(weights_, n_);
  unbiased_ = is_unbiased(weights_, n_);
  init(*group_);
}

void WalkChain::init(const MarkedFiniteGroup& g) {
  const int m = num_letters();
  letter_elem_.resize(static_cast<std::size_t>(m));
  pred_elem_.assign(static_cast<std::size_t>(m),
                    std::vector<int>(static_cast<std::size_t>(g.order())));
  for (int a = 0; a < m; ++a) {
    const int e = g.mark_of_letter(words::letter_from_index(a));
    letter_elem_[static_cast<std::size_t>(a)] = e;
    const int einv = g.inv(e);
    for (int x = 0; x < g.order(); ++x)
      pred_elem_[static_cast<std::size_t>(a)][static_cast<std::size_t>(x)] =
          g.mul(x, einv);
  }
}

bool lemma1_criterion(const MarkedFiniteGroup& g) {
  return subgroup_closure(g, g.marks()).size() ==
         static_cast<std::size_t>(g.order());
}

namespace {

// Successors of state s: (g·x_a, a) for every letter a other than the inverse
// of s's letter.
template <typename Visit>
void for_each_successor(const WalkChain& c, std::size_t s, Visit&& visit) {
  const int m = c.num_letters();
  const int g = c.state_group(s);
  const int b = c.state_letter(s);
  const int forbidden = words::inverse_letter_index(b);
  for (int a = 0; a < m; ++a) {
    if (a == forbidden) continue;
    visit(c.state(c.group().mul(g, c.letter_elem(a)), a));
  }
}

template <typename Visit>
void for_each_predecessor(const WalkChain& c, std::size_t s, Visit&& visit) {
  const int m = c.num_letters();
  const int g = c.state_group(s);
  const int a = c.state_letter(s);
  const int h = c.pred_elem(a, g);
  const int forbidden = words::inverse_letter_index(a);
  for (int b = 0; b < m; ++b) {
    if (b == forbidden) continue;
    visit(c.state(h, b));
  }
}

std::size_t bfs_count(const WalkChain& c, bool reverse) {
  std::vector<char> seen(c.num_states(), 0);
  std::queue<std::size_t> q;
  seen[0] = 1;
  q.push(0);
  std::size_t count = 1;
  while (!q.empty()) {
    const std::size_t s = q.front();
    q.pop();
    const auto visit = [&](std::size_t t) {
      if (!seen[t]) {
        seen[t] = 1;
        ++count;
        q.push(t);
      }
    };
    if (reverse)
      for_each_predecessor(c, s, visit);
    else
      for_each_successor(c, s, visit);
  }
  return count;
}

} // namespace

bool is_irreducible(const WalkChain& chain) {
  // Strong connectivity: every state reachable from state 0 and vice versa.
  return bfs_count(chain, false) == chain.num_states() &&
         bfs_count(chain, true) == chain.num_states();
}

int period(const WalkChain& chain) {
  if (!is_irreducible(chain))
    throw PreconditionError("period is defined only for irreducible chains");
  std::vector<long> level(chain.num_states(), -1);
  std::queue<std::size_t> q;
  level[0] = 0;
  q.push(0);
  long g = 0;
  while (!q.empty()) {
    const std::size_t s = q.front();
    q.pop();
    for_each_successor(chain, s, [&](std::size_t t) {
      if (level[t] < 0) {
        level[t] = level[s] + 1;
        q.push(t);
      } else {
        g = std::gcd(g, std::abs(level[s] + 1 - level[t]));
      }
    });
  }
  // Tree edges contribute 0 to the gcd; every non-tree edge contributes.
  return static_cast<int>(g);
}

groups::Subgroup index2_subgroup(const WalkChain& chain) {
  if (period(chain) != 2)
    throw PreconditionError("index2_subgroup requires an irreducible period-2 chain");
  const auto& g = chain.group();
  groups::Subgroup h = even_subgroup(g);
  if (h.size() * 2 != static_cast<std::size_t>(g.order()))
    throw PreconditionError("even subgroup does not have index 2");
  for (int m : g.marks())
    if (h.contains(m))
      throw PreconditionError("a mark lies in the even subgroup");
  return h;
}

void step_serial(const WalkChain& chain, const std::vector<double>& cur,
                 std::vector<double>& next) {
  const int m = chain.num_letters();
  const int k = chain.group().order();
  next.resize(cur.size());
  for (int g = 0; g < k; ++g) {
    for (int a = 0; a < m; ++a) {
      const int h = chain.pred_elem(a, g);
      const std::size_t base = static_cast<std::size_t>(h) * m;
      const int forbidden = words::inverse_letter_index(a);
      double acc = 0.0;
      for (int b = 0; b < m; ++b) {
        if (b == forbidden) continue;
        acc += chain.weights().alpha[static_cast<std::size_t>(b)]
                                    [static_cast<std::size_t>(a)] *
               cur[base + static_cast<std::size_t>(b)];
      }
      next[static_cast<std::size_t>(g) * m + a] = acc;
    }
  }
}

void step_parallel(const WalkChain& chain, const std::vector<double>& cur,
                   std::vector<double>& next) {
  const int m = chain.num_letters();
  const int k = chain.group().order();
  next.resize(cur.size());
  // Gather form: each target state sums its own predecessors, so threads
  // never write the same slot and the per-state accumulation order matches
  // step_serial exactly.
#pragma omp parallel for schedule(static)
  for (int g = 0; g < k; ++g) {
    for (int a = 0; a < m; ++a) {
      const int h = chain.pred_elem(a, g);
      const std::size_t base = static_cast<std::size_t>(h) * m;
      const int forbidden = words::inverse_letter_index(a);
      double acc = 0.0;
      for (int b = 0; b < m; ++b) {
        if (b == forbidden) continue;
        acc += chain.weights().alpha[static_cast<std::size_t>(b)]
                                    [static_cast<std::size_t>(a)] *
               cur[base + static_cast<std::size_t>(b)];
      }
      next[static_cast<std::size_t>(g) * m + a] = acc;
    }
  }
}

namespace {

constexpr std::size_t kParallelStateThreshold = 1 << 14;

void step_dispatch(const WalkChain& chain, const std::vector<double>& cur,
                   std::vector<double>& next) {
#ifdef _OPENMP
  if (chain.num_states() >= kParallelStateThreshold) {
    step_parallel(chain, cur, next);
    return;
  }
#endif
  step_serial(chain, cur, next);
}

std::vector<double> initial_mass(const WalkChain& chain) {
  std::vector<double> mass(chain.num_states(), 0.0);
  for (int a = 0; a < chain.num_letters(); ++a)
    mass[chain.state(chain.letter_elem(a), a)] +=
        chain.weights().beta[static_cast<std::size_t>(a)];
  return mass;
}

} // namespace

DistributionEvolver::DistributionEvolver(const WalkChain& chain)
    : chain_(&chain), step_(1), cur_(initial_mass(chain)) {}

void DistributionEvolver::advance() {
  step_dispatch(*chain_, cur_, next_);
  cur_.swap(next_);
  ++step_;
}

void DistributionEvolver::advance_to(long l) {
  if (l < step_)
    throw InvalidInputError("cannot evolve a distribution backwards");
  while (step_ < l) advance();
}

std::vector<double> DistributionEvolver::summed() const {
  const int m = chain_->num_letters();
  std::vector<double> out(static_cast<std::size_t>(chain_->group().order()), 0.0);
  for (std::size_t s = 0; s < cur_.size(); ++s) out[s / m] += cur_[s];
  return out;
}

StepDistribution distribution_at(const WalkChain& chain, long l) {
  if (l < 1) throw InvalidInputError("step index must be >= 1");
  DistributionEvolver e(chain);
  e.advance_to(l);
  return StepDistribution{l, e.mass()};
}

std::vector<double> summed_distribution(const WalkChain& chain, long l) {
  if (l < 1) throw InvalidInputError("step index must be >= 1");
  DistributionEvolver e(chain);
  e.advance_to(l);
  return e.summed();
}

std::vector<mpq_class> summed_distribution_exact(const WalkChain& chain, long l) {
  if (!chain.unbiased())
    throw PreconditionError("exact-rational evolution supports the unbiased chain only");
  if (chain.num_states() > 200)
    throw CapacityError("exact-rational evolution is capped at 200 states");
  if (l < 1 || l > 30)
    throw CapacityError("exact-rational evolution is capped at l <= 30");

  const int m = chain.num_letters();
  const mpq_class alpha(1, m - 1), beta(1, m);
  std::vector<mpq_class> cur(chain.num_states(), mpq_class(0));
  for (int a = 0; a < m; ++a) cur[chain.state(chain.letter_elem(a), a)] += beta;

  std::vector<mpq_class> next(chain.num_states());
  for (long t = 1; t < l; ++t) {
    for (int g = 0; g < chain.group().order(); ++g)
      for (int a = 0; a < m; ++a) {
        const int h = chain.pred_elem(a, g);
        const int forbidden = words::inverse_letter_index(a);
        mpq_class acc = 0;
        for (int b = 0; b < m; ++b) {
          if (b == forbidden) continue;
          acc += cur[static_cast<std::size_t>(h) * m + b];
        }
        next[static_cast<std::size_t>(g) * m + a] = acc * alpha;
      }
    cur.swap(next);
  }
  std::vector<mpq_class> out(static_cast<std::size_t>(chain.group().order()),
                             mpq_class(0));
  for (std::size_t s = 0; s < cur.size(); ++s)
    out[s / static_cast<std::size_t>(m)] += cur[s];
  return out;
}

double tv_to_uniform(const std::vector<double>& dist, const std::vector<int>& support) {
  if (support.empty()) throw InvalidInputError("tv_to_uniform: empty support");
  std::vector<char> in(dist.size(), 0);
  for (int s : support) {
    if (s < 0 || static_cast<std::size_t>(s) >= dist.size())
      throw InvalidInputError("tv_to_uniform: support element out of range");
    in[static_cast<std::size_t>(s)] = 1;
  }
  const double u = 1.0 / static_cast<double>(support.size());
  double tv = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i)
    tv += in[i] ? std::abs(dist[i] - u) : dist[i];
  return tv / 2.0;
}

MixingResult mixing_length(const WalkChain& chain, double tol, long max_l) {
  const int p = period(chain); // checks irreducibility
  MixingResult result;
  result.period = p;

  const auto& g = chain.group();
  DistributionEvolver e(chain);

  if (p == 1) {
    std::vector<int> all(static_cast<std::size_t>(g.order()));
    std::iota(all.begin(), all.end(), 0);
    for (long l = 1; l <= max_l; ++l) {
      e.advance_to(l);
      if (tv_to_uniform(e.summed(), all) <= tol) {
        result.length = l;
        break;
      }
    }
    return result;
  }

  const groups::Subgroup h = index2_subgroup(chain);
  std::vector<int> inside = h.members(), outside;
  for (int x = 0; x < g.order(); ++x)
    if (!h.contains(x)) outside.push_back(x);

  for (long l = 1; l <= max_l; ++l) {
    e.advance_to(l);
    const bool even = (l % 2) == 0;
    if (even && !result.even_length) {
      if (tv_to_uniform(e.summed(), inside) <= tol) result.even_length = l;
    } else if (!even && !result.odd_length) {
      if (tv_to_uniform(e.summed(), outside) <= tol) result.odd_length = l;
    }
    if (result.even_length && result.odd_length) break;
  }
  return result;
}

} // namespace randgrp::walk
