#include "randgrp/schreier.hpp"

#include <algorithm>
#include <queue>
#include <functional>
#include <limits>
#include <string>

#include "randgrp/errors.hpp"

namespace randgrp::schreier {

using fqlin::EchelonBasis;
using fqlin::FqMatrix;
using fqlin::FqVector;
using groups::MarkedFiniteGroup;
using words::Letter;
using words::ReducedWord;

SchreierSystem::SchreierSystem(MarkedFiniteGroup j, std::uint32_t q)
    : j_(std::move(j)), q_(q), D_(0) {}

SchreierSystem SchreierSystem::build(const MarkedFiniteGroup& J, std::uint32_t q) {
  fqlin::check_prime_modulus(q);
  if (q <= static_cast<std::uint32_t>(J.order()))
    throw PreconditionError("q must exceed |J| (got q=" + std::to_string(q) +
                            ", |J|=" + std::to_string(J.order()) + ")");
  if (subgroup_closure(J, J.marks()).size() != static_cast<std::size_t>(J.order()))
    throw InvalidInputError("the f-images do not generate J");

  SchreierSystem sys(J, q);
  const int n = sys.n();
  const int jorder = J.order();

  // Breadth-first transversal; tree pairs get no column.
  sys.transversal_.assign(static_cast<std::size_t>(jorder), ReducedWord(n));
  sys.sgen_col_.assign(static_cast<std::size_t>(jorder) * n, -2); // -2 = unset
  std::vector<char> visited(static_cast<std::size_t>(jorder), 0);
  visited[MarkedFiniteGroup::identity] = 1;
  sys.bfs_order_.push_back(MarkedFiniteGroup::identity);
  std::queue<int> frontier;
  frontier.push(MarkedFiniteGroup::identity);
  while (!frontier.empty()) {
    const int j = frontier.front();
    frontier.pop();
    for (int a = 0; a < 2 * n; ++a) {
      const Letter letter = words::letter_from_index(a);
      const int target = J.mul(j, J.mark_of_letter(letter));
      if (visited[static_cast<std::size_t>(target)]) continue;
      visited[static_cast<std::size_t>(target)] = 1;
      sys.transversal_[static_cast<std::size_t>(target)] = concat_reduce(
          sys.transversal_[static_cast<std::size_t>(j)],
          words::reduce({letter}, n));
      // The tree edge trivializes the Schreier generator of the positive pair.
      const int gen = std::abs(letter) - 1;
      if (letter > 0)
        sys.sgen_col_[static_cast<std::size_t>(j) * n + gen] = -1;
      else
        sys.sgen_col_[static_cast<std::size_t>(target) * n + gen] = -1;
      sys.bfs_order_.push_back(target);
      frontier.push(target);
    }
  }

  // Columns for the non-tree pairs, in breadth-first coset order.
  int next_col = 0;
  for (int j : sys.bfs_order_)
    for (int gen = 0; gen < n; ++gen) {
      auto& slot = sys.sgen_col_[static_cast<std::size_t>(j) * n + gen];
      if (slot == -2) slot = next_col++;
    }
  sys.D_ = next_col;
  if (sys.D_ != 1 + jorder * (n - 1) || sys.D_ != jorder * n - (jorder - 1))
    throw StructureError("Schreier generator count does not match 1 + |J|(n-1)");

  // Action of J on K' by conjugation: column (j, i) of action(j1) is the
  // rewriting of t_{j1} · s_{j,i} · t_{j1}^{-1}.
  sys.action_.reserve(static_cast<std::size_t>(jorder));
  for (int j1 = 0; j1 < jorder; ++j1) {
    FqMatrix m(q, static_cast<std::size_t>(sys.D_), static_cast<std::size_t>(sys.D_));
    const auto& t1 = sys.transversal_[static_cast<std::size_t>(j1)];
    const ReducedWord t1inv = words::inverse(t1);
    for (int j = 0; j < jorder; ++j)
      for (int gen = 0; gen < n; ++gen) {
        const int col = sys.sgen_column(j, gen);
        if (col < 0) continue;
        const Letter x = gen + 1;
        const int jx = J.mul(j, J.mark(gen));
        std::vector<Letter> word = t1.letters();
        const auto& tj = sys.transversal_[static_cast<std::size_t>(j)].letters();
        word.insert(word.end(), tj.begin(), tj.end());
        word.push_back(x);
        const ReducedWord tjx_inv =
            words::inverse(sys.transversal_[static_cast<std::size_t>(jx)]);
        word.insert(word.end(), tjx_inv.letters().begin(), tjx_inv.letters().end());
        word.insert(word.end(), t1inv.letters().begin(), t1inv.letters().end());
        const CrossedImage img = sys.rewrite_raw(word);
        if (img.jpart != MarkedFiniteGroup::identity)
          throw StructureError("conjugated Schreier generator left the kernel");
        for (int r = 0; r < sys.D_; ++r)
          m.at(static_cast<std::size_t>(r), static_cast<std::size_t>(col)) =
              img.vector[static_cast<std::size_t>(r)];
      }
    sys.action_.push_back(std::move(m));
  }
  for (int a = 0; a < jorder; ++a)
    for (int b = 0; b < jorder; ++b)
      if (!(sys.action_[static_cast<std::size_t>(a)].mul(
                sys.action_[static_cast<std::size_t>(b)]) ==
            sys.action_[static_cast<std::size_t>(J.mul(a, b))]))
        throw StructureError("conjugation action is not a homomorphism");

  // Transversal cocycle c(a,b) = rewriting of t_a t_b (a class in K' since
  // t_a t_b t_{ab}^{-1} lies in K). Averaging over J trivializes it:
  // psi(a) = |J|^{-1} · sum_b c(a,b) satisfies
  // c(a,b) = psi(a) + a·psi(b) - psi(ab), which is exactly what the
  // crossed-homomorphism law needs as a correction.
  std::vector<std::vector<FqVector>> cocycle(
      static_cast<std::size_t>(jorder),
      std::vector<FqVector>(static_cast<std::size_t>(jorder),
                            FqVector(q, static_cast<std::size_t>(sys.D_))));
  for (int a = 0; a < jorder; ++a)
    for (int b = 0; b < jorder; ++b) {
      std::vector<Letter> word = sys.transversal_[static_cast<std::size_t>(a)].letters();
      const auto& tb = sys.transversal_[static_cast<std::size_t>(b)].letters();
      word.insert(word.end(), tb.begin(), tb.end());
      cocycle[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          sys.rewrite_raw(word).vector;
    }
  const std::uint32_t inv_order =
      fqlin::fq_inverse(static_cast<std::uint32_t>(jorder % q), q);
  sys.psi_.reserve(static_cast<std::size_t>(jorder));
  for (int a = 0; a < jorder; ++a) {
    FqVector acc(q, static_cast<std::size_t>(sys.D_));
    for (int b = 0; b < jorder; ++b)
      acc.add_scaled(cocycle[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)], 1);
    for (std::size_t t = 0; t < acc.dim(); ++t)
      acc[t] = static_cast<std::uint32_t>(
          static_cast<std::uint64_t>(acc[t]) * inv_order % q);
    sys.psi_.push_back(std::move(acc));
  }
  for (int a = 0; a < jorder; ++a)
    for (int b = 0; b < jorder; ++b) {
      FqVector lhs = sys.psi_[static_cast<std::size_t>(a)];
      lhs.add_scaled(sys.action_[static_cast<std::size_t>(a)].apply(
                         sys.psi_[static_cast<std::size_t>(b)]),
                     1);
      lhs.add_scaled(sys.psi_[static_cast<std::size_t>(J.mul(a, b))], q - 1);
      if (!(lhs == cocycle[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]))
        throw StructureError("cocycle averaging failed to split the extension");
    }

  return sys;
}

CrossedImage SchreierSystem::rewrite_raw(const std::vector<Letter>& letters) const {
  FqVector v(q_, static_cast<std::size_t>(D_));
  int j = MarkedFiniteGroup::identity;
  for (Letter a : letters) {
    const int gen = std::abs(a) - 1;
    if (gen < 0 || gen >= n())
      throw InvalidInputError("letter out of range for the Schreier system");
    if (a > 0) {
      const int col = sgen_column(j, gen);
      if (col >= 0) {
        auto& slot = v[static_cast<std::size_t>(col)];
        slot = (slot + 1) % q_;
      }
      j = j_.mul(j, j_.mark(gen));
    } else {
      j = j_.mul(j, j_.inv(j_.mark(gen)));
      const int col = sgen_column(j, gen);
      if (col >= 0) {
        auto& slot = v[static_cast<std::size_t>(col)];
        slot = (slot + q_ - 1) % q_;
      }
    }
  }
  return CrossedImage{std::move(v), j};
}

CrossedImage SchreierSystem::crossed_evaluate(const ReducedWord& w) const {
  if (w.rank() != n())
    throw InvalidInputError("word rank does not match the Schreier system");
  CrossedImage img = rewrite_raw(w.letters());
  img.vector.add_scaled(psi_[static_cast<std::size_t>(img.jpart)], 1);
  return img;
}

bool SchreierSystem::module_generates(
    const std::vector<FqVector>& relator_vectors) const {
  for (const auto& v : relator_vectors)
    if (v.dim() != static_cast<std::size_t>(D_) || v.q() != q_)
      throw InvalidInputError("relator vector has wrong dimension or modulus");
  const auto basis = fqlin::submodule_closure_unchecked(relator_vectors, action_);
  return basis.size() == static_cast<std::size_t>(D_);
}

namespace {

// All vectors of F_q^dim in little-endian digit order.
FqVector vector_from_index(std::uint32_t q, int dim, long idx) {
  FqVector v(q, static_cast<std::size_t>(dim));
  for (int t = 0; t < dim; ++t) {
    v[static_cast<std::size_t>(t)] = static_cast<std::uint32_t>(idx % q);
    idx /= q;
  }
  return v;
}

// q^e, or -1 on overflow past `limit`.
long checked_pow(std::uint32_t q, int e, long limit) {
  long r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > limit / static_cast<long>(q)) return -1;
    r *= static_cast<long>(q);
  }
  return r;
}

bool combination_generates(const SchreierSystem& sys, long vector_count, int m) {
  // Enumerate m-element combinations of all vectors; a repeated tuple spans
  // no more than its underlying set, so combinations suffice.
  std::vector<long> pick(static_cast<std::size_t>(m));
  std::vector<FqVector> vecs;
  const std::function<bool(int, long)> recurse = [&](int depth, long start) {
    if (depth == m) return sys.module_generates(vecs);
    for (long i = start; i < vector_count; ++i) {
      vecs.push_back(vector_from_index(sys.q(), sys.D(), i));
      if (recurse(depth + 1, i + 1)) return true;
      vecs.pop_back();
    }
    return false;
  };
  return recurse(0, 0);
}

} // namespace

GeneratorBounds SchreierSystem::min_module_generators() const {
  const int jorder = j_.order();
  int lower = (D_ + jorder - 1) / jorder;
  if (lower < 1) lower = 1;

  // Greedy prune from the standard basis (always a generating set).
  std::vector<FqVector> gens;
  for (int i = 0; i < D_; ++i) {
    FqVector e(q_, static_cast<std::size_t>(D_));
    e[static_cast<std::size_t>(i)] = 1;
    gens.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < gens.size();) {
    std::vector<FqVector> rest;
    rest.reserve(gens.size() - 1);
    for (std::size_t k = 0; k < gens.size(); ++k)
      if (k != i) rest.push_back(gens[k]);
    if (module_generates(rest))
      gens = std::move(rest);
    else
      ++i;
  }
  int upper = static_cast<int>(gens.size());

  // Certify by exhaustively ruling out (or finding) smaller sizes while the
  // q^{D·m} tuple count stays within budget.
  constexpr long kTupleBudget = 10000000;
  const long vector_count = checked_pow(q_, D_, kTupleBudget);
  for (int m = lower; m < upper; ++m) {
    if (vector_count < 0 || checked_pow(q_, D_ * m, kTupleBudget) < 0) break;
    if (combination_generates(*this, vector_count, m)) {
      upper = m;
      lower = m;
      break;
    }
    lower = m + 1;
  }
  return GeneratorBounds{lower, upper};
}

long SchreierSystem::split_order() const {
  const long vcount = checked_pow(q_, D_, std::numeric_limits<long>::max() / (j_.order() + 1));
  if (vcount < 0) throw CapacityError("split extension order overflows");
  return vcount * j_.order();
}

long SchreierSystem::split_element_index(const FqVector& v, int j) const {
  long vidx = 0;
  for (int t = D_ - 1; t >= 0; --t)
    vidx = vidx * q_ + static_cast<long>(v[static_cast<std::size_t>(t)]);
  return vidx * j_.order() + j;
}

FqVector SchreierSystem::split_vector_of(long element_index) const {
  return vector_from_index(q_, D_, element_index / j_.order());
}

int SchreierSystem::split_jpart_of(long element_index) const {
  return static_cast<int>(element_index % j_.order());
}

MarkedFiniteGroup SchreierSystem::build_split_extension(std::size_t order_cap) const {
  const long order = split_order();
  if (order > static_cast<long>(order_cap))
    throw CapacityError("split extension order " + std::to_string(order) +
                        " exceeds cap " + std::to_string(order_cap));
  const int k = static_cast<int>(order);
  const int jorder = j_.order();
  const long vcount = order / jorder;

  // Precompute the action as a permutation of vector indices per J element.
  std::vector<std::vector<long>> act_vidx(
      static_cast<std::size_t>(jorder), std::vector<long>(static_cast<std::size_t>(vcount)));
  for (int j = 0; j < jorder; ++j)
    for (long v = 0; v < vcount; ++v) {
      const FqVector image =
          action_[static_cast<std::size_t>(j)].apply(vector_from_index(q_, D_, v));
      long idx = 0;
      for (int t = D_ - 1; t >= 0; --t)
        idx = idx * q_ + static_cast<long>(image[static_cast<std::size_t>(t)]);
      act_vidx[static_cast<std::size_t>(j)][static_cast<std::size_t>(v)] = idx;
    }

  std::vector<int> flat(static_cast<std::size_t>(k) * k);
  std::vector<std::uint32_t> digits1(static_cast<std::size_t>(D_)),
      digits2(static_cast<std::size_t>(D_));
  for (int e1 = 0; e1 < k; ++e1) {
    const long v1 = e1 / jorder;
    const int j1 = e1 % jorder;
    long tmp = v1;
    for (int t = 0; t < D_; ++t) {
      digits1[static_cast<std::size_t>(t)] = static_cast<std::uint32_t>(tmp % q_);
      tmp /= q_;
    }
    for (int e2 = 0; e2 < k; ++e2) {
      const long v2 = act_vidx[static_cast<std::size_t>(j1)]
                              [static_cast<std::size_t>(e2 / jorder)];
      const int j2 = e2 % jorder;
      tmp = v2;
      long sum = 0;
      for (int t = 0; t < D_; ++t) {
        digits2[static_cast<std::size_t>(t)] =
            (digits1[static_cast<std::size_t>(t)] +
             static_cast<std::uint32_t>(tmp % q_)) % q_;
        tmp /= q_;
      }
      for (int t = D_ - 1; t >= 0; --t)
        sum = sum * q_ + static_cast<long>(digits2[static_cast<std::size_t>(t)]);
      flat[static_cast<std::size_t>(e1) * k + e2] =
          static_cast<int>(sum * jorder + j_.mul(j1, j2));
    }
  }

  std::vector<int> marks;
  marks.reserve(static_cast<std::size_t>(n()));
  for (int i = 0; i < n(); ++i) {
    const CrossedImage img = crossed_evaluate(words::reduce({i + 1}, n()));
    marks.push_back(static_cast<int>(split_element_index(img.vector, img.jpart)));
  }
  return MarkedFiniteGroup::from_trusted_table(std::move(flat), k, std::move(marks));
}

} // namespace randgrp::schreier
