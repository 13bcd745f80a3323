// Compares the serial reference kernels with their OpenMP counterparts:
// the walk-step gather and the Monte-Carlo trial loop. Outputs are checked
// for exact agreement while timing.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "randgrp/experiments.hpp"
#include "randgrp/walk.hpp"

using namespace randgrp;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void bench_walk_step(int steps) {
  const auto g = groups::dihedral(1024, {2, 1}); // order 2048, 8192 states
  const walk::WalkChain chain(g);

  std::vector<double> cur(chain.num_states(), 0.0), next(chain.num_states());
  for (int a = 0; a < chain.num_letters(); ++a)
    cur[chain.state(chain.letter_elem(a), a)] = 0.25;
  std::vector<double> cur_p = cur, next_p = next;

  auto t0 = Clock::now();
  for (int s = 0; s < steps; ++s) {
    walk::step_serial(chain, cur, next);
    cur.swap(next);
  }
  const double serial = seconds_since(t0);

  t0 = Clock::now();
  for (int s = 0; s < steps; ++s) {
    walk::step_parallel(chain, cur_p, next_p);
    cur_p.swap(next_p);
  }
  const double parallel = seconds_since(t0);

  if (cur != cur_p) {
    std::fprintf(stderr, "walk-step kernels disagree!\n");
    std::exit(1);
  }
  std::printf("walk step   (%zu states, %d steps):  serial %8.3f s   openmp %8.3f s   speedup %.2fx\n",
              chain.num_states(), steps, serial, parallel, serial / parallel);
}

void bench_monte_carlo(long trials) {
  experiments::ExperimentConfig cfg{groups::cyclic(2, {1, 0}), 2, 5, 2,
                                    60,                        60, 1, trials, 12345};
  const auto sys = schreier::SchreierSystem::build(cfg.J, cfg.q);

  auto t0 = Clock::now();
  const auto serial_res =
      experiments::estimate_surjection_probability_serial(sys, cfg, 60);
  const double serial = seconds_since(t0);

  t0 = Clock::now();
  const auto parallel_res =
      experiments::estimate_surjection_probability(sys, cfg, 60);
  const double parallel = seconds_since(t0);

  if (serial_res.events != parallel_res.events) {
    std::fprintf(stderr, "monte-carlo kernels disagree!\n");
    std::exit(1);
  }
  std::printf("monte carlo (%ld trials, l=60, rho=2): serial %8.3f s   openmp %8.3f s   speedup %.2fx\n",
              trials, serial, parallel, serial / parallel);
}

} // namespace

int main(int argc, char** argv) {
  int steps = 2000;
  long trials = 200000;
  if (argc > 1) steps = std::atoi(argv[1]);
  if (argc > 2) trials = std::atol(argv[2]);
#ifdef _OPENMP
  std::printf("openmp enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("openmp not enabled; both columns run the serial path\n");
#endif
  bench_walk_step(steps);
  bench_monte_carlo(trials);
  return 0;
}
