#include <chrono>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "randgrp/errors.hpp"
#include "randgrp/experiments.hpp"
#include "randgrp/io.hpp"
#include "randgrp/version.hpp"
#include "randgrp/walk.hpp"

using namespace randgrp;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

std::vector<int> parse_int_list(const std::string& text) {
  std::string normalized = text;
  for (char& c : normalized)
    if (c == ',') c = ' ';
  std::istringstream is(normalized);
  std::vector<int> out;
  int v;
  while (is >> v) out.push_back(v);
  if (!is.eof()) throw InvalidInputError("expected a list of integers: " + text);
  return out;
}

void set_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

int run_walk(const std::string& group_file, long lmax, double tol,
             const std::string& csv_path, const std::string& json_path,
             bool verbose) {
  const auto start = std::chrono::steady_clock::now();
  const groups::MarkedFiniteGroup g = io::load_group_file(group_file);
  std::cout << "group: order " << g.order() << ", " << g.num_marks()
            << " marks\n";

  if (!walk::lemma1_criterion(g)) {
    const auto gen = subgroup_closure(g, g.marks());
    std::cout << "reducible: marks generate a proper subgroup of order "
              << gen.size() << "\n";
    return 0;
  }

  const walk::WalkChain chain(g);
  std::cout << "irreducible: yes (" << chain.num_states() << " states)\n";
  const int p = walk::period(chain);
  std::cout << "period: " << p << "\n";

  std::vector<int> even_members, odd_members, all(g.order());
  std::iota(all.begin(), all.end(), 0);
  if (p == 2) {
    const auto h = walk::index2_subgroup(chain);
    even_members = h.members();
    for (int x = 0; x < g.order(); ++x)
      if (!h.contains(x)) odd_members.push_back(x);
    std::cout << "index-2 subgroup H:";
    for (int m : even_members) std::cout << ' ' << m;
    std::cout << "\n";
  }

  const auto mix = walk::mixing_length(chain, tol, lmax);
  if (p == 1) {
    if (mix.length)
      std::cout << "mixing length (tol " << tol << "): " << *mix.length << "\n";
    else
      std::cout << "not mixed by l = " << lmax << " at tol " << tol << "\n";
  } else {
    std::cout << "even-step mixing length (tol " << tol << "): "
              << (mix.even_length ? std::to_string(*mix.even_length)
                                  : "not mixed by " + std::to_string(lmax))
              << "\n";
    std::cout << "odd-step mixing length (tol " << tol << "): "
              << (mix.odd_length ? std::to_string(*mix.odd_length)
                                 : "not mixed by " + std::to_string(lmax))
              << "\n";
  }

  std::ostringstream csv;
  csv << "l,tv,parity\n";
  csv.precision(12);
  walk::DistributionEvolver evolver(chain);
  for (long l = 1; l <= lmax; ++l) {
    evolver.advance_to(l);
    const auto& target =
        (p == 1) ? all : ((l % 2 == 0) ? even_members : odd_members);
    const double tv = walk::tv_to_uniform(evolver.summed(), target);
    csv << l << ',' << tv << ',' << (l % 2) << '\n';
    if (verbose) std::cout << "l=" << l << " tv=" << tv << "\n";
  }
  if (!csv_path.empty()) {
    io::write_file(csv_path, csv.str());
    std::cout << "wrote " << csv_path << "\n";
  }
  if (!json_path.empty()) {
    std::map<std::string, std::string> echo{{"group_file", group_file},
                                            {"lmax", std::to_string(lmax)},
                                            {"tol", std::to_string(tol)}};
    std::map<std::string, std::string> outputs;
    if (!csv_path.empty()) outputs["csv"] = csv_path;
    io::write_file(json_path, io::run_manifest_json("walk", echo, 0,
                                                    seconds_since(start), outputs));
    std::cout << "wrote " << json_path << "\n";
  }
  return 0;
}

int run_schreier(int n, const std::string& jspec, const std::string& f_list,
                 std::uint32_t q, bool verbose, const std::string& json_path) {
  const auto j = io::group_from_jspec(jspec, parse_int_list(f_list), n);
  const auto sys = schreier::SchreierSystem::build(j, q);
  std::cout << "J: order " << sys.jgroup().order() << ", q = " << sys.q()
            << ", n = " << sys.n() << "\n";
  std::cout << "D = " << sys.D() << " (= 1 + |J|(n-1))\n";
  const auto gb = sys.min_module_generators();
  if (gb.certified())
    std::cout << "minimal module generators: " << gb.lower << " (certified)\n";
  else
    std::cout << "minimal module generators: in [" << gb.lower << ", "
              << gb.upper << "]\n";
  std::cout << "transversal:\n";
  for (int e : sys.bfs_order()) {
    const auto& t = sys.transversal(e);
    std::cout << "  " << e << ": " << (t.empty() ? "(empty)" : words::to_string(t))
              << "\n";
  }
  if (verbose) {
    for (int e = 0; e < sys.jgroup().order(); ++e) {
      std::cout << "action of " << e << ":\n";
      const auto& m = sys.action(e);
      for (std::size_t r = 0; r < m.rows(); ++r) {
        std::cout << "  ";
        for (std::size_t c = 0; c < m.cols(); ++c) std::cout << m.at(r, c) << ' ';
        std::cout << "\n";
      }
    }
  }
  if (!json_path.empty()) {
    io::write_file(json_path, io::schreier_system_json(sys));
    std::cout << "wrote " << json_path << "\n";
  }
  return 0;
}

int run_surject(const std::string& config_path, std::string csv_path,
                std::string json_path, std::optional<std::uint64_t> seed_override,
                std::optional<long> trials_override, int threads) {
  const auto start = std::chrono::steady_clock::now();
  set_threads(threads);
  io::ParsedConfig parsed = io::load_config_file(config_path);
  if (seed_override) {
    parsed.config.seed = *seed_override;
    parsed.raw["seed"] = std::to_string(*seed_override);
  }
  if (trials_override) {
    parsed.config.trials = *trials_override;
    parsed.raw["trials"] = std::to_string(*trials_override);
    experiments::validate(parsed.config);
  }
  if (csv_path.empty()) csv_path = config_path + ".out.csv";
  if (json_path.empty()) json_path = config_path + ".manifest.json";

  const auto rows = experiments::sweep(parsed.config);
  std::cout << "l\testimate\tci\texact\tbound\tparity\n";
  std::cout.precision(6);
  for (const auto& r : rows) {
    std::cout << r.l << '\t' << r.estimate << '\t' << r.ci << '\t';
    if (r.exact)
      std::cout << *r.exact;
    else
      std::cout << '-';
    std::cout << '\t' << r.bound << '\t' << r.parity << '\n';
  }

  io::write_file(csv_path, io::sweep_csv(rows));
  io::write_file(json_path,
                 io::run_manifest_json("surject", parsed.raw, parsed.config.seed,
                                       seconds_since(start),
                                       {{"csv", csv_path}}));
  std::cout << "wrote " << csv_path << "\nwrote " << json_path << "\n";
  return 0;
}

int run_sample(int n, long l, int rho, long count, std::uint64_t seed) {
  for (long p = 0; p < count; ++p) {
    SplitMix64 rng = SplitMix64::for_stream(seed, static_cast<std::uint64_t>(p));
    const auto presentation = experiments::sample_presentation(n, l, rho, rng);
    for (const auto& w : presentation) std::cout << words::to_string(w) << "\n";
    if (p + 1 < count) std::cout << "\n";
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-backtracking walks on marked finite groups and "
               "surjection-probability experiments for random presentations"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // walk
  auto* walk_cmd = app.add_subcommand(
      "walk", "classify the walk on a group file and track TV to uniform");
  std::string walk_group_file, walk_csv, walk_json;
  long walk_lmax = 200;
  double walk_tol = 1e-6;
  bool walk_verbose = false;
  walk_cmd->add_option("group-file", walk_group_file, "group file")->required();
  walk_cmd->add_option("--lmax", walk_lmax, "largest step to evolve");
  walk_cmd->add_option("--tol", walk_tol, "TV tolerance for the mixing length");
  walk_cmd->add_option("--csv", walk_csv, "write per-step TV table here");
  walk_cmd->add_option("--json", walk_json, "write a run manifest here");
  walk_cmd->add_flag("--verbose", walk_verbose, "print the per-step TV table");

  // schreier
  auto* schreier_cmd = app.add_subcommand(
      "schreier", "coset rewriting system for K = ker(f: F -> J)");
  int s_n = 2;
  std::string s_jspec, s_f;
  std::uint32_t s_q = 0;
  bool s_verbose = false;
  std::string s_json;
  schreier_cmd->add_option("--n", s_n, "free rank")->required();
  schreier_cmd->add_option("--J", s_jspec, "trivial | cyclic:K | file:PATH")
      ->required();
  schreier_cmd->add_option("--f", s_f, "f-images of x_1..x_n, e.g. 1,0");
  schreier_cmd->add_option("--q", s_q, "prime modulus, q > |J|")->required();
  schreier_cmd->add_flag("--verbose", s_verbose, "print action matrices");
  schreier_cmd->add_option("--json", s_json, "export the system as JSON");

  // surject
  auto* surject_cmd = app.add_subcommand(
      "surject", "run a surjection-probability sweep from a config file");
  std::string su_config, su_csv, su_json;
  std::optional<std::uint64_t> su_seed;
  std::optional<long> su_trials;
  int su_threads = 0;
  surject_cmd->add_option("config", su_config, "experiment config file")
      ->required();
  surject_cmd->add_option("--csv", su_csv, "CSV output path");
  surject_cmd->add_option("--json", su_json, "manifest output path");
  surject_cmd->add_option("--seed", su_seed, "override the config seed");
  surject_cmd->add_option("--trials", su_trials, "override the config trials");
  surject_cmd->add_option("--threads", su_threads, "Monte-Carlo thread count");

  // sample
  auto* sample_cmd =
      app.add_subcommand("sample", "dump random presentations (rho relators)");
  int sa_n = 2, sa_rho = 1;
  long sa_l = 1, sa_count = 1;
  std::uint64_t sa_seed = 0;
  sample_cmd->add_option("--n", sa_n, "free rank")->required();
  sample_cmd->add_option("--l", sa_l, "relator length")->required();
  sample_cmd->add_option("--rho", sa_rho, "relators per presentation")->required();
  sample_cmd->add_option("--count", sa_count, "number of presentations");
  sample_cmd
      ->add_option("--seed", sa_seed,
                   "master seed (required; no implicit time seed)")
      ->required();

  // count
  auto* count_cmd = app.add_subcommand("count", "closed-form counts and bounds");
  count_cmd->require_subcommand(1);
  auto* c_reduced = count_cmd->add_subcommand("reduced", "|S_l| = 2n(2n-1)^{l-1}");
  int cr_n = 2;
  long cr_l = 1;
  c_reduced->add_option("--n", cr_n)->required();
  c_reduced->add_option("--l", cr_l)->required();
  auto* c_tuples = count_cmd->add_subcommand(
      "tuples", "generating m-tuples of E^m over J");
  std::uint64_t ct_esize = 2;
  int ct_m = 1;
  c_tuples->add_option("--esize", ct_esize)->required();
  c_tuples->add_option("--m", ct_m)->required();
  auto* c_genprob = count_cmd->add_subcommand(
      "genprob", "P(count uniform vectors span F_q^dim)");
  std::uint32_t cg_q = 2;
  int cg_dim = 1;
  long cg_draws = 1;
  c_genprob->add_option("--q", cg_q)->required();
  c_genprob->add_option("--dim", cg_dim)->required();
  c_genprob->add_option("--draws", cg_draws)->required();
  auto* c_bound = count_cmd->add_subcommand("bound", "surjection-probability bound");
  double cb_eps = 0.0;
  int cb_m = 1, cb_jsize = 1;
  std::uint64_t cb_esize = 2;
  bool cb_proof = false;
  c_bound->add_option("--eps", cb_eps)->required();
  c_bound->add_option("--m", cb_m)->required();
  c_bound->add_option("--esize", cb_esize)->required();
  c_bound->add_option("--jsize", cb_jsize)->required();
  c_bound->add_flag("--proof-variant", cb_proof,
                    "use the (1+eps)/|J| factor instead of (2+2eps)/|J|");
  auto* c_cm = count_cmd->add_subcommand("cm", "relator-count bound M*n");
  long cm_M = 1;
  int cm_n = 2;
  c_cm->add_option("--M", cm_M)->required();
  c_cm->add_option("--n", cm_n)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Exit code contract: 0 success, 1 usage, 2 capacity.
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*walk_cmd)
      return run_walk(walk_group_file, walk_lmax, walk_tol, walk_csv, walk_json,
                      walk_verbose);
    if (*schreier_cmd)
      return run_schreier(s_n, s_jspec, s_f, s_q, s_verbose, s_json);
    if (*surject_cmd)
      return run_surject(su_config, su_csv, su_json, su_seed, su_trials,
                         su_threads);
    if (*sample_cmd) return run_sample(sa_n, sa_l, sa_rho, sa_count, sa_seed);
    if (*count_cmd) {
      std::cout.precision(12);
      if (*c_reduced)
        std::cout << words::count_reduced(cr_n, cr_l).get_str() << "\n";
      else if (*c_tuples)
        std::cout << fqlin::generating_tuple_count(ct_esize, ct_m).get_str()
                  << "\n";
      else if (*c_genprob)
        std::cout << fqlin::generation_probability(cg_q, cg_dim, cg_draws) << "\n";
      else if (*c_bound)
        std::cout << experiments::lemma_bound(cb_eps, cb_m, cb_esize, cb_jsize,
                                              !cb_proof)
                  << "\n";
      else if (*c_cm)
        std::cout << experiments::c_of_M(cm_M, cm_n) << "\n";
      return 0;
    }
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
