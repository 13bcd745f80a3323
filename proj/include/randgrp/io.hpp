#pragma once

#include <map>
#include <string>
#include <vector>

#include "randgrp/experiments.hpp"
#include "randgrp/groups.hpp"
#include "randgrp/schreier.hpp"

namespace randgrp::io {

/// Load a group file. Two plain-text formats:
///   multiplication table:  "order k" / k rows of k indices / "marks i_1 .. i_n"
///   permutation group:     "perm degree d" / one line of d images per generator
/// Parse errors carry the offending line number.
groups::MarkedFiniteGroup load_group_file(const std::string& path);

/// Parse a flat key-value experiment config ('#' starts a comment).
/// Recognized keys: n, q, rho, trials, seed, l | l_min l_max [l_step],
/// J (trivial | cyclic K | file PATH), f (n space-separated J-element indices;
/// optional for trivial J). The raw key-value map is returned alongside for
/// the run manifest.
struct ParsedConfig {
  experiments::ExperimentConfig config;
  std::map<std::string, std::string> raw;
};
ParsedConfig load_config_file(const std::string& path);

/// Build the target J from a spec string — "trivial", "cyclic K" / "cyclic:K",
/// or "file PATH" / "file:PATH" — marked with the n f-images (for trivial J an
/// empty f list defaults to all-identity).
groups::MarkedFiniteGroup group_from_jspec(const std::string& spec,
                                           std::vector<int> f_images, int n);

/// CSV with header l,rho,q,estimate,ci,exact,bound,parity (exact empty when
/// the exact path was infeasible).
std::string sweep_csv(const std::vector<experiments::SweepRow>& rows);

/// JSON run manifest: tool version, subcommand, seed, config echo, outputs,
/// wall-clock duration. Enough to reproduce the run exactly.
std::string run_manifest_json(const std::string& subcommand,
                              const std::map<std::string, std::string>& config_echo,
                              std::uint64_t seed, double duration_seconds,
                              const std::map<std::string, std::string>& outputs);

/// JSON summary of a Schreier system: |J|, f-images, q, D, generator bounds,
/// transversal words, action matrices.
std::string schreier_system_json(const schreier::SchreierSystem& sys);

// Plain-text form of F_q data: a "q <prime>" header line, then one row of
// residues per line (a vector is a single row).
std::string fq_matrix_text(const fqlin::FqMatrix& m);
std::string fq_vector_text(const fqlin::FqVector& v);
fqlin::FqMatrix fq_matrix_from_text(const std::string& text);
fqlin::FqVector fq_vector_from_text(const std::string& text);

void write_file(const std::string& path, const std::string& content);

} // namespace randgrp::io
