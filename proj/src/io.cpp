#include "randgrp/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "randgrp/errors.hpp"
#include "randgrp/version.hpp"

namespace randgrp::io {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& path, int line,
                             const std::string& what) {
  throw InvalidInputError(path + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<long> parse_ints(const std::string& text) {
  std::istringstream is(text);
  std::vector<long> out;
  long v;
  while (is >> v) out.push_back(v);
  if (!is.eof()) throw InvalidInputError("expected integers, got '" + text + "'");
  return out;
}

} // namespace

groups::MarkedFiniteGroup load_group_file(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty()) parse_fail(path, 1, "empty group file");

  std::istringstream head(lines[0]);
  std::string tag;
  head >> tag;

  if (tag == "perm") {
    std::string degree_word;
    int degree = 0;
    head >> degree_word >> degree;
    if (degree_word != "degree" || degree <= 0)
      parse_fail(path, 1, "expected 'perm degree d'");
    std::vector<std::vector<int>> gens;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      if (lines[i].empty()) continue;
      const std::vector<long> vals = parse_ints(lines[i]);
      if (static_cast<int>(vals.size()) != degree)
        parse_fail(path, static_cast<int>(i + 1),
                   "expected " + std::to_string(degree) + " images");
      gens.emplace_back(vals.begin(), vals.end());
    }
    if (gens.empty()) parse_fail(path, 2, "no generator permutations");
    return groups::MarkedFiniteGroup::from_permutations(gens);
  }

  if (tag == "order") {
    int k = 0;
    head >> k;
    if (k <= 0) parse_fail(path, 1, "expected 'order k' with k > 0");
    if (lines.size() < static_cast<std::size_t>(k) + 2)
      parse_fail(path, static_cast<int>(lines.size()),
                 "expected " + std::to_string(k) + " table rows plus a marks line");
    std::vector<std::vector<int>> table;
    for (int r = 0; r < k; ++r) {
      const std::vector<long> vals = parse_ints(lines[static_cast<std::size_t>(r) + 1]);
      if (static_cast<int>(vals.size()) != k)
        parse_fail(path, r + 2, "expected " + std::to_string(k) + " entries");
      table.emplace_back(vals.begin(), vals.end());
    }
    std::istringstream marks_line(lines[static_cast<std::size_t>(k) + 1]);
    std::string marks_word;
    marks_line >> marks_word;
    if (marks_word != "marks") parse_fail(path, k + 2, "expected 'marks i_1 ... i_n'");
    std::vector<int> marks;
    long v;
    while (marks_line >> v) marks.push_back(static_cast<int>(v));
    if (marks.size() < 2) parse_fail(path, k + 2, "need at least 2 marks");
    return groups::MarkedFiniteGroup::from_mul_table(table, marks);
  }

  parse_fail(path, 1, "unknown group file header '" + tag + "'");
}

ParsedConfig load_config_file(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  std::map<std::string, std::string> kv;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string line = lines[i];
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream is(line);
    std::string key;
    if (!(is >> key)) continue;
    std::string rest;
    std::getline(is, rest);
    const auto start = rest.find_first_not_of(" \t");
    rest = (start == std::string::npos) ? "" : rest.substr(start);
    const auto end = rest.find_last_not_of(" \t\r");
    if (end != std::string::npos) rest = rest.substr(0, end + 1);
    if (kv.count(key))
      parse_fail(path, static_cast<int>(i + 1), "duplicate key '" + key + "'");
    kv[key] = rest;
  }

  const auto need = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end())
      throw InvalidInputError(path + ": missing required field '" + key + "'");
    return it->second;
  };
  const auto to_long = [&](const std::string& key, const std::string& val) {
    try {
      std::size_t pos = 0;
      const long x = std::stol(val, &pos);
      if (pos != val.size()) throw std::invalid_argument(val);
      return x;
    } catch (const std::exception&) {
      throw InvalidInputError(path + ": field '" + key + "' is not an integer: '" +
                              val + "'");
    }
  };

  const int n = static_cast<int>(to_long("n", need("n")));
  const std::uint32_t q = static_cast<std::uint32_t>(to_long("q", need("q")));
  const int rho = static_cast<int>(to_long("rho", need("rho")));
  const long trials = to_long("trials", need("trials"));
  const std::uint64_t seed =
      static_cast<std::uint64_t>(to_long("seed", need("seed")));

  long l_min, l_max, l_step = 1;
  if (kv.count("l")) {
    l_min = l_max = to_long("l", kv.at("l"));
  } else {
    l_min = to_long("l_min", need("l_min"));
    l_max = to_long("l_max", need("l_max"));
    if (kv.count("l_step")) l_step = to_long("l_step", kv.at("l_step"));
  }

  // J specification plus the f-images (as marks of J).
  std::vector<int> f_images;
  if (kv.count("f")) {
    for (long v : parse_ints(kv.at("f"))) f_images.push_back(static_cast<int>(v));
    if (static_cast<int>(f_images.size()) != n)
      throw InvalidInputError(path + ": field 'f' must list exactly n images");
  }
  groups::MarkedFiniteGroup j = [&]() {
    try {
      return group_from_jspec(need("J"), std::move(f_images), n);
    } catch (const InvalidInputError& e) {
      throw InvalidInputError(path + ": " + e.what());
    }
  }();

  experiments::ExperimentConfig cfg{std::move(j), n,     q,      rho,
                                    l_min,        l_max, l_step, trials,
                                    seed};
  experiments::validate(cfg);
  return ParsedConfig{std::move(cfg), std::move(kv)};
}

groups::MarkedFiniteGroup group_from_jspec(const std::string& spec,
                                           std::vector<int> f_images, int n) {
  std::string normalized = spec;
  for (char& c : normalized)
    if (c == ':') c = ' ';
  std::istringstream js(normalized);
  std::string kind;
  js >> kind;

  if (kind == "trivial") {
    if (f_images.empty()) f_images.assign(static_cast<std::size_t>(n), 0);
    return groups::cyclic(1, std::move(f_images));
  }
  if (kind != "cyclic" && kind != "file")
    throw InvalidInputError("unknown J kind '" + kind + "' (trivial|cyclic|file)");
  if (f_images.empty())
    throw InvalidInputError("missing required field 'f'");
  if (kind == "cyclic") {
    int k = 0;
    js >> k;
    if (k < 1) throw InvalidInputError("'J cyclic K' needs K >= 1");
    return groups::cyclic(k, std::move(f_images));
  }
  std::string gpath;
  js >> gpath;
  if (gpath.empty()) throw InvalidInputError("'J file PATH' needs a path");
  const groups::MarkedFiniteGroup base = load_group_file(gpath);
  std::vector<std::vector<int>> table(
      static_cast<std::size_t>(base.order()),
      std::vector<int>(static_cast<std::size_t>(base.order())));
  for (int a = 0; a < base.order(); ++a)
    for (int b = 0; b < base.order(); ++b)
      table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          base.mul(a, b);
  return groups::MarkedFiniteGroup::from_mul_table(table, std::move(f_images));
}

std::string sweep_csv(const std::vector<experiments::SweepRow>& rows) {
  std::ostringstream os;
  os << "l,rho,q,estimate,ci,exact,bound,parity\n";
  os.precision(12);
  for (const auto& r : rows) {
    os << r.l << ',' << r.rho << ',' << r.q << ',' << r.estimate << ',' << r.ci
       << ',';
    if (r.exact) os << *r.exact;
    os << ',' << r.bound << ',' << r.parity << '\n';
  }
  return os.str();
}

std::string run_manifest_json(const std::string& subcommand,
                              const std::map<std::string, std::string>& config_echo,
                              std::uint64_t seed, double duration_seconds,
                              const std::map<std::string, std::string>& outputs) {
  json j;
  j["tool"] = "randgrp";
  j["version"] = kVersion;
  j["subcommand"] = subcommand;
  j["seed"] = seed;
  j["config"] = config_echo;
  j["outputs"] = outputs;
  j["duration_seconds"] = duration_seconds;
  return j.dump(2) + "\n";
}

std::string schreier_system_json(const schreier::SchreierSystem& sys) {
  json j;
  j["J_order"] = sys.jgroup().order();
  j["f_images"] = sys.jgroup().marks();
  j["n"] = sys.n();
  j["q"] = sys.q();
  j["D"] = sys.D();
  const schreier::GeneratorBounds gb = sys.min_module_generators();
  j["min_module_generators"] = {{"lower", gb.lower},
                                {"upper", gb.upper},
                                {"certified", gb.certified()}};
  json transversal = json::object();
  for (int e = 0; e < sys.jgroup().order(); ++e)
    transversal[std::to_string(e)] = words::to_string(sys.transversal(e));
  j["transversal"] = transversal;
  json actions = json::object();
  for (int e = 0; e < sys.jgroup().order(); ++e) {
    const auto& m = sys.action(e);
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c));
      rows.push_back(row);
    }
    actions[std::to_string(e)] = rows;
  }
  j["action"] = actions;
  return j.dump(2) + "\n";
}

std::string fq_matrix_text(const fqlin::FqMatrix& m) {
  std::ostringstream os;
  os << "q " << m.q() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ' ';
      os << m.at(r, c);
    }
    os << '\n';
  }
  return os.str();
}

std::string fq_vector_text(const fqlin::FqVector& v) {
  std::ostringstream os;
  os << "q " << v.q() << '\n';
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) os << ' ';
    os << v[i];
  }
  os << '\n';
  return os.str();
}

namespace {

std::pair<std::uint32_t, std::vector<std::vector<std::uint32_t>>>
parse_fq_rows(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  long q = 0;
  if (!(is >> header >> q) || header != "q")
    throw InvalidInputError("expected a 'q <prime>' header");
  std::string line;
  std::getline(is, line); // rest of the header line
  std::vector<std::vector<std::uint32_t>> rows;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::uint32_t> row;
    for (long v : parse_ints(line)) {
      if (v < 0) throw InvalidInputError("negative residue in F_q data");
      row.push_back(static_cast<std::uint32_t>(v));
    }
    if (!rows.empty() && row.size() != rows[0].size())
      throw InvalidInputError("ragged rows in F_q data");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InvalidInputError("no rows in F_q data");
  return {static_cast<std::uint32_t>(q), std::move(rows)};
}

} // namespace

fqlin::FqMatrix fq_matrix_from_text(const std::string& text) {
  const auto [q, rows] = parse_fq_rows(text);
  fqlin::FqMatrix m(q, rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m.at(r, c) = rows[r][c] % q;
  return m;
}

fqlin::FqVector fq_vector_from_text(const std::string& text) {
  const auto [q, rows] = parse_fq_rows(text);
  if (rows.size() != 1)
    throw InvalidInputError("expected a single row of residues");
  return fqlin::FqVector(q, rows[0]);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write file: " + path);
  out << content;
}

} // namespace randgrp::io
