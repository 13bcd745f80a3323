#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "randgrp/errors.hpp"
#include "randgrp/io.hpp"

using namespace randgrp;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& content) {
    static int counter = 0;
    path = "randgrp_test_tmp_" + std::to_string(counter++) + ".txt";
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_SUITE("io") {

TEST_CASE("group table file") {
  TempFile f("order 4\n"
             "0 1 2 3\n"
             "1 2 3 0\n"
             "2 3 0 1\n"
             "3 0 1 2\n"
             "marks 1 3\n");
  const auto g = io::load_group_file(f.path);
  CHECK(g.order() == 4);
  CHECK(g.marks() == std::vector<int>{1, 3});
  CHECK(g.mul(1, 3) == 0);
}

TEST_CASE("permutation group file") {
  TempFile f("perm degree 3\n"
             "1 0 2\n"
             "1 2 0\n");
  const auto g = io::load_group_file(f.path);
  CHECK(g.order() == 6);
  CHECK(g.num_marks() == 2);
}

TEST_CASE("group file parse errors carry line numbers") {
  TempFile bad_row("order 2\n0 1\n1\nmarks 1 1\n");
  CHECK_THROWS_WITH_AS(io::load_group_file(bad_row.path),
                       doctest::Contains(":3:"), InvalidInputError);
  TempFile bad_header("sizes 2\n");
  CHECK_THROWS_WITH_AS(io::load_group_file(bad_header.path),
                       doctest::Contains(":1:"), InvalidInputError);
  TempFile no_marks("order 2\n0 1\n1 0\nmark 1 1\n");
  CHECK_THROWS_WITH_AS(io::load_group_file(no_marks.path),
                       doctest::Contains(":4:"), InvalidInputError);
  CHECK_THROWS_AS(io::load_group_file("does_not_exist.grp"), InvalidInputError);
}

TEST_CASE("config files parse and validate") {
  TempFile f("# comment\n"
             "n 2\n"
             "q 3\n"
             "rho 2\n"
             "l 10\n"
             "trials 500\n"
             "seed 42\n"
             "J trivial\n");
  const auto parsed = io::load_config_file(f.path);
  CHECK(parsed.config.n == 2);
  CHECK(parsed.config.q == 3);
  CHECK(parsed.config.rho == 2);
  CHECK(parsed.config.l_min == 10);
  CHECK(parsed.config.l_max == 10);
  CHECK(parsed.config.seed == 42);
  CHECK(parsed.config.J.order() == 1);
  CHECK(parsed.raw.at("J") == "trivial");
}

TEST_CASE("config with a cyclic J and an l-range") {
  TempFile f("n 2\nq 5\nrho 2\nl_min 4\nl_max 12\nl_step 4\n"
             "trials 100\nseed 7\nJ cyclic 2\nf 1 0\n");
  const auto parsed = io::load_config_file(f.path);
  CHECK(parsed.config.J.order() == 2);
  CHECK(parsed.config.J.marks() == std::vector<int>{1, 0});
  CHECK(parsed.config.l_min == 4);
  CHECK(parsed.config.l_max == 12);
  CHECK(parsed.config.l_step == 4);
}

TEST_CASE("config errors name the offending field") {
  TempFile missing_seed("n 2\nq 3\nrho 2\nl 10\ntrials 500\nJ trivial\n");
  CHECK_THROWS_WITH_AS(io::load_config_file(missing_seed.path),
                       doctest::Contains("seed"), InvalidInputError);
  TempFile missing_f("n 2\nq 5\nrho 1\nl 4\ntrials 10\nseed 1\nJ cyclic 2\n");
  CHECK_THROWS_WITH_AS(io::load_config_file(missing_f.path),
                       doctest::Contains("'f'"), InvalidInputError);
  TempFile bad_j("n 2\nq 3\nrho 1\nl 4\ntrials 10\nseed 1\nJ fancy\n");
  CHECK_THROWS_WITH_AS(io::load_config_file(bad_j.path),
                       doctest::Contains("fancy"), InvalidInputError);
  TempFile dup("n 2\nn 3\nq 3\nrho 1\nl 4\ntrials 10\nseed 1\nJ trivial\n");
  CHECK_THROWS_WITH_AS(io::load_config_file(dup.path),
                       doctest::Contains("duplicate"), InvalidInputError);
}

TEST_CASE("sweep CSV format") {
  experiments::SweepRow row{10, 2, 3, 0.5, 0.01, 0.49, 0.75, 0, 0.1};
  experiments::SweepRow no_exact{11, 2, 3, 0.5, 0.01, std::nullopt, 0.75, 1, 0.1};
  const std::string csv = io::sweep_csv({row, no_exact});
  CHECK(csv.find("l,rho,q,estimate,ci,exact,bound,parity\n") == 0);
  CHECK(csv.find("10,2,3,0.5,0.01,0.49,0.75,0\n") != std::string::npos);
  CHECK(csv.find("11,2,3,0.5,0.01,,0.75,1\n") != std::string::npos);
}

TEST_CASE("run manifest JSON carries version, seed and config") {
  const std::string m = io::run_manifest_json(
      "surject", {{"n", "2"}, {"seed", "42"}}, 42, 1.5, {{"csv", "out.csv"}});
  CHECK(m.find("\"version\"") != std::string::npos);
  CHECK(m.find("\"surject\"") != std::string::npos);
  CHECK(m.find("\"seed\": 42") != std::string::npos);
  CHECK(m.find("out.csv") != std::string::npos);
}

TEST_CASE("F_q matrices and vectors round-trip through the text format") {
  fqlin::FqMatrix m(5, 2, 3);
  m.at(0, 0) = 1;
  m.at(0, 2) = 4;
  m.at(1, 1) = 2;
  const std::string text = io::fq_matrix_text(m);
  CHECK(text == "q 5\n1 0 4\n0 2 0\n");
  CHECK(io::fq_matrix_from_text(text) == m);

  const fqlin::FqVector v(7, {1, 2, 3});
  CHECK(io::fq_vector_text(v) == "q 7\n1 2 3\n");
  CHECK(io::fq_vector_from_text(io::fq_vector_text(v)) == v);

  CHECK_THROWS_AS(io::fq_matrix_from_text("p 5\n1 2\n"), InvalidInputError);
  CHECK_THROWS_AS(io::fq_matrix_from_text("q 6\n1 2\n"), InvalidInputError);
  CHECK_THROWS_AS(io::fq_matrix_from_text("q 5\n1 2\n3\n"), InvalidInputError);
  CHECK_THROWS_AS(io::fq_vector_from_text("q 5\n1 2\n3 4\n"), InvalidInputError);
}

TEST_CASE("schreier system export") {
  const auto sys =
      schreier::SchreierSystem::build(groups::cyclic(2, {1, 0}), 3);
  const std::string j = io::schreier_system_json(sys);
  CHECK(j.find("\"D\": 3") != std::string::npos);
  CHECK(j.find("\"transversal\"") != std::string::npos);
  CHECK(j.find("\"action\"") != std::string::npos);
}

} // TEST_SUITE
