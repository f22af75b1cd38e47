#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bsys/cli.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bsys;
using namespace bsys::testing;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "bsys");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = (std::filesystem::temp_directory_path() / name).string();
  std::ofstream(path, std::ios::binary) << content;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("check") {
  auto r = run({"check", "--in", data_path("terminal.json"), "--cutoff", "4"});
  CHECK(r.status == cli::ok);
  CHECK(r.out.find("TT.a pass") != std::string::npos);
  CHECK(r.out.find("fail") == std::string::npos);

  auto j = run({"check", "--in", data_path("r1.json"), "--cutoff", "3", "--json"});
  CHECK(j.status == cli::ok);
  auto reports = nlohmann::json::parse(j.out);
  CHECK(reports.size() == b0_law_ids().size() + b_law_ids().size() + unit_law_ids().size());
  CHECK(run({"check", "--in", data_path("r1.json"), "--cutoff", "3", "--json"}).out == j.out);
}

TEST_CASE("check reports law failures") {
  auto corpus = load_corpus();
  auto& m = corpus.mutants.front();
  auto path = temp_file("bsys_mutant.json", store(FinBSys(mutate(corpus.bases.at(m.base).data(), m))));
  auto r = run({"check", "--in", path});
  CHECK(r.status == cli::law_failure);
  CHECK(r.out.find(m.family + " fail") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("parse errors") {
  CHECK(run({"check"}).status == cli::parse_error);
  CHECK(run({"check", "--in", data_path("r1.json"), "--bogus"}).status == cli::parse_error);
  CHECK(run({"frobnicate"}).status == cli::parse_error);
  CHECK(run({"check", "--in", data_path("r1.json"), "--cutoff", "x"}).status == cli::parse_error);
  auto bad = temp_file("bsys_bad.json", "{\"kind\": \"finite-bsystem\", ");
  CHECK(run({"check", "--in", bad}).status == cli::parse_error);
  std::remove(bad.c_str());
}

TEST_CASE("budget") {
  auto r = run({"csys", "--in", data_path("r1.json"), "--cutoff", "3", "--budget", "10"});
  CHECK(r.status == cli::budget_exceeded);
  CHECK(r.err.find("CutoffTooLarge") != std::string::npos);
}

TEST_CASE("unit") {
  auto r = run({"unit", "--in", data_path("nub1.json"), "--cutoff", "4"});
  CHECK(r.status == cli::ok);
  CHECK(r.out.find("delta (T) = (T,T;s1(1))") != std::string::npos);
  CHECK(r.out.find("delta (T,T,T) = (T,T,T,T;s1(3))") != std::string::npos);
  auto j = nlohmann::json::parse(run({"unit", "--in", data_path("nub2.json"), "--json"}).out);
  CHECK(j["outcome"] == "unique");
  CHECK(j["delta"]["(T,T)"] == "(T,T,T;s2(2))");

  auto sparse = close_subsystem(TermView(term_file("rc.json")), {{{"(c,1)", 2}}, {}}, 3);
  auto path = temp_file("bsys_sparse.json", store(sparse.system));
  auto none = run({"unit", "--in", path, "--cutoff", "3"});
  CHECK(none.status == cli::ok);
  CHECK(none.out == "none\n");
  std::remove(path.c_str());
}

TEST_CASE("close") {
  auto out = (std::filesystem::temp_directory_path() / "bsys_close.json").string();
  auto r = run({"close", "--in", data_path("r1.json"), "--gen", "(T,T;s1(1))", "--cutoff", "4", "--out", out});
  CHECK(r.status == cli::ok);
  CHECK(slurp(out) == slurp(data_path("nub1.json")));
  auto twice = run({"close", "--in", out, "--gen", "(T,T;s1(1))", "--cutoff", "4"});
  CHECK(twice.out == slurp(out));
  std::remove(out.c_str());
  CHECK(run({"close", "--in", data_path("r1.json"), "--gen", "(Q)"}).status == cli::other_error);
}

TEST_CASE("csys and roundtrip") {
  auto r = run({"csys", "--in", data_path("terminal.json"), "--cutoff", "1"});
  CHECK(r.status == cli::ok);
  CHECK(r.out.find("morphisms 4") != std::string::npos);
  auto high = run({"csys", "--in", data_path("terminal.json"), "--cutoff", "2"});
  CHECK(high.status == cli::other_error);
  CHECK(high.err.find("height 5") != std::string::npos);
  CHECK(r.out.find("category laws: pass") != std::string::npos);
  auto j = nlohmann::json::parse(run({"csys", "--in", data_path("r1.json"), "--cutoff", "2", "--json"}).out);
  CHECK(j.contains("objects"));
  auto rt = run({"roundtrip", "--in", data_path("r2.json"), "--cutoff", "2"});
  CHECK(rt.status == cli::ok);
  CHECK(rt.out.find("roundtrip: operation tables identical at cutoff 2") != std::string::npos);
}

TEST_CASE("demo") {
  auto r = run({"demo"});
  CHECK(r.status == cli::ok);
  CHECK(r.out.find("hom nuB1→nuB2: operations preserved; unit NOT preserved") != std::string::npos);
  CHECK(run({"demo"}).out == r.out);
}
