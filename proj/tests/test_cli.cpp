#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "emn/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "emn");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = emn::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"remark12", "--bogus"}).code == 2);
  CHECK(run_cli({"--prec", "32", "remark12"}).code == 2);
  CHECK(run_cli({"--terms", "4", "remark12"}).code == 2);
  CHECK(run_cli({"verify", "e1n"}).code == 2);
  CHECK(run_cli({"verify", "e1n", "--n", "0"}).code == 2);
  CHECK(run_cli({"verify", "e1n", "--from", "28", "--to", "30", "--generators", "g.txt"}).code == 2);
  CHECK(run_cli({"density", "omega", "--family", "e1n", "--p", "3"}).code == 2);
  CHECK(run_cli({"height", "--m", "1", "--n", "2", "--x", "1", "--y", "1"}).code == 2);
}

TEST_CASE("remark12") {
  const Result r = run_cli({"remark12"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "relation E_{24,1}=pass"));
}

TEST_CASE("verify exit codes") {
  CHECK(run_cli({"verify", "e1n", "--n", "5"}).code == 3);
  const Result na = run_cli({"verify", "em1", "--m", "7", "--json", "-"});
  CHECK(na.code == 0);
  CHECK(has(na.out, "not-applicable"));
  CHECK(has(na.out, "11^2"));
  CHECK(run_cli({"verify", "e1n", "--n", "100"}).code == 0);
}

TEST_CASE("reports are identical for any worker count") {
  const Result a = run_cli({"--workers", "1", "--json", "-", "verify", "e1n", "--from", "28", "--to", "40"});
  const Result b = run_cli({"verify", "e1n", "--from", "28", "--to", "40", "--workers", "4", "--json", "-"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  std::istringstream lines(a.out);
  std::string line;
  bool header = false;
  while (std::getline(lines, line))
    if (line == "{\"schema\":1}") header = true;
  CHECK(header);
  CHECK(has(a.out, "\"check\":\"three-division\""));
}

TEST_CASE("json report file") {
  const std::string path = "cli_report_test.jsonl";
  CHECK(run_cli({"verify", "em1", "--m", "100", "--json", path}).code == 0);
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  CHECK(first == "{\"schema\":1}");
  std::string rest((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(has(rest, "\"status\":\"pass\""));
  std::remove(path.c_str());
}

TEST_CASE("height, curve info, reduction") {
  const Result h = run_cli({"height", "--m", "10", "--n", "1", "--x", "-1", "--y", "10"});
  CHECK(h.code == 0);
  CHECK(has(h.out, "1.1735895"));
  CHECK(has(h.out, "radius"));
  const Result info = run_cli({"curve", "info", "--m", "7", "--n", "1"});
  CHECK(info.code == 0);
  CHECK(has(info.out, "2^4 * 11^2 * 3889"));
  const Result red = run_cli({"reduction", "--m", "1", "--n", "2"});
  CHECK(red.code == 0);
  CHECK(has(red.out, "p = 107: I1"));
  CHECK(has(red.out, "p = 2: III"));
}

TEST_CASE("density commands") {
  const Result k = run_cli({"density", "kappa", "--family", "e1n", "--primes", "60"});
  CHECK(k.code == 0);
  CHECK(has(k.out, "0.972866"));
  CHECK(has(k.out, "> 0.97  yes"));
  const Result o = run_cli({"density", "omega", "--family", "em1", "--p", "7"});
  CHECK(o.code == 0);
  CHECK(has(o.out, "omega(7)"));
  const Result c = run_cli({"density", "census", "--family", "em1", "--x", "7"});
  CHECK(c.code == 0);
  CHECK(has(c.out, "count  6"));
}

}  // TEST_SUITE
