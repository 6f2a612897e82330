#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rainbow/core.hpp"
#include "rainbow/oracle.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run rhc(const std::string& args) {
  const std::string cmd = std::string(RHC_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch() {
  fs::path d = fs::current_path() / "cli_scratch";
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("find prints a JSON report and exits 0 whatever the outcome") {
  auto a = rhc("find --n 300 --seed 4");
  CHECK(a.code == 0);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j.contains("success"));
  CHECK(j["stages"].size() == 7);
  if (j["success"] == false) CHECK(j["failure"]["stage"].is_string());
  CHECK(rhc("find --n 300 --seed 4").out == a.out);
  CHECK(rhc("find --n 300 --seed 4 --jobs 4").out == a.out);
  CHECK(rhc("find --n 300 --seed 5").out != a.out);
}

TEST_CASE("configuration errors exit nonzero") {
  CHECK(rhc("find --n 300 --eps -3").code != 0);
  CHECK(rhc("find --n 300 --p1 0.1").code != 0);
  CHECK(rhc("mc --n 50 --trials 0").code != 0);
  CHECK(rhc("mc --n 50 --format xml").code != 0);
  CHECK(rhc("nosuch").code != 0);
  CHECK(rhc("").code != 0);
  CHECK(rhc("oracle --in /nonexistent/g.cgr").code != 0);
  CHECK(rhc("tail --m 10 --q 0").code != 0);
  CHECK(rhc("find --n 300 --out /nonexistent/dir/x.json").code != 0);
}

TEST_CASE("gen, oracle and reduce round trip through files") {
  const fs::path d = scratch();
  const fs::path g = d / "g.cgr", h = d / "g.h3", back = d / "back.cgr";
  REQUIRE(rhc("gen --n 8 --p 0.6 --kappa 10 --seed 3 --out " + g.string()).code == 0);
  std::istringstream gin(slurp(g));
  const rainbow::ColoredGraph graph = rainbow::read_cgr(gin);
  CHECK(graph.n() == 8);
  CHECK(graph.kappa() == 10);

  auto o = rhc("oracle --in " + g.string());
  REQUIRE(o.code == 0);
  auto j = nlohmann::json::parse(o.out);
  const bool found = std::holds_alternative<rainbow::HamiltonCycleCertificate>(rainbow::exact_rainbow_hamilton(graph));
  CHECK((j["result"] == "found") == found);
  CHECK(nlohmann::json::parse(rhc("oracle --budget 0 --in " + g.string()).out)["result"] != "proven-absent");

  REQUIRE(rhc("reduce --in " + g.string() + " --out " + h.string()).code == 0);
  std::istringstream hin(slurp(h));
  auto hyper = rainbow::read_h3(hin);
  CHECK(hyper.N == 18);
  CHECK(hyper.edges.size() == graph.edge_count());
  REQUIRE(rhc("reduce --in " + h.string() + " --n 8 --kappa 10 --out " + back.string()).code == 0);
  CHECK(slurp(back) == slurp(g));
  CHECK(rhc("reduce --in " + h.string()).code != 0);

  std::ofstream(d / "bad.h3") << "18 1\n1 2 3\n";
  CHECK(rhc("reduce --in " + (d / "bad.h3").string() + " --n 8 --kappa 10").code != 0);
  std::ofstream(d / "junk.cgr") << "not a graph\n";
  CHECK(rhc("oracle --in " + (d / "junk.cgr").string()).code != 0);
}

TEST_CASE("mc output is reproducible and documented") {
  const std::string args = "mc --n 60,80 --eps 0.9 --theta 0.9 --trials 4 --seed 9";
  auto a = rhc(args);
  REQUIRE(a.code == 0);
  CHECK(a.out.rfind("n,a,b,", 0) == 0);
  CHECK(rhc(args).out == a.out);
  CHECK(rhc(args + " --jobs 8").out == a.out);
  auto js = rhc(args + " --format json");
  CHECK(nlohmann::json::parse(js.out).size() == 2);
  auto help = rhc("mc --help");
  CHECK(help.out.find("success_fraction") != std::string::npos);
}

TEST_CASE("diag, tail and coupling") {
  auto d = rhc("diag --n 200 --eps 0.9 --theta 0.9 --trials 3 --format json");
  REQUIRE(d.code == 0);
  CHECK(nlohmann::json::parse(d.out)["trials"].size() == 3);

  auto t = rhc("tail --m 10,100 --q 0.5");
  REQUIRE(t.code == 0);
  CHECK(t.out.rfind("m,q,mq,k,", 0) == 0);
  CHECK(t.out.find("\n100,0.5,50,5,") != std::string::npos);
  auto tj = nlohmann::json::parse(rhc("tail --m 10 --q 0.05 --format json").out);
  CHECK(tj[0]["k"] == 0);
  CHECK(tj[0]["in_scope"] == false);

  auto c = rhc("coupling --r 10 --trials 20 --seed 2");
  REQUIRE(c.code == 0);
  CHECK(nlohmann::json::parse(c.out)["r"] == 10);
}
