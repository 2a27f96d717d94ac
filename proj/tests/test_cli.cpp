#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "munu/cli.hpp"

using munu::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result munu_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(MUNU_SAMPLES_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& contents) {
  auto dir = std::filesystem::temp_directory_path() / "munu_cli_tests";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream(path) << contents;
  return path.string();
}

}  // namespace

TEST_CASE("cli: lattice commands") {
  auto r = munu_run({"lat", "lfp", sample("succ.lat"), "F"});
  CHECK(r.code == 0);
  CHECK(r.out == "{0,1,2,3}\n");
  CHECK(munu_run({"lat", "gfp", sample("succ.lat"), "F"}).out == "{0,1,2,3}\n");
  CHECK(munu_run({"lat", "lfp", sample("succ.lat"), "Keep0"}).out == "{}\n");
  CHECK(munu_run({"lat", "gfp", sample("succ.lat"), "Keep0"}).out == "{0}\n");
  CHECK(munu_run({"lat", "prefix", sample("chain.lat"), "Climb"}).out == "c2\nc3\nc4\n");
  CHECK(munu_run({"lat", "postfix", sample("chain.lat"), "Climb"}).out == "c0\nc1\nc2\nc3\nc4\n");

  r = munu_run({"lat", "induction", sample("diamond.lat"), "Up"});
  CHECK(r.code == 0);
  CHECK(r.out.find("induction: holds") != std::string::npos);
  CHECK(munu_run({"lat", "coinduction", sample("chain.lat"), "Climb"}).code == 0);

  r = munu_run({"lat", "dual", sample("succ.lat"), "Keep0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("{} -> {1,2,3}") != std::string::npos);
  CHECK(r.out.find("duality: holds") != std::string::npos);

  r = munu_run({"lat", "neg", sample("diamond.lat"), "m3", "a"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("top\n", 0) == 0);
  CHECK(r.out.find("heyting-adjunction: FAILS") != std::string::npos);
  CHECK(munu_run({"lat", "neg", sample("succ.lat"), "succ", "{0,1}"}).out.rfind("{2,3}\n", 0) == 0);
  CHECK(munu_run({"lat", "imp", sample("succ.lat"), "succ", "{0,1}", "{1}"}).out.rfind("{1,2,3}\n", 0) == 0);
}

TEST_CASE("cli: a non-monotone function is a failed property") {
  auto file = temp_file("swap.lat", "lattice c\nelements: lo, hi\norder: lo<=hi\nfun Swap on c\nlo -> hi\nhi -> lo\n");
  auto r = munu_run({"lat", "lfp", file, "Swap"});
  CHECK(r.code == 1);
  CHECK(r.out.find("monotonicity: FAILS") != std::string::npos);
  CHECK(r.out.find("lo | hi") != std::string::npos);
}

TEST_CASE("cli: structural commands") {
  auto r = munu_run({"st", "sub", "mu X . Unit + Int * X", "Top"});
  CHECK(r.code == 0);
  CHECK(r.out == "true\n");
  r = munu_run({"st", "sub", "Unit * Unit", "Unit + Unit"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("false\n", 0) == 0);
  CHECK(munu_run({"st", "eq", "lib:Nat", "Unit + lib:Nat"}).out == "true\n");

  r = munu_run({"st", "denote", "mu X . Unit + Int * X", "--depth", "3"});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);
  CHECK(munu_run({"st", "denote", "mu X . Int * X", "--depth", "2", "--partial"}).out.find("<0;<1;_>>") !=
        std::string::npos);

  r = munu_run({"st", "oracle", "mu X . Unit + Nat * X", "mu X . Unit + Int * X", "--oracle-depth", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("true\n", 0) == 0);

  r = munu_run({"st", "endo", "Unit + Int * X", "X", "--depth", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("universe: 7 trees") != std::string::npos);

  r = munu_run({"st", "sub", "NatList", "IntList", "--defs", sample("lists.ty")});
  CHECK(r.out == "true\n");
}

TEST_CASE("cli: nominal commands") {
  CHECK(munu_run({"nom", "neg", sample("window.tbl"), "ColoredWindow", "--depth", "1"}).out == "NonColoredWindow\n");
  CHECK(munu_run({"nom", "neg", sample("window_string.tbl"), "ColoredWindow"}).out == "Object\n");
  CHECK(munu_run({"nom", "sub", sample("fbounded.tbl"), "MyClass", "Comparable<MyClass>"}).out == "true\n");
  CHECK(munu_run({"nom", "free", sample("collections.tbl"), "List"}).out == "List<?>\n");
  CHECK(munu_run({"nom", "classify", sample("fbounded.tbl"), "Comparable", "MyClass"}).out ==
        "pre_fixed: false\npost_fixed: true\nfixed: false\n");

  auto r = munu_run({"nom", "least-pre", sample("args.tbl"), "F", "--depth", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("witnesses: F<A> | F<B>") != std::string::npos);

  r = munu_run({"nom", "negcheck", sample("window.tbl"), "NonColoredWindow", "ColoredWindow", "Window"});
  CHECK(r.code == 0);
  r = munu_run({"nom", "negcheck", sample("window.tbl"), "ColoredWindow", "ColoredWindow", "Window"});
  CHECK(r.code == 1);

  CHECK(munu_run({"nom", "family", sample("collections.tbl"), "List"}).code == 0);
  CHECK(munu_run({"nom", "covariance", sample("collections.tbl"), "Coll"}).code == 0);
  CHECK(munu_run({"nom", "universe", sample("window.tbl"), "--depth", "0"}).out ==
        "Null\nObject\nWindow\nColoredWindow\nNonColoredWindow\n");
  r = munu_run({"nom", "export", sample("window.tbl")});
  CHECK(r.out.find("elements: 5") != std::string::npos);
  CHECK(r.out.find("ColoredWindow <= Window") != std::string::npos);
}

TEST_CASE("cli: usage and parse errors exit 2 with a location") {
  CHECK(munu_run({}).code == 2);
  CHECK(munu_run({"lat", "frobnicate"}).code == 2);
  CHECK(munu_run({"st", "sub", "Unit"}).code == 2);
  CHECK(munu_run({"lat", "lfp", sample("missing.lat"), "F"}).code == 2);
  CHECK(munu_run({"lat", "lfp", sample("succ.lat"), "Nope"}).code == 2);
  CHECK(munu_run({"nom", "universe", sample("window.tbl"), "--depth", "9"}).code == 2);
  CHECK(munu_run({"nom", "universe", sample("window.tbl"), "--depth", "5"}).code == 2);

  auto bad = temp_file("bad.tbl", "class A\nclass B extends Nope\n");
  auto r = munu_run({"nom", "universe", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("bad.tbl:2:17:") != std::string::npos);

  r = munu_run({"st", "sub", "Unit + Q", "Top"});
  CHECK(r.code == 2);
  CHECK(r.err.find(":1:8:") != std::string::npos);

  CHECK(munu_run({"--help"}).code == 0);
}

TEST_CASE("cli: JSON envelopes") {
  auto r = munu_run({"lat", "induction", sample("succ.lat"), "F", "--json"});
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "lat induction");
  CHECK(j["reports"][0]["principle"] == "induction");
  CHECK(j["reports"][0]["holds"] == true);

  r = munu_run({"nom", "family", sample("collections.tbl"), "List", "--depth", "1", "--json"});
  j = nlohmann::json::parse(r.out);
  CHECK(j["reports"][0]["universe_depth"] == 1);
  CHECK(j["reports"][0]["notion"] == "family");

  r = munu_run({"st", "sub", "Nat", "Int", "--json"});
  j = nlohmann::json::parse(r.out);
  CHECK(j["answer"] == true);
  CHECK(j["verdict"]["visited_goals"] == 1);
}

TEST_CASE("cli: check all is deterministic and echoes the seed") {
  auto a = munu_run({"check", "all", MUNU_SAMPLES_DIR, "--seed", "5", "--json"});
  auto b = munu_run({"check", "all", MUNU_SAMPLES_DIR, "--seed", "5", "--json"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j["answer"]["failed"] == 0);
  for (const auto& rep : j["reports"]) CHECK(rep["seed"] == 5);
  auto human = munu_run({"check", "all", MUNU_SAMPLES_DIR, "--seed", "5"});
  CHECK(human.code == 0);
  CHECK(human.out.rfind("seed: 5\n", 0) == 0);
}
