#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "horotree/cli.hpp"
#include "horotree/rigidity.hpp"

using namespace horotree;
using nlohmann::json;

namespace {

struct CliResult {
  int code;
  std::string out, err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp_map(const TabulatedMap& map, const std::string& name) {
  std::string path = std::string("cli_test_") + name + ".jsonl";
  std::ofstream f(path);
  save_tabulated_map(map, f);
  return path;
}

}  // namespace

TEST_CASE("tree ball emits the exact BFS ball") {
  auto r = cli({"tree", "ball", "--prime", "2", "--radius", "2"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["vertices"].size() == 10);  // 1 + 3 + 3·2
  CHECK(j["edges"].size() == 9);

  auto dot = cli({"tree", "ball", "--prime", "2", "--radius", "2", "--format", "dot",
                  "--mark", "0", "inf"});
  REQUIRE(dot.code == 0);
  CHECK(std::count(dot.out.begin(), dot.out.end(), '[') >= 10);
  CHECK(dot.out.find("online=true") != std::string::npos);
  CHECK(dot.out.find("\"0:0\" -- \"1:0\"") != std::string::npos);
}

TEST_CASE("tree geodesic lists the diagonal window") {
  auto r = cli({"tree", "geodesic", "--prime", "3", "--ends", "0", "inf", "--window",
                "-2", "2"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  std::vector<std::string> expect = {"-2:0", "-1:0", "0:0", "1:0", "2:0"};
  CHECK(j["vertices"].get<std::vector<std::string>>() == expect);
}

TEST_CASE("horo table reproduces the doubling heights") {
  auto r = cli({"horo", "table", "--prime", "2", "--base", "inf", "--window", "0", "3",
                "--H", "2", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("0:0,inf,2,1") != std::string::npos);
  CHECK(r.out.find("3:0,inf,16,1") != std::string::npos);
}

TEST_CASE("horo profile carries the on-line argument") {
  auto r = cli({"horo", "profile", "--pair", "0", "inf", "--radius", "4", "--prime", "3",
                "--H", "2", "--check-law"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  bool saw_online = false;
  for (const auto& row : j["rows"])
    if (row["k"] == 0) {
      CHECK(row["argument"] == "4");
      saw_online = true;
    }
  CHECK(saw_online);
  CHECK(j["law"]["violations"] == 0);
}

TEST_CASE("bs subcommands") {
  auto r = cli({"bs", "comm", "--m", "2", "--n", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "{\"commensurable\":false}\n");
  auto r2 = cli({"bs", "comm", "--m", "4", "--n", "8"});
  CHECK(json::parse(r2.out)["root"] == 2);

  auto phi = cli({"bs", "phi", "--word", "abA", "--prime", "2"});
  REQUIRE(phi.code == 0);
  json j = json::parse(phi.out);
  CHECK(j["matrix"][0][1] == "4");
}

TEST_CASE("rig subcommands") {
  auto s0 = cli({"rig", "s0", "--prime", "2", "--k", "1", "--D", "1", "--K0", "1"});
  REQUIRE(s0.code == 0);
  CHECK(json::parse(s0.out)["s0"] == 4);

  Prime p(2);
  auto grid = lattice_window(Integer(3), 5, Rational(4), p);
  std::string good_path = write_temp_map(tabulate_linear(Rational(2), grid), "good");
  auto ok = cli({"rig", "verify", "--map", good_path, "--L", "3", "--prime", "2", "--k",
                 "1", "--D", "3/2"});
  CHECK(ok.code == 0);
  CHECK(json::parse(ok.out)["violations"].empty());

  TabulatedMap broken = tabulate_linear(Rational(1), grid);
  std::swap(broken.entries[make_rat(97, 96)], broken.entries[Rational(4)]);
  std::string bad_path = write_temp_map(broken, "bad");
  auto bad = cli({"rig", "verify", "--map", bad_path, "--L", "3", "--prime", "2", "--k",
                  "1", "--D", "3/2"});
  CHECK(bad.code == 2);
  CHECK(!json::parse(bad.out)["violations"].empty());

  TabulatedMap chain;
  for (long a = -4; a <= 4; ++a)
    for (long r = 0; r <= 52; ++r) {
      Rational x = Rational(Rational(a) / pow_p(p, r));
      chain.entries[x] = Rational(3 * x);
    }
  std::string chain_path = write_temp_map(chain, "chain");
  auto ex = cli({"rig", "extract", "--map", chain_path, "--q", "1", "--prime", "2"});
  REQUIRE(ex.code == 0);
  CHECK(json::parse(ex.out)["alpha"] == "3");

  TabulatedMap shallow;
  for (long a = -4; a <= 4; ++a) shallow.entries[Rational(a)] = Rational(3 * a);
  std::string shallow_path = write_temp_map(shallow, "shallow");
  auto ws = cli({"rig", "extract", "--map", shallow_path, "--q", "1", "--prime", "2"});
  CHECK(ws.code == 1);
  CHECK(json::parse(ws.out)["status"] == "window-too-small");

  std::remove(good_path.c_str());
  std::remove(bad_path.c_str());
  std::remove(chain_path.c_str());
  std::remove(shallow_path.c_str());
}

TEST_CASE("comm subcommands") {
  auto b = cli({"comm", "bound", "--g", "1,0;0,2", "--maxlen", "4", "--prime", "3"});
  REQUIRE(b.code == 0);
  json j = json::parse(b.out);
  CHECK(j["d"] == "2");
  CHECK(j["stable"] == true);

  auto t = cli({"comm", "transport", "--from", "1", "0"});
  REQUIRE(t.code == 0);
  json tj = json::parse(t.out);
  CHECK(tj["matrix"][0][0] == "1");
  CHECK(tj["matrix"][0][1] == "-1");
  CHECK(tj["matrix"][1][0] == "1");
  CHECK(tj["matrix"][1][1] == "0");
}

TEST_CASE("deterministic byte-identical output") {
  for (auto args : {std::vector<std::string>{"tree", "ball", "--prime", "3", "--radius",
                                             "2", "--format", "dot"},
                    std::vector<std::string>{"horo", "profile", "--pair", "0", "1",
                                             "--radius", "3", "--prime", "2"}}) {
    auto r1 = cli(args);
    auto r2 = cli(args);
    CHECK(r1.code == r2.code);
    CHECK(r1.out == r2.out);
  }
}

TEST_CASE("exit codes") {
  CHECK(cli({"nonsense"}).code == 64);
  CHECK(cli({}).code == 64);
  auto bad_prime = cli({"tree", "ball", "--prime", "6", "--radius", "1"});
  CHECK(bad_prime.code == 1);
  CHECK(bad_prime.err.find("error") != std::string::npos);
  auto bad_H = cli({"horo", "table", "--prime", "2", "--base", "inf", "--window", "0",
                    "1", "--H", "1"});
  CHECK(bad_H.code == 1);
}

TEST_CASE("environment variable supplies the default prime") {
  setenv("HOROTREE_PRIME", "3", 1);
  auto r = cli({"tree", "ball", "--radius", "1"});
  unsetenv("HOROTREE_PRIME");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["prime"] == 3);
  CHECK(json::parse(r.out)["vertices"].size() == 5);
}

TEST_CASE("selftests run clean") {
  CHECK(cli({"tree", "ball", "--selftest"}).code == 0);
  CHECK(cli({"bs", "comm", "--selftest"}).code == 0);
}

TEST_CASE("artifacts can be written to a path") {
  std::string path = "cli_test_out.json";
  auto r = cli({"bs", "comm", "--m", "4", "--n", "8", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  CHECK(json::parse(text)["root"] == 2);
  std::remove(path.c_str());
}
