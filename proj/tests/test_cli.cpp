#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "cli.hpp"
#include "rlip/model.hpp"

using namespace rlip;

static const std::string kData = RLIP_TEST_DATA;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("solve") {
  const auto r = run({"solve", "--instance", kData + "/fixA.json", "--c", "-1"});
  CHECK(r.code == 0);
  CHECK(r.out == "value -1 at x = 1\n");
  const auto j = run({"solve", "--instance", kData + "/fixA.json", "--c", "-1", "--json"});
  CHECK(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["schema"] == "rlip/1");
  CHECK(doc["primal"]["value"] == "-1");
}

TEST_CASE("duals table on FIX-B") {
  const auto r = run({"duals", "--instance", kData + "/fixB.json", "--c", "-1,-1", "--k", "all", "--json"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["duals"]["primal"]["value"] == "0");
  for (const auto& row : doc["duals"]["rows"]) {
    const int k = row["k"];
    if (k == 1 || k == 2 || k == 4) CHECK(row["value"] == "-inf");
    else CHECK(row["value"] == "0");
  }
}

TEST_CASE("verify exits 0 on a consistent non-convex verdict") {
  const auto r = run({"verify", "--instance", kData + "/fixB.json", "--theorem", "4.1:2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("CertifiedNonConvex") != std::string::npos);
  CHECK(r.out.find("gap exhibited") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"solve", "--instance", kData + "/fixA.json"}).code == 2);
  CHECK(run({"solve", "--instance", kData + "/fixA.json", "--c", "1,2"}).code == 2);
  CHECK(run({"solve", "--instance", kData + "/missing.json", "--c", "1"}).code == 2);
  CHECK(run({"slater", "--instance", kData + "/fixA.json", "--cond", "9.9"}).code == 2);
  CHECK(run({"verify", "--instance", kData + "/fixA.json", "--theorem", "7.7"}).code == 2);
  CHECK(run({"duals", "--instance", kData + "/fixA.json", "--c", "1", "--k", "10"}).code == 2);
}

TEST_CASE("cap environment") {
  const Caps c = cli::parse_cap_env("10,5");
  CHECK(c.selections == 10);
  CHECK(c.pieces == 5);
  CHECK(cli::parse_cap_env("7").pieces == kDefaultPieceCap);
  CHECK_THROWS(cli::parse_cap_env("x"));
}

TEST_CASE("cones, farkas, slater") {
  auto r = run({"cones", "--instance", kData + "/fixB.json", "--variant", "N2", "--check", "convexity"});
  CHECK(r.code == 0);
  CHECK(r.out.find("CertifiedNonConvex witness (1, 1, 0)") != std::string::npos);
  r = run({"cones", "--instance", kData + "/fixB.json", "--variant", "N2", "--check", "containment", "--other", "N6"});
  CHECK(r.code == 0);
  CHECK(r.out.find("true") != std::string::npos);
  r = run({"farkas", "--instance", kData + "/fixA.json", "--variant", "P2.1", "--c", "-1", "--s", "-2"});
  CHECK(r.code == 0);
  r = run({"farkas", "--instance", kData + "/fixSA.json", "--variant", "RSAP-I", "--c", "-1", "--s", "-3"});
  CHECK(r.code == 0);
  r = run({"slater", "--instance", kData + "/fixB.json", "--cond", "4.5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("(-1, -1)") != std::string::npos);
}

TEST_CASE("gen and report are deterministic") {
  const std::string path = "cli_gen_test.json";
  CHECK(run({"gen", "--seed", "5", "--out", path, "--force-feasible"}).code == 0);
  const Instance a = load_instance(path);
  CHECK(run({"gen", "--seed", "5", "--out", path, "--force-feasible"}).code == 0);
  CHECK(load_instance(path) == a);
  const auto r1 = run({"report", "--instance", kData + "/fixB.json"});
  const auto r2 = run({"report", "--instance", kData + "/fixB.json"});
  CHECK(r1.code == 0);
  CHECK(r1.out == r2.out);
  CHECK(r1.out.find("# Cones") != std::string::npos);
  std::remove(path.c_str());
}
