#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "exptop/cli.hpp"

using namespace exptop;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("number formatting") {
    CHECK(cli::format_number(0.0) == "0");
    CHECK(cli::format_number(1e-16) == "0");
    CHECK(cli::format_number(-3.0) == "-3");
    CHECK(cli::format_number(1.0 / 3.0) == "0.333333333333");
  }

  TEST_CASE("coord") {
    Run one = run({"coord", "0"});
    CHECK(one.code == cli::kExitOk);
    CHECK(one.out == "{\"tag\":\"C1\",\"alpha\":0}\n");
    Run pair = run({"coord", "0", "3.141592653589793"});
    auto j = nlohmann::json::parse(pair.out);
    CHECK(j["tag"] == "C2");
    CHECK(j["phi"].get<double>() == doctest::Approx(1.570796326795));
    Run triple = run({"coord", "0", "1.5707963267948966", "3.141592653589793"});
    auto t = nlohmann::json::parse(triple.out);
    CHECK(t["tag"] == "C3");
    CHECK(t["z"]["re"].get<double>() == doctest::Approx(0.5));
    CHECK(t["z"]["im"].get<double>() == doctest::Approx(0.5));
    CHECK(t["orbit"].size() == 3);
    CHECK(run({"coord", "-1"}).code == cli::kExitOk);
  }

  TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"coord", "0", "1", "2", "3"}).code == cli::kExitUsage);
    CHECK(run({"homology", "--k", "4"}).code == cli::kExitUsage);
    CHECK(run({"homology", "--mesh-n", "2"}).code == cli::kExitUsage);
    CHECK(run({"knot", "--eps", "1.0"}).code == cli::kExitUsage);
    CHECK(run({"knot", "--curve", "trefoil"}).code == cli::kExitUsage);
    CHECK(run({"pi1", "nothing"}).code == cli::kExitUsage);
    CHECK(run({"coord", "0", "--format", "csv"}).code == cli::kExitUsage);
    CHECK(run({"homology", "--k", "2", "--relative"}).code == cli::kExitUsage);
    Run r = run({"frobnicate"});
    CHECK(r.code == cli::kExitUsage);
    CHECK_FALSE(r.err.empty());
  }

  TEST_CASE("knot windings") {
    Run torus = run({"knot", "--samples", "360"});
    CHECK(torus.code == cli::kExitOk);
    CHECK(torus.out.find("index,angle1,angle2,phi,theta\n") == 0);
    CHECK(torus.out.find("windings: (2, 3)\n") != std::string::npos);
    Run core = run({"knot", "--curve", "core", "--format", "json"});
    CHECK(nlohmann::json::parse(core.out)["windings"] == nlohmann::json::array({1, 0}));
    Run exp1 = run({"knot", "--curve", "exp1", "--format", "json"});
    CHECK(nlohmann::json::parse(exp1.out)["windings"] == nlohmann::json::array({2, 3}));
  }

  TEST_CASE("undersampled loops exit with 1") {
    Run r = run({"knot", "--samples", "8"});
    CHECK(r.code == cli::kExitVerificationFailed);
    CHECK(r.err.find("verification failed") != std::string::npos);
  }

  TEST_CASE("knot writes the sample table to --out") {
    auto path = temp_file("exptop_knot_test.csv");
    Run r = run({"knot", "--samples", "100", "--out", path.string()});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out == "windings: (2, 3)\n");
    std::string csv = slurp(path);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 102);
    std::filesystem::remove(path);
  }

  TEST_CASE("homology output and determinism") {
    Run a = run({"homology", "--k", "2", "--mesh-n", "3"});
    Run b = run({"homology", "--mesh-n", "3", "--k", "2"});
    CHECK(a.code == cli::kExitOk);
    CHECK(a.out == b.out);
    auto j = nlohmann::json::parse(a.out);
    CHECK(j["boundary_squared_zero"] == true);
    CHECK(j["groups"][1]["betti"] == 1);
    CHECK(j["groups"][2]["betti"] == 0);
    Run csv = run({"homology", "--k", "2", "--format", "csv"});
    CHECK(csv.out == "dim,betti,torsion\n0,1,\n1,1,\n2,0,\n");
  }

  TEST_CASE("relative homology matches the golden file") {
    auto path = temp_file("exptop_relative_test.json");
    Run r = run({"homology", "--k", "3", "--mesh-n", "3", "--relative", "--out", path.string()});
    REQUIRE(r.code == cli::kExitOk);
    auto got = nlohmann::json::parse(slurp(path));
    auto golden = nlohmann::json::parse(slurp(std::string(EXPTOP_GOLDEN_DIR) + "/relative_homology_k3_n3.json"));
    CHECK(got["groups"] == golden["groups"]);
    std::filesystem::remove(path);
  }

  TEST_CASE("pi1 certificates") {
    Run exp3 = run({"pi1", "exp3"});
    CHECK(exp3.code == cli::kExitOk);
    CHECK(exp3.out.find("order: 1\n") != std::string::npos);
    CHECK(exp3.out.find("certified: true\n") != std::string::npos);
    Run b = run({"pi1", "Bprime", "--format", "json"});
    auto jb = nlohmann::json::parse(b.out);
    CHECK(jb["presentation"] == "⟨b,c|[c^2,b]⟩");
    CHECK(jb["certified"] == true);
    Run c = run({"pi1", "complement", "--format", "json"});
    auto jc = nlohmann::json::parse(c.out);
    CHECK(jc["presentation"] == "⟨s,t|s^3=t^2⟩");
    CHECK(jc["abelianization"] == "Z");
    CHECK(jc["homs_to_S3"] == 12);
    CHECK(jc["homs_Z_to_S3"] == 6);
    CHECK(jc["certified"] == true);
    CHECK(run({"pi1", "complement"}).out == run({"pi1", "complement"}).out);
  }
}
