#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gkmloc/cli.hpp"

namespace fs = std::filesystem;
using gkmloc::cli::run;

namespace {

const std::string kScenes = GKMLOC_SCENES_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
  const fs::path dir = fs::temp_directory_path() / "gkmloc-cli-tests";
  fs::create_directories(dir);
  const fs::path file = dir / name;
  std::ofstream(file, std::ios::binary) << content;
  return file.string();
}

const char* kInconsistent = R"({
  "manifold": {"kind": "cpn", "n": 1},
  "sheaf": {
    "kind": "custom",
    "strata": [{"name": "A", "chi_c": 1, "stalk_euler": 1}, {"name": "B", "chi_c": 1, "stalk_euler": 2}],
    "cell_tables": {
      "+": {"p0": {"A": 1, "B": 0}, "p1": {"A": 0, "B": 1}},
      "-": {"p0": {"A": 0, "B": 1}, "p1": {"A": 1, "B": 1}}
    }
  }
})";

}  // namespace

TEST_CASE("gauss-bonnet on CP^2") {
  const std::string scene = write_temp("cp2.json", R"({"manifold":{"kind":"cpn","n":2},"sheaf":{"kind":"constant"},
    "X":{"re":["1","5","-2"],"im":["0","0","0"]}})");
  const Outcome r = call({"gauss-bonnet", scene});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"localized\":3.0,\"combinatorial\":3,\"match\":true}\n");

  const std::string strict = write_temp("cp2-strict.json", R"({"manifold":{"kind":"cpn","n":2},
    "X":{"re":["1","5","-2"]},"options":{"tolerance":{"gauss_bonnet":0}}})");
  const Outcome mismatch = call({"gauss-bonnet", strict});
  CHECK(mismatch.code == 1);
  CHECK(mismatch.out.find("\"match\":false") != std::string::npos);
}

TEST_CASE("multiplicities on the half-plane scene") {
  const Outcome r = call({"multiplicities", kScenes + "/cp1-halfplane.json", "--X", "i1"});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"chamber\":\"+\",\"m\":{\"p0\":1,\"p1\":0}}\n");
  const Outcome other = call({"multiplicities", kScenes + "/cp1-halfplane.json", "--X", "-i1/2"});
  CHECK(other.out == "{\"chamber\":\"-\",\"m\":{\"p0\":0,\"p1\":1}}\n");
  const Outcome csv = call({"multiplicities", kScenes + "/cp1-halfplane.json", "--format", "csv"});
  CHECK(csv.out == "chamber,fixed_point,m\n+,p0,1\n+,p1,0\n");
}

TEST_CASE("validate reports the violated identity") {
  const std::string scene = write_temp("inconsistent.json", kInconsistent);
  const Outcome r = call({"validate", scene});
  CHECK(r.code == 1);
  CHECK(r.err.find("sum_p chi_c(B cap O_p) = 2") != std::string::npos);
  CHECK(r.out.find("\"valid\":false") != std::string::npos);

  for (const auto& name : {"cp1-halfplane.json", "cp2-orbit.json", "flag3-constant.json"}) {
    const Outcome ok = call({"validate", kScenes + "/" + name});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("\"valid\":true") != std::string::npos);
  }
}

TEST_CASE("input errors exit with 2") {
  const std::string broken = write_temp("broken.json", "{\n  \"manifold\": {\"kind\": \"cpn\", \"n\": 1},\n  \"sheaf\": oops\n}\n");
  const Outcome malformed = call({"fixed-points", broken});
  CHECK(malformed.code == 2);
  CHECK(malformed.err.find("broken.json:3:") != std::string::npos);

  const Outcome wall = call({"bb", kScenes + "/flag3-constant.json", "--X", "1,1,0"});
  CHECK(wall.code == 2);
  CHECK(wall.err.find("(1,-1,0)") != std::string::npos);

  CHECK(call({"bb", kScenes + "/flag3-constant.json", "--X", "1,2"}).code == 2);
  CHECK(call({"no-such-command"}).code == 2);
  CHECK(call({}).code == 2);
  CHECK(call({"localize", kScenes + "/flag3-constant.json", "--class", "volume"}).code == 2);
  CHECK(call({"fixed-points", "/nonexistent.json"}).code == 2);
  CHECK(call({"oracle", "gaussian", "--beta", "0,0"}).code == 2);
  CHECK(call({"oracle", "cp1-quadrature", "--t", "1", "--grid", "4"}).code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("localize and dh emit the result schema") {
  const Outcome r = call({"localize", kScenes + "/flag3-constant.json", "--class", "euler"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.contains("value_re"));
  CHECK(j.contains("value_im"));
  CHECK(j.at("prefactor").at("two_pi_power") == 3);
  CHECK(j.at("terms").size() == 6);
  const double chi = j.at("value_re").get<double>() / std::pow(2 * M_PI, 3);
  CHECK(chi == doctest::Approx(6.0).epsilon(1e-12));

  const Outcome exp = call({"localize", kScenes + "/cp1-halfplane.json", "--class", "exp-hamiltonian", "--t", "1/2", "--bv"});
  CHECK(exp.code == 0);
  const Outcome dh = call({"dh", kScenes + "/cp2-orbit.json", "--format", "csv"});
  CHECK(dh.code == 0);
  CHECK(dh.out.rfind("fixed_point,m,numerator_re,numerator_im,den_re,den_im\n", 0) == 0);
}

TEST_CASE("scans, reports and oracles") {
  const Outcome scan = call({"chamber-scan", kScenes + "/cp1-halfplane.json", "--class", "euler", "--format", "csv"});
  CHECK(scan.code == 0);
  CHECK(scan.out.find('\r') == std::string::npos);
  CHECK(scan.out.rfind("chamber,sample,m_p0,m_p1,total,value_re,value_im\n", 0) == 0);

  const Outcome chambers = call({"chambers", kScenes + "/flag3-constant.json"});
  CHECK(nlohmann::json::parse(chambers.out).at("chambers").size() == 6);

  const Outcome report = call({"report", kScenes + "/cp2-orbit.json"});
  CHECK(nlohmann::json::parse(report.out).at("euler_characteristic") == 2);

  const Outcome hist = call({"oracle", "dh-pushforward", "--samples", "20000", "--seed", "3", "--format", "csv"});
  CHECK(hist.code == 0);
  CHECK(hist.out.rfind("bin_lo,bin_hi,mass\n-1,-0.90000000000000002,", 0) == 0);
  CHECK(hist.out == call({"oracle", "dh-pushforward", "--samples", "20000", "--seed", "3", "--format", "csv"}).out);

  const Outcome invert = call({"oracle", "dh-invert", "--t", "0.5,1,2"});
  CHECK(nlohmann::json::parse(invert.out).at("max_rel_error").get<double>() < 1e-6);

  const Outcome quad = call({"oracle", "cp1-quadrature", "--t", "1", "--grid", "64"});
  CHECK(nlohmann::json::parse(quad.out).at("value").get<double>() == doctest::Approx(2 * M_PI * (M_E - 1 / M_E)));

  const Outcome gauss = call({"oracle", "gaussian", "--beta", "1,1"});
  CHECK(nlohmann::json::parse(gauss.out).at("abs_error").get<double>() < 1e-4);
}

TEST_CASE("exported scenes reproduce results") {
  for (const auto& name : {"cp1-halfplane.json", "cp2-orbit.json", "flag3-constant.json"}) {
    const std::string original = kScenes + "/" + name;
    const Outcome exported = call({"export", original});
    REQUIRE(exported.code == 0);
    const std::string copy = write_temp(std::string("exported-") + name, exported.out);
    for (const std::string cmd : {"multiplicities", "gauss-bonnet", "dh", "bb"}) {
      CHECK(call({cmd, copy}).out == call({cmd, original}).out);
    }
    CHECK(call({"export", copy}).out == exported.out);
  }
}
