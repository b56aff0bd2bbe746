#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "cli_util.hpp"

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(RDGAP_TEST_TMP) / "cli";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("curve rows") {
  auto r = cli::run("wf --spectrum flat --distortion-grid 0.25:0.25:0.25");
  CHECK(r.status == 0);
  CHECK(cli::body(r.out) == "d_star,t,rate_bits\n0.25,0.25,1.0\n");

  r = cli::run("rdrc --spectrum flat --rate-grid 1:1:1");
  CHECK(r.status == 0);
  CHECK(cli::body(r.out) == "rate_bits,T,d_rc\n1.0,3.0,0.25\n");

  r = cli::run("wf --spectrum 2:0.5,0:0.5 --distortion-grid 0.5:0.5:0.5");
  CHECK(r.status == 0);
  CHECK(cli::body(r.out) == "d_star,t,rate_bits\n0.5,1.0,0.25\n");

  CHECK(r.out.rfind("# rdgap 0.1.0 wf manifest=", 0) == 0);
}

TEST_CASE("exit codes") {
  CHECK(cli::run("wf --spectrum nonsense").status == 2);
  CHECK(cli::run("wf --distortion-grid 0.1:0.2").status == 2);
  CHECK(cli::run("wf --no-such-flag").status == 2);
  CHECK(cli::run("").status == 2);
  CHECK(cli::run("gap-sweep --dstar-grid 0.001:0.002:0.001 --kmax 1").status == 2);
  CHECK(cli::run("simulate --mode coupling").status == 2);
  CHECK(cli::run("simulate --n 40 --rate 1").status == 2);
  CHECK(cli::run("wf --config /nonexistent.json").status == 2);
  CHECK(cli::run("gap-sweep --dstar-grid 0.5:0.5:0.1 --kmax 1", "RDGAP_THREADS=zero").status == 2);
  CHECK(cli::run("rdrc --rate-grid 200:200:1").status == 1);
  CHECK(cli::run("version").status == 0);
  CHECK(cli::run("--help").status == 0);
}

TEST_CASE("manifest and svg files") {
  const fs::path csv = scratch("wf.csv"), svg = scratch("wf.svg");
  const auto r = cli::run("wf --spectrum semiflat:0.3 --compare --out " + csv.string() + " --svg " + svg.string());
  REQUIRE(r.status == 0);
  const auto manifest = nlohmann::json::parse(cli::slurp(csv.string() + ".manifest.json"));
  CHECK(manifest["subcommand"] == "wf");
  CHECK(manifest["version"] == "0.1.0");
  CHECK(manifest["outputs"].size() == 2);
  const std::string text = cli::slurp(csv.string());
  CHECK(text.find("manifest=" + manifest["params_sha256"].get<std::string>()) != std::string::npos);
  const std::string plot = cli::slurp(svg.string());
  CHECK(plot.find("random coding") != std::string::npos);
}

TEST_CASE("config file with flag precedence") {
  const fs::path cfg = scratch("run.json");
  std::ofstream(cfg) << R"({"spectrum": "flat", "rate_grid": "1:2:1"})";
  auto r = cli::run("rdrc --config " + cfg.string());
  CHECK(r.status == 0);
  CHECK(cli::body(r.out) == "rate_bits,T,d_rc\n1.0,3.0,0.25\n2.0,15.0,0.0625\n");

  r = cli::run("rdrc --rate-grid 1:1:1 --config " + cfg.string());
  CHECK(cli::body(r.out) == "rate_bits,T,d_rc\n1.0,3.0,0.25\n");

  std::ofstream(cfg) << R"({"n": 64, "mode": "coupling", "t": 0.25, "trials": 50})";
  r = cli::run("simulate --config " + cfg.string());
  CHECK(r.status == 0);
  CHECK(r.out.find("coupling,64,") != std::string::npos);

  std::ofstream(cfg) << R"({"bogus": 1})";
  CHECK(cli::run("wf --config " + cfg.string()).status == 2);
}

TEST_CASE("simulate rows") {
  const auto r = cli::run("simulate --mode coupling --spectrum flat --t 0.25 --n 64 --trials 2000 --seed 1");
  REQUIRE(r.status == 0);
  const std::string b = cli::body(r.out);
  CHECK(b.rfind("mode,n,rate_bits,spectrum,trials,seed,rotation,", 0) == 0);
  CHECK(b.find("\ncoupling,64,1.0,1:1,2000,1,identity,") != std::string::npos);
}

TEST_CASE("help snapshots") {
  for (const std::string sub : {"wf", "rdrc", "gap-sweep", "simulate", "version"}) {
    CAPTURE(sub);
    const auto r = cli::run(sub + " --help");
    CHECK(r.status == 0);
    const std::string expected = cli::slurp(std::string(RDGAP_SNAPSHOT_DIR) + "/help_" + sub + ".txt");
    CHECK(r.out == expected);
  }
}
