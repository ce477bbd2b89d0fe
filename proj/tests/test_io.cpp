#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "ccm/cli.hpp"
#include "ccm/io.hpp"

using namespace ccm;
using io::RunConfig;

TEST_CASE("grid spec parsing") {
  const io::GridSpec g = io::GridSpec::parse("0:2:5");
  CHECK(g.values() == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});
  const io::GridSpec lg = io::GridSpec::parse("1:100:3:log");
  CHECK(lg.values()[1] == Catch::Approx(10.0));
  CHECK_THROWS_AS(io::GridSpec::parse("1:2"), std::invalid_argument);
  CHECK_THROWS_AS(io::GridSpec::parse("0:2:5:log"), std::invalid_argument);
}

TEST_CASE("csv emission round-trips doubles and handles empty tables") {
  RunConfig cfg;
  cfg.command = "critical";
  io::Emission e = io::make_emission(cfg, {"x", "name"});
  SECTION("header-only when empty") {
    CHECK(io::to_csv(e) == "x,name\n");
  }
  SECTION("full-precision round trip") {
    const double v = 0.1234567890123456789 / 3.0;
    io::json row;
    row["x"] = v;
    row["name"] = "a,b";  // needs quoting
    e.rows.push_back(row);
    const std::string csv = io::to_csv(e);
    // parse back the numeric field
    const auto pos = csv.find('\n') + 1;
    const double back = std::strtod(csv.c_str() + pos, nullptr);
    CHECK(back == v);
    CHECK(csv.find("\"a,b\"") != std::string::npos);
  }
}

TEST_CASE("json emission carries metadata and the resolved scheme") {
  RunConfig cfg;
  cfg.command = "vacuum";
  cfg.G = 2.0;
  const auto out = cli::run_command(cfg);
  const std::string text = io::to_json_text(out.emission);
  const auto j = nlohmann::json::parse(text);
  CHECK(j["metadata"]["version"] == io::kVersion);
  CHECK(j["metadata"]["config"]["G"] == 2.0);
  CHECK(j["metadata"]["scheme"].contains("Lambda"));
  CHECK(j["data"].size() == 1);
}

TEST_CASE("determinism: identical configs emit identical rows") {
  RunConfig cfg;
  cfg.command = "table1";
  cfg.grid = io::GridSpec{2.0, 5.0, 3, false};
  cfg.jobs = 4;
  const auto a = cli::run_command(cfg);
  const auto b = cli::run_command(cfg);
  io::Emission ea = a.emission, eb = b.emission;
  ea.metadata.erase("timestamp_ms");
  eb.metadata.erase("timestamp_ms");
  CHECK(io::to_csv(ea) == io::to_csv(eb));
  CHECK(io::json(ea.rows) == io::json(eb.rows));
}

TEST_CASE("commands populate expected fields and exit codes") {
  SECTION("critical") {
    RunConfig cfg;
    cfg.command = "critical";
    const auto out = cli::run_command(cfg);
    CHECK(out.exit_code == 0);
    CHECK(out.emission.rows.at(0).at("G_cr").get<double>() == Catch::Approx(3.77921).margin(1e-5));
  }
  SECTION("bound isovector reports the no-go bound") {
    RunConfig cfg;
    cfg.command = "bound";
    cfg.channel = "isovector";
    cfg.G = 5.0;
    const auto out = cli::run_command(cfg);
    CHECK(out.exit_code == 0);
    CHECK_FALSE(out.emission.rows.at(0).at("exists").get<bool>());
    CHECK(out.emission.rows.at(0).at("sup_isovector_rhs").get<double>() < 2.0 / 3.0);
  }
  SECTION("bound isoscalar below threshold exits no-solution") {
    RunConfig cfg;
    cfg.command = "bound";
    cfg.G = 1.0;
    const auto out = cli::run_command(cfg);
    CHECK(out.exit_code == io::kExitNoSolution);
  }
  SECTION("bound with wavefunction samples") {
    RunConfig cfg;
    cfg.command = "bound";
    cfg.G = 5.0;
    cfg.wf_samples = 8;
    const auto out = cli::run_command(cfg);
    CHECK(out.exit_code == 0);
    CHECK(out.emission.rows.size() == 1 + 9);
    CHECK(out.emission.metadata.contains("wavefunction"));
  }
  SECTION("spectrum emits three branches per grid point") {
    RunConfig cfg;
    cfg.command = "spectrum";
    cfg.G = 2.0;
    cfg.grid = io::GridSpec{0.0, 1.0, 5, false};
    const auto out = cli::run_command(cfg);
    CHECK(out.emission.rows.size() == 15);
  }
  SECTION("masses in bare units") {
    RunConfig cfg;
    cfg.command = "masses";
    cfg.units = "bare";
    cfg.m = 1.0;
    cfg.lambda = 0.5;
    const auto out = cli::run_command(cfg);
    CHECK(out.exit_code == 0);
    CHECK(out.emission.rows.at(0).contains("regime"));
  }
  SECTION("series reports fitted next to printed") {
    RunConfig cfg;
    cfg.command = "series";
    const auto out = cli::run_command(cfg);
    CHECK(out.emission.rows.size() == 2);
    CHECK(out.emission.rows.at(0).at("printed_c1").get<double>() == 9.0);
  }
  SECTION("table1 printed variant has no roots") {
    RunConfig cfg;
    cfg.command = "table1";
    cfg.c1_variant = "printed";
    cfg.grid = io::GridSpec{2.0, 5.0, 2, false};
    const auto out = cli::run_command(cfg);
    CHECK(out.exit_code == io::kExitNoSolution);
    for (const auto& row : out.emission.rows) CHECK_FALSE(row.at("exists").get<bool>());
  }
}

TEST_CASE("result cache replays rows") {
  const std::string path = "cache_test.jsonl";
  std::remove(path.c_str());
  RunConfig cfg;
  cfg.command = "critical";
  cfg.cache = path;
  const auto first = cli::run_command(cfg);
  CHECK_FALSE(first.emission.metadata.contains("cache_hit"));
  const auto second = cli::run_command(cfg);
  CHECK(second.emission.metadata.contains("cache_hit"));
  CHECK(io::json(second.emission.rows) == io::json(first.emission.rows));
  std::remove(path.c_str());
}
