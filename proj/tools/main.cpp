// ccm-cli: parameter scans, bound-state tables, phase diagnostics and the
// exact-diagonalization verification report for the current-current
// four-fermion model.
//
// Configuration precedence: command-line flags > json config file > defaults.
// Exit codes: 0 success, 2 usage, 3 no solution where one was demanded,
// 4 tolerance/verification failure.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ccm/cli.hpp"

namespace {

struct FlagValues {
  double M = 1.0, G = 2.0, c = 1.0, m = 1.0, lambda = 0.0;
  double omega_volume = 1.0, dk = 1.0;
  int modes = 2, jobs = 0, wf_samples = 0;
  std::string channel = "isoscalar", units = "physical", c1_variant = "corrected";
  std::string format = "json", out = "-", cache, grid, config_file;
};

void add_common_options(CLI::App* sub, FlagValues& f) {
  sub->add_option("--M", f.M, "renormalized mass (physical units)");
  sub->add_option("--G", f.G, "dimensionless coupling 2g/(M c^2)");
  sub->add_option("--c", f.c, "speed scale");
  sub->add_option("--m", f.m, "bare mass (bare units)");
  sub->add_option("--lambda", f.lambda, "bare coupling (bare units)");
  sub->add_option("--channel", f.channel, "isoscalar | isovector")
      ->check(CLI::IsMember({"isoscalar", "isovector"}));
  sub->add_option("--modes", f.modes, "oracle momentum modes (4*modes <= 12)");
  sub->add_option("--omega-volume", f.omega_volume, "oracle discretization volume");
  sub->add_option("--dk", f.dk, "oracle momentum spacing");
  sub->add_option("--grid", f.grid, "scan grid lo:hi:n[:log]");
  sub->add_option("--format", f.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", f.out, "output path, '-' for stdout");
  sub->add_option("--units", f.units, "physical | bare")
      ->check(CLI::IsMember({"physical", "bare"}));
  sub->add_option("--c1-variant", f.c1_variant, "corrected | printed")
      ->check(CLI::IsMember({"corrected", "printed"}));
  sub->add_option("--jobs", f.jobs, "worker threads for scans (0 = cores)");
  sub->add_option("--wf-samples", f.wf_samples, "emit this many wavefunction samples");
  sub->add_option("--cache", f.cache, "append-only json-lines result cache");
  sub->add_option("--config", f.config_file, "json config file (flags take precedence)");
}

ccm::io::RunConfig build_config(const std::string& command, const CLI::App* sub,
                                const FlagValues& f) {
  ccm::io::RunConfig cfg;
  cfg.command = command;
  // config file first, flags override below
  if (!f.config_file.empty()) {
    std::ifstream in(f.config_file);
    if (!in) throw std::invalid_argument("cannot read config file " + f.config_file);
    nlohmann::json j = nlohmann::json::parse(in);
    auto get = [&](const char* key, auto& target) {
      if (j.contains(key)) target = j.at(key).template get<std::decay_t<decltype(target)>>();
    };
    get("M", cfg.M);
    get("G", cfg.G);
    get("c", cfg.c);
    get("m", cfg.m);
    get("lambda", cfg.lambda);
    get("channel", cfg.channel);
    get("modes", cfg.modes);
    get("omega_volume", cfg.omega_volume);
    get("dk", cfg.dk);
    get("format", cfg.format);
    get("units", cfg.units);
    get("c1_variant", cfg.c1_variant);
    get("jobs", cfg.jobs);
    get("wf_samples", cfg.wf_samples);
    get("cache", cfg.cache);
    std::string grid;
    get("grid", grid);
    if (!grid.empty()) cfg.grid = ccm::io::GridSpec::parse(grid);
  }
  auto touched = [&](const std::string& name) { return sub->count(name) > 0; };
  if (touched("--M")) cfg.M = f.M;
  if (touched("--G")) cfg.G = f.G;
  if (touched("--c")) cfg.c = f.c;
  if (touched("--m")) cfg.m = f.m;
  if (touched("--lambda")) cfg.lambda = f.lambda;
  if (touched("--channel")) cfg.channel = f.channel;
  if (touched("--modes")) cfg.modes = f.modes;
  if (touched("--omega-volume")) cfg.omega_volume = f.omega_volume;
  if (touched("--dk")) cfg.dk = f.dk;
  if (touched("--grid")) cfg.grid = ccm::io::GridSpec::parse(f.grid);
  if (touched("--format")) cfg.format = f.format;
  if (touched("--units")) cfg.units = f.units;
  if (touched("--c1-variant")) cfg.c1_variant = f.c1_variant;
  if (touched("--jobs")) cfg.jobs = f.jobs;
  if (touched("--wf-samples")) cfg.wf_samples = f.wf_samples;
  if (touched("--cache")) cfg.cache = f.cache;
  cfg.out = f.out;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"current-current four-fermion model: spectra, phases, bound states, oracle"};
  app.require_subcommand(1);
  FlagValues flags;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"spectrum", "one-particle dispersion samples per branch"},
      {"masses", "branch masses, gaps and regime"},
      {"vacuum", "vacuum energy density and preferred phase"},
      {"critical", "critical coupling"},
      {"bound", "two-particle bound state in a channel"},
      {"table1", "isoscalar z(G) table with published comparison"},
      {"series", "weak-coupling series coefficients, fitted vs printed"},
      {"oracle", "exact-diagonalization verification report"},
      {"verify-all", "run the full acceptance suite"}};
  for (const auto& [name, desc] : commands) add_common_options(app.add_subcommand(name, desc), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : ccm::io::kExitUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const ccm::io::RunConfig cfg = build_config(sub->get_name(), sub, flags);
    const ccm::cli::RunOutcome outcome = ccm::cli::run_command(cfg);
    const std::string text = ccm::io::render(outcome.emission, cfg.format);
    if (cfg.out == "-") {
      std::cout << text;
    } else {
      std::ofstream out(cfg.out);
      if (!out) throw std::runtime_error("cannot write " + cfg.out);
      out << text;
    }
    return outcome.exit_code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return ccm::io::kExitUsage;
  } catch (const ccm::bracket_error& e) {
    std::cerr << "no solution: " << e.what() << "\n";
    return ccm::io::kExitNoSolution;
  } catch (const ccm::convergence_error& e) {
    std::cerr << "tolerance failure: " << e.what() << "\n";
    return ccm::io::kExitTolerance;
  } catch (const std::logic_error& e) {
    std::cerr << "tolerance failure: " << e.what() << "\n";
    return ccm::io::kExitTolerance;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
