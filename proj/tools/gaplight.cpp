#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "gaplight/run.hpp"

namespace {

std::size_t default_jobs() {
  if (const char* env = std::getenv("APP_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string summary_of(gaplight::Subcommand cmd) {
  using gaplight::Subcommand;
  switch (cmd) {
    case Subcommand::spectrum: return "dispersion, gap edges and omega0 classification";
    case Subcommand::couplings: return "collective g, Lamb shift and alpha_c for the ensemble";
    case Subcommand::simulate: return "integrate one trajectory, write timeseries.csv and summary.json";
    case Subcommand::sweep: return "averaged runs over the (g, alpha) grid, write sweep.csv";
    case Subcommand::analyze: return "bursts and stationary state of an existing time series";
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  using namespace gaplight;

  CLI::App app{"gaplight: radiation of atoms in a photonic band gap medium"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out;
  std::string input;
  std::uint64_t seed = 0;
  std::string solver;
  std::size_t jobs = 0;

  for (auto cmd : {Subcommand::spectrum, Subcommand::couplings, Subcommand::simulate, Subcommand::sweep,
                   Subcommand::analyze}) {
    auto* sub = app.add_subcommand(std::string(to_string(cmd)), summary_of(cmd));
    sub->add_option("--config", config_path, "config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory");
    sub->add_option("--seed", seed, "overrides the config seed");
    sub->add_option("--solver", solver, "direct|averaged")->check(CLI::IsMember({"direct", "averaged"}));
    sub->add_option("--jobs", jobs, "sweep workers (falls back to APP_JOBS)");
    if (cmd == Subcommand::analyze) sub->add_option("--input", input, "time series CSV (default <out>/timeseries.csv)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto* chosen = app.get_subcommands().front();
  const Subcommand cmd = subcommand_from_string(chosen->get_name());

  RunConfig config;
  try {
    std::ifstream f(config_path, std::ios::binary);
    std::stringstream text;
    text << f.rdbuf();
    config = parse_config_or_throw(text.str());
  } catch (const std::exception& e) {
    std::cerr << error_json(e).dump() << '\n';
    return exit_code_for(e);
  }
  if (chosen->count("--seed")) config.seed = seed;
  if (!solver.empty()) config.solver.kind = solver == "direct" ? SolverKind::direct : SolverKind::averaged;
  if (!out.empty()) config.out = out;

  CommandOptions options;
  options.jobs = jobs > 0 ? jobs : default_jobs();
  if (!input.empty()) options.input = input;
  return run_command(cmd, config, options, std::cout, std::cerr);
}
