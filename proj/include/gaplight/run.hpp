#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gaplight/config.hpp"
#include "gaplight/time_series.hpp"

namespace gaplight {

using Json = nlohmann::ordered_json;

enum class Subcommand { spectrum, couplings, simulate, sweep, analyze };

std::string_view to_string(Subcommand cmd) noexcept;
Subcommand subcommand_from_string(std::string_view name);

AtomEnsemble make_ensemble(const RunConfig& config);
FieldModel make_field(const RunConfig& config);

struct AlphaResolution {
  double alpha = 0.0;
  std::string source;  // "config", "zero_field" or "field_model"
  std::optional<AlphaEstimate> estimate;
};

// α from [medium].alpha if given, else from the field model at the initial
// Ω, Γ. Throws NonpositiveGamma when the initial state already has gain.
AlphaResolution resolve_alpha(const RunConfig& config, double g, double delta_L);

Json couplings_report(const RunConfig& config);

struct SpectrumOutput {
  PolaritonBands bands;
  Json header;
};
SpectrumOutput compute_spectrum(const RunConfig& config);
// CSV k, omega_minus, omega_plus preceded by one "# {json}" line.
void write_spectrum_csv(std::ostream& out, const SpectrumOutput& spectrum);

struct SimulationOutput {
  TimeSeries series;
  Json summary;
};
SimulationOutput simulate(const RunConfig& config);
// timeseries.csv and summary.json
void write_simulation(const std::filesystem::path& dir, const SimulationOutput& output,
                      std::uint64_t seed);

Json analyze_series(const TimeSeries& series, const RunConfig& config, double g);

struct SweepRow {
  double g = 0.0;
  double alpha = 0.0;
  std::optional<double> alpha_c;
  std::string regime;
  std::optional<double> eta_infinity;
  std::size_t burst_count = 0;
};

// Configs of the individual points, g outer and α inner.
std::vector<RunConfig> sweep_points(const RunConfig& config);
SweepRow sweep_row(const SimulationOutput& output);
// One run_NNN directory per point plus sweep.csv; rows in config order.
std::vector<SweepRow> run_sweep(const RunConfig& config, const std::filesystem::path& out,
                                std::size_t jobs);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, std::uint64_t seed);

struct CommandOptions {
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> input;  // analyze
  std::size_t jobs = 1;
};

// Runs one subcommand. Returns 0, 2 for configuration errors or 3 for
// numerical failures; errors go to `err` as a JSON object.
int run_command(Subcommand cmd, const RunConfig& config, const CommandOptions& options,
                std::ostream& out, std::ostream& err);

Json error_json(const std::exception& e);
int exit_code_for(const std::exception& e) noexcept;

}  // namespace gaplight
