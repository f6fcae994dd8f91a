#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gaplight/analysis.hpp"
#include "gaplight/averaged_solver.hpp"
#include "gaplight/direct_solver.hpp"
#include "gaplight/ensemble.hpp"
#include "gaplight/errors.hpp"
#include "gaplight/medium_field.hpp"
#include "gaplight/spectrum.hpp"

namespace gaplight {

enum class SolverKind { direct, averaged };

std::string_view to_string(SolverKind kind) noexcept;

struct EnsembleSection {
  GeometryKind geometry = GeometryKind::chain;
  GeometryParams layout{};
  AtomParams atoms{};

  bool operator==(const EnsembleSection&) const = default;
};

struct MediumSection {
  FieldMode mode = FieldMode::zero;
  std::complex<double> f0{0.0, 0.0};
  double drive_frequency = 0.0;  // defaults to ensemble.omega0
  BathSpec bath{};               // center defaults to ensemble.omega0
  std::optional<double> alpha;   // given directly, bypassing the field model
  double alpha_t_max = 200.0;
  std::size_t alpha_samples = 4096;
  std::size_t alpha_realizations = 16;

  MediumModel spectrum{};
  double k_max = 400.0;
  std::size_t k_points = 801;
  double edge_tol = 1e-6;

  bool operator==(const MediumSection&) const = default;
};

struct SolverSection {
  SolverKind kind = SolverKind::direct;
  double dt = 1e-3;
  double t_end = 10.0;
  Retardation retardation = Retardation::phase;
  bool counter_rotating = false;
  double max_ds_per_step = 0.01;
  SamplePolicy sampling{};
  std::optional<double> g;   // averaged solver: overrides the ensemble's mean g
  std::optional<double> w0;  // averaged solver: defaults to 4|u0|²

  bool operator==(const SolverSection&) const = default;
};

struct AnalysisSection {
  double burst_threshold = 0.1;
  PlateauOptions plateau{};
  RegimeOptions regime{};

  bool operator==(const AnalysisSection&) const = default;
};

struct SweepSection {
  std::vector<double> g_values;
  std::vector<double> alpha_values;

  bool operator==(const SweepSection&) const = default;
};

struct RunConfig {
  std::uint64_t seed = 0;
  std::string out = "out";
  EnsembleSection ensemble{};
  MediumSection medium{};
  SolverSection solver{};
  AnalysisSection analysis{};
  SweepSection sweep{};

  bool operator==(const RunConfig&) const = default;
};

struct ConfigIssue {
  ErrorKind kind = ErrorKind::ValidationError;  // ParseError or ValidationError
  std::size_t line = 0;                         // 0 when not tied to a line
  std::string message;

  std::string describe() const;
};

struct ParseOutcome {
  std::optional<RunConfig> config;
  std::vector<ConfigIssue> issues;

  bool ok() const noexcept { return config.has_value(); }
};

// INI-like text: `[section]` headers, `key = value` lines, `#` comments.
// Top-level keys before any header: seed, out. Collects every issue.
ParseOutcome parse_config(std::string_view text);

class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

RunConfig parse_config_or_throw(std::string_view text);

// Every key with its resolved value, in a fixed order; parse_config of the
// result reproduces the same RunConfig.
std::string emit_canonical(const RunConfig& config);

}  // namespace gaplight
