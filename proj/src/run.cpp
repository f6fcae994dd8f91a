#include "gaplight/run.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "gaplight/couplings.hpp"
#include "gaplight/rng.hpp"

namespace gaplight {
namespace {

constexpr const char* kClosureLabel =
    "dw/dt = -2(1 - g s) w + 2 alpha s^2; ds/dt = -g w - alpha s - gamma1 (s - zeta)";

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json sums_json(const SiteSums& sums) {
  Json j;
  j["mean"] = sums.mean;
  j["per_atom"] = sums.per_atom;
  j["relative_spread"] = sums.relative_spread;
  return j;
}

Json bursts_json(const BurstReport& r) {
  Json j;
  j["threshold_frac"] = r.threshold_frac;
  j["count"] = r.count();
  j["global_peak"] = r.global_peak;
  j["delay_time"] = optional_number(r.delay_time);
  j["quiescent_fraction"] = r.quiescent_fraction;
  j["train_duration"] = r.train_duration;
  j["inter_burst_minima"] = r.inter_burst_minima;
  Json list = Json::array();
  for (const auto& b : r.bursts) {
    list.push_back({{"start", b.start},
                    {"end", b.end},
                    {"peak_time", b.peak_time},
                    {"peak_intensity", b.peak_intensity},
                    {"fwhm", b.fwhm}});
  }
  j["bursts"] = std::move(list);
  return j;
}

Json stationary_json(const StationaryReport& r) {
  Json j;
  j["s_infinity"] = r.s_infinity;
  j["eta_infinity"] = r.eta_infinity;
  j["eta_predicted"] = optional_number(r.eta_predicted);
  j["relative_deviation"] = optional_number(r.relative_deviation);
  j["window_start"] = r.window_start;
  j["window_end"] = r.window_end;
  j["relative_slope"] = r.relative_slope;
  j["verdict"] = std::string(to_string(r.verdict));
  return j;
}

Json fixed_point_json(const FixedPoint& fp) {
  Json j;
  j["s_star"] = fp.s;
  j["w_star"] = fp.w;
  j["eta_infinity"] = fp.eta;
  Json eig = Json::array();
  for (const auto& e : fp.eigenvalues) eig.push_back({e.real(), e.imag()});
  j["eigenvalues"] = std::move(eig);
  j["stable"] = fp.stable;
  j["regime_mismatch"] = fp.regime_mismatch;
  j["n_roots"] = fp.n_roots;
  return j;
}

Json failure_json(const std::exception& e) { return Json{{"error", error_json(e)["error"]}}; }

std::optional<double> alpha_c_for(double g, const AtomParams& atoms) {
  if (g <= 0.0 || atoms.s0 == 0.0) return std::nullopt;
  return critical_alpha(g, atoms.u0, atoms.s0);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidParameter, "cannot write " + path.string());
  f << text;
}

std::string seed_line(std::uint64_t seed) { return "# seed=" + std::to_string(seed) + "\n"; }

}  // namespace

std::string_view to_string(Subcommand cmd) noexcept {
  switch (cmd) {
    case Subcommand::spectrum: return "spectrum";
    case Subcommand::couplings: return "couplings";
    case Subcommand::simulate: return "simulate";
    case Subcommand::sweep: return "sweep";
    case Subcommand::analyze: return "analyze";
  }
  return "?";
}

Subcommand subcommand_from_string(std::string_view name) {
  for (auto c : {Subcommand::spectrum, Subcommand::couplings, Subcommand::simulate,
                 Subcommand::sweep, Subcommand::analyze}) {
    if (to_string(c) == name) return c;
  }
  throw Error(ErrorKind::InvalidParameter, "unknown subcommand '" + std::string(name) + "'");
}

AtomEnsemble make_ensemble(const RunConfig& config) {
  const auto& e = config.ensemble;
  return build_geometry(e.geometry, e.layout, e.atoms, config.seed);
}

FieldModel make_field(const RunConfig& config) {
  const auto& m = config.medium;
  switch (m.mode) {
    case FieldMode::zero: return FieldModel::zero();
    case FieldMode::constant_resonant: return FieldModel::constant_resonant(m.f0, m.drive_frequency);
    case FieldMode::oscillator_bath: return FieldModel::oscillator_bath(m.bath, derive_seed(config.seed, "bath"));
  }
  return FieldModel::zero();
}

AlphaResolution resolve_alpha(const RunConfig& config, double g, double delta_L) {
  AlphaResolution r;
  if (config.medium.alpha) {
    r.alpha = *config.medium.alpha;
    r.source = "config";
    return r;
  }
  if (config.medium.mode == FieldMode::zero) {
    r.source = "zero_field";
    return r;
  }
  const auto& atoms = config.ensemble.atoms;
  const auto rates = effective_freq_atten(atoms.omega0, g, delta_L, atoms.s0);
  AlphaOptions opts;
  opts.t_max = config.medium.alpha_t_max;
  opts.n_samples = config.medium.alpha_samples;
  opts.n_realizations = config.medium.alpha_realizations;
  r.estimate = alpha_effective(make_field(config), rates.omega, rates.gamma, opts);
  r.alpha = r.estimate->alpha;
  r.source = "field_model";
  return r;
}

Json couplings_report(const RunConfig& config) {
  const auto ensemble = make_ensemble(config);
  const auto summary = summarize_couplings(ensemble);
  Json j;
  j["seed"] = config.seed;
  j["n_atoms"] = ensemble.n_atoms();
  j["g"] = summary.g.mean;
  j["delta_L"] = summary.delta_L.mean;
  j["alpha_c"] = optional_number(summary.alpha_c);
  j["g_per_atom"] = summary.g.per_atom;
  j["delta_L_per_atom"] = summary.delta_L.per_atom;
  j["g_relative_spread"] = summary.g.relative_spread;
  j["delta_L_relative_spread"] = summary.delta_L.relative_spread;
  return j;
}

SpectrumOutput compute_spectrum(const RunConfig& config) {
  const auto& m = config.medium;
  const auto k = uniform_k_grid(m.k_max, m.k_points);
  SpectrumOutput out;
  out.bands = polariton_branches(m.spectrum, k);
  const double omega0 = config.ensemble.atoms.omega0;
  Json h;
  h["seed"] = config.seed;
  h["model"] = std::string(to_string(m.spectrum.branch));
  h["omega_T"] = m.spectrum.omega_T;
  h["omega_p"] = m.spectrum.coupling_strength;
  h["gap_low"] = out.bands.gap_low;
  h["gap_high"] = out.bands.gap_high;
  h["gap_width"] = out.bands.gap_width();
  h["omega0"] = omega0;
  h["omega0_class"] = std::string(to_string(classify_frequency(out.bands, omega0, m.edge_tol)));
  out.header = std::move(h);
  return out;
}

void write_spectrum_csv(std::ostream& out, const SpectrumOutput& spectrum) {
  out << "# " << spectrum.header.dump() << '\n';
  out << "k,omega_minus,omega_plus\n";
  const auto& b = spectrum.bands;
  for (std::size_t i = 0; i < b.k.size(); ++i)
    out << format_number(b.k[i]) << ',' << format_number(b.lower[i]) << ',' << format_number(b.upper[i]) << '\n';
}

Json analyze_series(const TimeSeries& series, const RunConfig& config, double g) {
  const auto& an = config.analysis;
  Json j;
  j["bursts"] = bursts_json(detect_bursts(series, an.burst_threshold));
  try {
    j["stationary"] = stationary_json(stationary_excitation(series, g, an.plateau));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotStationary) throw;
    j["stationary"] = failure_json(e);
  }
  return j;
}

SimulationOutput simulate(const RunConfig& config) {
  const auto& atoms = config.ensemble.atoms;
  const auto& sv = config.solver;
  const auto ensemble = make_ensemble(config);
  const auto couplings = summarize_couplings(ensemble);

  const double g = sv.kind == SolverKind::averaged && sv.g ? *sv.g : couplings.g.mean;
  const auto alpha_c = alpha_c_for(g, atoms);

  std::optional<AlphaResolution> alpha;
  Json alpha_json;
  try {
    alpha = resolve_alpha(config, g, couplings.delta_L.mean);
    alpha_json["alpha"] = alpha->alpha;
    alpha_json["source"] = alpha->source;
    if (alpha->estimate) {
      alpha_json["standard_error"] = alpha->estimate->standard_error;
      alpha_json["n_samples"] = alpha->estimate->n_samples;
      alpha_json["converged"] = alpha->estimate->converged;
      alpha_json["short_window"] = alpha->estimate->short_window;
    }
  } catch (const Error& e) {
    // The averaged closure cannot run without α; the direct model does not use it.
    if (sv.kind == SolverKind::averaged || e.kind() != ErrorKind::NonpositiveGamma) throw;
    alpha_json = failure_json(e);
  }

  SimulationOutput out;
  Json solver;
  solver["kind"] = std::string(to_string(sv.kind));
  solver["dt"] = sv.dt;
  solver["t_end"] = sv.t_end;

  if (sv.kind == SolverKind::averaged) {
    AveragedParams p{g, alpha->alpha, atoms.gamma1, atoms.zeta};
    AveragedOptions opts;
    opts.dt = sv.dt;
    opts.t_end = sv.t_end;
    opts.max_ds_per_step = sv.max_ds_per_step;
    opts.sampling = sv.sampling;
    const double w0 = sv.w0.value_or(4.0 * std::norm(atoms.u0));
    auto run = integrate_averaged(p, w0, atoms.s0, opts);
    solver["closure"] = kClosureLabel;
    solver["g"] = g;
    solver["w0"] = w0;
    solver["steps"] = run.steps;
    solver["rejected_steps"] = run.rejected_steps;
    solver["final"] = {{"t", run.final_state.t}, {"w", run.final_state.w}, {"s", run.final_state.s}};
    out.series = std::move(run.series);
  } else {
    DirectOptions opts;
    opts.retardation = sv.retardation;
    opts.dt = sv.dt;
    opts.t_end = sv.t_end;
    opts.counter_rotating = sv.counter_rotating;
    opts.sampling = sv.sampling;
    auto run = integrate_direct(ensemble, make_field(config), opts);
    solver["retardation"] = std::string(to_string(sv.retardation));
    solver["counter_rotating"] = sv.counter_rotating;
    solver["steps"] = run.steps;
    solver["max_bloch_norm"] = run.max_bloch_norm;
    out.series = std::move(run.series);
  }
  solver["samples"] = out.series.size();

  Json fixed;
  if (alpha && g > 1.0) {
    try {
      fixed = fixed_point_json(stationary_point({g, alpha->alpha, atoms.gamma1, atoms.zeta}, alpha_c));
    } catch (const Error& e) {
      fixed = failure_json(e);
    }
  } else {
    fixed = Json{{"error", {{"kind", "InvalidParameter"}, {"message", "fixed point needs g > 1 and a known alpha"}}}};
  }

  const double alpha_value = alpha ? alpha->alpha : std::numeric_limits<double>::quiet_NaN();
  const auto analysis = analyze_series(out.series, config, g);

  Json c;
  c["g"] = sums_json(couplings.g);
  c["delta_L"] = sums_json(couplings.delta_L);
  c["g_used"] = g;
  c["alpha_c"] = optional_number(alpha_c);

  Json& s = out.summary;
  s["seed"] = config.seed;
  s["solver"] = std::move(solver);
  s["couplings"] = std::move(c);
  s["alpha"] = std::move(alpha_json);
  s["fixed_point"] = std::move(fixed);
  s["bursts"] = analysis["bursts"];
  s["stationary"] = analysis["stationary"];
  s["regime"] = alpha ? Json(std::string(to_string(classify_regime(
                            g, alpha_value, alpha_c.value_or(std::numeric_limits<double>::infinity()),
                            config.analysis.regime))))
                      : Json(nullptr);
  s["config"] = emit_canonical(config);
  return out;
}

void write_simulation(const std::filesystem::path& dir, const SimulationOutput& output, std::uint64_t seed) {
  std::filesystem::create_directories(dir);
  std::ostringstream csv;
  csv << seed_line(seed);
  write_csv(csv, output.series);
  write_text(dir / "timeseries.csv", csv.str());
  write_text(dir / "summary.json", output.summary.dump(2) + "\n");
}

std::vector<RunConfig> sweep_points(const RunConfig& config) {
  if (config.sweep.g_values.empty() || config.sweep.alpha_values.empty())
    throw Error(ErrorKind::InvalidParameter, "sweep needs sweep.g_values and sweep.alpha_values");
  std::vector<RunConfig> points;
  for (double g : config.sweep.g_values) {
    for (double a : config.sweep.alpha_values) {
      RunConfig c = config;
      c.solver.kind = SolverKind::averaged;
      c.solver.g = g;
      c.medium.alpha = a;
      points.push_back(std::move(c));
    }
  }
  return points;
}

SweepRow sweep_row(const SimulationOutput& output) {
  const Json& s = output.summary;
  SweepRow row;
  row.g = s["couplings"]["g_used"].get<double>();
  row.alpha = s["alpha"]["alpha"].get<double>();
  if (!s["couplings"]["alpha_c"].is_null()) row.alpha_c = s["couplings"]["alpha_c"].get<double>();
  row.regime = s["regime"].get<std::string>();
  if (s["stationary"].contains("eta_infinity")) row.eta_infinity = s["stationary"]["eta_infinity"].get<double>();
  row.burst_count = s["bursts"]["count"].get<std::size_t>();
  return row;
}

std::vector<SweepRow> run_sweep(const RunConfig& config, const std::filesystem::path& out, std::size_t jobs) {
  const auto points = sweep_points(config);
  std::vector<std::optional<SweepRow>> rows(points.size());
  std::vector<std::exception_ptr> failures(points.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        char name[32];
        std::snprintf(name, sizeof name, "run_%03zu", i);
        auto result = simulate(points[i]);
        write_simulation(out / name, result, points[i].seed);
        rows[i] = sweep_row(result);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t n = std::max<std::size_t>(1, std::min(jobs, points.size()));
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  std::vector<SweepRow> result;
  for (auto& r : rows) result.push_back(*r);
  std::ostringstream csv;
  write_sweep_csv(csv, result, config.seed);
  write_text(out / "sweep.csv", csv.str());
  return result;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, std::uint64_t seed) {
  out << seed_line(seed);
  out << "g,alpha,alpha_c,regime,eta_infinity,burst_count\n";
  for (const auto& r : rows) {
    out << format_number(r.g) << ',' << format_number(r.alpha) << ','
        << (r.alpha_c ? format_number(*r.alpha_c) : "") << ',' << r.regime << ','
        << (r.eta_infinity ? format_number(*r.eta_infinity) : "") << ',' << r.burst_count << '\n';
  }
}

Json error_json(const std::exception& e) {
  Json j;
  if (const auto* ce = dynamic_cast<const ConfigError*>(&e)) {
    j["kind"] = std::string(to_string(ce->kind()));
    j["message"] = ce->what();
    Json issues = Json::array();
    for (const auto& i : ce->issues())
      issues.push_back({{"kind", std::string(to_string(i.kind))}, {"line", i.line}, {"message", i.message}});
    j["issues"] = std::move(issues);
  } else if (const auto* ge = dynamic_cast<const Error*>(&e)) {
    j["kind"] = std::string(to_string(ge->kind()));
    j["message"] = ge->what();
  } else {
    j["kind"] = "InternalError";
    j["message"] = e.what();
  }
  return Json{{"error", std::move(j)}};
}

int exit_code_for(const std::exception& e) noexcept {
  if (const auto* ge = dynamic_cast<const Error*>(&e)) return is_config_error(ge->kind()) ? 2 : 3;
  return 3;
}

int run_command(Subcommand cmd, const RunConfig& config, const CommandOptions& options, std::ostream& out,
                std::ostream& err) {
  const std::filesystem::path dir = options.out.value_or(std::filesystem::path(config.out));
  try {
    switch (cmd) {
      case Subcommand::couplings:
        out << couplings_report(config).dump(2) << '\n';
        break;
      case Subcommand::spectrum: {
        const auto spectrum = compute_spectrum(config);
        std::filesystem::create_directories(dir);
        std::ostringstream csv;
        write_spectrum_csv(csv, spectrum);
        write_text(dir / "spectrum.csv", csv.str());
        out << spectrum.header.dump(2) << '\n';
        break;
      }
      case Subcommand::simulate: {
        const auto result = simulate(config);
        write_simulation(dir, result, config.seed);
        Json brief;
        brief["out"] = dir.string();
        brief["stationary"] = result.summary["stationary"];
        brief["bursts"] = result.summary["bursts"]["count"];
        out << brief.dump(2) << '\n';
        break;
      }
      case Subcommand::sweep: {
        const auto rows = run_sweep(config, dir, options.jobs);
        out << Json{{"out", dir.string()}, {"points", rows.size()}}.dump(2) << '\n';
        break;
      }
      case Subcommand::analyze: {
        const auto input = options.input.value_or(dir / "timeseries.csv");
        std::ifstream f(input);
        if (!f) throw Error(ErrorKind::ParseError, "cannot read " + input.string());
        const auto series = read_csv(f);
        const double g = config.solver.g ? *config.solver.g : summarize_couplings(make_ensemble(config)).g.mean;
        Json j;
        j["seed"] = config.seed;
        j["input"] = input.string();
        j["g"] = g;
        const auto analysis = analyze_series(series, config, g);
        j["bursts"] = analysis["bursts"];
        j["stationary"] = analysis["stationary"];
        out << j.dump(2) << '\n';
        break;
      }
    }
  } catch (const std::exception& e) {
    err << error_json(e).dump() << '\n';
    return exit_code_for(e);
  }
  return 0;
}

}  // namespace gaplight
