#include "gaplight/config.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

namespace gaplight {
namespace {

struct Entry {
  std::string value;
  std::size_t line = 0;
  bool used = false;
};

using Section = std::map<std::string, Entry, std::less<>>;

const char* const kSections[] = {"", "ensemble", "medium", "solver", "analysis", "sweep"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<std::uint64_t> to_uint(std::string_view s) {
  s = trim(s);
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

class Reader {
 public:
  Reader(std::map<std::string, Section, std::less<>>& raw, std::vector<ConfigIssue>& issues)
      : raw_(raw), issues_(issues) {}

  // Returns the entry if present and marks it used.
  const Entry* find(std::string_view section, std::string_view key) {
    auto sec = raw_.find(section);
    if (sec == raw_.end()) return nullptr;
    auto it = sec->second.find(key);
    if (it == sec->second.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  void error(const Entry* e, std::string_view section, std::string_view key, const std::string& what) {
    issues_.push_back({ErrorKind::ValidationError, e ? e->line : 0, qualified(section, key) + " " + what});
  }

  static std::string qualified(std::string_view section, std::string_view key) {
    return section.empty() ? std::string(key) : std::string(section) + "." + std::string(key);
  }

  void number(std::string_view section, std::string_view key, double& out) {
    if (const Entry* e = find(section, key)) {
      if (auto v = to_double(e->value)) out = *v;
      else error(e, section, key, "is not a finite number: '" + e->value + "'");
    }
  }

  void optional_number(std::string_view section, std::string_view key, std::optional<double>& out) {
    if (const Entry* e = find(section, key)) {
      if (auto v = to_double(e->value)) out = *v;
      else error(e, section, key, "is not a finite number: '" + e->value + "'");
    }
  }

  template <class Int>
  void integer(std::string_view section, std::string_view key, Int& out) {
    if (const Entry* e = find(section, key)) {
      if (auto v = to_uint(e->value)) out = static_cast<Int>(*v);
      else error(e, section, key, "is not a nonnegative integer: '" + e->value + "'");
    }
  }

  void boolean(std::string_view section, std::string_view key, bool& out) {
    if (const Entry* e = find(section, key)) {
      if (e->value == "true") out = true;
      else if (e->value == "false") out = false;
      else error(e, section, key, "must be true or false");
    }
  }

  void text(std::string_view section, std::string_view key, std::string& out) {
    if (const Entry* e = find(section, key)) out = e->value;
  }

  template <class Enum, class Parse>
  void choice(std::string_view section, std::string_view key, Enum& out, Parse parse) {
    if (const Entry* e = find(section, key)) {
      try {
        out = parse(e->value);
      } catch (const Error& ex) {
        error(e, section, key, ex.what());
      }
    }
  }

  void list(std::string_view section, std::string_view key, std::vector<double>& out) {
    if (const Entry* e = find(section, key)) {
      out.clear();
      if (trim(e->value).empty()) return;
      for (auto part : split(e->value, ',')) {
        if (auto v = to_double(part)) out.push_back(*v);
        else {
          error(e, section, key, "has a bad list element '" + std::string(part) + "'");
          return;
        }
      }
    }
  }

  void positions(std::string_view section, std::string_view key, std::vector<Vec3>& out) {
    if (const Entry* e = find(section, key)) {
      out.clear();
      for (auto triple : split(e->value, ';')) {
        if (triple.empty()) continue;
        const auto xyz = split(triple, ',');
        Vec3 p{};
        bool ok = xyz.size() == 3;
        for (std::size_t c = 0; ok && c < 3; ++c) {
          if (auto v = to_double(xyz[c])) p[c] = *v;
          else ok = false;
        }
        if (!ok) {
          error(e, section, key, "expects 'x,y,z; x,y,z; ...'");
          return;
        }
        out.push_back(p);
      }
    }
  }

  void report_unused() {
    for (auto& [name, section] : raw_) {
      for (auto& [key, entry] : section) {
        if (!entry.used)
          issues_.push_back({ErrorKind::ValidationError, entry.line, "unknown key " + qualified(name, key)});
      }
    }
  }

 private:
  std::map<std::string, Section, std::less<>>& raw_;
  std::vector<ConfigIssue>& issues_;
};

// Messages start with "section.key"; the issue gets that key's line.
struct Check {
  std::vector<ConfigIssue>& issues;
  const std::map<std::string, Section, std::less<>>& raw;
  void operator()(bool ok, const std::string& message) {
    if (ok) return;
    std::size_t line = 0;
    const std::string name = message.substr(0, message.find(' '));
    if (const auto dot = name.find('.'); dot != std::string::npos) {
      if (auto sec = raw.find(name.substr(0, dot)); sec != raw.end()) {
        if (auto it = sec->second.find(name.substr(dot + 1)); it != sec->second.end()) line = it->second.line;
      }
    }
    issues.push_back({ErrorKind::ValidationError, line, message});
  }
};

void validate(const RunConfig& c, const std::map<std::string, Section, std::less<>>& raw,
              std::vector<ConfigIssue>& issues) {
  Check check{issues, raw};
  const auto& e = c.ensemble;
  const auto& a = e.atoms;
  const bool s0_ok = a.s0 >= -1.0 && a.s0 <= 1.0;
  const bool zeta_given = raw.at("ensemble").count("zeta") > 0;
  check(s0_ok, "ensemble.s0 out of [-1,1]");
  if (zeta_given || s0_ok) check(a.zeta >= -1.0 && a.zeta <= 1.0, "ensemble.zeta out of [-1,1]");
  check(a.omega0 > 0.0, "ensemble.omega0 must be positive");
  check(a.gamma1 >= 0.0 && a.gamma1 <= 2.0, "ensemble.gamma1 out of [0,2]");
  check(a.gamma_s >= 0.0, "ensemble.gamma_s must be nonnegative");
  if (s0_ok)
    check(4.0 * std::norm(a.u0) + a.s0 * a.s0 <= 1.0 + 1e-12, "ensemble.u0_re outside the Bloch ball: 4|u0|^2 + s0^2 > 1");
  check(e.layout.r_min > 0.0, "ensemble.r_min must be positive");
  if (e.geometry == GeometryKind::explicit_positions) {
    check(!e.layout.positions.empty(), "ensemble.positions required for explicit geometry");
  } else {
    check(e.layout.n_atoms >= 1, "ensemble.n_atoms must be >= 1");
  }
  if (e.geometry == GeometryKind::chain || e.geometry == GeometryKind::cubic)
    check(e.layout.spacing > 0.0, "ensemble.spacing must be positive");
  if (e.geometry == GeometryKind::random_sphere) check(e.layout.radius > 0.0, "ensemble.radius must be positive");

  const auto& m = c.medium;
  check(m.bath.n_modes >= 1, "medium.bath_modes must be >= 1");
  check(m.bath.width >= 0.0, "medium.bath_width must be nonnegative");
  if (m.alpha) check(*m.alpha >= 0.0, "medium.alpha must be nonnegative");
  check(m.alpha_t_max > 0.0, "medium.alpha_t_max must be positive");
  check(m.alpha_samples >= 100, "medium.alpha_samples must be >= 100");
  check(m.alpha_realizations >= 1, "medium.alpha_realizations must be >= 1");
  check(m.spectrum.omega_T > 0.0, "medium.omega_T must be positive");
  check(m.spectrum.coupling_strength >= 0.0, "medium.omega_p must be nonnegative");
  check(m.spectrum.light_speed > 0.0, "medium.light_speed must be positive");
  check(m.spectrum.lattice_constant > 0.0, "medium.lattice_constant must be positive");
  check(m.spectrum.omega_T + 2.0 * std::min(m.spectrum.band_width, 0.0) > 0.0,
        "medium.band_width makes the optical branch nonpositive");
  check(m.k_max > 0.0, "medium.k_max must be positive");
  check(m.k_points >= 2, "medium.k_points must be >= 2");
  check(m.edge_tol >= 0.0, "medium.edge_tol must be nonnegative");

  const auto& s = c.solver;
  check(s.dt > 0.0, "solver.dt must be positive");
  check(s.t_end > 0.0, "solver.t_end must be positive");
  check(s.max_ds_per_step > 0.0, "solver.max_ds_per_step must be positive");
  check(s.sampling.max_interval > 0.0, "solver.sample_max_interval must be positive");
  check(s.sampling.ds > 0.0, "solver.sample_ds must be positive");
  check(s.sampling.rel_intensity > 0.0, "solver.sample_rel_intensity must be positive");
  check(!s.counter_rotating || s.retardation == Retardation::full_dde,
        "solver.counter_rotating requires solver.retardation = full_dde");
  if (s.w0) check(*s.w0 >= 0.0, "solver.w0 must be nonnegative");

  const auto& an = c.analysis;
  check(an.burst_threshold > 0.0 && an.burst_threshold < 1.0, "analysis.burst_threshold out of (0,1)");
  check(an.plateau.window_fraction > 0.0 && an.plateau.window_fraction <= 1.0,
        "analysis.plateau_fraction out of (0,1]");
  check(an.plateau.slope_tol > 0.0, "analysis.plateau_tol must be positive");
  check(an.plateau.localization_tol > 0.0 && an.plateau.localization_tol < 0.5,
        "analysis.localization_tol out of (0,0.5)");
  check(an.regime.alpha_ratio_max > 0.0, "analysis.alpha_ratio_max must be positive");
  check(an.regime.g_zero_tol >= 0.0, "analysis.g_zero_tol must be nonnegative");

  for (double g : c.sweep.g_values) check(g > 1.0, "sweep.g_values entries must exceed 1");
  for (double al : c.sweep.alpha_values) check(al >= 0.0, "sweep.alpha_values entries must be nonnegative");
}

}  // namespace

std::string_view to_string(SolverKind kind) noexcept {
  return kind == SolverKind::direct ? "direct" : "averaged";
}

std::string ConfigIssue::describe() const {
  std::string out(to_string(kind));
  if (line > 0) out += " (line " + std::to_string(line) + ")";
  return out + ": " + message;
}

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : Error(issues.empty() ? ErrorKind::ValidationError : issues.front().kind,
            [&] {
              std::string msg;
              for (const auto& i : issues) msg += (msg.empty() ? "" : "; ") + i.describe();
              return msg;
            }()),
      issues_(std::move(issues)) {}

ParseOutcome parse_config(std::string_view text) {
  ParseOutcome outcome;
  auto& issues = outcome.issues;
  std::map<std::string, Section, std::less<>> raw;
  for (const char* name : kSections) raw[name];

  std::string current;
  std::size_t line_no = 0;
  bool current_known = true;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        issues.push_back({ErrorKind::ParseError, line_no, "unterminated section header"});
        continue;
      }
      current = std::string(trim(line.substr(1, line.size() - 2)));
      current_known = raw.count(current) > 0 && !current.empty();
      if (!current_known) issues.push_back({ErrorKind::ParseError, line_no, "unknown section [" + current + "]"});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      issues.push_back({ErrorKind::ParseError, line_no, "expected 'key = value'"});
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) {
      issues.push_back({ErrorKind::ParseError, line_no, "empty key"});
      continue;
    }
    if (!current_known) continue;
    auto& section = raw[current];
    if (section.count(key)) {
      issues.push_back({ErrorKind::ParseError, line_no, "duplicate key " + Reader::qualified(current, key)});
      continue;
    }
    section[key] = Entry{value, line_no, false};
  }

  RunConfig c;
  Reader r(raw, issues);

  r.integer("", "seed", c.seed);
  r.text("", "out", c.out);

  auto& e = c.ensemble;
  r.choice("ensemble", "geometry", e.geometry, geometry_kind_from_string);
  r.integer("ensemble", "n_atoms", e.layout.n_atoms);
  r.number("ensemble", "spacing", e.layout.spacing);
  r.number("ensemble", "radius", e.layout.radius);
  r.positions("ensemble", "positions", e.layout.positions);
  r.number("ensemble", "r_min", e.layout.r_min);
  r.number("ensemble", "omega0", e.atoms.omega0);
  r.number("ensemble", "gamma1", e.atoms.gamma1);
  r.number("ensemble", "gamma_s", e.atoms.gamma_s);
  double u0_re = 0.0;
  double u0_im = 0.0;
  r.number("ensemble", "u0_re", u0_re);
  r.number("ensemble", "u0_im", u0_im);
  e.atoms.u0 = {u0_re, u0_im};
  r.number("ensemble", "s0", e.atoms.s0);
  std::optional<double> zeta;
  r.optional_number("ensemble", "zeta", zeta);
  e.atoms.zeta = zeta.value_or(e.atoms.s0);
  if (e.geometry == GeometryKind::explicit_positions) {
    const Entry* n_entry = r.find("ensemble", "n_atoms");
    if (n_entry && e.layout.n_atoms != e.layout.positions.size())
      r.error(n_entry, "ensemble", "n_atoms", "does not match the number of positions");
    e.layout.n_atoms = e.layout.positions.size();
  }

  auto& m = c.medium;
  r.choice("medium", "mode", m.mode, field_mode_from_string);
  double f0_re = 0.0;
  double f0_im = 0.0;
  r.number("medium", "f0_re", f0_re);
  r.number("medium", "f0_im", f0_im);
  m.f0 = {f0_re, f0_im};
  m.drive_frequency = e.atoms.omega0;
  r.number("medium", "drive_frequency", m.drive_frequency);
  r.integer("medium", "bath_modes", m.bath.n_modes);
  m.bath.center = e.atoms.omega0;
  r.number("medium", "bath_center", m.bath.center);
  r.number("medium", "bath_width", m.bath.width);
  r.number("medium", "bath_amplitude", m.bath.amplitude);
  r.optional_number("medium", "alpha", m.alpha);
  r.number("medium", "alpha_t_max", m.alpha_t_max);
  r.integer("medium", "alpha_samples", m.alpha_samples);
  r.integer("medium", "alpha_realizations", m.alpha_realizations);
  r.choice("medium", "branch", m.spectrum.branch, branch_model_from_string);
  r.number("medium", "omega_T", m.spectrum.omega_T);
  r.number("medium", "omega_p", m.spectrum.coupling_strength);
  r.number("medium", "band_width", m.spectrum.band_width);
  r.number("medium", "lattice_constant", m.spectrum.lattice_constant);
  r.number("medium", "light_speed", m.spectrum.light_speed);
  r.number("medium", "k_max", m.k_max);
  r.integer("medium", "k_points", m.k_points);
  r.number("medium", "edge_tol", m.edge_tol);

  auto& s = c.solver;
  r.choice("solver", "kind", s.kind, [](std::string_view v) {
    if (v == "direct") return SolverKind::direct;
    if (v == "averaged") return SolverKind::averaged;
    throw Error(ErrorKind::InvalidParameter, "must be direct or averaged");
  });
  r.number("solver", "dt", s.dt);
  r.number("solver", "t_end", s.t_end);
  r.choice("solver", "retardation", s.retardation, retardation_from_string);
  r.boolean("solver", "counter_rotating", s.counter_rotating);
  r.number("solver", "max_ds_per_step", s.max_ds_per_step);
  r.number("solver", "sample_max_interval", s.sampling.max_interval);
  r.number("solver", "sample_ds", s.sampling.ds);
  r.number("solver", "sample_rel_intensity", s.sampling.rel_intensity);
  r.optional_number("solver", "g", s.g);
  r.optional_number("solver", "w0", s.w0);

  auto& an = c.analysis;
  r.number("analysis", "burst_threshold", an.burst_threshold);
  r.number("analysis", "plateau_fraction", an.plateau.window_fraction);
  r.number("analysis", "plateau_tol", an.plateau.slope_tol);
  r.number("analysis", "localization_tol", an.plateau.localization_tol);
  r.number("analysis", "g_min", an.regime.g_min);
  r.number("analysis", "alpha_ratio_max", an.regime.alpha_ratio_max);
  r.number("analysis", "g_zero_tol", an.regime.g_zero_tol);

  r.list("sweep", "g_values", c.sweep.g_values);
  r.list("sweep", "alpha_values", c.sweep.alpha_values);

  r.report_unused();
  validate(c, raw, issues);
  if (issues.empty()) outcome.config = std::move(c);
  return outcome;
}

RunConfig parse_config_or_throw(std::string_view text) {
  auto outcome = parse_config(text);
  if (!outcome.ok()) throw ConfigError(std::move(outcome.issues));
  return *outcome.config;
}

std::string emit_canonical(const RunConfig& c) {
  std::ostringstream out;
  auto num = [](double v) { return format_number(v); };
  auto list = [&](const std::vector<double>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + num(values[i]);
    return s;
  };

  out << "seed = " << c.seed << '\n';
  out << "out = " << c.out << '\n';

  const auto& e = c.ensemble;
  out << "\n[ensemble]\n";
  out << "geometry = " << to_string(e.geometry) << '\n';
  out << "n_atoms = " << e.layout.n_atoms << '\n';
  out << "spacing = " << num(e.layout.spacing) << '\n';
  out << "radius = " << num(e.layout.radius) << '\n';
  if (!e.layout.positions.empty()) {
    out << "positions = ";
    for (std::size_t i = 0; i < e.layout.positions.size(); ++i) {
      const auto& p = e.layout.positions[i];
      out << (i ? "; " : "") << num(p[0]) << ',' << num(p[1]) << ',' << num(p[2]);
    }
    out << '\n';
  }
  out << "r_min = " << num(e.layout.r_min) << '\n';
  out << "omega0 = " << num(e.atoms.omega0) << '\n';
  out << "gamma1 = " << num(e.atoms.gamma1) << '\n';
  out << "gamma_s = " << num(e.atoms.gamma_s) << '\n';
  out << "u0_re = " << num(e.atoms.u0.real()) << '\n';
  out << "u0_im = " << num(e.atoms.u0.imag()) << '\n';
  out << "s0 = " << num(e.atoms.s0) << '\n';
  out << "zeta = " << num(e.atoms.zeta) << '\n';

  const auto& m = c.medium;
  out << "\n[medium]\n";
  out << "mode = " << to_string(m.mode) << '\n';
  out << "f0_re = " << num(m.f0.real()) << '\n';
  out << "f0_im = " << num(m.f0.imag()) << '\n';
  out << "drive_frequency = " << num(m.drive_frequency) << '\n';
  out << "bath_modes = " << m.bath.n_modes << '\n';
  out << "bath_center = " << num(m.bath.center) << '\n';
  out << "bath_width = " << num(m.bath.width) << '\n';
  out << "bath_amplitude = " << num(m.bath.amplitude) << '\n';
  if (m.alpha) out << "alpha = " << num(*m.alpha) << '\n';
  out << "alpha_t_max = " << num(m.alpha_t_max) << '\n';
  out << "alpha_samples = " << m.alpha_samples << '\n';
  out << "alpha_realizations = " << m.alpha_realizations << '\n';
  out << "branch = " << to_string(m.spectrum.branch) << '\n';
  out << "omega_T = " << num(m.spectrum.omega_T) << '\n';
  out << "omega_p = " << num(m.spectrum.coupling_strength) << '\n';
  out << "band_width = " << num(m.spectrum.band_width) << '\n';
  out << "lattice_constant = " << num(m.spectrum.lattice_constant) << '\n';
  out << "light_speed = " << num(m.spectrum.light_speed) << '\n';
  out << "k_max = " << num(m.k_max) << '\n';
  out << "k_points = " << m.k_points << '\n';
  out << "edge_tol = " << num(m.edge_tol) << '\n';

  const auto& s = c.solver;
  out << "\n[solver]\n";
  out << "kind = " << to_string(s.kind) << '\n';
  out << "dt = " << num(s.dt) << '\n';
  out << "t_end = " << num(s.t_end) << '\n';
  out << "retardation = " << to_string(s.retardation) << '\n';
  out << "counter_rotating = " << (s.counter_rotating ? "true" : "false") << '\n';
  out << "max_ds_per_step = " << num(s.max_ds_per_step) << '\n';
  out << "sample_max_interval = " << num(s.sampling.max_interval) << '\n';
  out << "sample_ds = " << num(s.sampling.ds) << '\n';
  out << "sample_rel_intensity = " << num(s.sampling.rel_intensity) << '\n';
  if (s.g) out << "g = " << num(*s.g) << '\n';
  if (s.w0) out << "w0 = " << num(*s.w0) << '\n';

  const auto& an = c.analysis;
  out << "\n[analysis]\n";
  out << "burst_threshold = " << num(an.burst_threshold) << '\n';
  out << "plateau_fraction = " << num(an.plateau.window_fraction) << '\n';
  out << "plateau_tol = " << num(an.plateau.slope_tol) << '\n';
  out << "localization_tol = " << num(an.plateau.localization_tol) << '\n';
  out << "g_min = " << num(an.regime.g_min) << '\n';
  out << "alpha_ratio_max = " << num(an.regime.alpha_ratio_max) << '\n';
  out << "g_zero_tol = " << num(an.regime.g_zero_tol) << '\n';

  out << "\n[sweep]\n";
  out << "g_values = " << list(c.sweep.g_values) << '\n';
  out << "alpha_values = " << list(c.sweep.alpha_values) << '\n';
  return out.str();
}

}  // namespace gaplight
