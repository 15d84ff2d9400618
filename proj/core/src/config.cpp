#include "dispersmooth/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "dispersmooth/error.hpp"
#include "dispersmooth/io.hpp"
#include "dispersmooth/smoothing.hpp"

namespace dispersmooth {

namespace {

constexpr const char* kExperimentNames[] = {
    "simulate", "smoothing-scan", "counterexample", "highlow",
    "attractor", "xsb-constant", "resonance-geometry",
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double to_double(const std::string& v) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("expected a number, got '" + v + "'");
  }
  return x;
}

long long to_integer(const std::string& v) {
  long long x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("expected an integer, got '" + v + "'");
  }
  return x;
}

int to_int(const std::string& v) {
  const long long x = to_integer(v);
  if (x < -2147483647LL || x > 2147483647LL) throw ConfigError("integer out of range: " + v);
  return static_cast<int>(x);
}

std::uint64_t to_u64(const std::string& v) {
  std::uint64_t x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("expected an unsigned integer, got '" + v + "'");
  }
  return x;
}

bool to_bool(const std::string& v) {
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw ConfigError("expected true or false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& v) {
  std::vector<double> out;
  std::stringstream in(v);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(to_double(trim(item)));
  if (out.empty()) throw ConfigError("expected a comma separated list");
  return out;
}

std::string list_text(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ",";
    out += format_double(xs[i]);
  }
  return out;
}

const char* bool_text(bool b) { return b ? "true" : "false"; }

struct Entry {
  std::string section;
  std::string key;
  std::function<std::string()> get;
  std::function<void(const std::string&)> set;
};

Entry real(const char* section, const char* key, double& field) {
  return {section, key, [&field] { return format_double(field); },
          [&field](const std::string& v) { field = to_double(v); }};
}

Entry integer(const char* section, const char* key, int& field) {
  return {section, key, [&field] { return std::to_string(field); },
          [&field](const std::string& v) { field = to_int(v); }};
}

Entry flag(const char* section, const char* key, bool& field) {
  return {section, key, [&field] { return std::string(bool_text(field)); },
          [&field](const std::string& v) { field = to_bool(v); }};
}

std::vector<Entry> entries(RunConfig& c) {
  std::vector<Entry> e;
  e.push_back({"run", "experiment", [&c] { return std::string(experiment_name(c.experiment)); },
               [&c](const std::string& v) { c.experiment = parse_experiment(v); }});
  e.push_back({"run", "system",
               [&c] { return std::string(c.system == System::kgs ? "kgs" : "zakharov"); },
               [&c](const std::string& v) {
                 if (v == "kgs") c.system = System::kgs;
                 else if (v == "zakharov") c.system = System::zakharov;
                 else throw ConfigError("expected kgs or zakharov, got '" + v + "'");
               }});
  e.push_back(integer("run", "d", c.d));
  e.push_back(integer("run", "n_per_dim", c.n_per_dim));
  e.push_back(real("run", "box_length", c.box_length));
  e.push_back({"run", "seed", [&c] { return std::to_string(c.seed); },
               [&c](const std::string& v) { c.seed = to_u64(v); }});
  e.push_back({"run", "out", [&c] { return c.out_dir; },
               [&c](const std::string& v) { c.out_dir = v; }});
  e.push_back(flag("run", "checkpoint", c.checkpoint));

  e.push_back(real("regularity", "s", c.s));
  e.push_back(real("regularity", "r", c.r));
  e.push_back(real("regularity", "alpha", c.alpha));
  e.push_back(real("regularity", "beta", c.beta));
  e.push_back(real("regularity", "b", c.b));

  e.push_back(real("integrator", "dt", c.dt));
  e.push_back(real("integrator", "t_end", c.t_end));
  e.push_back({"integrator", "scheme",
               [&c] {
                 return std::string(c.scheme == Scheme::strang ? "strang" : "lawson_rk4");
               },
               [&c](const std::string& v) {
                 if (v == "lawson_rk4") c.scheme = Scheme::exponential_rk4;
                 else if (v == "strang") c.scheme = Scheme::strang;
                 else throw ConfigError("expected lawson_rk4 or strang, got '" + v + "'");
               }});
  e.push_back(integer("integrator", "record_every", c.record_every));

  e.push_back(real("data", "amplitude", c.amplitude));
  e.push_back(real("data", "u_scale", c.u_scale));

  e.push_back(integer("smoothing", "ensemble", c.ensemble));
  e.push_back(integer("smoothing", "probe_every", c.probe_every));

  e.push_back({"counterexample", "N", [&c] { return list_text(c.N_values); },
               [&c](const std::string& v) { c.N_values = to_list(v); }});
  e.push_back(integer("counterexample", "resolution", c.resolution));
  e.push_back(integer("counterexample", "wave_sign", c.wave_sign));

  e.push_back(real("highlow", "N", c.hl_N));
  e.push_back(real("highlow", "s0", c.hl_s0));
  e.push_back(real("highlow", "r0", c.hl_r0));
  e.push_back(real("highlow", "delta", c.hl_delta));
  e.push_back(real("highlow", "T", c.hl_T));
  e.push_back(real("highlow", "step_constant", c.hl_step_constant));
  e.push_back(real("highlow", "gns_c1", c.hl_gns_c1));
  e.push_back(real("highlow", "gns_c2", c.hl_gns_c2));
  e.push_back(flag("highlow", "compare_direct", c.hl_compare_direct));

  e.push_back(real("damping", "gamma", c.gamma));
  e.push_back(real("damping", "delta", c.damping_delta));
  e.push_back(real("damping", "a", c.a));
  e.push_back(real("damping", "forcing_amplitude", c.forcing_amplitude));

  e.push_back(integer("xsb", "xi_points", c.xsb_xi_points));
  e.push_back(integer("xsb", "time_modes", c.xsb_time_modes));
  e.push_back(real("xsb", "xi_extent", c.xsb_xi_extent));
  e.push_back(real("xsb", "tau_margin", c.xsb_tau_margin));
  e.push_back(integer("xsb", "ensemble", c.xsb_ensemble));
  e.push_back(flag("xsb", "adversarial", c.xsb_adversarial));

  e.push_back(real("resonance", "xi1_norm", c.xi1_norm));
  e.push_back(real("resonance", "nu", c.nu));
  e.push_back(integer("resonance", "shell_points", c.shell_points));
  e.push_back(integer("resonance", "triples", c.triples));
  e.push_back(real("resonance", "lemma_alpha", c.lemma_alpha));
  e.push_back(real("resonance", "lemma_beta", c.lemma_beta));
  e.push_back(real("resonance", "lemma_max_gap", c.lemma_max_gap));
  return e;
}

[[noreturn]] void reject(const std::string& field, const std::string& constraint) {
  throw ConfigError(field + ": requires " + constraint);
}

void require(bool ok, const std::string& field, const std::string& constraint) {
  if (!ok) reject(field, constraint);
}

bool finite(double x) { return std::isfinite(x); }

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void validate_integrator(const RunConfig& c) {
  require(finite(c.dt) && c.dt > 0.0, "integrator.dt", "dt > 0");
  require(finite(c.t_end) && c.t_end >= 0.0, "integrator.t_end", "t_end >= 0");
  require(c.record_every >= 1, "integrator.record_every", "record_every >= 1");
}

void validate_hypotheses(const RunConfig& c) {
  try {
    smoothing_exponents(c.system, c.d, c.s, c.r);
  } catch (const AdmissibilityError& e) {
    throw AdmissibilityError("regularity.s/regularity.r: " + std::string(e.what()));
  }
}

}  // namespace

const char* experiment_name(Experiment e) { return kExperimentNames[static_cast<int>(e)]; }

Experiment parse_experiment(std::string_view name) {
  for (int i = 0; i < 7; ++i) {
    if (name == kExperimentNames[i]) return static_cast<Experiment>(i);
  }
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

RunConfig parse_config(std::string_view text, Experiment fallback) {
  RunConfig config;
  config.experiment = fallback;
  std::vector<Entry> table = entries(config);
  std::set<std::string> sections;
  for (const Entry& e : table) sections.insert(e.section);
  std::set<std::string> seen;

  std::string section = "run";
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const std::string where = "line " + std::to_string(line_no) + ": ";

    std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') {
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "unterminated section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!sections.count(section)) throw ConfigError(where + "unknown section [" + section + "]");
    } else {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
      const std::string key = trim(std::string_view(line).substr(0, eq));
      std::string value = std::string(line.substr(eq + 1));
      if (const auto hash = value.find('#'); hash != std::string::npos) value.resize(hash);
      value = trim(value);
      if (key.empty()) throw ConfigError(where + "missing key");
      if (value.empty()) throw ConfigError(where + "missing value for '" + key + "'");

      const std::string full = section + "." + key;
      auto it = std::find_if(table.begin(), table.end(), [&](const Entry& e) {
        return e.section == section && e.key == key;
      });
      if (it == table.end()) throw ConfigError(where + "unknown key '" + full + "'");
      if (!seen.insert(full).second) throw ConfigError(where + "duplicate key '" + full + "'");
      try {
        it->set(value);
      } catch (const ConfigError& e) {
        throw ConfigError(where + full + ": " + e.what());
      }
    }
    if (end == text.size()) break;
  }
  validate(config);
  return config;
}

RunConfig load_config(const std::string& path, Experiment fallback) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read config file: " + path);
  return parse_config(buffer.str(), fallback);
}

void validate(const RunConfig& c) {
  require(c.d >= 1 && c.d <= 4, "run.d", "1 <= d <= 4");
  require(power_of_two(c.n_per_dim) && c.n_per_dim >= 8, "run.n_per_dim",
          "a power of two >= 8");
  require(finite(c.box_length) && c.box_length > 0.0, "run.box_length", "box_length > 0");
  require(!c.out_dir.empty(), "run.out", "a non-empty directory");
  require(finite(c.amplitude) && c.amplitude >= 0.0, "data.amplitude", "amplitude >= 0");
  require(finite(c.u_scale), "data.u_scale", "a finite value");
  for (double x : {c.s, c.r, c.alpha, c.beta, c.b}) {
    require(finite(x), "regularity", "finite exponents");
  }

  switch (c.experiment) {
    case Experiment::simulate:
      validate_integrator(c);
      validate_hypotheses(c);
      break;
    case Experiment::smoothing_scan: {
      validate_integrator(c);
      validate_hypotheses(c);
      require(c.ensemble >= 1, "smoothing.ensemble", "ensemble >= 1");
      require(c.probe_every >= 1, "smoothing.probe_every", "probe_every >= 1");
      const SmoothingExponents ex = smoothing_exponents(c.system, c.d, c.s, c.r);
      require(c.alpha >= 0.0 && c.alpha < ex.alpha_max, "regularity.alpha",
              "0 <= alpha < " + format_double(ex.alpha_max));
      require(c.beta >= 0.0 && c.beta < ex.beta_max, "regularity.beta",
              "0 <= beta < " + format_double(ex.beta_max));
      break;
    }
    case Experiment::counterexample:
      require(!c.N_values.empty(), "counterexample.N", "at least one frequency");
      for (double N : c.N_values) require(finite(N) && N > 1.0, "counterexample.N", "N > 1");
      require(c.resolution >= 2, "counterexample.resolution", "resolution >= 2");
      require(c.wave_sign == 1 || c.wave_sign == -1, "counterexample.wave_sign", "+1 or -1");
      require(c.b > 0.5 && c.b < 1.0, "regularity.b", "1/2 < b < 1");
      break;
    case Experiment::highlow:
      require(c.system == System::kgs, "run.system", "kgs for the high-low scheme");
      require(finite(c.hl_N) && c.hl_N >= 1.0, "highlow.N", "N >= 1");
      require(c.hl_s0 > 0.0 && c.hl_r0 > 0.0, "highlow.s0/highlow.r0", "s0, r0 > 0");
      require(finite(c.hl_delta) && c.hl_delta >= 0.0, "highlow.delta", "delta >= 0");
      require(finite(c.hl_T) && c.hl_T > 0.0, "highlow.T", "T > 0");
      require(c.hl_step_constant > 0.0, "highlow.step_constant", "step_constant > 0");
      require(c.hl_gns_c1 >= 0.0 && c.hl_gns_c2 >= 0.0, "highlow.gns_c1/highlow.gns_c2",
              "non-negative constants");
      require(finite(c.dt) && c.dt > 0.0, "integrator.dt", "dt > 0");
      break;
    case Experiment::attractor:
      validate_integrator(c);
      require(finite(c.gamma) && c.gamma > 0.0, "damping.gamma", "gamma > 0");
      require(finite(c.damping_delta) && c.damping_delta > 0.0, "damping.delta", "delta > 0");
      require(c.a >= 0.0 && c.a < c.damping_delta, "damping.a", "0 <= a < delta (0 = default)");
      require(finite(c.forcing_amplitude) && c.forcing_amplitude >= 0.0,
              "damping.forcing_amplitude", "forcing_amplitude >= 0");
      break;
    case Experiment::xsb_constant:
      require(c.xsb_xi_points >= 2 && c.xsb_time_modes >= 2, "xsb.xi_points/xsb.time_modes",
              "at least 2 points per axis");
      require(c.xsb_xi_extent > 0.0 && c.xsb_tau_margin >= 0.0, "xsb.xi_extent/xsb.tau_margin",
              "xi_extent > 0 and tau_margin >= 0");
      require(c.xsb_ensemble >= 1, "xsb.ensemble", "ensemble >= 1");
      require(c.b > 0.5 && c.b < 1.0, "regularity.b", "1/2 < b < 1");
      break;
    case Experiment::resonance_geometry:
      require(c.d >= 2, "run.d", "d >= 2 for angular geometry");
      require(finite(c.xi1_norm) && c.xi1_norm > 0.0, "resonance.xi1_norm", "xi1_norm > 0");
      require(finite(c.nu) && c.nu > 0.0, "resonance.nu", "nu > 0");
      require(c.shell_points >= 0 && c.triples >= 0, "resonance.shell_points/resonance.triples",
              "non-negative counts");
      require(c.lemma_alpha > 1.0, "resonance.lemma_alpha", "alpha > 1");
      require(c.lemma_beta >= 0.0 && c.lemma_beta <= c.lemma_alpha, "resonance.lemma_beta",
              "alpha >= beta >= 0");
      require(finite(c.lemma_max_gap) && c.lemma_max_gap > 0.0 && c.lemma_max_gap <= 1000.0,
              "resonance.lemma_max_gap", "0 < lemma_max_gap <= 1000");
      break;
  }
}

std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& config) {
  RunConfig copy = config;
  std::vector<std::pair<std::string, std::string>> out;
  for (const Entry& e : entries(copy)) out.emplace_back(e.section + "." + e.key, e.get());
  return out;
}

std::string render_config(const RunConfig& config) {
  RunConfig copy = config;
  std::string out;
  std::string section;
  for (const Entry& e : entries(copy)) {
    if (e.section != section) {
      if (!section.empty()) out += "\n";
      section = e.section;
      out += "[" + section + "]\n";
    }
    out += e.key + " = " + e.get() + "\n";
  }
  return out;
}

}  // namespace dispersmooth
