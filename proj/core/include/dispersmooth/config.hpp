#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dispersmooth/evolution.hpp"

namespace dispersmooth {

enum class Experiment {
  simulate,
  smoothing_scan,
  counterexample,
  highlow,
  attractor,
  xsb_constant,
  resonance_geometry,
};

/// Subcommand spelling, e.g. "smoothing-scan".
const char* experiment_name(Experiment e);
/// Throws ConfigError for an unknown name.
Experiment parse_experiment(std::string_view name);

/// Everything a run needs. Field comments give the config key.
///
/// Document grammar:
///   line    := blank | comment | section | entry
///   comment := ('#' | ';') text
///   section := '[' name ']'
///   entry   := key '=' value        (trailing '# ...' comments are stripped)
/// Keys before the first section belong to [run]. Lists are comma separated.
struct RunConfig {
  // [run]
  Experiment experiment = Experiment::simulate;  ///< experiment
  System system = System::kgs;                   ///< system = kgs | zakharov
  int d = 2;                                     ///< d
  int n_per_dim = 64;                            ///< n_per_dim
  double box_length = 1.0;                       ///< box_length
  std::uint64_t seed = 0;                        ///< seed
  std::string out_dir = "out";                   ///< out
  bool checkpoint = true;                        ///< checkpoint

  // [regularity]
  double s = 0.0;
  double r = 0.0;
  double alpha = 0.25;
  double beta = 0.75;
  double b = 0.55;

  // [integrator]
  double dt = 1e-2;
  double t_end = 1.0;
  Scheme scheme = Scheme::exponential_rk4;  ///< scheme = lawson_rk4 | strang
  int record_every = 10;

  // [data]
  /// H^s norm of u0 (simulate, smoothing-scan, highlow) or energy-space norm
  /// of the initial state (attractor).
  double amplitude = 1.0;
  double u_scale = 1.0;

  // [smoothing]
  int ensemble = 8;
  int probe_every = 100;

  // [counterexample]
  std::vector<double> N_values{8, 16, 32, 64, 128};
  int resolution = 6;
  int wave_sign = +1;

  // [highlow]
  double hl_N = 8.0;        ///< N
  double hl_s0 = 0.55;      ///< s0
  double hl_r0 = 0.55;      ///< r0
  double hl_delta = 0.0;    ///< delta (0 = step rule)
  double hl_T = 1.0;        ///< T
  double hl_step_constant = 0.1;
  double hl_gns_c1 = 0.0;
  double hl_gns_c2 = 0.0;
  bool hl_compare_direct = true;

  // [damping]
  double gamma = 0.5;
  double damping_delta = 0.5;  ///< delta
  double a = 0.0;
  double forcing_amplitude = 0.5;

  // [xsb]
  int xsb_xi_points = 32;
  int xsb_time_modes = 32;
  double xsb_xi_extent = 3.0;
  double xsb_tau_margin = 4.0;
  int xsb_ensemble = 8;
  bool xsb_adversarial = true;

  // [resonance]
  double xi1_norm = 4.0;
  double nu = 0.05;
  int shell_points = 2000;
  int triples = 10000;
  double lemma_alpha = 1.5;
  double lemma_beta = 1.0;
  double lemma_max_gap = 100.0;
};

/// Parses a document and validates the result. Throws ConfigError with
/// "line N:" for syntax errors and unknown keys, and a message naming the
/// field for constraint violations. `fallback` is the experiment used when the
/// document has no experiment key.
RunConfig parse_config(std::string_view text, Experiment fallback = Experiment::simulate);

/// Reads and parses a file. Throws IoError when it cannot be read.
RunConfig load_config(const std::string& path, Experiment fallback = Experiment::simulate);

/// Checks every field used by the selected experiment; smoothing hypotheses
/// are routed through smoothing_exponents. Throws ConfigError.
void validate(const RunConfig& config);

/// Every key with its effective value, "section.key" order as documented.
std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& config);

/// Renders a document that parses back to the same config.
std::string render_config(const RunConfig& config);

}  // namespace dispersmooth
