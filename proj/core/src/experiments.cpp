#include "dispersmooth/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>

#include "json.hpp"

#include "dispersmooth/dissipative.hpp"
#include "dispersmooth/error.hpp"
#include "dispersmooth/resonance.hpp"
#include "dispersmooth/smoothing.hpp"
#include "dispersmooth/spectral_ops.hpp"

namespace dispersmooth {

namespace {

constexpr int kMaxHighLowWindows = 20000;

std::string cell(double x) { return format_double(x); }
std::string cell(int x) { return std::to_string(x); }
std::string cell(std::uint64_t x) { return std::to_string(x); }

Grid make_grid(const RunConfig& c) { return Grid::make(c.d, c.n_per_dim, c.box_length); }

IntegratorConfig integrator(const RunConfig& c) {
  IntegratorConfig ic;
  ic.dt = c.dt;
  ic.scheme = c.scheme;
  ic.t_end = c.t_end;
  ic.record_every = c.record_every;
  return ic;
}

SmoothingParams smoothing_params(const RunConfig& c) {
  SmoothingParams p;
  p.system = c.system;
  p.d = c.d;
  p.s = c.s;
  p.r = c.r;
  p.alpha_probe = c.alpha;
  p.beta_probe = c.beta;
  p.b = c.b;
  return p;
}

ExperimentReport simulate(const RunConfig& c) {
  ExperimentReport rep;
  const Grid grid = make_grid(c);
  const SystemState initial =
      scan_initial_state(smoothing_params(c), grid, c.seed, c.amplitude, c.u_scale);
  const Trajectory tr = integrate(initial, integrator(c));

  CsvTable ts{timeseries_header(), {}};
  ConservationReport first{};
  double mass_drift = 0.0, energy_drift = 0.0;
  for (std::size_t i = 0; i < tr.states.size(); ++i) {
    const SystemState& st = tr.states[i];
    const ConservationReport q = conserved_quantities(st, c.s, c.r);
    if (i == 0) first = q;
    mass_drift = std::max(mass_drift, std::abs(q.mass - first.mass));
    energy_drift = std::max(energy_drift, std::abs(q.hamiltonian - first.hamiltonian));
    const long step = std::lround(st.t / tr.dt);
    ts.add_row({std::to_string(step), cell(st.t), cell(q.mass), cell(q.hamiltonian), cell(q.hs_u),
                cell(q.hr_wplus), cell(q.hr_wminus)});
  }
  rep.tables.emplace_back("timeseries.csv", std::move(ts));
  rep.summary = {{"dt", tr.dt},
                 {"steps", static_cast<double>(tr.steps)},
                 {"initial_mass", first.mass},
                 {"initial_hamiltonian", first.hamiltonian},
                 {"max_mass_drift", mass_drift},
                 {"max_hamiltonian_drift", energy_drift}};
  rep.final_state = tr.states.back();
  return rep;
}

ExperimentReport smoothing_scan_run(const RunConfig& c) {
  ExperimentReport rep;
  ScanOptions o;
  o.n_per_dim = c.n_per_dim;
  o.box_length = c.box_length;
  o.t_end = c.t_end;
  o.dt = c.dt;
  o.probe_every = c.probe_every;
  o.amplitude = c.amplitude;
  o.u_scale = c.u_scale;
  o.scheme = c.scheme;
  const ScanReport scan = smoothing_scan(smoothing_params(c), c.ensemble, c.seed, o);

  CsvTable t{{"seed", "component", "alpha_probe", "residual_norm", "slope_gain"}, {}};
  for (const ScanRecord& r : scan.records) {
    t.add_row({cell(r.seed), component_name(r.component), cell(r.probe), cell(r.residual_norm),
               cell(r.slope_gain)});
  }
  rep.tables.emplace_back("scan.csv", std::move(t));
  rep.summary = {{"alpha_max", scan.exponents.alpha_max}, {"beta_max", scan.exponents.beta_max},
                 {"u_gain_mean", scan.u_gain.mean},       {"u_gain_min", scan.u_gain.min},
                 {"u_gain_spread", scan.u_gain.spread},   {"wave_gain_mean", scan.wave_gain.mean},
                 {"wave_gain_min", scan.wave_gain.min},   {"wave_gain_spread", scan.wave_gain.spread}};
  for (int i = 0; i < c.ensemble; ++i) rep.seeds.push_back(c.seed + static_cast<std::uint64_t>(i));
  return rep;
}

ExperimentReport counterexample_run(const RunConfig& c) {
  ExperimentReport rep;
  CounterexampleOptions o;
  o.resolution = c.resolution;
  o.wave_sign = c.wave_sign;
  CsvTable t{{"N", "u_norm", "v_norm", "product_norm", "ratio"}, {}};
  std::vector<double> ratios;
  for (double N : c.N_values) {
    const CounterexampleResult r = sharpness_counterexample(N, c.s, c.r, c.alpha, c.b, c.d, o);
    ratios.push_back(r.ratio);
    t.add_row({cell(N), cell(r.u_norm), cell(r.v_norm), cell(r.product_norm), cell(r.ratio)});
  }
  rep.tables.emplace_back("counterexample.csv", std::move(t));
  if (c.N_values.size() >= 2) rep.summary.emplace_back("slope", log_log_slope(c.N_values, ratios));
  return rep;
}

ExperimentReport highlow_run(const RunConfig& c) {
  ExperimentReport rep;
  const HighLowConfig hc = highlow_config(c);
  const double delta = window_length(hc);
  if (std::ceil(hc.T / delta) > kMaxHighLowWindows) {
    throw ConfigError("highlow.delta: window length " + format_double(delta) + " needs more than " +
                      std::to_string(kMaxHighLowWindows) +
                      " windows; set highlow.delta or shorten highlow.T");
  }
  const Grid grid = make_grid(c);
  const SystemState initial =
      scan_initial_state(smoothing_params(c), grid, c.seed, c.amplitude, c.u_scale);
  const HighLowReport hl = run_global(initial, hc);

  CsvTable t{{"window", "t", "E_low", "mass_low", "w_H1", "z_H1", "diff_vs_direct"}, {}};
  for (const WindowLog& w : hl.log) {
    t.add_row({cell(w.window), cell(w.t), cell(w.energy_low), cell(w.mass_low), cell(w.w_h1),
               cell(w.z_h1), cell(w.diff_vs_direct)});
  }
  rep.tables.emplace_back("highlow.csv", std::move(t));
  rep.summary = {{"delta", hl.delta},
                 {"windows", static_cast<double>(hl.windows)},
                 {"steps_per_window", static_cast<double>(hl.steps_per_window)},
                 {"gns_c1", hl.c1},
                 {"gns_c2", hl.c2},
                 {"mass_threshold_reciprocal", hl.threshold.reciprocal},
                 {"mass_threshold_product", hl.threshold.product},
                 {"initial_mass", hl.initial_mass},
                 {"threshold_violated", hl.threshold_violated ? 1.0 : 0.0}};
  rep.warnings = hl.warnings;
  if (hl.final_state) rep.final_state = reassemble(*hl.final_state);
  return rep;
}

/// Real or complex random field on the dealiased band with unit L^2 norm.
SpectralField unit_field(const Grid& grid, double s, std::uint64_t seed, FieldSymmetry sym) {
  SpectralField f = dealias(random_sobolev_field(grid, s, seed, sym));
  const double norm = l2_norm(f);
  if (norm > 0.0) f *= 1.0 / norm;
  return f;
}

ExperimentReport attractor_run(const RunConfig& c) {
  ExperimentReport rep;
  const Grid grid = make_grid(c);
  DampedParams p;
  p.gamma = c.gamma;
  p.delta = c.damping_delta;
  p.a = c.a;
  if (c.forcing_amplitude > 0.0) {
    p.f = c.forcing_amplitude * unit_field(grid, 2.0, c.seed + 1000, FieldSymmetry::complex);
    p.g = c.forcing_amplitude * unit_field(grid, 2.0, c.seed + 1001, FieldSymmetry::real);
  }
  validate(p);
  DampedState s0 = make_damped_state(unit_field(grid, 1.0, c.seed, FieldSymmetry::complex),
                                     unit_field(grid, 1.0, c.seed + 1, FieldSymmetry::real),
                                     unit_field(grid, 1.0, c.seed + 2, FieldSymmetry::real), p);
  const double norm = energy_space_norm(s0);
  const Complex scale = norm > 0.0 ? c.amplitude / norm : 0.0;
  s0.u *= scale;
  s0.v *= scale;
  s0.w *= scale;

  const AttractorReport a = attractor_diagnostics(integrate_damped(s0, p, integrator(c)), p);
  CsvTable t{{"t", "energy_norm", "H", "mass", "linear_norm", "u_probe", "v_probe", "w_probe"},
             {}};
  for (const AttractorSample& x : a.samples) {
    t.add_row({cell(x.t), cell(x.energy_norm), cell(x.H), cell(x.mass), cell(x.linear_norm),
               cell(x.u_probe), cell(x.v_probe), cell(x.w_probe)});
  }
  rep.tables.emplace_back("attractor.csv", std::move(t));
  rep.summary = {{"a", auxiliary_a(p)},
                 {"ball_radius", a.ball_radius},
                 {"entry_time", a.entry_time},
                 {"persistent", a.persistent ? 1.0 : 0.0},
                 {"linear_decay_rate", a.linear_decay_rate},
                 {"guaranteed_rate", a.guaranteed_rate},
                 {"u_probe_tail_max", a.u_probe_tail_max},
                 {"v_probe_tail_max", a.v_probe_tail_max},
                 {"w_probe_tail_max", a.w_probe_tail_max},
                 {"probe_growth", a.probe_growth},
                 {"inconclusive", a.inconclusive ? 1.0 : 0.0}};
  if (a.inconclusive) rep.warnings.push_back("run too short for attractor diagnostics");
  return rep;
}

ExperimentReport xsb_run(const RunConfig& c) {
  ExperimentReport rep;
  BilinearOptions o;
  o.d = c.d;
  o.xi_points = c.xsb_xi_points;
  o.time_modes = c.xsb_time_modes;
  o.xi_extent = c.xsb_xi_extent;
  o.tau_margin = c.xsb_tau_margin;
  o.wave_sign = c.wave_sign;
  const BilinearStats st =
      bilinear_constant_estimate(c.s, c.r, c.alpha, c.b, o, c.xsb_ensemble, c.seed,
                                 c.xsb_adversarial);
  CsvTable t{{"kind", "seed", "ratio"}, {}};
  for (const BilinearMember& m : st.members) t.add_row({m.kind, cell(m.seed), cell(m.ratio)});
  rep.tables.emplace_back("xsb.csv", std::move(t));
  rep.summary = {{"max_ratio", st.max_ratio},
                 {"mean_ratio", st.mean_ratio},
                 {"skipped", static_cast<double>(st.skipped)},
                 {"admissible", st.admissible ? 1.0 : 0.0}};
  if (!st.admissible) rep.warnings.push_back("alpha outside the admissible range; ratios may grow");
  if (st.skipped > 0) rep.warnings.push_back("members skipped by the resource guard");
  return rep;
}

ExperimentReport resonance_run(const RunConfig& c) {
  ExperimentReport rep;
  const std::size_t d = static_cast<std::size_t>(c.d);
  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> normal(0.0, c.xi1_norm);

  CsvTable triples{{"index", "branch", "abs_xi1", "abs_xi2", "angle", "A", "modulation",
                    "relative_error"},
                   {}};
  double worst = 0.0;
  std::vector<double> xi1(d), xi2(d);
  for (int i = 0; i < c.triples; ++i) {
    for (double& x : xi1) x = normal(rng);
    for (double& x : xi2) x = normal(rng);
    const ResonanceBranch branch = i % 2 == 0 ? ResonanceBranch::minus : ResonanceBranch::plus;
    double n1 = 0.0, n2 = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      n1 += xi1[k] * xi1[k];
      n2 += xi2[k] * xi2[k];
    }
    n1 = std::sqrt(n1);
    n2 = std::sqrt(n2);
    const double A = resonance_A(xi1, xi2, branch);
    const double mod = modulation_lower_bound(make_triple(xi1, xi2, branch));
    const double lhs = 2.0 * n1 * n2 * std::abs(A);
    const double err = std::abs(lhs - mod) / std::max(1.0, mod);
    worst = std::max(worst, err);
    triples.add_row({cell(i), branch == ResonanceBranch::minus ? "minus" : "plus", cell(n1),
                     cell(n2), cell(angle_between(xi1, xi2)), cell(A), cell(mod), cell(err)});
  }
  rep.tables.emplace_back("triples.csv", std::move(triples));

  std::vector<double> axis(d, 0.0);
  axis[0] = c.xi1_norm;
  const ShellSample shell = resonant_shell_sample(axis, c.nu, ResonanceBranch::minus,
                                                  c.shell_points, c.seed + 1);
  std::vector<std::string> header;
  for (std::size_t k = 0; k < d; ++k) header.push_back("xi2_" + std::to_string(k + 1));
  header.push_back("A");
  CsvTable shell_table{header, {}};
  for (const ShellPoint& p : shell.points) {
    std::vector<std::string> row;
    for (double x : p.xi2) row.push_back(cell(x));
    row.push_back(cell(p.A));
    shell_table.add_row(std::move(row));
  }
  rep.tables.emplace_back("shell.csv", std::move(shell_table));
  if (!shell.notice.empty()) rep.warnings.push_back(shell.notice);

  std::vector<double> gaps;
  for (int i = 0; i <= 50; ++i) gaps.push_back(c.lemma_max_gap * i / 50.0);
  const LemmaCheck lemma = calc_lemma_check(c.lemma_alpha, c.lemma_beta, {0.0}, gaps);
  CsvTable lt{{"a", "b", "integral", "ratio"}, {}};
  for (const LemmaPoint& p : lemma.points) {
    lt.add_row({cell(p.a), cell(p.b), cell(p.integral), cell(p.ratio)});
  }
  rep.tables.emplace_back("lemma.csv", std::move(lt));

  rep.summary = {{"max_identity_error", worst},
                 {"shell_points", static_cast<double>(shell.points.size())},
                 {"shell_thickness", shell.points.empty() ? NAN : shell_thickness(shell, axis, 256)},
                 {"shell_thickness_predicted", 2.0 * c.nu * c.xi1_norm},
                 {"lemma_max_ratio", lemma.max_ratio},
                 {"lemma_min_ratio", lemma.min_ratio},
                 {"lemma_growth_slope", lemma.growth_slope},
                 {"lemma_growth_detected", lemma.growth_detected ? 1.0 : 0.0}};
  return rep;
}

}  // namespace

std::vector<std::string> timeseries_header() {
  return {"step", "t", "mass", "hamiltonian", "Hs_u", "Hr_wplus", "Hr_wminus"};
}

HighLowConfig highlow_config(const RunConfig& c) {
  HighLowConfig h;
  h.N = c.hl_N;
  h.s = c.s;
  h.r = c.r;
  h.s0 = c.hl_s0;
  h.r0 = c.hl_r0;
  h.delta = c.hl_delta;
  h.T = c.hl_T;
  h.gns_c1 = c.hl_gns_c1;
  h.gns_c2 = c.hl_gns_c2;
  h.step_constant = c.hl_step_constant;
  h.dt = c.dt;
  h.scheme = c.scheme;
  h.compare_direct = c.hl_compare_direct;
  return h;
}

ExperimentReport run_experiment(const RunConfig& config) {
  validate(config);
  ExperimentReport rep;
  switch (config.experiment) {
    case Experiment::simulate: rep = simulate(config); break;
    case Experiment::smoothing_scan: rep = smoothing_scan_run(config); break;
    case Experiment::counterexample: rep = counterexample_run(config); break;
    case Experiment::highlow: rep = highlow_run(config); break;
    case Experiment::attractor: rep = attractor_run(config); break;
    case Experiment::xsb_constant: rep = xsb_run(config); break;
    case Experiment::resonance_geometry: rep = resonance_run(config); break;
  }
  rep.experiment = config.experiment;
  if (rep.seeds.empty()) rep.seeds.push_back(config.seed);
  return rep;
}

std::vector<std::string> write_outputs(const ExperimentReport& report, const RunConfig& config,
                                       double wall_seconds) {
  namespace fs = std::filesystem;
  ensure_directory(config.out_dir);
  std::vector<std::string> written;
  for (const auto& [name, table] : report.tables) {
    const std::string path = (fs::path(config.out_dir) / name).string();
    write_csv(path, table);
    written.push_back(path);
  }
  if (config.checkpoint && report.final_state) {
    const std::string path = (fs::path(config.out_dir) / "final.zkgs").string();
    save_checkpoint(*report.final_state, path);
    written.push_back(path);
  }

  nlohmann::ordered_json manifest;
  manifest["experiment"] = experiment_name(report.experiment);
  manifest["code_version"] = code_version();
  manifest["seeds"] = report.seeds;
  manifest["wall_time_seconds"] = wall_seconds;
  nlohmann::ordered_json echo = nlohmann::ordered_json::object();
  for (const auto& [key, value] : config_echo(config)) echo[key] = value;
  manifest["config"] = echo;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.summary) {
    if (std::isfinite(value)) summary[key] = value;
    else summary[key] = format_double(value);
  }
  manifest["summary"] = summary;
  manifest["warnings"] = report.warnings;
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (const std::string& p : written) files.push_back(fs::path(p).filename().string());
  manifest["files"] = files;

  const std::string path = (fs::path(config.out_dir) / "manifest.json").string();
  write_text(path, manifest.dump(2) + "\n");
  written.push_back(path);
  return written;
}

}  // namespace dispersmooth
