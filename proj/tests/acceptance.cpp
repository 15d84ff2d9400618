// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "dispersmooth/config.hpp"
#include "dispersmooth/dissipative.hpp"
#include "dispersmooth/error.hpp"
#include "dispersmooth/evolution.hpp"
#include "dispersmooth/experiments.hpp"
#include "dispersmooth/highlow.hpp"
#include "dispersmooth/resonance.hpp"
#include "dispersmooth/smoothing.hpp"
#include "dispersmooth/spectral_ops.hpp"

using namespace dispersmooth;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail, double seconds) {
  std::printf("[%s] criterion %d: %s (%.1f s)\n", ok ? "PASS" : "FAIL", id, detail.c_str(),
              seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

SpectralField random_band(const Grid& g, double s, double norm, std::uint64_t seed,
                          FieldSymmetry sym = FieldSymmetry::complex) {
  SpectralField f = dealias(random_sobolev_field(g, s, seed, sym));
  f *= norm / l2_norm(f);
  return f;
}

SystemState kgs_rough(const Grid& g, double s, double amp, std::uint64_t seed) {
  auto scaled = [&](double reg, std::uint64_t sd, FieldSymmetry sym) {
    SpectralField f = dealias(random_sobolev_field(g, reg, sd, sym));
    f *= amp / sobolev_norm(f, reg);
    return f;
  };
  return make_state(System::kgs, scaled(s, seed, FieldSymmetry::complex),
                    scaled(s, seed + 1, FieldSymmetry::real),
                    scaled(s - 1.0, seed + 2, FieldSymmetry::real));
}

void criterion1() {
  Clock clock;
  const std::vector<double> Ns{8, 16, 32, 64, 128};
  std::string detail;
  bool ok = true;
  for (double alpha : {0.75, 1.0}) {
    std::vector<double> ratios;
    for (double N : Ns) ratios.push_back(sharpness_counterexample(N, 0, 0, alpha, 0.55, 2).ratio);
    const double slope = log_log_slope(Ns, ratios);
    ok = ok && std::abs(slope - (alpha - 0.5)) <= 0.1;
    detail += "slope(alpha=" + fmt("%.2f", alpha) + ")=" + fmt("%.4f", slope) + " ";
  }
  std::vector<double> r04;
  for (double N : Ns) r04.push_back(sharpness_counterexample(N, 0, 0, 0.4, 0.55, 2).ratio);
  bool non_increasing = true;
  for (std::size_t i = 2; i < r04.size(); ++i) non_increasing &= r04[i] <= r04[i - 1];
  ok = ok && non_increasing;
  detail += std::string("alpha=0.4 non-increasing beyond N=16: ") + (non_increasing ? "yes" : "no");
  const double t = clock.seconds();
  report(1, ok && t < 60.0, detail, t);
}

void criterion2() {
  Clock clock;
  const SmoothingExponents z = smoothing_exponents(System::zakharov, 2, 0.5, 0.0);
  const SmoothingExponents k = smoothing_exponents(System::kgs, 2, 0.0, 0.0);
  // Zakharov H^{1/2} x L^2 -> H^{1-} x H^{1/2-}; KGS L^2 x L^2 -> H^{1/2-} x H^{3/2-}
  const bool ok = 0.5 + z.alpha_max == 1.0 && 0.0 + z.beta_max == 0.5 &&
                  0.0 + k.alpha_max == 0.5 && 0.0 + k.beta_max == 1.5;
  report(2, ok,
         "Zakharov targets (" + fmt("%.17g", 0.5 + z.alpha_max) + ", " +
             fmt("%.17g", z.beta_max) + "), KGS targets (" + fmt("%.17g", k.alpha_max) + ", " +
             fmt("%.17g", k.beta_max) + ")",
         clock.seconds());
}

void criterion3() {
  Clock clock;
  SmoothingParams p;
  p.alpha_probe = 0.45;
  p.beta_probe = 1.45;
  ScanOptions o;
  o.n_per_dim = 128;
  o.t_end = 0.5;
  o.dt = 1e-3;
  o.probe_every = 50;
  o.amplitude = 1.0;
  const ScanReport a = smoothing_scan(p, 8, 1, o);
  o.amplitude = 0.5;
  const ScanReport b = smoothing_scan(p, 8, 1, o);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const double ratio = a.records[i].raw_residual_norm / b.records[i].raw_residual_norm;
    worst = std::max(worst, std::abs(ratio / 4.0 - 1.0));
  }
  const bool ok = a.u_gain.min >= 0.35 && a.wave_gain.min >= 1.0 && worst <= 0.10;
  const double t = clock.seconds();
  report(3, ok && t < 600.0,
         "min slope gain u=" + fmt("%.3f", a.u_gain.min) + " wave=" + fmt("%.3f", a.wave_gain.min) +
             ", amplitude-halving deviation from 4x=" + fmt("%.4f", worst),
         t);
}

void criterion4() {
  Clock clock;
  const Grid g = Grid::make(2, 64);
  bool ok = true;
  std::string detail;
  for (System sys : {System::kgs, System::zakharov}) {
    SpectralField vt = random_band(g, 1.0, 1.0, 3, FieldSymmetry::real);
    vt[0] = 0.0;
    const SystemState s0 = make_state(sys, random_band(g, 1.0, 1.0, 1),
                                      random_band(g, 1.0, 1.0, 2, FieldSymmetry::real), vt);
    const ConservationReport c0 = conserved_quantities(s0);
    double dm[2], dh[2];
    int i = 0;
    for (double dt : {1e-3, 5e-4}) {
      const ConservationReport c = conserved_quantities(advance(s0, dt, 1.0));
      dm[i] = std::abs(c.mass - c0.mass) / c0.mass;
      dh[i] = std::abs(c.hamiltonian - c0.hamiltonian) / std::abs(c0.hamiltonian);
      ++i;
    }
    const double rm = dm[0] / dm[1];
    const double rh = dh[0] / dh[1];
    const bool sys_ok = dm[0] < 1e-8 && dh[0] < 1e-6 && rm >= 12 && rm <= 20 && rh >= 12 && rh <= 20;
    ok = ok && sys_ok;
    detail += std::string(sys == System::kgs ? "KGS" : "Zakharov") + " mass drift " +
              fmt("%.2e", dm[0]) + " (ratio " + fmt("%.2f", rm) + "), H drift " +
              fmt("%.2e", dh[0]) + " (ratio " + fmt("%.2f", rh) + "); ";
  }
  report(4, ok, detail, clock.seconds());
}

DampedParams forced(const Grid& g) {
  DampedParams p;
  p.gamma = 0.5;
  p.delta = 0.5;
  p.f = random_band(g, 2.0, 0.5, 1000);
  p.g = random_band(g, 2.0, 0.5, 1001, FieldSymmetry::real);
  return p;
}

DampedState damped_data(const Grid& g, const DampedParams& p, double energy_norm,
                        std::uint64_t seed) {
  DampedState s = make_damped_state(random_band(g, 1.0, 1.0, seed),
                                    random_band(g, 1.0, 1.0, seed + 1, FieldSymmetry::real),
                                    random_band(g, 1.0, 1.0, seed + 2, FieldSymmetry::real), p);
  const double scale = energy_norm / energy_space_norm(s);
  s.u *= scale;
  s.v *= scale;
  s.w *= scale;
  return s;
}

std::vector<AttractorReport> forced_runs;

void criterion5() {
  Clock clock;
  const Grid g = Grid::make(2, 64);

  DampedParams unforced;
  unforced.gamma = 0.5;
  unforced.delta = 0.5;
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 1.0;
  cfg.record_every = 100;
  const DampedState s0 = damped_data(g, unforced, 1.0, 7);
  const double m0 = l2_norm(s0.u);
  double mass_err = 0.0;
  for (const DampedState& s : integrate_damped(s0, unforced, cfg).states) {
    mass_err = std::max(mass_err, std::abs(l2_norm(s.u) - std::exp(-unforced.gamma * s.t) * m0) / m0);
  }

  const DampedParams p = forced(g);
  cfg.t_end = 0.3;
  cfg.record_every = 1;
  const DampedTrajectory tr = integrate_damped(damped_data(g, p, 1.0, 11), p, cfg);
  double rate_err = 0.0;
  for (std::size_t i = 50; i + 1 < tr.states.size(); i += 50) {
    const double fd = (energy_H(tr.states[i + 1], p) - energy_H(tr.states[i - 1], p)) / (2.0 * tr.dt);
    const double exact = energy_H_rate(tr.states[i], p);
    rate_err = std::max(rate_err, std::abs(fd - exact) / std::abs(exact));
  }

  IntegratorConfig longrun;
  longrun.dt = 1e-2;
  longrun.t_end = 40.0;
  longrun.record_every = 20;
  std::vector<double> tail_sup;
  std::string energies;
  for (double e : {1.0, 10.0, 100.0}) {
    const DampedState init = damped_data(g, p, std::sqrt(e), 21);
    const DampedTrajectory run = integrate_damped(init, p, longrun);
    forced_runs.push_back(attractor_diagnostics(run, p));
    double sup = 0.0;
    for (const DampedState& s : run.states) {
      if (s.t >= 0.5 * longrun.t_end) sup = std::max(sup, std::abs(energy_H(s, p)));
    }
    tail_sup.push_back(sup);
    energies += fmt("%.3g", energy_H(init, p)) + "->" + fmt("%.4g", sup) + " ";
  }
  const double spread = *std::max_element(tail_sup.begin(), tail_sup.end()) /
                        *std::min_element(tail_sup.begin(), tail_sup.end());
  const bool ok = mass_err < 1e-8 && rate_err < 1e-3 && spread <= 1.5;
  report(5, ok,
         "mass law error " + fmt("%.2e", mass_err) + ", dH/dt relative error " +
             fmt("%.2e", rate_err) + ", H(0)->sup|H| on [T/2,T]: " + energies +
             "(spread " + fmt("%.3f", spread) + ")",
         clock.seconds());
}

void criterion6() {
  Clock clock;
  bool ok = !forced_runs.empty();
  std::string detail;
  for (const AttractorReport& a : forced_runs) {
    const bool run_ok = !a.inconclusive && a.probe_growth <= 1.5 &&
                        std::isfinite(a.u_probe_tail_max) && std::isfinite(a.v_probe_tail_max) &&
                        std::isfinite(a.w_probe_tail_max) &&
                        a.linear_decay_rate >= a.guaranteed_rate;
    ok = ok && run_ok;
    detail += "growth " + fmt("%.4f", a.probe_growth) + " rate " +
              fmt("%.4f", a.linear_decay_rate) + "; ";
  }
  if (!forced_runs.empty()) {
    detail += "guaranteed rate " + fmt("%.4f", forced_runs.front().guaranteed_rate);
  }
  report(6, ok, detail, clock.seconds());
}

void criterion7() {
  Clock clock;
  bool ok = true;
  std::string detail;

  const Grid g = Grid::make(2, 64);
  const SystemState st = kgs_rough(g, 1.0, 1.0, 31);
  double worst_diff = 0.0;
  for (double N : {8.0, 16.0}) {
    HighLowConfig cfg;
    cfg.N = N;
    cfg.dt = 5e-3;
    cfg.T = 10.0 * window_length(cfg);
    const HighLowReport rep = run_global(st, cfg);
    ok = ok && rep.windows == 10;
    for (const WindowLog& row : rep.log) worst_diff = std::max(worst_diff, row.diff_vs_direct);
  }
  ok = ok && worst_diff < 1e-6;
  detail += "direct diff " + fmt("%.2e", worst_diff);

  HighLowConfig one;
  one.N = 8.0;
  one.delta = 0.05;
  one.dt = 0.01;
  const WindowOutcome out = advance_window_detailed(split_initial(st, one.N), one);
  const double tele = l2_norm(out.state.phi + out.state.mu - out.u_end) / l2_norm(out.u_end);
  ok = ok && tele < 1e-12;
  detail += ", telescoping " + fmt("%.2e", tele);

  bool bounds = true;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const double s = 0.95;
    const SystemState d = kgs_rough(g, s, 1.0, 1000 + seed);
    const HighLowState h = split_initial(d, 8.0);
    const double us = sobolev_norm(d.u, s);
    const double ns = sobolev_norm(d.wplus, s);
    const double gain = std::pow(8.0, 1.0 - s) * (1 + 1e-12);
    const double loss = std::pow(8.0, 0.55 - s) * (1 + 1e-12);
    bounds = bounds && sobolev_norm(h.phi, 1.0) <= gain * us &&
             sobolev_norm(h.mu, 0.55) <= loss * us &&
             sobolev_norm(h.psi_plus, 1.0) <= gain * ns &&
             sobolev_norm(h.lambda_plus, 0.55) <= loss * ns;
  }
  ok = ok && bounds;
  detail += std::string(", split bounds 20/20: ") + (bounds ? "yes" : "no");

  const Grid fine = Grid::make(2, 128);
  const SystemState rough = kgs_rough(fine, 0.95, 1.0, 61);
  std::vector<double> w, z;
  for (double N : {8.0, 16.0, 32.0}) {
    HighLowConfig cfg;
    cfg.N = N;
    cfg.s = cfg.r = 0.95;
    cfg.delta = 0.05;
    cfg.dt = 2.5e-3;
    cfg.T = cfg.delta;
    cfg.compare_direct = false;
    const WindowLog row = run_global(rough, cfg).log.front();
    w.push_back(row.w_h1);
    z.push_back(row.z_h1);
  }
  const bool monotone = w[1] < w[0] && w[2] < w[1] && z[1] < z[0] && z[2] < z[1];
  ok = ok && monotone;
  detail += ", ||w||_H1 " + fmt("%.3e", w[0]) + "/" + fmt("%.3e", w[1]) + "/" + fmt("%.3e", w[2]);

  const Grid g4 = Grid::make(4, 16);
  const SystemState small = kgs_rough(g4, 1.0, 0.5, 71);
  HighLowConfig cfg4;
  cfg4.N = 3.0;
  cfg4.dt = 0.02;
  cfg4.T = 2.0 * window_length(cfg4);
  bool smoke = false;
  try {
    const HighLowReport rep = run_global(small, cfg4);
    smoke = !rep.threshold_violated && std::isfinite(rep.log.back().energy_low) &&
            rep.initial_mass < rep.threshold.reciprocal;
    detail += ", d=4 mass " + fmt("%.3f", rep.initial_mass) + " < threshold " +
              fmt("%.3f", rep.threshold.reciprocal);
  } catch (const NumericalAbort& e) {
    detail += std::string(", d=4 aborted: ") + e.what();
  }
  ok = ok && smoke;
  report(7, ok, detail, clock.seconds());
}

void criterion8() {
  Clock clock;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> coord(-50.0, 50.0);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    std::vector<double> xi1(2 + k % 3), xi2(xi1.size());
    for (double& x : xi1) x = coord(rng);
    for (double& x : xi2) x = coord(rng);
    const auto branch = k % 2 == 0 ? ResonanceBranch::minus : ResonanceBranch::plus;
    double n1 = 0.0, n2 = 0.0;
    for (std::size_t i = 0; i < xi1.size(); ++i) {
      n1 += xi1[i] * xi1[i];
      n2 += xi2[i] * xi2[i];
    }
    const double lhs = 2.0 * std::sqrt(n1 * n2) * std::abs(resonance_A(xi1, xi2, branch));
    const double rhs = modulation_lower_bound(make_triple(xi1, xi2, branch));
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, rhs));
  }
  std::vector<double> b;
  for (int i = 0; i <= 100; ++i) b.push_back(i);
  const LemmaCheck good = calc_lemma_check(1.5, 1.0, {0.0}, b);
  const LemmaCheck weak = calc_lemma_check_unchecked(0.9, 0.9, {0.0}, b);
  const double band = good.max_ratio / good.min_ratio;
  const bool ok = worst < 1e-12 && band <= 3.0 && !good.growth_detected && weak.growth_detected;
  report(8, ok,
         "identity error " + fmt("%.2e", worst) + ", lemma ratio band " + fmt("%.3f", band) +
             ", alpha=0.9 growth slope " + fmt("%.3f", weak.growth_slope) +
             (weak.growth_detected ? " (detected)" : " (missed)"),
         clock.seconds());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void criterion9() {
  Clock clock;
  const char* docs[] = {
      "experiment = simulate\nn_per_dim = 32\nseed = 5\n[integrator]\nt_end = 0.2\n",
      "experiment = smoothing-scan\nn_per_dim = 32\nseed = 5\n[integrator]\ndt = 5e-3\n"
      "t_end = 0.1\n[smoothing]\nensemble = 3\nprobe_every = 5\n",
      "experiment = counterexample\n[regularity]\nalpha = 0.75\n[counterexample]\nN = 8,16\n",
      "experiment = highlow\nn_per_dim = 32\nseed = 5\n[regularity]\ns = 0.9\nr = 0.9\n"
      "[highlow]\ndelta = 0.05\nT = 0.2\n",
      "experiment = attractor\nn_per_dim = 16\nseed = 5\n[integrator]\ndt = 0.05\nt_end = 5\n",
      "experiment = xsb-constant\nseed = 5\n[xsb]\nxi_points = 8\ntime_modes = 8\nensemble = 3\n",
      "experiment = resonance-geometry\nseed = 5\n[resonance]\ntriples = 500\nshell_points = 100\n",
  };
  const fs::path root = fs::temp_directory_path() / "dispersmooth_acceptance_determinism";
  bool ok = true;
  int files = 0;
  std::string mismatch;
  for (const char* doc : docs) {
    std::vector<std::vector<std::string>> runs;
    for (int rep = 0; rep < 2; ++rep) {
      RunConfig c = parse_config(doc);
      c.out_dir = (root / (std::string(experiment_name(c.experiment)) + std::to_string(rep))).string();
      fs::remove_all(c.out_dir);
      runs.push_back(write_outputs(run_experiment(c), c, clock.seconds()));
    }
    ok = ok && runs[0].size() == runs[1].size();
    for (std::size_t i = 0; ok && i < runs[0].size(); ++i) {
      if (fs::path(runs[0][i]).filename() == "manifest.json") continue;
      ++files;
      if (slurp(runs[0][i]) != slurp(runs[1][i])) {
        ok = false;
        mismatch = runs[0][i];
      }
    }
  }
  fs::remove_all(root);
  report(9, ok,
         std::to_string(files) + " CSV/checkpoint files compared across 7 experiments" +
             (mismatch.empty() ? "" : ", mismatch in " + mismatch),
         clock.seconds());
}

}  // namespace

int main() {
  auto guarded = [](int id, void (*fn)()) {
    try {
      fn();
    } catch (const std::exception& e) {
      report(id, false, std::string("exception: ") + e.what(), 0.0);
    }
  };
  guarded(1, criterion1);
  guarded(2, criterion2);
  guarded(3, criterion3);
  guarded(4, criterion4);
  guarded(5, criterion5);
  guarded(6, criterion6);
  guarded(7, criterion7);
  guarded(8, criterion8);
  guarded(9, criterion9);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
