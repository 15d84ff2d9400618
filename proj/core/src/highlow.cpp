#include "dispersmooth/highlow.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "dispersmooth/error.hpp"
#include "dispersmooth/fft.hpp"
#include "dispersmooth/gns.hpp"
#include "dispersmooth/spectral_ops.hpp"

namespace dispersmooth {

namespace {

constexpr Complex kI{0.0, 1.0};

LinearFlow six_field_flow(const Grid& grid) {
  return [grid](double t) -> Propagator {
    auto s = std::make_shared<const std::vector<Complex>>(
        tabulate_symbol(grid, schrodinger_symbol(t)));
    auto p = std::make_shared<const std::vector<Complex>>(
        tabulate_symbol(grid, klein_gordon_symbol(+1, t)));
    auto m = std::make_shared<const std::vector<Complex>>(
        tabulate_symbol(grid, klein_gordon_symbol(-1, t)));
    return [s, p, m](FieldBundle& y) {
      const std::vector<Complex>* tables[3] = {s.get(), p.get(), m.get()};
      for (std::size_t c = 0; c < y.size(); ++c) {
        const std::vector<Complex>& table = *tables[c % 3];
        for (std::size_t i = 0; i < y[c].size(); ++i) y[c][i] *= table[i];
      }
    };
  };
}

/// y = (phi, psi+, psi-, mu, lambda+, lambda-).
FieldBundle six_field_rhs(const FieldBundle& y) {
  const Grid& grid = y[0].grid();
  std::vector<Samples> x;
  x.reserve(6);
  for (const SpectralField& f : y) x.push_back(inverse_transform(f));
  const Samples& phi = x[0];
  const Samples& mu = x[3];

  Samples low_coupling(grid.size());
  Samples low_density(grid.size());
  Samples high_coupling(grid.size());
  Samples high_density(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const Complex psi = x[1][j] + x[2][j];
    const Complex lambda = x[4][j] + x[5][j];
    low_coupling[j] = phi[j] * psi;
    low_density[j] = std::norm(phi[j]);
    high_coupling[j] = mu[j] * (psi + lambda) + lambda * phi[j];
    high_density[j] = std::norm(mu[j]) + 2.0 * (mu[j] * std::conj(phi[j])).real();
  }

  FieldBundle out;
  out.reserve(6);
  auto push_triple = [&](const Samples& coupling, const Samples& density) {
    SpectralField du = dealias(forward_transform(grid, coupling));
    du *= 0.5 * kI;
    const SpectralField rho = dealias(forward_transform(grid, density));
    SpectralField dp(grid);
    SpectralField dm(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Complex g = kI * rho[i] / std::sqrt(1.0 + grid.xi_squared(i));
      dp[i] = g;
      dm[i] = -g;
    }
    out.push_back(std::move(du));
    out.push_back(std::move(dp));
    out.push_back(std::move(dm));
  };
  push_triple(low_coupling, low_density);
  push_triple(high_coupling, high_density);
  return out;
}

int window_steps(double delta, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  const double ratio = delta / dt;
  const double steps = std::ceil(ratio - 1e-9 * std::max(1.0, ratio));
  if (steps > 1e8) throw ConfigError("delta / dt is too large");
  return std::max(1, static_cast<int>(steps));
}

double relative_difference(const SystemState& a, const SystemState& b) {
  double num = 0.0;
  double den = 0.0;
  const SpectralField* pa[3] = {&a.u, &a.wplus, &a.wminus};
  const SpectralField* pb[3] = {&b.u, &b.wplus, &b.wminus};
  for (int c = 0; c < 3; ++c) {
    num += std::pow(l2_norm(*pa[c] - *pb[c]), 2);
    den += std::pow(l2_norm(*pb[c]), 2);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

void require_positive_constants(double c1, double c2) {
  if (!(c1 > 0.0) || !(c2 > 0.0) || !std::isfinite(c1) || !std::isfinite(c2)) {
    throw ConfigError("Gagliardo-Nirenberg constants must be positive");
  }
}

}  // namespace

HighLowState split_initial(const SpectralField& u0, const SpectralField& wplus0,
                           const SpectralField& wminus0, double N) {
  require_same_grid(u0.grid(), wplus0.grid(), "split_initial");
  require_same_grid(u0.grid(), wminus0.grid(), "split_initial");
  if (!(N >= 0.0) || !std::isfinite(N)) throw ConfigError("cutoff N must be finite and >= 0");
  SpectralField phi = lowpass(u0, N);
  SpectralField psp = lowpass(wplus0, N);
  SpectralField psm = lowpass(wminus0, N);
  SpectralField mu = u0 - phi;
  SpectralField lp = wplus0 - psp;
  SpectralField lm = wminus0 - psm;
  return HighLowState{std::move(phi), std::move(psp), std::move(psm), std::move(mu),
                      std::move(lp),  std::move(lm),  0,              0.0};
}

HighLowState split_initial(const SystemState& initial, double N) {
  if (initial.system != System::kgs) {
    throw ConfigError("the high-low iteration is defined for KGS only");
  }
  HighLowState s = split_initial(initial.u, initial.wplus, initial.wminus, N);
  s.t = initial.t;
  return s;
}

SystemState reassemble(const HighLowState& state) {
  return SystemState{System::kgs, state.phi + state.mu, state.psi_plus + state.lambda_plus,
                     state.psi_minus + state.lambda_minus, state.t};
}

double step_rule(double N, double m, double r0, double c) {
  if (!(N >= 1.0) || !std::isfinite(N)) throw ConfigError("step_rule needs N >= 1");
  if (!(r0 > 0.0)) throw ConfigError("step_rule needs r0 > 0");
  if (!(c > 0.0)) throw ConfigError("step_rule needs c > 0");
  return c * std::pow(N, -2.0 * (1.0 - m) / r0 - 0.01);
}

double window_length(const HighLowConfig& config) {
  if (config.delta < 0.0 || !std::isfinite(config.delta)) {
    throw ConfigError("window length must be >= 0");
  }
  if (config.delta > 0.0) return config.delta;
  return step_rule(config.N, config.m(), config.r0, config.step_constant);
}

WindowOutcome advance_window_detailed(const HighLowState& state, const HighLowConfig& config) {
  const double delta = window_length(config);
  const int steps = window_steps(delta, config.dt);
  const double h = delta / steps;
  const Grid& grid = state.phi.grid();

  FieldBundle y{state.phi, state.psi_plus,    state.psi_minus,
                state.mu,  state.lambda_plus, state.lambda_minus};
  for (const SpectralField& f : y) require_same_grid(grid, f.grid(), "advance_window");

  const ExponentialStepper stepper(six_field_flow(grid), six_field_rhs, h, config.scheme);
  for (int k = 1; k <= steps; ++k) {
    stepper.step(y);
    check_bounded(y, state.t + k * h);
  }

  SpectralField mu_lin = linear_propagate(state.mu, Dispersion::schrodinger, delta);
  SpectralField lp_lin = linear_propagate(state.lambda_plus, Dispersion::kg_plus, delta);
  SpectralField lm_lin = linear_propagate(state.lambda_minus, Dispersion::kg_minus, delta);

  WindowIncrement inc{y[3] - mu_lin, y[4] - lp_lin, y[5] - lm_lin};
  SpectralField u_end = y[0] + y[3];

  HighLowState next{y[0] + inc.w,      y[1] + inc.z_plus,  y[2] + inc.z_minus,
                    std::move(mu_lin), std::move(lp_lin),  std::move(lm_lin),
                    state.window_index + 1, state.t + delta};
  return WindowOutcome{std::move(next), std::move(inc), std::move(u_end)};
}

HighLowState advance_window(const HighLowState& state, const HighLowConfig& config) {
  return advance_window_detailed(state, config).state;
}

LowEnergy low_energy(const SpectralField& phi, const SpectralField& psi_plus,
                     const SpectralField& psi_minus) {
  require_same_grid(phi.grid(), psi_plus.grid(), "low_energy");
  require_same_grid(phi.grid(), psi_minus.grid(), "low_energy");
  const Grid& grid = phi.grid();
  LowEnergy e;
  e.mass_phi = l2_norm(phi);
  e.grad_phi = sobolev_norm(phi, 1.0, true);
  const double ap = sobolev_norm(psi_plus, 1.0);
  const double am = sobolev_norm(psi_minus, 1.0);
  e.a_psi = std::sqrt(0.5 * (ap * ap + am * am));

  const Samples pphi = inverse_transform(phi);
  const Samples pp = inverse_transform(psi_plus);
  const Samples pm = inverse_transform(psi_minus);
  double cubic = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    cubic += std::norm(pphi[j]) * 0.5 * (pp[j] + pm[j]).real();
  }
  e.cubic = cubic * grid.volume() / static_cast<double>(grid.size());
  e.surrogate = e.a_psi * e.a_psi + 2.0 * e.grad_phi * e.grad_phi;
  e.energy = e.surrogate - 2.0 * e.cubic;
  return e;
}

double coercivity_gap_bound(const LowEnergy& e, double c1, double c2) {
  require_positive_constants(c1, c2);
  return 2.0 * c1 * c2 * c2 * e.mass_phi * e.grad_phi * e.a_psi;
}

double coercivity_c0(double mass, double c1, double c2) {
  require_positive_constants(c1, c2);
  return mass * c1 * c2 * c2 / std::sqrt(2.0);
}

double mass_threshold(double c1, double c2) {
  require_positive_constants(c1, c2);
  return std::sqrt(2.0) / (c1 * c2 * c2);
}

MassThresholdForms mass_threshold_forms(double c1, double c2) {
  require_positive_constants(c1, c2);
  return {mass_threshold(c1, c2), std::sqrt(2.0) * c1 * c2 * c2};
}

HighLowReport run_global(const SystemState& initial, const HighLowConfig& config) {
  if (!(config.T >= 0.0) || !std::isfinite(config.T)) throw ConfigError("T must be >= 0");
  HighLowReport rep;
  rep.config = config;
  rep.delta = window_length(config);
  rep.steps_per_window = window_steps(rep.delta, config.dt);
  const double ratio = config.T / rep.delta;
  rep.windows = std::max(1, static_cast<int>(std::ceil(ratio - 1e-9 * std::max(1.0, ratio))));

  rep.c1 = config.gns_c1 > 0.0 ? config.gns_c1 : c1_lower_bound().value;
  rep.c2 = config.gns_c2 > 0.0 ? config.gns_c2 : c2_lower_bound().value;
  rep.threshold = mass_threshold_forms(rep.c1, rep.c2);
  rep.initial_mass = l2_norm(initial.u);
  rep.threshold_violated = rep.initial_mass >= rep.threshold.reciprocal;
  if (rep.threshold_violated) {
    std::ostringstream msg;
    msg << "mass " << rep.initial_mass << " is not below sqrt(2)/(C1 C2^2) = "
        << rep.threshold.reciprocal;
    rep.warnings.push_back(msg.str());
  }
  if ((rep.initial_mass < rep.threshold.reciprocal) !=
      (rep.initial_mass < rep.threshold.product)) {
    std::ostringstream msg;
    msg << "the two threshold forms disagree: sqrt(2)/(C1 C2^2) = " << rep.threshold.reciprocal
        << ", sqrt(2) C1 C2^2 = " << rep.threshold.product;
    rep.warnings.push_back(msg.str());
  }
  if (initial.u.grid().dim() == 4 && config.m() <= 0.9) {
    rep.warnings.push_back("min(s, r) <= 9/10 is outside the four-dimensional regime");
  }

  HighLowState state = split_initial(initial, config.N);
  std::optional<SystemState> direct;
  if (config.compare_direct) direct = initial;
  const double h = rep.delta / rep.steps_per_window;

  for (int k = 0; k < rep.windows; ++k) {
    WindowOutcome out = advance_window_detailed(state, config);
    state = std::move(out.state);
    WindowLog row;
    row.window = state.window_index;
    row.t = state.t;
    const LowEnergy e = low_energy(state.phi, state.psi_plus, state.psi_minus);
    row.energy_low = e.energy;
    row.mass_low = e.mass_phi;
    row.w_h1 = sobolev_norm(out.increment.w, 1.0);
    row.z_h1 = std::max(sobolev_norm(out.increment.z_plus, 1.0),
                        sobolev_norm(out.increment.z_minus, 1.0));
    if (direct) {
      *direct = advance(*direct, h, rep.delta, config.scheme);
      row.diff_vs_direct = relative_difference(reassemble(state), *direct);
    } else {
      row.diff_vs_direct = std::numeric_limits<double>::quiet_NaN();
    }
    rep.log.push_back(row);
  }
  rep.final_state = std::move(state);
  rep.direct_final = std::move(direct);
  return rep;
}

}  // namespace dispersmooth
