#include "dispersmooth/evolution.hpp"

#include <cmath>

#include "dispersmooth/error.hpp"
#include "dispersmooth/fft.hpp"
#include "dispersmooth/spectral_ops.hpp"

namespace dispersmooth {

namespace {

constexpr Complex kI{0.0, 1.0};

RadialSymbol dispersion_symbol(Dispersion dispersion, double t) {
  switch (dispersion) {
    case Dispersion::schrodinger:
      return schrodinger_symbol(t);
    case Dispersion::kg_plus:
      return klein_gordon_symbol(+1, t);
    case Dispersion::kg_minus:
      return klein_gordon_symbol(-1, t);
  }
  throw ConfigError("unknown dispersion");
}

void multiply_in_place(SpectralField& field, const std::vector<Complex>& table) {
  for (std::size_t i = 0; i < field.size(); ++i) field[i] *= table[i];
}

LinearFlow system_flow(const Grid& grid) {
  return [grid](double t) -> Propagator {
    auto s = std::make_shared<const std::vector<Complex>>(
        tabulate_symbol(grid, schrodinger_symbol(t)));
    auto p = std::make_shared<const std::vector<Complex>>(
        tabulate_symbol(grid, klein_gordon_symbol(+1, t)));
    auto m = std::make_shared<const std::vector<Complex>>(
        tabulate_symbol(grid, klein_gordon_symbol(-1, t)));
    return [s, p, m](FieldBundle& y) {
      multiply_in_place(y[0], *s);
      multiply_in_place(y[1], *p);
      multiply_in_place(y[2], *m);
    };
  };
}

FieldBundle rhs_bundle(System system, const FieldBundle& y) {
  const SpectralField& u = y[0];
  const SpectralField& wp = y[1];
  const SpectralField& wm = y[2];
  const Grid& grid = u.grid();
  const Samples pu = inverse_transform(u);
  const Samples pp = inverse_transform(wp);
  const Samples pm = inverse_transform(wm);
  Samples coupling(grid.size());
  Samples density(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    coupling[j] = pu[j] * (pp[j] + pm[j]);
    density[j] = std::norm(pu[j]);
  }
  SpectralField du = dealias(forward_transform(grid, coupling));
  const SpectralField rho = dealias(forward_transform(grid, density));

  const double sign = system == System::kgs ? 0.5 : -0.5;
  du *= kI * sign;

  SpectralField dwp(grid);
  SpectralField dwm(grid);
  if (system == System::kgs) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Complex g = kI * rho[i] / std::sqrt(1.0 + grid.xi_squared(i));
      dwp[i] = g;
      dwm[i] = -g;
    }
  } else {
    const SpectralField rp = real_part(wp);
    const SpectralField rm = real_part(wm);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double ksq = grid.xi_squared(i);
      const double inv_a = 1.0 / std::sqrt(1.0 + ksq);
      const Complex lap = -ksq * rho[i];
      dwp[i] = kI * inv_a * (lap + rp[i]);
      dwm[i] = -kI * inv_a * (lap + rm[i]);
    }
  }
  FieldBundle out;
  out.reserve(3);
  out.push_back(std::move(du));
  out.push_back(std::move(dwp));
  out.push_back(std::move(dwm));
  return out;
}

FieldBundle to_bundle(const SystemState& s) { return {s.u, s.wplus, s.wminus}; }

SystemState from_bundle(System system, FieldBundle&& y, double t) {
  return SystemState{system, std::move(y[0]), std::move(y[1]), std::move(y[2]), t};
}

void validate_state(const SystemState& s) {
  require_same_grid(s.u.grid(), s.wplus.grid(), "state");
  require_same_grid(s.u.grid(), s.wminus.grid(), "state");
}

int step_count(double dt, double t_end) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be >= 0");
  const double ratio = t_end / dt;
  const double steps = std::ceil(ratio - 1e-9 * std::max(1.0, ratio));
  if (steps > 1e9) throw ConfigError("t_end / dt is too large");
  return static_cast<int>(steps);
}

}  // namespace

SystemState make_state(System system, const SpectralField& u, const SpectralField& v,
                       const SpectralField& v_t, double t) {
  require_same_grid(u.grid(), v.grid(), "make_state");
  auto [wp, wm] = to_wave_components(v, v_t);
  return SystemState{system, u, std::move(wp), std::move(wm), t};
}

SpectralField linear_propagate(const SpectralField& field, Dispersion dispersion, double t) {
  return fourier_multiplier(field, dispersion_symbol(dispersion, t));
}

SystemState linear_propagate(const SystemState& state, double t) {
  validate_state(state);
  FieldBundle y = to_bundle(state);
  system_flow(state.u.grid())(t)(y);
  return from_bundle(state.system, std::move(y), state.t + t);
}

NonlinearTerms nonlinear_rhs(const SystemState& state) {
  validate_state(state);
  FieldBundle d = rhs_bundle(state.system, to_bundle(state));
  return NonlinearTerms{std::move(d[0]), std::move(d[1]), std::move(d[2])};
}

Trajectory integrate(const SystemState& initial, const IntegratorConfig& config) {
  validate_state(initial);
  if (config.record_every < 1) throw ConfigError("record_every must be >= 1");
  const int steps = step_count(config.dt, config.t_end);
  Trajectory traj;
  traj.steps = steps;
  traj.dt = steps > 0 ? config.t_end / steps : config.dt;
  traj.states.push_back(initial);
  if (steps == 0) return traj;

  const System system = initial.system;
  const ExponentialStepper stepper(
      system_flow(initial.u.grid()),
      [system](const FieldBundle& y) { return rhs_bundle(system, y); }, traj.dt,
      config.scheme);
  FieldBundle y = to_bundle(initial);
  for (int k = 1; k <= steps; ++k) {
    stepper.step(y);
    const double t = initial.t + k * traj.dt;
    check_bounded(y, t);
    if (k % config.record_every == 0 || k == steps) {
      traj.states.push_back(SystemState{system, y[0], y[1], y[2], t});
    }
  }
  return traj;
}

SystemState advance(const SystemState& initial, double dt, double t_end, Scheme scheme) {
  IntegratorConfig config;
  config.dt = dt;
  config.t_end = t_end;
  config.scheme = scheme;
  config.record_every = std::max(1, step_count(dt, t_end));
  return integrate(initial, config).states.back();
}

ConservationReport conserved_quantities(const SystemState& state, double s, double r) {
  validate_state(state);
  const Grid& grid = state.u.grid();
  const double vol = grid.volume();
  auto [v, v_t] = from_wave_components(state.wplus, state.wminus);

  ConservationReport rep;
  rep.mass = l2_norm(state.u);
  const double grad_u = std::pow(sobolev_norm(state.u, 1.0, true), 2);

  const Samples pu = inverse_transform(state.u);
  const Samples pv = inverse_transform(v);
  double cubic = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) cubic += std::norm(pu[j]) * pv[j].real();
  cubic *= vol / static_cast<double>(grid.size());

  const double v_sq = std::pow(l2_norm(v), 2);
  if (state.system == System::kgs) {
    const double vt_sq = std::pow(l2_norm(v_t), 2);
    const double grad_v = std::pow(sobolev_norm(v, 1.0, true), 2);
    rep.hamiltonian = grad_u + 0.5 * (v_sq + vt_sq + grad_v) - cubic;
  } else {
    double inv_grad = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
      inv_grad += std::norm(v_t[i]) / grid.xi_squared(i);
    }
    inv_grad /= vol;
    rep.zero_mode_mass_of_wave = std::abs(v_t[0]) / std::sqrt(vol);
    rep.hamiltonian = grad_u + 0.5 * (v_sq + inv_grad) + cubic;
  }
  rep.hs_u = sobolev_norm(state.u, s);
  rep.hr_wplus = sobolev_norm(state.wplus, r);
  rep.hr_wminus = sobolev_norm(state.wminus, r);
  return rep;
}

std::pair<SpectralField, SpectralField> to_wave_components(const SpectralField& v,
                                                           const SpectralField& v_t) {
  require_same_grid(v.grid(), v_t.grid(), "to_wave_components");
  const Grid& grid = v.grid();
  SpectralField wp(grid);
  SpectralField wm(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex q = kI * v_t[i] / std::sqrt(1.0 + grid.xi_squared(i));
    wp[i] = v[i] + q;
    wm[i] = v[i] - q;
  }
  return {std::move(wp), std::move(wm)};
}

std::pair<SpectralField, SpectralField> from_wave_components(const SpectralField& wplus,
                                                             const SpectralField& wminus) {
  require_same_grid(wplus.grid(), wminus.grid(), "from_wave_components");
  const Grid& grid = wplus.grid();
  SpectralField v(grid);
  SpectralField v_t(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    v[i] = 0.5 * (wplus[i] + wminus[i]);
    v_t[i] = std::sqrt(1.0 + grid.xi_squared(i)) * (wplus[i] - wminus[i]) / (2.0 * kI);
  }
  return {std::move(v), std::move(v_t)};
}

}  // namespace dispersmooth
