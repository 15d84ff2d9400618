#include "dispersmooth/dissipative.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "dispersmooth/error.hpp"
#include "dispersmooth/fft.hpp"
#include "dispersmooth/spectral_ops.hpp"

namespace dispersmooth {

namespace {

constexpr Complex kI{0.0, 1.0};

int step_count(double dt, double t_end) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be >= 0");
  const double ratio = t_end / dt;
  const double steps = std::ceil(ratio - 1e-9 * std::max(1.0, ratio));
  if (steps > 1e9) throw ConfigError("t_end / dt is too large");
  return static_cast<int>(steps);
}

void check_grid(const DampedState& s) {
  require_same_grid(s.u.grid(), s.v.grid(), "damped state");
  require_same_grid(s.u.grid(), s.w.grid(), "damped state");
}

void check_forcing(const DampedParams& p, const Grid& grid) {
  if (p.f) require_same_grid(grid, p.f->grid(), "forcing f");
  if (p.g) require_same_grid(grid, p.g->grid(), "forcing g");
}

struct WaveTables {
  std::vector<Complex> schrodinger;
  std::vector<std::array<Complex, 4>> wave;
};

std::shared_ptr<const WaveTables> make_tables(const Grid& grid, double gamma, double a,
                                              double delta, double t) {
  auto tables = std::make_shared<WaveTables>();
  tables->schrodinger.resize(grid.size());
  tables->wave.resize(grid.size());
  const double damp = std::exp(-gamma * t);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.is_nyquist(i)) {
      tables->schrodinger[i] = 0.0;
      tables->wave[i] = {0.0, 0.0, 0.0, 0.0};
      continue;
    }
    const double k2 = grid.xi_squared(i);
    tables->schrodinger[i] = damp * std::exp(Complex(0.0, -t * k2));
    tables->wave[i] = damped_wave_exponential(k2, a, delta, t);
  }
  return tables;
}

void apply_tables(const WaveTables& tb, SpectralField& u, SpectralField& v, SpectralField& w) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] *= tb.schrodinger[i];
    const std::array<Complex, 4>& m = tb.wave[i];
    const Complex q = v[i];
    const Complex r = w[i];
    v[i] = m[0] * q + m[1] * r;
    w[i] = m[2] * q + m[3] * r;
  }
}

/// physical-space integral of |u|^2 Re(v)
double cubic_term(const SpectralField& u, const SpectralField& v) {
  const Grid& grid = u.grid();
  const Samples pu = inverse_transform(u);
  const Samples pv = inverse_transform(v);
  double acc = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) acc += std::norm(pu[j]) * pv[j].real();
  return acc * grid.volume() / static_cast<double>(grid.size());
}

double grad_sq(const SpectralField& f) { return std::pow(sobolev_norm(f, 1.0, true), 2); }
double l2_sq(const SpectralField& f) { return std::pow(l2_norm(f), 2); }

double max_in(const std::vector<AttractorSample>& s, double lo, double hi,
              double AttractorSample::*member) {
  double m = 0.0;
  for (const AttractorSample& x : s) {
    if (x.t >= lo && x.t <= hi) m = std::max(m, x.*member);
  }
  return m;
}

}  // namespace

void validate(const DampedParams& params) {
  if (!(params.gamma > 0.0) || !std::isfinite(params.gamma)) {
    throw ConfigError("damping gamma must be positive");
  }
  if (!(params.delta > 0.0) || !std::isfinite(params.delta)) {
    throw ConfigError("damping delta must be positive");
  }
  const double a = auxiliary_a(params);
  if (!(a > 0.0) || !(a < params.delta)) throw ConfigError("need 0 < a < delta");
}

double auxiliary_a(const DampedParams& params) {
  return params.a != 0.0 ? params.a : 0.25 * std::min(params.gamma, params.delta);
}

double shifted_mass(const DampedParams& params) {
  const double a = auxiliary_a(params);
  return 1.0 + a * (a - params.delta);
}

DampedState make_damped_state(const SpectralField& u, const SpectralField& v,
                              const SpectralField& v_t, const DampedParams& params, double t) {
  require_same_grid(u.grid(), v.grid(), "make_damped_state");
  require_same_grid(u.grid(), v_t.grid(), "make_damped_state");
  SpectralField w = v_t;
  w.add_scaled(auxiliary_a(params), v);
  return DampedState{u, v, std::move(w), t};
}

std::array<Complex, 4> damped_wave_exponential(double xi_squared, double a, double delta,
                                               double t) {
  const double c = 1.0 + a * (a - delta);
  const double k = c + xi_squared;
  const double tau = -delta;
  const double det = a * (delta - a) + k;
  const Complex mu = std::sqrt(Complex(0.25 * tau * tau - det, 0.0));
  const Complex z = mu * t;
  Complex ch;
  Complex shc;  // sinh(mu t) / mu
  if (std::abs(z) < 1e-3) {
    const Complex z2 = z * z;
    ch = 1.0 + z2 / 2.0 + z2 * z2 / 24.0;
    shc = t * (1.0 + z2 / 6.0 + z2 * z2 / 120.0);
  } else {
    ch = std::cosh(z);
    shc = std::sinh(z) / mu;
  }
  const double e = std::exp(0.5 * tau * t);
  // M - (tau/2) I
  const double m00 = -a - 0.5 * tau;
  const double m11 = -(delta - a) - 0.5 * tau;
  return {e * (ch + shc * m00), e * shc, e * shc * (-k), e * (ch + shc * m11)};
}

DampedState damped_linear_propagate(const DampedState& state, const DampedParams& params,
                                    double t) {
  validate(params);
  check_grid(state);
  const auto tb = make_tables(state.u.grid(), params.gamma, auxiliary_a(params), params.delta, t);
  DampedState out = state;
  apply_tables(*tb, out.u, out.v, out.w);
  out.t = state.t + t;
  return out;
}

DampedTrajectory integrate_damped(const DampedState& initial, const DampedParams& params,
                                  const IntegratorConfig& config) {
  validate(params);
  check_grid(initial);
  const Grid grid = initial.u.grid();
  check_forcing(params, grid);
  if (config.record_every < 1) throw ConfigError("record_every must be >= 1");

  DampedTrajectory traj;
  traj.steps = step_count(config.dt, config.t_end);
  traj.dt = traj.steps > 0 ? config.t_end / traj.steps : config.dt;
  traj.states.push_back(initial);
  if (traj.steps == 0) return traj;

  const double gamma = params.gamma;
  const double a = auxiliary_a(params);
  const double delta = params.delta;
  const LinearFlow flow = [grid, gamma, a, delta](double t) -> Propagator {
    auto tb = make_tables(grid, gamma, a, delta, t);
    return [tb](FieldBundle& y) { apply_tables(*tb, y[0], y[1], y[2]); };
  };
  const std::optional<SpectralField> f = params.f;
  const std::optional<SpectralField> g = params.g;
  const NonlinearTerm nonlinear = [grid, f, g](const FieldBundle& y) {
    const Samples pu = inverse_transform(y[0]);
    const Samples pv = inverse_transform(y[1]);
    Samples coupling(grid.size());
    Samples density(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
      coupling[j] = pu[j] * pv[j];
      density[j] = std::norm(pu[j]);
    }
    SpectralField du = dealias(forward_transform(grid, coupling));
    du *= kI;
    if (f) du.add_scaled(-kI, *f);
    SpectralField dw = dealias(forward_transform(grid, density));
    if (g) dw += *g;
    FieldBundle out;
    out.reserve(3);
    out.push_back(std::move(du));
    out.emplace_back(grid);
    out.push_back(std::move(dw));
    return out;
  };

  const ExponentialStepper stepper(flow, nonlinear, traj.dt, config.scheme);
  FieldBundle y{initial.u, initial.v, initial.w};
  for (int k = 1; k <= traj.steps; ++k) {
    stepper.step(y);
    const double t = initial.t + k * traj.dt;
    check_bounded(y, t);
    if (k % config.record_every == 0 || k == traj.steps) {
      traj.states.push_back(DampedState{y[0], y[1], y[2], t});
    }
  }
  return traj;
}

double energy_H(const DampedState& state, const DampedParams& params) {
  check_grid(state);
  check_forcing(params, state.u.grid());
  double h = 2.0 * grad_sq(state.u) + shifted_mass(params) * l2_sq(state.v) +
             grad_sq(state.v) + l2_sq(state.w) - 2.0 * cubic_term(state.u, state.v);
  if (params.f) h += 4.0 * l2_inner(*params.f, state.u).real();
  return h;
}

double energy_H_rate(const DampedState& state, const DampedParams& params) {
  check_grid(state);
  check_forcing(params, state.u.grid());
  const double a = auxiliary_a(params);
  const double gamma = params.gamma;
  double rate = -4.0 * gamma * grad_sq(state.u) - 2.0 * a * shifted_mass(params) * l2_sq(state.v) -
                2.0 * a * grad_sq(state.v) - 2.0 * (params.delta - a) * l2_sq(state.w) +
                (4.0 * gamma + 2.0 * a) * cubic_term(state.u, state.v);
  if (params.f) rate -= 4.0 * gamma * l2_inner(*params.f, state.u).real();
  if (params.g) rate += 2.0 * l2_inner(*params.g, state.w).real();
  return rate;
}

double mass_rate(const DampedState& state, const DampedParams& params) {
  double rate = -2.0 * params.gamma * l2_sq(state.u);
  if (params.f) rate += 2.0 * l2_inner(*params.f, state.u).imag();
  return rate;
}

double energy_space_norm(const DampedState& state) {
  return std::sqrt(std::pow(sobolev_norm(state.u, 1.0), 2) +
                   std::pow(sobolev_norm(state.v, 1.0), 2) + l2_sq(state.w));
}

AttractorReport attractor_diagnostics(const DampedTrajectory& trajectory,
                                      const DampedParams& params) {
  validate(params);
  if (trajectory.states.empty()) throw ConfigError("empty trajectory");
  const DampedState& first = trajectory.states.front();
  const double t0 = first.t;
  const double T = trajectory.states.back().t - t0;

  AttractorReport rep;
  const double a = auxiliary_a(params);
  rep.guaranteed_rate = 0.5 * std::min({params.gamma, a, params.delta - a});
  for (const DampedState& s : trajectory.states) {
    const DampedState lin = damped_linear_propagate(first, params, s.t - t0);
    AttractorSample x;
    x.t = s.t - t0;
    x.energy_norm = energy_space_norm(s);
    x.H = energy_H(s, params);
    x.mass = l2_norm(s.u);
    x.linear_norm = energy_space_norm(lin);
    x.u_probe = sobolev_norm(s.u - lin.u, kProbeExponentU);
    x.v_probe = sobolev_norm(s.v - lin.v, kProbeExponentV);
    x.w_probe = sobolev_norm(s.w - lin.w, kProbeExponentW);
    rep.samples.push_back(x);
  }
  rep.inconclusive = rep.samples.size() < 8 || T < 5.0 / std::min(params.gamma, params.delta);

  rep.ball_radius = 1.1 * max_in(rep.samples, 0.5 * T, 0.75 * T, &AttractorSample::energy_norm);
  rep.entry_time = std::numeric_limits<double>::quiet_NaN();
  rep.persistent = false;
  for (std::size_t i = 0; i < rep.samples.size(); ++i) {
    if (rep.samples[i].energy_norm <= rep.ball_radius) {
      rep.entry_time = rep.samples[i].t;
      rep.persistent = std::all_of(rep.samples.begin() + static_cast<std::ptrdiff_t>(i),
                                   rep.samples.end(), [&](const AttractorSample& x) {
                                     return x.energy_norm <= rep.ball_radius;
                                   });
      break;
    }
  }

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (const AttractorSample& x : rep.samples) {
    if (!(x.linear_norm > 0.0) || !std::isfinite(std::log(x.linear_norm))) continue;
    const double y = std::log(x.linear_norm);
    sx += x.t;
    sy += y;
    sxx += x.t * x.t;
    sxy += x.t * y;
    ++count;
  }
  const double den = count * sxx - sx * sx;
  rep.linear_decay_rate =
      count >= 2 && den > 0.0 ? -(count * sxy - sx * sy) / den
                              : std::numeric_limits<double>::quiet_NaN();

  rep.u_probe_tail_max = max_in(rep.samples, 0.5 * T, T, &AttractorSample::u_probe);
  rep.v_probe_tail_max = max_in(rep.samples, 0.5 * T, T, &AttractorSample::v_probe);
  rep.w_probe_tail_max = max_in(rep.samples, 0.5 * T, T, &AttractorSample::w_probe);
  double early = 0.0;
  double late = 0.0;
  for (double AttractorSample::*m :
       {&AttractorSample::u_probe, &AttractorSample::v_probe, &AttractorSample::w_probe}) {
    early = std::max(early, max_in(rep.samples, 0.5 * T, 0.75 * T, m));
    late = std::max(late, max_in(rep.samples, 0.75 * T, T, m));
  }
  rep.probe_growth = early > 0.0 ? late / early : std::numeric_limits<double>::quiet_NaN();
  return rep;
}

}  // namespace dispersmooth
