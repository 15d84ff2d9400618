#include "dispersmooth/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dispersmooth/error.hpp"
#include "dispersmooth/fft.hpp"
#include "dispersmooth/parallel.hpp"
#include "dispersmooth/spectral_ops.hpp"

namespace dispersmooth {

namespace {

constexpr std::size_t kModeBlock = 1024;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed * 4 + stream);
}

double japanese(double x) { return std::sqrt(1.0 + x * x); }

double dispersion_relation(XsbDispersion dispersion, double xi_sq) {
  switch (dispersion) {
    case XsbDispersion::schrodinger:
      return xi_sq;
    case XsbDispersion::wave_plus:
      return std::sqrt(xi_sq);
    case XsbDispersion::wave_minus:
      return -std::sqrt(xi_sq);
  }
  return 0.0;
}

// Signed frequency index of FFT slot m.
long signed_index(std::size_t m, std::size_t count) {
  return 2 * m < count ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(count);
}

const SpectralField& pick(const SystemState& s, Component c) {
  switch (c) {
    case Component::u:
      return s.u;
    case Component::wplus:
      return s.wplus;
    case Component::wminus:
      return s.wminus;
  }
  return s.u;
}

Dispersion component_dispersion(Component c) {
  switch (c) {
    case Component::u:
      return Dispersion::schrodinger;
    case Component::wplus:
      return Dispersion::kg_plus;
    case Component::wminus:
      return Dispersion::kg_minus;
  }
  return Dispersion::schrodinger;
}

GainSummary summarize(const std::vector<double>& values) {
  GainSummary g;
  std::vector<double> finite;
  for (double v : values) {
    if (std::isfinite(v)) finite.push_back(v);
  }
  if (finite.empty()) {
    g.mean = g.spread = g.min = std::nan("");
    return g;
  }
  double sum = 0.0;
  for (double v : finite) sum += v;
  g.mean = sum / static_cast<double>(finite.size());
  double var = 0.0;
  for (double v : finite) var += (v - g.mean) * (v - g.mean);
  g.spread = finite.size() > 1 ? std::sqrt(var / static_cast<double>(finite.size() - 1)) : 0.0;
  g.min = *std::min_element(finite.begin(), finite.end());
  return g;
}

[[noreturn]] void inadmissible(const std::string& inequality) {
  throw AdmissibilityError("smoothing hypotheses violated: requires " + inequality);
}

}  // namespace

const char* component_name(Component c) {
  switch (c) {
    case Component::u:
      return "u";
    case Component::wplus:
      return "wplus";
    case Component::wminus:
      return "wminus";
  }
  return "?";
}

std::vector<SpectralField> duhamel_residual(const Trajectory& trajectory, Component component) {
  std::vector<SpectralField> out;
  if (trajectory.states.empty()) return out;
  const SystemState& first = trajectory.states.front();
  const SpectralField& initial = pick(first, component);
  out.reserve(trajectory.states.size());
  out.emplace_back(initial.grid());
  for (std::size_t k = 1; k < trajectory.states.size(); ++k) {
    const SystemState& st = trajectory.states[k];
    out.push_back(pick(st, component) -
                  linear_propagate(initial, component_dispersion(component), st.t - first.t));
  }
  return out;
}

std::vector<double> tukey_window(std::size_t m, double taper) {
  std::vector<double> w(m, 1.0);
  if (m < 2 || taper <= 0.0) return w;
  const double a = std::min(taper, 1.0);
  for (std::size_t j = 0; j < m; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(m - 1);
    if (x < 0.5 * a) {
      w[j] = 0.5 * (1.0 + std::cos(2.0 * std::numbers::pi / a * (x - 0.5 * a)));
    } else if (x > 1.0 - 0.5 * a) {
      w[j] = 0.5 * (1.0 + std::cos(2.0 * std::numbers::pi / a * (x - 1.0 + 0.5 * a)));
    }
  }
  return w;
}

SpaceTimeField::SpaceTimeField(std::vector<SpectralField> samples, double dt, double taper)
    : samples_(std::move(samples)), dt_(dt), taper_(taper) {
  if (samples_.empty()) throw ShapeError("SpaceTimeField needs at least one sample");
  if (!(dt > 0.0)) throw ConfigError("SpaceTimeField: dt must be positive");
  if (taper < 0.0 || taper > 1.0) throw ConfigError("SpaceTimeField: taper must lie in [0, 1]");
  for (const auto& s : samples_) require_same_grid(samples_.front().grid(), s.grid(), "SpaceTimeField");
  window_ = tukey_window(samples_.size(), taper_);
}

double xsb_norm(const SpaceTimeField& stf, double s, double b, XsbDispersion dispersion) {
  const Grid& grid = stf.grid();
  const std::size_t m = stf.time_count();
  const double dt = stf.dt();
  const auto& window = stf.window();
  std::vector<double> tau_weight(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double sigma = 2.0 * std::numbers::pi * static_cast<double>(signed_index(k, m)) /
                         (static_cast<double>(m) * dt);
    tau_weight[k] = b == 0.0 ? 1.0 : std::pow(japanese(sigma), 2.0 * b);
  }
  double total = 0.0;
  std::vector<Complex> buffer;
  for (std::size_t start = 0; start < grid.size(); start += kModeBlock) {
    const std::size_t stop = std::min(grid.size(), start + kModeBlock);
    buffer.assign((stop - start) * m, Complex(0.0));
    for (std::size_t i = start; i < stop; ++i) {
      const double h = dispersion_relation(dispersion, grid.xi_squared(i));
      for (std::size_t j = 0; j < m; ++j) {
        const double t = static_cast<double>(j) * dt;
        buffer[(i - start) * m + j] = window[j] * std::polar(1.0, h * t) * stf.samples()[j][i];
      }
    }
    batched_dft(buffer, m, -1);
    for (std::size_t i = start; i < stop; ++i) {
      const double space_weight = s == 0.0 ? 1.0 : std::pow(1.0 + grid.xi_squared(i), s);
      double acc = 0.0;
      for (std::size_t k = 0; k < m; ++k) acc += tau_weight[k] * std::norm(buffer[(i - start) * m + k]);
      total += space_weight * acc;
    }
  }
  // dt^2 from the time transform, 1/(m dt) from dtau / 2pi.
  total *= dt / static_cast<double>(m) / grid.volume();
  return std::sqrt(total);
}

TauSpectrum tau_transform(const SpaceTimeField& stf, std::size_t mode) {
  const std::size_t m = stf.time_count();
  if (mode >= stf.grid().size()) throw ShapeError("tau_transform: mode out of range");
  std::vector<Complex> buffer(m);
  for (std::size_t j = 0; j < m; ++j) buffer[j] = stf.window()[j] * stf.samples()[j][mode];
  batched_dft(buffer, m, -1);
  TauSpectrum out;
  out.tau.resize(m);
  out.values.resize(m);
  const std::size_t shift = m / 2;
  for (std::size_t p = 0; p < m; ++p) {
    const std::size_t k = (p + m - shift) % m;
    out.tau[p] = 2.0 * std::numbers::pi * static_cast<double>(signed_index(k, m)) /
                 (static_cast<double>(m) * stf.dt());
    out.values[p] = stf.dt() * buffer[k];
  }
  return out;
}

SmoothingExponents smoothing_exponents(System system, int d, double s, double r) {
  if (d < 2) inadmissible("d >= 2");
  const double dd = d;
  if (d <= 3) {
    if (system == System::zakharov) {
      if (!(r >= -0.5)) inadmissible("r >= -1/2");
      if (!(2 * s - r >= 0.5)) inadmissible("2s - r >= 1/2");
      if (!(r < s)) inadmissible("r < s");
      if (!(s < r + 1)) inadmissible("s < r + 1");
    } else {
      if (!(s > -0.25)) inadmissible("s > -1/4");
      if (!(r > -0.5)) inadmissible("r > -1/2");
      if (!(2 * s - r >= -1.5)) inadmissible("2s - r >= -3/2");
      if (!(r - 2 < s)) inadmissible("r - 2 < s");
      if (!(s < r + 1)) inadmissible("s < r + 1");
    }
  } else {
    if (!(r > (dd - 4) / 4)) inadmissible("r > (d-4)/4");
    if (system == System::zakharov) {
      if (!(2 * s - r > (dd - 2) / 2)) inadmissible("2s - r > (d-2)/2");
      if (!(r <= s)) inadmissible("r <= s");
    } else {
      if (!(2 * s - r > (dd - 6) / 2)) inadmissible("2s - r > (d-6)/2");
      if (!(r - 2 <= s)) inadmissible("r - 2 <= s");
    }
    if (!(s <= r + 1)) inadmissible("s <= r + 1");
  }
  SmoothingExponents e;
  e.alpha_max = std::min({0.5, r - s + 1.0, r + 2.0 - dd / 2.0});
  if (system == System::zakharov) {
    const double first = d <= 3 ? 2 * s - r - 0.5 : 2 * s - r - (dd - 2) / 2;
    e.beta_max = std::min(first, s - r);
  } else {
    const double first = d <= 3 ? 2 * s - r + 1.5 : 2 * s - r - (dd - 6) / 2;
    e.beta_max = std::min(first, s - r + 2.0);
  }
  return e;
}

SystemState scan_initial_state(const SmoothingParams& params, const Grid& grid,
                               std::uint64_t seed, double amplitude, double u_scale) {
  SpectralField u = dealias(random_sobolev_field(grid, params.s, derive_seed(seed, 0)));
  u *= amplitude * u_scale / sobolev_norm(u, params.s);
  SpectralField v0 =
      dealias(random_sobolev_field(grid, params.r, derive_seed(seed, 1), FieldSymmetry::real));
  SpectralField v1 = dealias(
      random_sobolev_field(grid, params.r - 1.0, derive_seed(seed, 2), FieldSymmetry::real));
  v0[0] = 0.0;
  v1[0] = 0.0;
  SystemState state = make_state(params.system, u, v0, v1);
  const double wnorm = sobolev_norm(state.wplus, params.r);
  const double scale = wnorm > 0.0 ? amplitude / wnorm : 0.0;
  state.wplus *= scale;
  state.wminus *= scale;
  return state;
}

ScanReport smoothing_scan(const SmoothingParams& params, int ensemble_size, std::uint64_t seed,
                          const ScanOptions& options) {
  if (ensemble_size < 1) throw ConfigError("ensemble_size must be >= 1");
  if (options.probe_every < 1) throw ConfigError("probe_every must be >= 1");
  ScanReport report;
  report.exponents = smoothing_exponents(params.system, params.d, params.s, params.r);
  if (!(params.alpha_probe < report.exponents.alpha_max)) inadmissible("alpha_probe < alpha_max");
  if (!(params.beta_probe < report.exponents.beta_max)) inadmissible("beta_probe < beta_max");

  const Grid grid = Grid::make(params.d, options.n_per_dim, options.box_length);
  const double lo = options.n_per_dim / 8.0 / options.box_length;
  const double hi = options.n_per_dim / 3.0 / options.box_length;
  const Component components[] = {Component::u, Component::wplus, Component::wminus};

  std::vector<std::vector<ScanRecord>> per_member(static_cast<std::size_t>(ensemble_size));
  parallel_for(per_member.size(), [&](std::size_t idx) {
    const std::uint64_t member_seed = seed + idx;
    const SystemState s0 =
        scan_initial_state(params, grid, member_seed, options.amplitude, options.u_scale);
    const double data_size =
        sobolev_norm(s0.u, params.s) +
        std::max(sobolev_norm(s0.wplus, params.r), sobolev_norm(s0.wminus, params.r));
    IntegratorConfig cfg;
    cfg.dt = options.dt;
    cfg.t_end = options.t_end;
    cfg.scheme = options.scheme;
    cfg.record_every = options.probe_every;
    const Trajectory traj = integrate(s0, cfg);
    for (Component c : components) {
      const bool is_u = c == Component::u;
      const double probe = is_u ? params.alpha_probe : params.beta_probe;
      const double base = is_u ? params.s : params.r;
      const auto residual = duhamel_residual(traj, c);
      double sup = 0.0;
      for (const auto& f : residual) sup = std::max(sup, sobolev_norm(f, base + probe));
      ScanRecord rec;
      rec.seed = member_seed;
      rec.component = c;
      rec.probe = probe;
      rec.raw_residual_norm = sup;
      rec.residual_norm = data_size > 0.0 ? sup / (data_size * data_size) : std::nan("");
      const double data_slope = fit_log_slope(radial_spectrum(pick(s0, c)), grid.box_length(), lo, hi);
      const double res_slope = fit_log_slope(radial_spectrum(residual.back()), grid.box_length(), lo, hi);
      rec.slope_gain = data_slope - res_slope;
      per_member[idx].push_back(rec);
    }
  });

  std::vector<double> u_gains;
  std::vector<double> wave_gains;
  for (const auto& member : per_member) {
    for (const auto& rec : member) {
      report.records.push_back(rec);
      (rec.component == Component::u ? u_gains : wave_gains).push_back(rec.slope_gain);
    }
  }
  report.u_gain = summarize(u_gains);
  report.wave_gain = summarize(wave_gains);
  return report;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ShapeError("log_log_slope needs >= 2 points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace dispersmooth
