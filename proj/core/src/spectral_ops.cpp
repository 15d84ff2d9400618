#include "dispersmooth/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "dispersmooth/error.hpp"
#include "dispersmooth/fft.hpp"

namespace dispersmooth {

RadialSymbol bessel_symbol(double sigma) {
  return [sigma](double xi) { return Complex(std::pow(1.0 + xi * xi, 0.5 * sigma), 0.0); };
}

RadialSymbol riesz_symbol(double sigma) {
  return [sigma](double xi) { return Complex(std::pow(xi, sigma), 0.0); };
}

RadialSymbol schrodinger_symbol(double t) {
  return [t](double xi) { return std::polar(1.0, -t * xi * xi); };
}

RadialSymbol klein_gordon_symbol(int sign, double t) {
  const double s = sign >= 0 ? 1.0 : -1.0;
  return [s, t](double xi) { return std::polar(1.0, -s * t * std::sqrt(1.0 + xi * xi)); };
}

std::vector<Complex> tabulate_symbol(const Grid& grid, const RadialSymbol& symbol,
                                     ZeroModePolicy policy) {
  std::vector<Complex> table(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.is_nyquist(i)) continue;
    const Complex m = symbol(grid.abs_xi(i));
    if (std::isfinite(m.real()) && std::isfinite(m.imag())) {
      table[i] = m;
    } else if (i == 0 && policy == ZeroModePolicy::zero) {
      table[i] = 0.0;
    } else {
      throw ConfigError(i == 0 ? "symbol is singular at the zero mode and no zero-mode policy "
                                 "was given"
                               : "symbol is not finite at mode " + std::to_string(i));
    }
  }
  return table;
}

SpectralField apply_table(const SpectralField& field, std::span<const Complex> table) {
  if (table.size() != field.size()) throw ShapeError("apply_table: size mismatch");
  SpectralField out(field.grid());
  for (std::size_t i = 0; i < field.size(); ++i) out[i] = field[i] * table[i];
  return out;
}

SpectralField fourier_multiplier(const SpectralField& field, const RadialSymbol& symbol,
                                 ZeroModePolicy policy) {
  return apply_table(field, tabulate_symbol(field.grid(), symbol, policy));
}

SpectralField bessel_potential(const SpectralField& field, double sigma) {
  return fourier_multiplier(field, bessel_symbol(sigma));
}

double sobolev_norm(const SpectralField& field, double s, bool homogeneous,
                    ZeroModePolicy policy) {
  const Grid& grid = field.grid();
  if (homogeneous && s < 0.0 && policy == ZeroModePolicy::reject) {
    throw ConfigError("homogeneous Sobolev norm with s < 0 needs a zero-mode policy");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double ksq = grid.xi_squared(i);
    double weight;
    if (homogeneous) {
      if (i == 0 && s != 0.0) {
        if (s < 0.0) continue;
        weight = 0.0;
      } else {
        weight = s == 0.0 ? 1.0 : std::pow(ksq, s);
      }
    } else {
      weight = s == 0.0 ? 1.0 : std::pow(1.0 + ksq, s);
    }
    sum += weight * std::norm(field[i]);
  }
  return std::sqrt(sum / grid.volume());
}

Complex l2_inner(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f.grid(), g.grid(), "l2_inner");
  Complex sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * std::conj(g[i]);
  return sum / f.grid().volume();
}

SpectralField conjugate(const SpectralField& field) {
  const Grid& grid = field.grid();
  SpectralField out(grid);
  for (std::size_t i = 0; i < field.size(); ++i) out[i] = std::conj(field[grid.reflected(i)]);
  return out;
}

SpectralField real_part(const SpectralField& field) {
  SpectralField out = field;
  out += conjugate(field);
  out *= 0.5;
  return out;
}

SpectralField zero_nyquist(SpectralField field) {
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field.grid().is_nyquist(i)) field[i] = 0.0;
  }
  return field;
}

SpectralField lowpass(const SpectralField& field, double cutoff) {
  SpectralField out(field.grid());
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field.grid().abs_xi(i) <= cutoff) out[i] = field[i];
  }
  return out;
}

SpectralField highpass(const SpectralField& field, double cutoff) {
  SpectralField out(field.grid());
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field.grid().abs_xi(i) > cutoff) out[i] = field[i];
  }
  return out;
}

DyadicShellSet make_dyadic_shells(const Grid& grid) {
  DyadicShellSet set{grid, {}};
  const double top = grid.max_abs_xi();
  int j = 0;
  while (true) {
    DyadicShell shell;
    shell.index = j;
    shell.lower = j == 0 ? 0.0 : std::ldexp(1.0, j - 1);
    shell.upper = std::ldexp(1.0, j);
    set.shells.push_back(shell);
    if (shell.upper > top) break;
    ++j;
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double xi = grid.abs_xi(i);
    int idx = 0;
    if (xi >= 1.0) idx = static_cast<int>(std::floor(std::log2(xi))) + 1;
    // Guard the log2 rounding at exact powers of two.
    while (idx > 0 && xi < set.shells[static_cast<std::size_t>(idx)].lower) --idx;
    while (xi >= set.shells[static_cast<std::size_t>(idx)].upper) ++idx;
    set.shells[static_cast<std::size_t>(idx)].modes.push_back(i);
  }
  return set;
}

SpectralField shell_projection(const SpectralField& field, const DyadicShellSet& shells,
                               std::size_t shell) {
  require_same_grid(field.grid(), shells.grid, "shell_projection");
  if (shell >= shells.shells.size()) throw ConfigError("shell index out of range");
  SpectralField out(field.grid());
  for (std::size_t i : shells.shells[shell].modes) out[i] = field[i];
  return out;
}

SpectralField dealias(SpectralField field) {
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field.grid().is_dealiased_out(i)) field[i] = 0.0;
  }
  return field;
}

SpectralField dealiased_pointwise(std::span<const SpectralField* const> inputs,
                                  const std::function<Complex(std::span<const Complex>)>& combine) {
  if (inputs.empty()) throw ShapeError("dealiased_pointwise: no inputs");
  const Grid& grid = inputs.front()->grid();
  std::vector<Samples> physical;
  physical.reserve(inputs.size());
  for (const SpectralField* f : inputs) {
    require_same_grid(grid, f->grid(), "dealiased_pointwise");
    physical.push_back(inverse_transform(*f));
  }
  Samples out(grid.size());
  std::vector<Complex> point(inputs.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    for (std::size_t k = 0; k < inputs.size(); ++k) point[k] = physical[k][j];
    out[j] = combine(point);
  }
  return dealias(forward_transform(grid, out));
}

SpectralField dealiased_product(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f.grid(), g.grid(), "dealiased_product");
  const Samples a = inverse_transform(f);
  const Samples b = inverse_transform(g);
  Samples prod(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) prod[j] = a[j] * b[j];
  return dealias(forward_transform(f.grid(), prod));
}

SpectralField dealiased_abs_squared(const SpectralField& u) {
  Samples a = inverse_transform(u);
  for (auto& z : a) z = std::norm(z);
  return dealias(forward_transform(u.grid(), a));
}

SpectralField random_sobolev_field(const Grid& grid, double s, std::uint64_t seed,
                                   FieldSymmetry symmetry) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double decay = -s - 0.5 * grid.dim() - kRandomFieldTailExcess;
  SpectralField g(grid);
  // Unit-variance complex Gaussian: real and imaginary parts of variance 1/2.
  const double component = std::sqrt(0.5);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double re = normal(engine);
    const double im = normal(engine);
    g[i] = Complex(re, im) * component;
  }
  if (symmetry == FieldSymmetry::real) {
    SpectralField sym(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const std::size_t j = grid.reflected(i);
      if (i == j) {
        sym[i] = Complex(g[i].real() * std::sqrt(2.0), 0.0);
      } else {
        sym[i] = (g[i] + std::conj(g[j])) * std::sqrt(0.5);
      }
    }
    g = std::move(sym);
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    g[i] = grid.is_nyquist(i) ? Complex(0.0) : g[i] * std::pow(1.0 + grid.xi_squared(i), 0.5 * decay);
  }
  return g;
}

std::vector<RadialBin> radial_spectrum(const SpectralField& field) {
  const Grid& grid = field.grid();
  const int top = static_cast<int>(std::ceil(grid.max_abs_xi() * grid.box_length())) + 1;
  std::vector<RadialBin> bins(static_cast<std::size_t>(top) + 1);
  for (std::size_t r = 0; r < bins.size(); ++r) bins[r].radius = static_cast<int>(r);
  for (std::size_t i = 0; i < field.size(); ++i) {
    const auto r = static_cast<std::size_t>(std::lround(grid.abs_xi(i) * grid.box_length()));
    bins[r].mean_power += std::norm(field[i]);
    bins[r].count += 1;
  }
  for (auto& b : bins) {
    if (b.count > 0) b.mean_power /= static_cast<double>(b.count);
  }
  return bins;
}

double fit_log_slope(const std::vector<RadialBin>& spectrum, double box_length, double lo,
                     double hi) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (const auto& b : spectrum) {
    const double xi = b.radius / box_length;
    if (b.radius == 0 || xi < lo || xi > hi || b.count == 0 || !(b.mean_power > 0.0)) continue;
    const double x = std::log(xi);
    const double y = 0.5 * std::log(b.mean_power);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return std::nan("");
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return std::nan("");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace dispersmooth
