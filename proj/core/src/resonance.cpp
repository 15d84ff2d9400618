#include "dispersmooth/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dispersmooth/error.hpp"
#include "dispersmooth/fft.hpp"
#include "dispersmooth/parallel.hpp"

namespace dispersmooth {

namespace {

double norm2(const std::vector<double>& x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return acc;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double japanese(double x) { return std::sqrt(1.0 + x * x); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed * 8 + stream);
}

double surface_modulation(ModulationSurface surface, double tau, double xi_sq) {
  switch (surface) {
    case ModulationSurface::schrodinger:
      return tau + xi_sq;
    case ModulationSurface::wave_plus:
      return tau + std::sqrt(xi_sq);
    case ModulationSurface::wave_minus:
      return tau - std::sqrt(xi_sq);
  }
  return tau;
}

ModulationSurface wave_surface(int wave_sign) {
  return wave_sign >= 0 ? ModulationSurface::wave_plus : ModulationSurface::wave_minus;
}

/// Shared lattice of random and resonant members.
SpaceTimeLattice empty_lattice(const BilinearOptions& o) {
  if (o.d < 1 || o.d > 4) throw ConfigError("bilinear lattice: d must lie in 1..4");
  if (o.xi_points < 2 || o.time_modes < 2) {
    throw ResolutionError("bilinear lattice: need at least 2 points per axis");
  }
  if (!(o.xi_extent > 0.0) || !(o.tau_margin >= 0.0)) {
    throw ConfigError("bilinear lattice: extents must be positive");
  }
  double padded = 2.0 * o.time_modes;
  for (int a = 0; a < o.d; ++a) padded *= 2.0 * o.xi_points;
  if (padded > static_cast<double>(o.max_points)) {
    throw ResourceError("bilinear lattice: padded convolution exceeds the point budget");
  }
  const double X = o.xi_extent;
  const double radius_sq = o.d * X * X;
  const double lo = -radius_sq - o.tau_margin;
  const double hi = std::sqrt(radius_sq) + o.tau_margin;
  SpaceTimeLattice f;
  for (int a = 0; a < o.d; ++a) {
    f.points.push_back(o.xi_points);
    f.spacing.push_back(2.0 * X / o.xi_points);
    f.centre.push_back(0.0);
  }
  f.points.push_back(o.time_modes);
  f.spacing.push_back((hi - lo) / o.time_modes);
  f.centre.push_back(0.5 * (lo + hi));
  f.values.assign(f.size(), Complex(0.0));
  return f;
}

struct Bump {
  std::vector<double> centre;
  double offset = 0.0;
  Complex amplitude;
};

void add_bumps(SpaceTimeLattice& f, ModulationSurface surface, const std::vector<Bump>& bumps,
               double width) {
  const int d = f.dim();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::vector<double> p = f.coordinate(i);
    double xi_sq = 0.0;
    for (int a = 0; a < d; ++a) xi_sq += p[a] * p[a];
    const double mod = surface_modulation(surface, p[d], xi_sq);
    Complex acc = 0.0;
    for (const Bump& bump : bumps) {
      double r2 = 0.0;
      for (int a = 0; a < d; ++a) r2 += (p[a] - bump.centre[a]) * (p[a] - bump.centre[a]);
      const double m = mod - bump.offset;
      acc += bump.amplitude * std::exp(-0.5 * r2 / (width * width) - 0.5 * m * m);
    }
    f.values[i] += acc;
  }
}

void require_same_shape(const SpaceTimeLattice& u, const SpaceTimeLattice& v) {
  if (u.points != v.points || u.spacing != v.spacing || u.centre.size() != v.centre.size()) {
    throw ShapeError("lattices must share points and spacing");
  }
  if (u.values.size() != u.size() || v.values.size() != v.size()) {
    throw ShapeError("lattice value count does not match its extents");
  }
}

bool is_zero(const SpaceTimeLattice& f) {
  return std::all_of(f.values.begin(), f.values.end(),
                     [](const Complex& c) { return c == Complex(0.0); });
}

}  // namespace

double branch_sign(ResonanceBranch branch) {
  return branch == ResonanceBranch::minus ? 1.0 : -1.0;
}

FrequencyTriple make_triple(const std::vector<double>& xi1, const std::vector<double>& xi2,
                            ResonanceBranch branch) {
  if (xi1.size() != xi2.size() || xi1.empty()) throw ShapeError("triple: dimension mismatch");
  std::vector<double> xi0(xi1.size());
  for (std::size_t i = 0; i < xi1.size(); ++i) xi0[i] = -xi1[i] - xi2[i];
  return FrequencyTriple{std::move(xi0), xi1, xi2, branch};
}

double angle_between(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ShapeError("angle: dimension mismatch");
  const double na = std::sqrt(norm2(a));
  const double nb = std::sqrt(norm2(b));
  if (!(na > 0.0) || !(nb > 0.0)) throw ConfigError("angle of a zero vector");
  return std::acos(std::clamp(dot(a, b) / (na * nb), -1.0, 1.0));
}

double resonance_A(const std::vector<double>& xi1, const std::vector<double>& xi2,
                   ResonanceBranch branch) {
  if (xi1.size() != xi2.size()) throw ShapeError("resonance_A: dimension mismatch");
  const double n1 = std::sqrt(norm2(xi1));
  const double n2 = std::sqrt(norm2(xi2));
  if (!(n1 > 0.0) || !(n2 > 0.0)) throw ConfigError("resonance_A: frequencies must be nonzero");
  const double cos_angle = std::clamp(dot(xi1, xi2) / (n1 * n2), -1.0, 1.0);
  return cos_angle + (n2 - branch_sign(branch)) / (2.0 * n1);
}

double modulation_lower_bound(const FrequencyTriple& t) {
  return std::abs(norm2(t.xi0) - norm2(t.xi1) - branch_sign(t.branch) * std::sqrt(norm2(t.xi2)));
}

ShellSample resonant_shell_sample(const std::vector<double>& xi1, double nu,
                                  ResonanceBranch branch, int count, std::uint64_t seed) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw ConfigError("shell sample: nu must be positive");
  if (count < 0) throw ConfigError("shell sample: count must be >= 0");
  const double n1 = std::sqrt(norm2(xi1));
  if (!(n1 > 0.0)) throw ConfigError("shell sample: xi1 must be nonzero");
  const std::size_t d = xi1.size();
  const double R = 2.0 * n1 * (1.0 + 2.0 * nu) + 1.5;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-R, R);
  ShellSample out;
  const std::size_t budget = 100000 + static_cast<std::size_t>(count) * 5000;
  std::vector<double> xi2(d);
  while (out.points.size() < static_cast<std::size_t>(count) && out.attempts < budget) {
    ++out.attempts;
    for (double& x : xi2) x = coord(rng);
    if (!(norm2(xi2) > 0.0)) continue;
    const double A = resonance_A(xi1, xi2, branch);
    if (std::abs(A) >= nu && std::abs(A) <= 2.0 * nu) out.points.push_back({xi2, A});
  }
  if (out.points.size() < static_cast<std::size_t>(count)) {
    std::ostringstream msg;
    msg << "found " << out.points.size() << " of " << count << " shell points in "
        << out.attempts << " attempts";
    out.notice = msg.str();
  }
  return out;
}

double shell_thickness(const ShellSample& sample, const std::vector<double>& xi1, int bins) {
  if (bins < 1) throw ConfigError("shell_thickness: bins must be >= 1");
  std::vector<double> lo(static_cast<std::size_t>(bins), INFINITY);
  std::vector<double> hi(static_cast<std::size_t>(bins), -INFINITY);
  std::vector<int> hits(static_cast<std::size_t>(bins), 0);
  for (const ShellPoint& p : sample.points) {
    if (p.A <= 0.0) continue;
    const double angle = angle_between(xi1, p.xi2);
    const auto k = std::min(bins - 1, static_cast<int>(angle / std::numbers::pi * bins));
    const double rho = std::sqrt(norm2(p.xi2));
    lo[k] = std::min(lo[k], rho);
    hi[k] = std::max(hi[k], rho);
    ++hits[k];
  }
  std::vector<double> extents;
  for (int k = 0; k < bins; ++k) {
    if (hits[k] >= 8) extents.push_back(hi[k] - lo[k]);
  }
  if (extents.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::nth_element(extents.begin(), extents.begin() + extents.size() / 2, extents.end());
  return extents[extents.size() / 2];
}

std::size_t SpaceTimeLattice::size() const {
  std::size_t n = 1;
  for (int p : points) n *= static_cast<std::size_t>(p);
  return n;
}

double SpaceTimeLattice::cell() const {
  double c = 1.0;
  for (double h : spacing) c *= h;
  return c;
}

std::vector<double> SpaceTimeLattice::coordinate(std::size_t flat) const {
  std::vector<double> x(points.size());
  for (std::size_t a = points.size(); a-- > 0;) {
    const auto n = static_cast<std::size_t>(points[a]);
    const double j = static_cast<double>(flat % n);
    flat /= n;
    x[a] = centre[a] + spacing[a] * (j - 0.5 * (points[a] - 1));
  }
  return x;
}

double lattice_xsb_norm(const SpaceTimeLattice& f, double s, double b, ModulationSurface surface) {
  const int d = f.dim();
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double mag = std::norm(f.values[i]);
    if (mag == 0.0) continue;
    const std::vector<double> p = f.coordinate(i);
    double xi_sq = 0.0;
    for (int a = 0; a < d; ++a) xi_sq += p[a] * p[a];
    const double w = std::pow(1.0 + xi_sq, s) *
                     std::pow(japanese(surface_modulation(surface, p[d], xi_sq)), 2.0 * b);
    acc += w * mag;
  }
  return std::sqrt(acc * f.cell());
}

SpaceTimeLattice lattice_convolution(const SpaceTimeLattice& u, const SpaceTimeLattice& v,
                                     std::size_t max_points) {
  require_same_shape(u, v);
  const std::size_t axes = u.points.size();
  std::vector<int> padded(axes);
  std::size_t total = 1;
  for (std::size_t a = 0; a < axes; ++a) {
    padded[a] = 2 * u.points[a];
    total *= static_cast<std::size_t>(padded[a]);
  }
  if (total > max_points) {
    throw ResourceError("bilinear lattice: padded convolution exceeds the point budget");
  }

  auto embed = [&](const SpaceTimeLattice& f) {
    std::vector<Complex> out(total, Complex(0.0));
    for (std::size_t i = 0; i < f.size(); ++i) {
      std::size_t rem = i;
      std::size_t target = 0;
      std::size_t stride = 1;
      for (std::size_t a = axes; a-- > 0;) {
        const auto n = static_cast<std::size_t>(f.points[a]);
        target += (rem % n) * stride;
        rem /= n;
        stride *= static_cast<std::size_t>(padded[a]);
      }
      out[target] = f.values[i];
    }
    return out;
  };
  std::vector<Complex> fu = embed(u);
  std::vector<Complex> fv = embed(v);
  dft_nd(fu, padded, -1);
  dft_nd(fv, padded, -1);
  for (std::size_t i = 0; i < total; ++i) fu[i] *= fv[i];
  dft_nd(fu, padded, +1);

  SpaceTimeLattice w;
  w.spacing = u.spacing;
  for (std::size_t a = 0; a < axes; ++a) {
    w.points.push_back(2 * u.points[a] - 1);
    w.centre.push_back(u.centre[a] + v.centre[a]);
  }
  const double scale = std::pow(2.0 * std::numbers::pi, -static_cast<double>(axes)) * u.cell() /
                       static_cast<double>(total);
  w.values.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::size_t rem = i;
    std::size_t source = 0;
    std::size_t stride = 1;
    for (std::size_t a = axes; a-- > 0;) {
      const auto n = static_cast<std::size_t>(w.points[a]);
      source += (rem % n) * stride;
      rem /= n;
      stride *= static_cast<std::size_t>(padded[a]);
    }
    w.values[i] = fu[source] * scale;
  }
  return w;
}

double bilinear_ratio(const SpaceTimeLattice& u, const SpaceTimeLattice& v, double s, double r,
                      double alpha, double b, int wave_sign, std::size_t max_points) {
  require_same_shape(u, v);
  if (is_zero(u) || is_zero(v)) return std::numeric_limits<double>::quiet_NaN();
  const double nu = lattice_xsb_norm(u, s, b, ModulationSurface::schrodinger);
  const double nv = lattice_xsb_norm(v, r, b, wave_surface(wave_sign));
  const SpaceTimeLattice uv = lattice_convolution(u, v, max_points);
  const double np = lattice_xsb_norm(uv, s + alpha, b - 1.0, ModulationSurface::schrodinger);
  return np / (nu * nv);
}

SpaceTimeLattice random_bump_field(const BilinearOptions& options, ModulationSurface surface,
                                   std::uint64_t seed) {
  SpaceTimeLattice f = empty_lattice(options);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> centre(-0.5 * options.xi_extent, 0.5 * options.xi_extent);
  std::uniform_real_distribution<double> offset(-1.0, 1.0);
  std::normal_distribution<double> normal;
  std::vector<Bump> bumps(static_cast<std::size_t>(std::max(options.bumps, 1)));
  for (Bump& bump : bumps) {
    bump.centre.resize(static_cast<std::size_t>(options.d));
    for (double& c : bump.centre) c = centre(rng);
    bump.offset = offset(rng);
    const double re = normal(rng);
    const double im = normal(rng);
    bump.amplitude = Complex(re, im);
  }
  add_bumps(f, surface, bumps, options.bump_width * options.xi_extent);
  return f;
}

double box_family_ratio(double N, double s, double r, double alpha, double b, int d,
                        int resolution, int wave_sign, std::size_t max_points) {
  if (!(N > 1.0)) throw ConfigError("box family: N must exceed 1");
  if (d < 1 || d > 4) throw ConfigError("box family: d must lie in 1..4");
  if (resolution < 2) throw ResolutionError("box family: resolution must be >= 2");
  SpaceTimeLattice u;
  SpaceTimeLattice v;
  for (int a = 0; a <= d; ++a) {
    const double h = a == 0 ? 1.0 / (resolution * N) : 1.0 / resolution;
    for (SpaceTimeLattice* f : {&u, &v}) {
      f->points.push_back(2 * resolution);
      f->spacing.push_back(h);
    }
    u.centre.push_back(a == 0 ? N : (a == d ? -N * N : 0.0));
    v.centre.push_back(0.0);
  }
  u.values.assign(u.size(), Complex(1.0));
  v.values.assign(v.size(), Complex(1.0));
  return bilinear_ratio(u, v, s, r, alpha, b, wave_sign, max_points);
}

BilinearStats bilinear_constant_estimate(double s, double r, double alpha, double b,
                                         const BilinearOptions& options, int ensemble,
                                         std::uint64_t seed, bool adversarial) {
  if (ensemble < 1) throw ConfigError("bilinear estimate: ensemble must be >= 1");
  if (!(b > 0.0) || !(b < 1.0)) throw ConfigError("bilinear estimate: b must lie in (0, 1)");
  BilinearStats stats;
  const double d = options.d;
  stats.admissible = alpha < std::min({0.5, r - s + 1.0, r + 2.0 - 0.5 * d});
  const ModulationSurface vs = wave_surface(options.wave_sign);
  const ResonanceBranch branch =
      options.wave_sign >= 0 ? ResonanceBranch::minus : ResonanceBranch::plus;

  for (int i = 0; i < ensemble; ++i) {
    const std::uint64_t member = seed + static_cast<std::uint64_t>(i);
    const SpaceTimeLattice u =
        random_bump_field(options, ModulationSurface::schrodinger, derived_seed(member, 0));
    const SpaceTimeLattice v = random_bump_field(options, vs, derived_seed(member, 1));
    stats.members.push_back({"random", member,
                             bilinear_ratio(u, v, s, r, alpha, b, options.wave_sign,
                                            options.max_points)});
    if (!adversarial) continue;

    std::mt19937_64 rng(derived_seed(member, 2));
    std::normal_distribution<double> normal;
    std::vector<double> xi1(static_cast<std::size_t>(options.d));
    double len = 0.0;
    while (!(len > 0.0)) {
      for (double& x : xi1) x = normal(rng);
      len = std::sqrt(norm2(xi1));
    }
    for (double& x : xi1) x *= 0.5 * options.xi_extent / len;
    const ShellSample shell = resonant_shell_sample(xi1, 0.05, branch, 64, derived_seed(member, 3));
    const ShellPoint* pick = nullptr;
    for (const ShellPoint& p : shell.points) {
      const bool inside = std::all_of(p.xi2.begin(), p.xi2.end(), [&](double x) {
        return std::abs(x) <= 0.9 * options.xi_extent;
      });
      if (inside) {
        pick = &p;
        break;
      }
    }
    if (pick == nullptr) {
      ++stats.skipped;
      continue;
    }
    SpaceTimeLattice ru = empty_lattice(options);
    SpaceTimeLattice rv = empty_lattice(options);
    const double width = options.bump_width * options.xi_extent;
    add_bumps(ru, ModulationSurface::schrodinger, {Bump{xi1, 0.0, 1.0}}, width);
    add_bumps(rv, vs, {Bump{pick->xi2, 0.0, 1.0}}, width);
    stats.members.push_back({"resonant", member,
                             bilinear_ratio(ru, rv, s, r, alpha, b, options.wave_sign,
                                            options.max_points)});
  }
  if (adversarial) {
    stats.members.push_back({"box", 0,
                             box_family_ratio(options.box_N, s, r, alpha, b, options.d,
                                              options.box_resolution, options.wave_sign,
                                              options.max_points)});
  }

  double sum = 0.0;
  int used = 0;
  for (const BilinearMember& m : stats.members) {
    if (!std::isfinite(m.ratio)) {
      ++stats.skipped;
      continue;
    }
    stats.max_ratio = std::max(stats.max_ratio, m.ratio);
    sum += m.ratio;
    ++used;
  }
  stats.mean_ratio = used > 0 ? sum / used : std::numeric_limits<double>::quiet_NaN();
  return stats;
}

double lemma_integral(double alpha, double beta, double a, double b) {
  if (!(alpha + beta > 1.0)) return INFINITY;
  const double Y = kLemmaTruncation;
  auto integrand = [&](double y) {
    return std::pow(japanese(y - a), -alpha) * std::pow(japanese(y - b), -beta);
  };
  std::vector<double> cuts{-Y, Y};
  for (double c : {a, b}) {
    cuts.push_back(c);
    for (double off : {1.0, 10.0, 100.0, 1000.0}) {
      cuts.push_back(c - off);
      cuts.push_back(c + off);
    }
  }
  for (double& c : cuts) c = std::clamp(c, -Y, Y);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, cuts[i], cuts[i + 1], 15, 1e-12);
  }
  // Power tails beyond |y| = Y, expanded about the weighted centre.
  const double p = alpha + beta;
  const double c = (alpha * a + beta * b) / p;
  total += std::pow(Y - c, 1.0 - p) / (p - 1.0);
  total += std::pow(Y + c, 1.0 - p) / (p - 1.0);
  return total;
}

LemmaCheck calc_lemma_check(double alpha, double beta, const std::vector<double>& a_grid,
                            const std::vector<double>& b_grid) {
  if (!(alpha > 1.0)) throw HypothesisError("lemma hypotheses violated: requires alpha > 1");
  if (!(alpha >= beta) || !(beta >= 0.0)) {
    throw HypothesisError("lemma hypotheses violated: requires alpha >= beta >= 0");
  }
  return calc_lemma_check_unchecked(alpha, beta, a_grid, b_grid);
}

LemmaCheck calc_lemma_check_unchecked(double alpha, double beta,
                                      const std::vector<double>& a_grid,
                                      const std::vector<double>& b_grid) {
  if (a_grid.empty() || b_grid.empty()) throw ConfigError("lemma check: empty grid");
  for (const std::vector<double>* g : {&a_grid, &b_grid}) {
    for (double x : *g) {
      if (!std::isfinite(x) || std::abs(x) > 0.1 * kLemmaTruncation) {
        throw ConfigError("lemma check: grid values must satisfy |x| <= 1000");
      }
    }
  }
  LemmaCheck out;
  out.points.resize(a_grid.size() * b_grid.size());
  parallel_for(out.points.size(), [&](std::size_t k) {
    LemmaPoint& p = out.points[k];
    p.a = a_grid[k / b_grid.size()];
    p.b = b_grid[k % b_grid.size()];
    p.integral = lemma_integral(alpha, beta, p.a, p.b);
    p.ratio = p.integral * std::pow(japanese(p.a - p.b), beta);
  });

  out.max_ratio = -INFINITY;
  out.min_ratio = INFINITY;
  bool finite = true;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (const LemmaPoint& p : out.points) {
    out.max_ratio = std::max(out.max_ratio, p.ratio);
    out.min_ratio = std::min(out.min_ratio, p.ratio);
    if (!std::isfinite(p.ratio)) {
      finite = false;
      continue;
    }
    if (std::abs(p.a - p.b) < 10.0) continue;
    const double x = std::log(japanese(p.a - p.b));
    const double y = std::log(p.ratio);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  const double den = count * sxx - sx * sx;
  out.growth_slope = count >= 2 && den > 0.0 ? (count * sxy - sx * sy) / den
                                             : std::numeric_limits<double>::quiet_NaN();
  out.growth_detected = !finite || (std::isfinite(out.growth_slope) &&
                                    out.growth_slope > kLemmaGrowthSlope);
  return out;
}

}  // namespace dispersmooth
