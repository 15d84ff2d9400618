#include <cmath>
#include <numbers>
#include <vector>

#include "dispersmooth/error.hpp"
#include "dispersmooth/smoothing.hpp"

namespace dispersmooth {

namespace {

double japanese(double x) { return std::sqrt(1.0 + x * x); }

struct Axis {
  double centre1;  // box B1
  double centre2;  // box B2
  double spacing;
};

}  // namespace

CounterexampleResult sharpness_counterexample(double N, double s, double r, double alpha,
                                              double b, int d,
                                              const CounterexampleOptions& options) {
  if (!(N > 1.0)) throw ConfigError("counterexample: N must exceed 1");
  if (d < 1 || d > 8) throw ConfigError("counterexample: d must lie in 1..8");
  const int res = options.resolution;
  if (res < 2) {
    throw ResolutionError("counterexample: resolution must be >= 2 to resolve the 1/N width");
  }
  const int axes = d + 1;
  const auto m = static_cast<std::size_t>(2 * res);
  const std::size_t mp = 2 * m - 1;
  double product_points = 1.0;
  for (int a = 0; a < axes; ++a) product_points *= static_cast<double>(mp);
  if (product_points > static_cast<double>(options.max_points)) {
    throw ResourceError("counterexample: lattice exceeds the point budget");
  }

  std::vector<Axis> axis(static_cast<std::size_t>(axes));
  axis[0] = {N, 0.0, 1.0 / (res * N)};
  for (int a = 1; a < d; ++a) axis[static_cast<std::size_t>(a)] = {0.0, 0.0, 1.0 / res};
  axis[static_cast<std::size_t>(d)] = {-N * N, 0.0, 1.0 / res};
  double cell = 1.0;
  for (const auto& ax : axis) cell *= ax.spacing;
  const double sign = options.wave_sign >= 0 ? 1.0 : -1.0;
  const double half = static_cast<double>(res) - 0.5;

  // Norms of the two indicators.
  double u_sq = 0.0;
  double v_sq = 0.0;
  std::vector<std::size_t> idx(static_cast<std::size_t>(axes), 0);
  std::size_t total = 1;
  for (int a = 0; a < axes; ++a) total *= m;
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    double xi_sq1 = 0.0, xi_sq2 = 0.0, tau1 = 0.0, tau2 = 0.0;
    for (int a = axes - 1; a >= 0; --a) {
      const double off = (static_cast<double>(rem % m) - half) * axis[static_cast<std::size_t>(a)].spacing;
      rem /= m;
      const double p1 = axis[static_cast<std::size_t>(a)].centre1 + off;
      const double p2 = axis[static_cast<std::size_t>(a)].centre2 + off;
      if (a == d) {
        tau1 = p1;
        tau2 = p2;
      } else {
        xi_sq1 += p1 * p1;
        xi_sq2 += p2 * p2;
      }
    }
    const double wu = std::pow(std::sqrt(1.0 + xi_sq1), s) * std::pow(japanese(tau1 + xi_sq1), b);
    const double wv = std::pow(std::sqrt(1.0 + xi_sq2), r) *
                      std::pow(japanese(tau2 + sign * std::sqrt(xi_sq2)), b);
    u_sq += wu * wu;
    v_sq += wv * wv;
  }
  u_sq *= cell;
  v_sq *= cell;

  // Product: separable triangle counts on the summed lattice.
  const double conv_scale = std::pow(2.0 * std::numbers::pi, -axes) * cell;
  double p_sq = 0.0;
  std::size_t ptotal = 1;
  for (int a = 0; a < axes; ++a) ptotal *= mp;
  for (std::size_t flat = 0; flat < ptotal; ++flat) {
    std::size_t rem = flat;
    double xi_sq = 0.0, tau = 0.0, count = 1.0;
    for (int a = axes - 1; a >= 0; --a) {
      const auto k = static_cast<double>(rem % mp);
      rem /= mp;
      const Axis& ax = axis[static_cast<std::size_t>(a)];
      const double p = ax.centre1 + ax.centre2 + (k - 2.0 * half) * ax.spacing;
      count *= static_cast<double>(m) - std::abs(k - static_cast<double>(m - 1));
      if (a == d) {
        tau = p;
      } else {
        xi_sq += p * p;
      }
    }
    const double w = std::pow(std::sqrt(1.0 + xi_sq), s + alpha) * std::pow(japanese(tau + xi_sq), b - 1.0);
    const double value = conv_scale * count;
    p_sq += w * w * value * value;
  }
  p_sq *= cell;

  CounterexampleResult out;
  out.u_norm = std::sqrt(u_sq);
  out.v_norm = std::sqrt(v_sq);
  out.product_norm = std::sqrt(p_sq);
  out.ratio = out.product_norm / (out.u_norm * out.v_norm);
  return out;
}

}  // namespace dispersmooth
