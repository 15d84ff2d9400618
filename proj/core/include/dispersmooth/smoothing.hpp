#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dispersmooth/evolution.hpp"
#include "dispersmooth/field.hpp"

namespace dispersmooth {

enum class Component { u, wplus, wminus };

const char* component_name(Component c);

/// state(t) - linear_propagate(state(0), t) for one component at every
/// recorded time. The first entry is exactly zero.
std::vector<SpectralField> duhamel_residual(const Trajectory& trajectory, Component component);

/// Modulation weights: <tau + |xi|^2> (schrodinger), <tau + |xi|> (wave_plus),
/// <tau - |xi|> (wave_minus).
enum class XsbDispersion { schrodinger, wave_plus, wave_minus };

/// Uniform time samples t_j = j dt, j = 0..M-1, of one field with a Tukey
/// window of the given taper fraction (0 = rectangular, 1 = Hann).
class SpaceTimeField {
 public:
  SpaceTimeField(std::vector<SpectralField> samples, double dt, double taper = 0.5);

  const Grid& grid() const { return samples_.front().grid(); }
  std::size_t time_count() const { return samples_.size(); }
  double dt() const { return dt_; }
  double taper() const { return taper_; }
  const std::vector<SpectralField>& samples() const { return samples_; }
  const std::vector<double>& window() const { return window_; }

 private:
  std::vector<SpectralField> samples_;
  double dt_;
  double taper_;
  std::vector<double> window_;
};

/// Tukey window of length m.
std::vector<double> tukey_window(std::size_t m, double taper);

/// Discrete X^{s,b} norm:
///   sum_xi (2 pi L)^{-d} <xi>^{2s} sum_m (dtau / 2 pi) <sigma_m>^{2b} |g^(xi, sigma_m)|^2
/// where g = window * exp(i h(xi) t) u is the profile demodulated by the
/// dispersion relation h and g^ its time transform dt sum_j g_j e^{-i sigma t_j}.
/// For s = b = 0 this is the discrete space-time L^2 norm of the windowed samples.
double xsb_norm(const SpaceTimeField& stf, double s, double b, XsbDispersion dispersion);

/// Windowed time transform of a single mode without demodulation, tau in
/// ascending order.
struct TauSpectrum {
  std::vector<double> tau;
  std::vector<Complex> values;
};
TauSpectrum tau_transform(const SpaceTimeField& stf, std::size_t mode);

/// Supremal smoothing exponents: the nonlinear part of u lies in H^{s+alpha}
/// and of the wave part in H^{r+beta} for every alpha < alpha_max and
/// beta < beta_max.
struct SmoothingExponents {
  double alpha_max = 0.0;
  double beta_max = 0.0;
};

/// Throws AdmissibilityError naming the first violated hypothesis, e.g. "s > -1/4".
SmoothingExponents smoothing_exponents(System system, int d, double s, double r);

struct SmoothingParams {
  System system = System::kgs;
  int d = 2;
  double s = 0.0;
  double r = 0.0;
  double alpha_probe = 0.0;
  double beta_probe = 0.0;
  double b = 0.55;
};

struct ScanOptions {
  int n_per_dim = 128;
  double box_length = 1.0;
  double t_end = 0.5;
  double dt = 5e-4;
  /// Residual norms are sampled every probe_every steps.
  int probe_every = 100;
  /// H^s norm of u0 and H^r norm of w+(0).
  double amplitude = 1.0;
  /// Multiplies u0; 0 switches the Schrodinger data off.
  double u_scale = 1.0;
  Scheme scheme = Scheme::exponential_rk4;
};

struct ScanRecord {
  std::uint64_t seed = 0;
  Component component = Component::u;
  /// alpha_probe for u, beta_probe for the wave components.
  double probe = 0.0;
  /// sup over probe times of ||residual||_{H^{s+probe}} / (||u0||_{H^s} + ||w0||_{H^r})^2
  double residual_norm = 0.0;
  /// Same supremum without the normalization.
  double raw_residual_norm = 0.0;
  /// Fitted spectral slope of the residual at t_end minus that of the data.
  /// NaN when the residual vanishes.
  double slope_gain = 0.0;
};

struct GainSummary {
  double mean = 0.0;
  double spread = 0.0;  ///< sample standard deviation
  double min = 0.0;
};

struct ScanReport {
  SmoothingExponents exponents;
  std::vector<ScanRecord> records;
  GainSummary u_gain;
  GainSummary wave_gain;
};

/// Ensemble of random H^s x H^r data, members seeded seed, seed+1, ...
/// Throws AdmissibilityError when a probe is not below its supremal exponent.
ScanReport smoothing_scan(const SmoothingParams& params, int ensemble_size, std::uint64_t seed,
                          const ScanOptions& options = {});

/// Random scan data for one member: u0 complex in H^s, v0, v1 real with
/// v +- i A^{-1} v_t in H^r, all restricted to the dealiasing band.
SystemState scan_initial_state(const SmoothingParams& params, const Grid& grid,
                               std::uint64_t seed, double amplitude, double u_scale = 1.0);

struct CounterexampleOptions {
  /// Lattice points per unit box width: cells of size 1/(resolution N) along
  /// xi_1 and 1/resolution along the other axes and tau.
  int resolution = 6;
  /// +1 measures v in X^{r,b}_+, -1 in X^{r,b}_-.
  int wave_sign = +1;
  /// Refuse lattices with more points than this.
  std::size_t max_points = 50'000'000;
};

struct CounterexampleResult {
  double u_norm = 0.0;
  double v_norm = 0.0;
  double product_norm = 0.0;
  /// ||uv||_{X^{s+alpha,b-1}} / (||u||_{X^{s,b}} ||v||_{X^{r,b}_+-})
  double ratio = 0.0;
};

/// Indicator data on the boxes
///   B1 = {|xi_1 - N| < 1/N, |xi_i| < 1 (i >= 2), |tau + N^2| < 1}
///   B2 = {|xi_1| < 1/N,     |xi_i| < 1 (i >= 2), |tau| < 1}
/// discretized at cell centres; the product transform is the exact lattice
/// convolution (2 pi)^{-(d+1)} sum u^(p) v^(q) |cell| over p + q = point.
/// Throws ResolutionError for resolution < 2 and ConfigError for N <= 1 or d < 1.
CounterexampleResult sharpness_counterexample(double N, double s, double r, double alpha,
                                              double b, int d,
                                              const CounterexampleOptions& options = {});

/// Least-squares slope of log y against log x.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace dispersmooth
