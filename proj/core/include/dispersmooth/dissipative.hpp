#pragma once

#include <array>
#include <optional>
#include <vector>

#include "dispersmooth/evolution.hpp"
#include "dispersmooth/field.hpp"

namespace dispersmooth {

/// Damped and forced KGS written for (u, v, w = a v + v_t):
///   i u_t + Laplacian u + i gamma u = -u v + f
///   v_t + a v = w
///   w_t + (delta - a) w + (1 + a (a - delta) - Laplacian) v = |u|^2 + g
struct DampedParams {
  double gamma = 0.5;
  double delta = 0.5;
  /// 0 selects min(gamma, delta) / 4.
  double a = 0.0;
  /// Time-independent forcing; absent means zero.
  std::optional<SpectralField> f;
  std::optional<SpectralField> g;
};

/// Throws ConfigError unless gamma, delta > 0 and 0 < a < delta.
void validate(const DampedParams& params);

/// a after applying the default.
double auxiliary_a(const DampedParams& params);

/// 1 + a (a - delta)
double shifted_mass(const DampedParams& params);

struct DampedState {
  SpectralField u;
  SpectralField v;
  SpectralField w;
  double t = 0.0;
};

/// w = a v + v_t
DampedState make_damped_state(const SpectralField& u, const SpectralField& v,
                              const SpectralField& v_t, const DampedParams& params,
                              double t = 0.0);

struct DampedTrajectory {
  std::vector<DampedState> states;
  double dt = 0.0;
  int steps = 0;
};

/// Same step and recording rules as integrate(). Throws NumericalAbort on blow-up.
DampedTrajectory integrate_damped(const DampedState& initial, const DampedParams& params,
                                  const IntegratorConfig& config);

/// Exact free damped flow: p -> exp(-gamma t - i t |xi|^2) p and (q, r) by the
/// per-mode 2x2 matrix exponential.
DampedState damped_linear_propagate(const DampedState& state, const DampedParams& params,
                                    double t);

/// Per-mode matrix exp(t M) with M = [[-a, 1], [-(c + |xi|^2), -(delta - a)]],
/// row-major.
std::array<Complex, 4> damped_wave_exponential(double xi_squared, double a, double delta,
                                               double t);

/// 2 ||grad u||^2 + c ||v||^2 + ||grad v||^2 + ||w||^2 - 2 int |u|^2 v + 4 Re int f conj(u)
double energy_H(const DampedState& state, const DampedParams& params);

/// -4 gamma ||grad u||^2 - 2 a c ||v||^2 - 2 a ||grad v||^2 - 2 (delta - a) ||w||^2
/// + (4 gamma + 2 a) int |u|^2 v - 4 gamma Re int f conj(u) + 2 int g w
double energy_H_rate(const DampedState& state, const DampedParams& params);

/// -2 gamma ||u||^2 + 2 Im int f conj(u), the time derivative of ||u||^2.
double mass_rate(const DampedState& state, const DampedParams& params);

/// sqrt(||u||_{H^1}^2 + ||v||_{H^1}^2 + ||w||^2)
double energy_space_norm(const DampedState& state);

struct AttractorSample {
  double t = 0.0;
  double energy_norm = 0.0;
  double H = 0.0;
  double mass = 0.0;
  /// Energy-space norm of the free damped flow of the initial state.
  double linear_norm = 0.0;
  /// ||u - p||_{H^1.4}, ||v - q||_{H^2.8}, ||w - r||_{H^1.8}
  double u_probe = 0.0;
  double v_probe = 0.0;
  double w_probe = 0.0;
};

struct AttractorReport {
  std::vector<AttractorSample> samples;
  /// 1.1 times the largest energy norm over [T/2, 3T/4].
  double ball_radius = 0.0;
  /// First sample time inside the ball; NaN when never inside.
  double entry_time = 0.0;
  /// Every sample after entry stays inside.
  bool persistent = false;
  /// Least-squares rate c of linear_norm ~ exp(-c t).
  double linear_decay_rate = 0.0;
  /// min(gamma, a, delta - a) / 2
  double guaranteed_rate = 0.0;
  /// Largest probe norms over [T/2, T].
  double u_probe_tail_max = 0.0;
  double v_probe_tail_max = 0.0;
  double w_probe_tail_max = 0.0;
  /// Largest probe norm over [3T/4, T] divided by the largest over [T/2, 3T/4].
  double probe_growth = 0.0;
  /// Set when T < 5 / min(gamma, delta) or fewer than 8 samples were recorded.
  bool inconclusive = false;
};

inline constexpr double kProbeExponentU = 1.4;
inline constexpr double kProbeExponentV = 2.8;
inline constexpr double kProbeExponentW = 1.8;

AttractorReport attractor_diagnostics(const DampedTrajectory& trajectory,
                                      const DampedParams& params);

}  // namespace dispersmooth
