#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dispersmooth/evolution.hpp"
#include "dispersmooth/field.hpp"

namespace dispersmooth {

/// Parameters of the high-low frequency iteration for KGS.
struct HighLowConfig {
  /// Frequency cutoff: the low part keeps |xi| <= N.
  double N = 8.0;
  double s = 1.0;
  double r = 1.0;
  double s0 = 0.55;
  double r0 = 0.55;
  /// Window length; 0 selects step_rule(N, m, r0, step_constant).
  double delta = 0.0;
  /// Target horizon.
  double T = 1.0;
  /// Constants of ||f||_4 <= C1 ||grad f|| and ||f||_{8/3} <= C2 ||f||^{1/2} ||grad f||^{1/2}
  /// in R^4; 0 selects the trial-family lower bounds.
  double gns_c1 = 0.0;
  double gns_c2 = 0.0;
  double step_constant = 0.1;
  /// Inner step; the window is cut into ceil(delta / dt) equal steps.
  double dt = 1e-2;
  Scheme scheme = Scheme::exponential_rk4;
  /// Run the direct solver alongside and log the difference.
  bool compare_direct = true;

  double m() const { return s < r ? s : r; }
};

/// Low pair (phi, psi+-) and high pair (mu, lambda+-).
struct HighLowState {
  SpectralField phi;
  SpectralField psi_plus;
  SpectralField psi_minus;
  SpectralField mu;
  SpectralField lambda_plus;
  SpectralField lambda_minus;
  int window_index = 0;
  double t = 0.0;
};

/// phi0 = P_{<=N} u0, psi0 = P_{<=N} w0, mu0 = u0 - phi0, lambda0 = w0 - psi0.
/// Throws ConfigError when N is negative or not finite.
HighLowState split_initial(const SpectralField& u0, const SpectralField& wplus0,
                           const SpectralField& wminus0, double N);
HighLowState split_initial(const SystemState& initial, double N);

/// (phi + mu, psi+- + lambda+-) as a KGS state.
SystemState reassemble(const HighLowState& state);

/// delta = c N^{-2(1-m)/r0 - 0.01}. Throws ConfigError for N < 1, r0 <= 0 or c <= 0.
double step_rule(double N, double m, double r0, double c = 0.1);

/// Window length used by a configuration.
double window_length(const HighLowConfig& config);

/// Nonlinear increments of the high pair over one window:
/// w = mu(delta) - exp(i delta Laplacian) mu0, z+- = lambda+-(delta) - exp(-+i delta A) lambda0+-.
struct WindowIncrement {
  SpectralField w;
  SpectralField z_plus;
  SpectralField z_minus;
};

struct WindowOutcome {
  HighLowState state;
  WindowIncrement increment;
  /// phi(delta) + mu(delta) before reassembly.
  SpectralField u_end;
};

/// Evolves the coupled low and high systems over one window and reassembles:
///   phi1 = phi(delta) + w, mu1 = exp(i delta Laplacian) mu0, same for psi, lambda.
/// Throws NumericalAbort on blow-up.
WindowOutcome advance_window_detailed(const HighLowState& state, const HighLowConfig& config);
HighLowState advance_window(const HighLowState& state, const HighLowConfig& config);

struct LowEnergy {
  /// ||A psi||^2 + 2 ||grad phi||^2 - 2 int |phi|^2 Re(psi), psi = (psi+ + psi-)/2
  double energy = 0.0;
  /// ||A psi||^2 + 2 ||grad phi||^2
  double surrogate = 0.0;
  /// int |phi|^2 Re(psi)
  double cubic = 0.0;
  double grad_phi = 0.0;
  double a_psi = 0.0;
  double mass_phi = 0.0;
};

/// ||A psi||^2 is taken as (||A psi+||^2 + ||A psi-||^2) / 2, which equals
/// ||A v||^2 + ||v_t||^2 for real v.
LowEnergy low_energy(const SpectralField& phi, const SpectralField& psi_plus,
                     const SpectralField& psi_minus);

/// 2 c1 c2^2 ||phi|| ||grad phi|| ||A psi||, the R^4 bound on |E - surrogate|
/// (= 2 sqrt(2) C0 ||grad phi|| ||A psi|| with C0 = ||phi|| c1 c2^2 / sqrt(2)).
double coercivity_gap_bound(const LowEnergy& e, double c1, double c2);

/// C0 = mass c1 c2^2 / sqrt(2).
double coercivity_c0(double mass, double c1, double c2);

/// sqrt(2) / (c1 c2^2). Throws ConfigError for nonpositive constants.
double mass_threshold(double c1, double c2);

/// Both readings of the small-mass condition.
struct MassThresholdForms {
  /// sqrt(2) / (c1 c2^2)
  double reciprocal = 0.0;
  /// sqrt(2) c1 c2^2
  double product = 0.0;
};
MassThresholdForms mass_threshold_forms(double c1, double c2);

struct WindowLog {
  int window = 0;
  double t = 0.0;
  double energy_low = 0.0;
  double mass_low = 0.0;
  double w_h1 = 0.0;
  /// max of ||z+||_{H^1} and ||z-||_{H^1}
  double z_h1 = 0.0;
  /// Relative L^2 difference of the reassembled state and the direct solve;
  /// NaN when not computed.
  double diff_vs_direct = 0.0;
};

struct HighLowReport {
  HighLowConfig config;
  double delta = 0.0;
  int windows = 0;
  int steps_per_window = 0;
  double c1 = 0.0;
  double c2 = 0.0;
  MassThresholdForms threshold;
  double initial_mass = 0.0;
  /// Mass at or above the reciprocal form of the threshold.
  bool threshold_violated = false;
  std::vector<std::string> warnings;
  std::vector<WindowLog> log;
  std::optional<HighLowState> final_state;
  std::optional<SystemState> direct_final;
};

/// Iterates advance_window over ceil(T / delta) windows (at least one).
/// The mass condition is reported, not enforced.
HighLowReport run_global(const SystemState& initial, const HighLowConfig& config);

}  // namespace dispersmooth
