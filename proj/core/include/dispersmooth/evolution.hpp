#pragma once

#include <utility>
#include <vector>

#include "dispersmooth/exponential_rk4.hpp"
#include "dispersmooth/field.hpp"

namespace dispersmooth {

enum class System { kgs, zakharov };

/// Linear flows: Schrodinger exp(-it|xi|^2) and the two Klein-Gordon branches
/// exp(-it<xi>) (kg_plus) and exp(+it<xi>) (kg_minus).
enum class Dispersion { schrodinger, kg_plus, kg_minus };

/// Unknowns of the first-order systems. For KGS wplus/wminus are
/// v +- i A^{-1} v_t, for Zakharov n +- i A^{-1} n_t.
struct SystemState {
  System system = System::kgs;
  SpectralField u;
  SpectralField wplus;
  SpectralField wminus;
  double t = 0.0;
};

/// Builds a state from u, v, v_t with all fields on one grid.
SystemState make_state(System system, const SpectralField& u, const SpectralField& v,
                       const SpectralField& v_t, double t = 0.0);

struct IntegratorConfig {
  double dt = 1e-2;
  Scheme scheme = Scheme::exponential_rk4;
  double t_end = 1.0;
  int record_every = 1;
};

/// Recorded states, the first being the initial state.
struct Trajectory {
  std::vector<SystemState> states;
  /// Step actually used: t_end / ceil(t_end / dt).
  double dt = 0.0;
  int steps = 0;
};

SpectralField linear_propagate(const SpectralField& field, Dispersion dispersion, double t);
/// Advances every component by its free flow and adds t to state.t.
SystemState linear_propagate(const SystemState& state, double t);

struct NonlinearTerms {
  SpectralField du;
  SpectralField dwplus;
  SpectralField dwminus;
};

/// Time-derivative contributions of the non-dispersive terms, dealiased.
///   KGS:      du = (i/2) u (w+ + w-),  dw+- = +-i A^{-1} |u|^2
///   Zakharov: du = -(i/2) u (w+ + w-), dw+- = +-i A^{-1} (Laplacian |u|^2 + Re w+-)
NonlinearTerms nonlinear_rhs(const SystemState& state);

/// Throws ConfigError for dt <= 0, t_end < 0 or record_every < 1, and
/// NumericalAbort on blow-up.
Trajectory integrate(const SystemState& initial, const IntegratorConfig& config);

/// One fixed-dt run that only keeps the end state.
SystemState advance(const SystemState& initial, double dt, double t_end,
                    Scheme scheme = Scheme::exponential_rk4);

struct ConservationReport {
  /// ||u||_{L^2}
  double mass = 0.0;
  double hamiltonian = 0.0;
  /// Zakharov only: |zero mode of n_t| / (2 pi L)^{d/2}, which the
  /// (-Laplacian)^{-1/2} term cannot see.
  double zero_mode_mass_of_wave = 0.0;
  double hs_u = 0.0;
  double hr_wplus = 0.0;
  double hr_wminus = 0.0;
};

/// KGS:      ||grad u||^2 + (||v||^2 + ||v_t||^2 + ||grad v||^2)/2 - int |u|^2 v
/// Zakharov: ||grad u||^2 + (||n||^2 + ||(-Laplacian)^{-1/2} n_t||^2)/2 + int |u|^2 n
/// with v (or n) = (w+ + w-)/2 and v_t = A (w+ - w-)/(2i).
ConservationReport conserved_quantities(const SystemState& state, double s = 1.0,
                                        double r = 1.0);

/// (v, v_t) -> (v + i A^{-1} v_t, v - i A^{-1} v_t)
std::pair<SpectralField, SpectralField> to_wave_components(const SpectralField& v,
                                                           const SpectralField& v_t);
/// (w+, w-) -> ((w+ + w-)/2, A (w+ - w-)/(2i))
std::pair<SpectralField, SpectralField> from_wave_components(const SpectralField& wplus,
                                                             const SpectralField& wminus);

}  // namespace dispersmooth
