#pragma once

#include <functional>
#include <vector>

#include "dispersmooth/field.hpp"

namespace dispersmooth {

/// The unknowns of a coupled system, one SpectralField per component.
using FieldBundle = std::vector<SpectralField>;

/// In-place application of exp(t L) for one fixed t.
using Propagator = std::function<void(FieldBundle&)>;
/// Builds the propagator for a given t. Called once per distinct step size.
using LinearFlow = std::function<Propagator(double t)>;
/// Autonomous nonlinear part N(y) of y' = L y + N(y).
using NonlinearTerm = std::function<FieldBundle(const FieldBundle&)>;

enum class Scheme {
  exponential_rk4,  ///< integrating-factor (Lawson) RK4
  strang,           ///< half linear, RK4 nonlinear, half linear
};

/// Norm above which a run is treated as blown up.
inline constexpr double kBlowUpThreshold = 1e12;

/// Fixed-step integrator for y' = L y + N(y) with an exactly solvable L.
class ExponentialStepper {
 public:
  ExponentialStepper(const LinearFlow& flow, NonlinearTerm nonlinear, double h,
                     Scheme scheme = Scheme::exponential_rk4);

  double step_size() const { return h_; }
  void step(FieldBundle& y) const;

 private:
  NonlinearTerm nonlinear_;
  double h_;
  Scheme scheme_;
  Propagator half_;
  Propagator full_;
};

/// this += scale * other, componentwise.
void add_scaled(FieldBundle& y, Complex scale, const FieldBundle& other);

/// Throws NumericalAbort when a component is non-finite or has L^2 norm above
/// kBlowUpThreshold.
void check_bounded(const FieldBundle& y, double t);

}  // namespace dispersmooth
