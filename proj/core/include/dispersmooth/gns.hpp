#pragma once

#include <string>

namespace dispersmooth {

/// Value of a Sobolev-type ratio on one radial trial profile in R^4.
struct TrialRatio {
  std::string family;
  /// Shape parameter of the family (NaN when the family has none).
  double parameter = 0.0;
  double value = 0.0;
};

/// Radial trial profiles f(r) in R^4.
///   gaussian:  exp(-r^2)
///   algebraic: (1 + r^2)^{-k}
///   sech:      sech(r)^k
enum class TrialFamily { gaussian, algebraic, sech };

const char* trial_family_name(TrialFamily family);

/// ||f||_{L^4} / ||grad f||_{L^2} for one profile.
double l4_sobolev_ratio(TrialFamily family, double parameter = 1.0);

/// ||f||_{L^{8/3}} / (||f||_{L^2}^{1/2} ||grad f||_{L^2}^{1/2}) for one profile.
double l83_gn_ratio(TrialFamily family, double parameter = 2.0);

/// Lower bound for C1 in ||f||_{L^4(R^4)} <= C1 ||grad f||_{L^2(R^4)}:
/// the best ratio over the trial families, maximized over the shape parameter.
TrialRatio c1_lower_bound();

/// Lower bound for C2 in ||f||_{L^{8/3}(R^4)} <= C2 ||f||^{1/2} ||grad f||^{1/2}.
TrialRatio c2_lower_bound();

/// Closed form of the sharp L^4 Sobolev constant in R^4,
/// (8 pi)^{-1/2} 6^{1/4}.
double sharp_l4_sobolev_constant();

}  // namespace dispersmooth
