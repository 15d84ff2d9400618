#include "dispersmooth/gns.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/tools/minima.hpp>

#include "dispersmooth/error.hpp"

namespace dispersmooth {

namespace {

struct Profile {
  std::function<double(double)> f;
  std::function<double(double)> df;
};

double sech(double r) {
  const double e = std::exp(-r);
  return 2.0 * e / (1.0 + e * e);
}

Profile make_profile(TrialFamily family, double k) {
  switch (family) {
    case TrialFamily::gaussian:
      return {[](double r) { return std::exp(-r * r); },
              [](double r) { return -2.0 * r * std::exp(-r * r); }};
    case TrialFamily::algebraic:
      if (!(k > 0.5)) throw ConfigError("algebraic trial profile needs k > 1/2");
      return {[k](double r) { return std::pow(1.0 + r * r, -k); },
              [k](double r) { return -2.0 * k * r * std::pow(1.0 + r * r, -k - 1.0); }};
    case TrialFamily::sech:
      if (!(k > 0.0)) throw ConfigError("sech trial profile needs k > 0");
      return {[k](double r) { return std::pow(sech(r), k); },
              [k](double r) { return -k * std::pow(sech(r), k) * std::tanh(r); }};
  }
  throw ConfigError("unknown trial family");
}

/// integral over R^4 of a radial function g(|x|).
double radial_integral(const std::function<double(double)>& g) {
  boost::math::quadrature::exp_sinh<double> integrator;
  const double value = integrator.integrate([&](double r) { return g(r) * r * r * r; });
  return 2.0 * std::numbers::pi * std::numbers::pi * value;
}

double lp_norm(const Profile& p, double exponent) {
  const double v = radial_integral([&](double r) { return std::pow(std::abs(p.f(r)), exponent); });
  return std::pow(v, 1.0 / exponent);
}

double gradient_norm(const Profile& p) {
  return std::sqrt(radial_integral([&](double r) {
    const double d = p.df(r);
    return d * d;
  }));
}

TrialRatio best_over_parameter(TrialFamily family, double lo, double hi,
                               double (*ratio)(TrialFamily, double)) {
  auto objective = [&](double k) { return -ratio(family, k); };
  const auto [k, neg] = boost::math::tools::brent_find_minima(objective, lo, hi, 40);
  return {trial_family_name(family), k, -neg};
}

}  // namespace

const char* trial_family_name(TrialFamily family) {
  switch (family) {
    case TrialFamily::gaussian:
      return "gaussian";
    case TrialFamily::algebraic:
      return "algebraic";
    case TrialFamily::sech:
      return "sech";
  }
  return "unknown";
}

double l4_sobolev_ratio(TrialFamily family, double parameter) {
  const Profile p = make_profile(family, parameter);
  return lp_norm(p, 4.0) / gradient_norm(p);
}

double l83_gn_ratio(TrialFamily family, double parameter) {
  if (family == TrialFamily::algebraic && !(parameter > 1.0)) {
    throw ConfigError("algebraic profile is not in L^2(R^4) for k <= 1");
  }
  const Profile p = make_profile(family, parameter);
  return lp_norm(p, 8.0 / 3.0) / std::sqrt(lp_norm(p, 2.0) * gradient_norm(p));
}

TrialRatio c1_lower_bound() {
  TrialRatio best{"gaussian", std::numeric_limits<double>::quiet_NaN(),
                  l4_sobolev_ratio(TrialFamily::gaussian)};
  for (const TrialRatio& candidate :
       {best_over_parameter(TrialFamily::algebraic, 0.55, 6.0, l4_sobolev_ratio),
        best_over_parameter(TrialFamily::sech, 0.2, 8.0, l4_sobolev_ratio)}) {
    if (candidate.value > best.value) best = candidate;
  }
  return best;
}

TrialRatio c2_lower_bound() {
  TrialRatio best{"gaussian", std::numeric_limits<double>::quiet_NaN(),
                  l83_gn_ratio(TrialFamily::gaussian)};
  for (const TrialRatio& candidate :
       {best_over_parameter(TrialFamily::algebraic, 1.05, 8.0, l83_gn_ratio),
        best_over_parameter(TrialFamily::sech, 0.2, 8.0, l83_gn_ratio)}) {
    if (candidate.value > best.value) best = candidate;
  }
  return best;
}

double sharp_l4_sobolev_constant() {
  return std::pow(6.0, 0.25) / std::sqrt(8.0 * std::numbers::pi);
}

}  // namespace dispersmooth
