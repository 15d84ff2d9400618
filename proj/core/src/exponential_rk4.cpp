#include "dispersmooth/exponential_rk4.hpp"

#include <cmath>
#include <sstream>

#include "dispersmooth/error.hpp"
#include "dispersmooth/spectral_ops.hpp"

namespace dispersmooth {

void add_scaled(FieldBundle& y, Complex scale, const FieldBundle& other) {
  if (y.size() != other.size()) throw ShapeError("bundle size mismatch");
  for (std::size_t i = 0; i < y.size(); ++i) y[i].add_scaled(scale, other[i]);
}

void check_bounded(const FieldBundle& y, double t) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double norm = l2_norm(y[i]);
    if (!std::isfinite(norm) || norm > kBlowUpThreshold) {
      std::ostringstream msg;
      msg << "blow-up detected at t = " << t << ": component " << i << " has L2 norm " << norm;
      throw NumericalAbort(msg.str());
    }
  }
}

ExponentialStepper::ExponentialStepper(const LinearFlow& flow, NonlinearTerm nonlinear,
                                       double h, Scheme scheme)
    : nonlinear_(std::move(nonlinear)), h_(h), scheme_(scheme) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("step size must be positive");
  half_ = flow(0.5 * h);
  if (scheme == Scheme::exponential_rk4) full_ = flow(h);
}

namespace {

FieldBundle rk4_plain(const NonlinearTerm& f, const FieldBundle& y, double h) {
  const FieldBundle k1 = f(y);
  FieldBundle tmp = y;
  add_scaled(tmp, 0.5 * h, k1);
  const FieldBundle k2 = f(tmp);
  tmp = y;
  add_scaled(tmp, 0.5 * h, k2);
  const FieldBundle k3 = f(tmp);
  tmp = y;
  add_scaled(tmp, h, k3);
  const FieldBundle k4 = f(tmp);
  FieldBundle out = y;
  add_scaled(out, h / 6.0, k1);
  add_scaled(out, h / 3.0, k2);
  add_scaled(out, h / 3.0, k3);
  add_scaled(out, h / 6.0, k4);
  return out;
}

}  // namespace

void ExponentialStepper::step(FieldBundle& y) const {
  const double h = h_;
  if (scheme_ == Scheme::strang) {
    half_(y);
    y = rk4_plain(nonlinear_, y, h);
    half_(y);
    return;
  }
  const FieldBundle k1 = nonlinear_(y);

  FieldBundle ey_half = y;
  half_(ey_half);

  FieldBundle a = y;
  add_scaled(a, 0.5 * h, k1);
  half_(a);
  FieldBundle k2 = nonlinear_(a);

  FieldBundle b = ey_half;
  add_scaled(b, 0.5 * h, k2);
  const FieldBundle k3 = nonlinear_(b);

  FieldBundle c = ey_half;
  add_scaled(c, h, k3);
  half_(c);
  const FieldBundle k4 = nonlinear_(c);

  // y' = E(h) y + h/6 [E(h) k1 + 2 E(h/2)(k2 + k3) + k4]
  FieldBundle acc = y;
  add_scaled(acc, h / 6.0, k1);
  full_(acc);
  FieldBundle mid = std::move(k2);
  add_scaled(mid, 1.0, k3);
  half_(mid);
  add_scaled(acc, h / 3.0, mid);
  add_scaled(acc, h / 6.0, k4);
  y = std::move(acc);
}

}  // namespace dispersmooth
