#pragma once

#include <complex>
#include <span>
#include <vector>

#include "dispersmooth/grid.hpp"

namespace dispersmooth {

using Complex = std::complex<double>;

/// A complex field stored as its Fourier coefficients on a Grid.
///
/// Normalization: coeff(xi) = integral over the box of u(x) exp(-i xi.x) dx,
/// approximated by the trapezoidal rule on the sample points. A constant
/// field c has zero-mode coefficient c * (2*pi*L)^d, and
///   integral |u|^2 dx = sum |coeff|^2 / (2*pi*L)^d.
class SpectralField {
 public:
  explicit SpectralField(Grid grid);
  SpectralField(Grid grid, std::vector<Complex> coeffs);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return coeffs_.size(); }

  std::span<const Complex> coeffs() const { return coeffs_; }
  std::span<Complex> coeffs() { return coeffs_; }

  Complex& operator[](std::size_t i) { return coeffs_[i]; }
  const Complex& operator[](std::size_t i) const { return coeffs_[i]; }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(Complex scale);
  /// this += scale * other
  SpectralField& add_scaled(Complex scale, const SpectralField& other);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(Complex s, SpectralField a) { return a *= s; }
  friend SpectralField operator*(SpectralField a, Complex s) { return a *= s; }

  /// Bitwise equality of grid and coefficients.
  friend bool operator==(const SpectralField& a, const SpectralField& b);

 private:
  Grid grid_;
  std::vector<Complex> coeffs_;
};

/// Largest coefficient modulus of a - b.
double max_abs_difference(const SpectralField& a, const SpectralField& b);

}  // namespace dispersmooth
