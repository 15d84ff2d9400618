#include "dispersmooth/field.hpp"

#include <algorithm>
#include <cmath>

#include "dispersmooth/error.hpp"

namespace dispersmooth {

SpectralField::SpectralField(Grid grid) : grid_(std::move(grid)), coeffs_(grid_.size()) {}

SpectralField::SpectralField(Grid grid, std::vector<Complex> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size()) {
    throw ShapeError("coefficient count does not match the grid");
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_, "field addition");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_, "field subtraction");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(Complex scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

SpectralField& SpectralField::add_scaled(Complex scale, const SpectralField& other) {
  require_same_grid(grid_, other.grid_, "field axpy");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += scale * other.coeffs_[i];
  return *this;
}

bool operator==(const SpectralField& a, const SpectralField& b) {
  return a.grid_ == b.grid_ && a.coeffs_ == b.coeffs_;
}

double max_abs_difference(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid(), b.grid(), "max_abs_difference");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace dispersmooth
