#include "dispersmooth/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dispersmooth/error.hpp"

namespace dispersmooth {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int wrap_wavenumber(int k, int n) {
  int m = ((k % n) + n) % n;
  return m < n / 2 ? m : m - n;
}

}  // namespace

Grid Grid::make(int dim, int n_per_dim, double box_length) {
  if (dim < 1 || dim > kMaxDim) {
    throw ConfigError("grid dimension must be in 1..4, got " + std::to_string(dim));
  }
  if (!is_power_of_two(n_per_dim) || n_per_dim < 8) {
    throw ConfigError("n_per_dim must be a power of two >= 8, got " +
                      std::to_string(n_per_dim));
  }
  if (!(box_length > 0.0) || !std::isfinite(box_length)) {
    throw ConfigError("box_length must be positive and finite");
  }
  return Grid(dim, n_per_dim, box_length);
}

Grid::Grid(int dim, int n, double length) : dim_(dim), n_(n), length_(length) {
  size_ = 1;
  for (int a = 0; a < dim_; ++a) size_ *= static_cast<std::size_t>(n_);

  auto tables = std::make_shared<Tables>();
  tables->xi_sq.resize(size_);
  tables->nyquist.resize(size_);
  tables->aliased.resize(size_);
  tables->reflect.resize(size_);
  const int cutoff = dealias_cutoff();
  for (std::size_t flat = 0; flat < size_; ++flat) {
    const LatticeIndex k = lattice_index(flat);
    double ksq = 0.0;
    bool nyq = false;
    bool alias = false;
    LatticeIndex minus{};
    for (int a = 0; a < dim_; ++a) {
      ksq += static_cast<double>(k[a]) * k[a];
      nyq = nyq || k[a] == -n_ / 2;
      alias = alias || std::abs(k[a]) > cutoff;
      minus[a] = -k[a];
    }
    tables->xi_sq[flat] = ksq / (length_ * length_);
    tables->nyquist[flat] = nyq ? 1 : 0;
    tables->aliased[flat] = alias ? 1 : 0;
    tables->reflect[flat] = flat_index(minus);
  }
  tables_ = std::move(tables);
}

double Grid::period() const { return 2.0 * std::numbers::pi * length_; }

double Grid::volume() const { return std::pow(period(), dim_); }

double Grid::spacing() const { return period() / n_; }

double Grid::abs_xi(std::size_t flat) const { return std::sqrt(tables_->xi_sq[flat]); }

double Grid::max_abs_xi() const {
  return std::sqrt(static_cast<double>(dim_)) * (n_ / 2) / length_;
}

LatticeIndex Grid::lattice_index(std::size_t flat) const {
  LatticeIndex k{};
  for (int a = dim_ - 1; a >= 0; --a) {
    const int slot = static_cast<int>(flat % static_cast<std::size_t>(n_));
    flat /= static_cast<std::size_t>(n_);
    k[a] = slot < n_ / 2 ? slot : slot - n_;
  }
  return k;
}

std::size_t Grid::flat_index(const LatticeIndex& k) const {
  std::size_t flat = 0;
  for (int a = 0; a < dim_; ++a) {
    const int w = wrap_wavenumber(k[a], n_);
    const int slot = w >= 0 ? w : w + n_;
    flat = flat * static_cast<std::size_t>(n_) + static_cast<std::size_t>(slot);
  }
  return flat;
}

std::vector<double> Grid::axis_wavenumbers() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_));
  for (int k = -n_ / 2; k < n_ / 2; ++k) out.push_back(k / length_);
  return out;
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw ShapeError(std::string(what) + ": grid mismatch");
}

}  // namespace dispersmooth
