#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

namespace dispersmooth {

inline constexpr int kMaxDim = 4;
using LatticeIndex = std::array<int, kMaxDim>;

/// Periodic box of period 2*pi*L per axis with n modes per axis.
///
/// Coefficients are stored in FFT order: along each axis storage slot i
/// holds the integer wavenumber k = i for i < n/2 and k = i - n otherwise,
/// so k ranges over [-n/2, n/2). The physical wavenumber is xi = k / L.
/// The flat index is row-major with the last axis fastest. Any mode with a
/// component equal to -n/2 is a Nyquist mode.
///
/// Grids are cheap to copy; the per-mode tables are shared.
class Grid {
 public:
  /// Throws ConfigError unless dim is in 1..4 and n_per_dim is a power of
  /// two >= 8 and box_length > 0.
  static Grid make(int dim, int n_per_dim, double box_length = 1.0);

  int dim() const { return dim_; }
  int n_per_dim() const { return n_; }
  double box_length() const { return length_; }
  double period() const;
  /// (2*pi*L)^d.
  double volume() const;
  std::size_t size() const { return size_; }
  /// Physical spacing of the sample points along each axis.
  double spacing() const;

  LatticeIndex lattice_index(std::size_t flat) const;
  /// Integer wavenumbers are wrapped into [-n/2, n/2).
  std::size_t flat_index(const LatticeIndex& k) const;

  double xi_squared(std::size_t flat) const { return tables_->xi_sq[flat]; }
  double abs_xi(std::size_t flat) const;
  bool is_nyquist(std::size_t flat) const { return tables_->nyquist[flat] != 0; }
  /// Flat index of -k.
  std::size_t reflected(std::size_t flat) const { return tables_->reflect[flat]; }
  /// Largest per-axis |k| kept by the 2/3 rule: 3*K < n.
  int dealias_cutoff() const { return (n_ - 1) / 3; }
  bool is_dealiased_out(std::size_t flat) const { return tables_->aliased[flat] != 0; }
  /// Largest |xi| on the lattice.
  double max_abs_xi() const;

  /// Sorted physical wavenumbers of one axis: {-n/2, ..., n/2 - 1} / L.
  std::vector<double> axis_wavenumbers() const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.dim_ == b.dim_ && a.n_ == b.n_ && a.length_ == b.length_;
  }

 private:
  struct Tables {
    std::vector<double> xi_sq;
    std::vector<unsigned char> nyquist;
    std::vector<unsigned char> aliased;
    std::vector<std::size_t> reflect;
  };

  Grid(int dim, int n, double length);

  int dim_ = 1;
  int n_ = 8;
  double length_ = 1.0;
  std::size_t size_ = 8;
  std::shared_ptr<const Tables> tables_;
};

/// Throws ShapeError when the grids differ.
void require_same_grid(const Grid& a, const Grid& b, const char* what);

}  // namespace dispersmooth
