#pragma once

#include <span>
#include <vector>

#include "dispersmooth/field.hpp"

namespace dispersmooth {

/// Physical samples u(x_j), x_j = j * 2*pi*L / n per axis, row-major.
using Samples = std::vector<Complex>;

/// Samples -> coefficients, scaled by (2*pi*L)^d / n^d (see SpectralField).
/// Throws ShapeError when samples.size() != grid.size().
SpectralField forward_transform(const Grid& grid, std::span<const Complex> samples);

/// Coefficients -> samples; exact inverse of forward_transform.
Samples inverse_transform(const SpectralField& field);

/// Unscaled 1D DFT applied in place to each consecutive block of `length`
/// values: x_k <- sum_j x_j exp(sign * 2 pi i j k / length), sign = -1 or +1.
/// Throws ShapeError unless length divides data.size().
void batched_dft(std::span<Complex> data, std::size_t length, int sign);

/// Unscaled multidimensional DFT in place over a row-major array with the
/// given extents. Throws ShapeError when the extents do not match data.size().
void dft_nd(std::span<Complex> data, std::span<const int> dims, int sign);

/// Point coordinates of a flat sample index.
std::array<double, kMaxDim> sample_position(const Grid& grid, std::size_t flat);

}  // namespace dispersmooth
