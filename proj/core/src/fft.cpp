#include "dispersmooth/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "dispersmooth/error.hpp"

namespace dispersmooth {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan on
// caller-owned arrays is. Plans live for the life of the process.
class PlanCache {
 public:
  fftw_plan get(int dim, int n, int sign) { return get(std::vector<int>(dim, n), sign); }

  fftw_plan get(const std::vector<int>& dims, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(dims, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::size_t total = 1;
    for (int n : dims) total *= static_cast<std::size_t>(n);
    auto* buffer = fftw_alloc_complex(total);
    fftw_plan plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buffer, buffer,
                                   sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buffer);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::vector<int>, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

void execute(const Grid& grid, int sign, std::vector<Complex>& data) {
  fftw_plan plan = plan_cache().get(grid.dim(), grid.n_per_dim(), sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

}  // namespace

SpectralField forward_transform(const Grid& grid, std::span<const Complex> samples) {
  if (samples.size() != grid.size()) {
    throw ShapeError("forward_transform: sample count does not match the grid");
  }
  std::vector<Complex> data(samples.begin(), samples.end());
  execute(grid, FFTW_FORWARD, data);
  const double scale = grid.volume() / static_cast<double>(grid.size());
  for (auto& c : data) c *= scale;
  return SpectralField(grid, std::move(data));
}

Samples inverse_transform(const SpectralField& field) {
  const Grid& grid = field.grid();
  std::vector<Complex> data(field.coeffs().begin(), field.coeffs().end());
  execute(grid, FFTW_BACKWARD, data);
  const double scale = 1.0 / grid.volume();
  for (auto& c : data) c *= scale;
  return data;
}

void batched_dft(std::span<Complex> data, std::size_t length, int sign) {
  if (length == 0 || data.size() % length != 0) {
    throw ShapeError("batched_dft: block length does not divide the data size");
  }
  fftw_plan plan = plan_cache().get(1, static_cast<int>(length), sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
  for (std::size_t off = 0; off < data.size(); off += length) {
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data() + off);
    fftw_execute_dft(plan, ptr, ptr);
  }
}

void dft_nd(std::span<Complex> data, std::span<const int> dims, int sign) {
  std::size_t total = 1;
  for (int n : dims) {
    if (n < 1) throw ShapeError("dft_nd: extents must be positive");
    total *= static_cast<std::size_t>(n);
  }
  if (dims.empty() || total != data.size()) {
    throw ShapeError("dft_nd: extents do not match the data size");
  }
  fftw_plan plan = plan_cache().get(std::vector<int>(dims.begin(), dims.end()),
                                    sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

std::array<double, kMaxDim> sample_position(const Grid& grid, std::size_t flat) {
  std::array<double, kMaxDim> x{};
  const auto n = static_cast<std::size_t>(grid.n_per_dim());
  for (int a = grid.dim() - 1; a >= 0; --a) {
    x[a] = static_cast<double>(flat % n) * grid.spacing();
    flat /= n;
  }
  return x;
}

}  // namespace dispersmooth
