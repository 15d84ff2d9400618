#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dispersmooth/field.hpp"

namespace dispersmooth {

/// Radial Fourier symbol m(|xi|).
using RadialSymbol = std::function<Complex(double abs_xi)>;

/// What to do with the zero mode when a symbol is singular there.
enum class ZeroModePolicy {
  reject,  ///< throw ConfigError
  zero,    ///< set the zero-mode output to 0
};

/// <xi>^sigma, the symbol of A^sigma = (1 - Laplacian)^{sigma/2}.
RadialSymbol bessel_symbol(double sigma);
/// |xi|^sigma; infinite at the zero mode when sigma < 0.
RadialSymbol riesz_symbol(double sigma);
/// exp(-i t |xi|^2): the flow of i u_t + Laplacian u = 0.
RadialSymbol schrodinger_symbol(double t);
/// exp(-i sign t <xi>) with sign = +1 or -1.
RadialSymbol klein_gordon_symbol(int sign, double t);

/// Per-mode values of a symbol on a grid. Nyquist modes are set to 0.
/// Throws ConfigError for a non-finite value that the policy does not cover.
std::vector<Complex> tabulate_symbol(const Grid& grid, const RadialSymbol& symbol,
                                     ZeroModePolicy policy = ZeroModePolicy::reject);

/// Pointwise multiplication by a tabulated symbol.
SpectralField apply_table(const SpectralField& field, std::span<const Complex> table);

SpectralField fourier_multiplier(const SpectralField& field, const RadialSymbol& symbol,
                                 ZeroModePolicy policy = ZeroModePolicy::reject);

/// A^sigma field.
SpectralField bessel_potential(const SpectralField& field, double sigma);

/// ||<xi>^s u_hat||_{L^2} (or |xi|^s when homogeneous) under the Parseval
/// normalization, so s = 0 gives the L^2 norm of the physical field.
/// Homogeneous norms with s < 0 drop the zero mode under ZeroModePolicy::zero
/// and throw under ZeroModePolicy::reject.
double sobolev_norm(const SpectralField& field, double s, bool homogeneous = false,
                    ZeroModePolicy policy = ZeroModePolicy::reject);

inline double l2_norm(const SpectralField& field) { return sobolev_norm(field, 0.0); }

/// integral f conj(g) dx.
Complex l2_inner(const SpectralField& f, const SpectralField& g);

/// Physical-space complex conjugate: coeff'(k) = conj(coeff(-k)).
SpectralField conjugate(const SpectralField& field);
/// Physical-space real part.
SpectralField real_part(const SpectralField& field);
/// Zero every Nyquist mode.
SpectralField zero_nyquist(SpectralField field);

/// P_{<=N}: keep modes with |xi| <= cutoff.
SpectralField lowpass(const SpectralField& field, double cutoff);
/// Identity minus lowpass.
SpectralField highpass(const SpectralField& field, double cutoff);

/// Dyadic shell j: |xi| < 1 for j = 0, 2^{j-1} <= |xi| < 2^j for j >= 1.
struct DyadicShell {
  int index = 0;
  double lower = 0.0;
  double upper = 1.0;
  std::vector<std::size_t> modes;
};

struct DyadicShellSet {
  Grid grid;
  std::vector<DyadicShell> shells;
};

/// Shells covering every mode of the grid exactly once.
DyadicShellSet make_dyadic_shells(const Grid& grid);
/// Restriction of a field to one shell.
SpectralField shell_projection(const SpectralField& field, const DyadicShellSet& shells,
                               std::size_t shell);

/// Zero every mode outside the 2/3-rule band.
SpectralField dealias(SpectralField field);

/// Spectral coefficients of f * g computed pointwise with modes outside the
/// 2/3-rule band zeroed. Exact truncated convolution when both inputs lie in
/// the band.
SpectralField dealiased_product(const SpectralField& f, const SpectralField& g);

/// Dealiased |u|^2.
SpectralField dealiased_abs_squared(const SpectralField& u);

/// Transform each input to physical space, combine pointwise, transform back
/// and dealias. The combiner receives one sample per input.
SpectralField dealiased_pointwise(std::span<const SpectralField* const> inputs,
                                  const std::function<Complex(std::span<const Complex>)>& combine);

enum class FieldSymmetry { complex, real };

/// Fixed tail excess of random_sobolev_field.
inline constexpr double kRandomFieldTailExcess = 0.05;

/// Coefficients <xi>^{-s - d/2 - 0.05} g_xi with independent standard complex
/// Gaussians g_xi (Hermitian-symmetrized for real fields), Nyquist zeroed.
/// Deterministic in the seed.
SpectralField random_sobolev_field(const Grid& grid, double s, std::uint64_t seed,
                                   FieldSymmetry symmetry = FieldSymmetry::complex);

/// Shell-averaged power by integer radius round(|xi| L).
struct RadialBin {
  int radius = 0;
  double mean_power = 0.0;
  std::size_t count = 0;
};

std::vector<RadialBin> radial_spectrum(const SpectralField& field);

/// Least-squares slope of log sqrt(mean_power) against log radius over bins
/// whose physical radius lies in [lo, hi]. NaN when fewer than two usable bins.
double fit_log_slope(const std::vector<RadialBin>& spectrum, double box_length, double lo,
                     double hi);

}  // namespace dispersmooth
