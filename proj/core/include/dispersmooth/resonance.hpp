#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dispersmooth/field.hpp"

namespace dispersmooth {

/// Sign taken in "-+": minus gives (|xi2| - 1), plus gives (|xi2| + 1).
enum class ResonanceBranch { minus, plus };

/// +1 for minus, -1 for plus: the coefficient of -|xi2| in the modulation.
double branch_sign(ResonanceBranch branch);

/// Zero-sum frequency triple xi0 + xi1 + xi2 = 0.
struct FrequencyTriple {
  std::vector<double> xi0;
  std::vector<double> xi1;
  std::vector<double> xi2;
  ResonanceBranch branch = ResonanceBranch::minus;
};

/// Builds the triple with xi0 = -xi1 - xi2. Throws ShapeError on mismatched sizes.
FrequencyTriple make_triple(const std::vector<double>& xi1, const std::vector<double>& xi2,
                            ResonanceBranch branch);

/// Angle between two nonzero vectors, in [0, pi].
double angle_between(const std::vector<double>& a, const std::vector<double>& b);

/// cos(angle) + (|xi2| -+ 1) / (2 |xi1|). Throws ConfigError for a zero vector.
double resonance_A(const std::vector<double>& xi1, const std::vector<double>& xi2,
                   ResonanceBranch branch);

/// | |xi0|^2 - |xi1|^2 -+ |xi2| |
double modulation_lower_bound(const FrequencyTriple& triple);

struct ShellPoint {
  std::vector<double> xi2;
  double A = 0.0;
};

struct ShellSample {
  std::vector<ShellPoint> points;
  /// Non-empty when fewer points than requested were found.
  std::string notice;
  std::size_t attempts = 0;
};

/// Rejection samples xi2 uniformly in a box around the resonant surface and
/// keeps points with nu <= |A| <= 2 nu. Deterministic in the seed.
/// Throws ConfigError for nu <= 0, count < 0 or a zero xi1.
ShellSample resonant_shell_sample(const std::vector<double>& xi1, double nu,
                                  ResonanceBranch branch, int count, std::uint64_t seed = 0);

/// Median over angular bins (angle of xi2 from xi1) of the radial extent of
/// the sheet A > 0. Compare with 2 nu |xi1|.
double shell_thickness(const ShellSample& sample, const std::vector<double>& xi1, int bins = 16);

/// Values on a rectangular lattice in (xi_1, ..., xi_d, tau) with cell centres
/// centre[a] + spacing[a] (j - (points[a] - 1) / 2), row-major, tau last.
struct SpaceTimeLattice {
  std::vector<int> points;
  std::vector<double> spacing;
  std::vector<double> centre;
  std::vector<Complex> values;

  int dim() const { return static_cast<int>(points.size()) - 1; }
  std::size_t size() const;
  double cell() const;
  /// Coordinates of a flat index.
  std::vector<double> coordinate(std::size_t flat) const;
};

/// Space-time weight family used for X^{s,b}-type norms.
enum class ModulationSurface {
  schrodinger,  ///< <tau + |xi|^2>
  wave_plus,    ///< <tau + |xi|>
  wave_minus,   ///< <tau - |xi|>
};

/// (sum <xi>^{2s} <modulation>^{2b} |f|^2 cell)^{1/2}
double lattice_xsb_norm(const SpaceTimeLattice& f, double s, double b, ModulationSurface surface);

/// (2 pi)^{-(d+1)} sum_{p + q = z} u(p) v(q) cell on the summed lattice
/// (points 2n - 1, centre cu + cv). Lattices must share points and spacing.
/// Throws ResourceError when the padded transform exceeds max_points.
SpaceTimeLattice lattice_convolution(const SpaceTimeLattice& u, const SpaceTimeLattice& v,
                                     std::size_t max_points);

/// ||uv||_{X^{s+alpha,b-1}} / (||u||_{X^{s,b}} ||v||_{X^{r,b}_+-}); NaN when u or v is zero.
/// wave_sign +1 measures v against <tau + |xi|>.
double bilinear_ratio(const SpaceTimeLattice& u, const SpaceTimeLattice& v, double s, double r,
                      double alpha, double b, int wave_sign, std::size_t max_points);

struct BilinearOptions {
  int d = 2;
  int xi_points = 32;
  int time_modes = 32;
  /// Spatial lattice covers |xi_a| <= xi_extent.
  double xi_extent = 3.0;
  /// tau covers the modulation surfaces over the spatial box plus this margin.
  double tau_margin = 4.0;
  int wave_sign = +1;
  /// Random members are sums of this many Gaussian bumps.
  int bumps = 4;
  /// Bump width in xi as a fraction of xi_extent; width in modulation is 1.
  double bump_width = 0.125;
  /// Cap on the padded convolution size.
  std::size_t max_points = std::size_t{1} << 24;
  /// Box-family frequency and lattice resolution used by adversarial runs.
  double box_N = 16.0;
  int box_resolution = 4;
};

struct BilinearMember {
  std::string kind;
  std::uint64_t seed = 0;
  double ratio = 0.0;
};

struct BilinearStats {
  std::vector<BilinearMember> members;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  int skipped = 0;
  /// alpha < min{1/2, r - s + 1, r + 2 - d/2}
  bool admissible = false;
};

/// Ratio statistics over an ensemble of random space-time fields (members
/// seed .. seed + ensemble - 1). Adversarial runs add the box pair at box_N and
/// one near-resonant bump pair per member.
BilinearStats bilinear_constant_estimate(double s, double r, double alpha, double b,
                                         const BilinearOptions& options, int ensemble,
                                         std::uint64_t seed, bool adversarial);

/// Random Gaussian-bump field concentrated near a modulation surface on the
/// lattice of the options.
SpaceTimeLattice random_bump_field(const BilinearOptions& options, ModulationSurface surface,
                                   std::uint64_t seed);

/// Box pair B1, B2 at frequency N as lattice indicators with cells 1/(res N) along
/// xi_1 and 1/res elsewhere; returns the bilinear ratio computed by lattice_convolution.
double box_family_ratio(double N, double s, double r, double alpha, double b, int d,
                        int resolution, int wave_sign, std::size_t max_points);

struct LemmaPoint {
  double a = 0.0;
  double b = 0.0;
  double integral = 0.0;
  /// integral * <a - b>^beta
  double ratio = 0.0;
};

struct LemmaCheck {
  std::vector<LemmaPoint> points;
  double max_ratio = 0.0;
  double min_ratio = 0.0;
  /// Least-squares slope of log ratio against log <a - b> over |a - b| >= 10.
  double growth_slope = 0.0;
  /// Slope above kLemmaGrowthSlope or a non-finite ratio.
  bool growth_detected = false;
};

inline constexpr double kLemmaTruncation = 1e4;
inline constexpr double kLemmaGrowthSlope = 0.03;

/// integral over R of <y - a>^{-alpha} <y - b>^{-beta}: adaptive quadrature on
/// |y| <= 1e4 plus the power tail; infinite when alpha + beta <= 1.
double lemma_integral(double alpha, double beta, double a, double b);

/// Checks integral * <a - b>^beta over all (a, b) pairs.
/// Throws HypothesisError unless alpha > 1 and alpha >= beta >= 0.
LemmaCheck calc_lemma_check(double alpha, double beta, const std::vector<double>& a_grid,
                            const std::vector<double>& b_grid);

/// Same computation without the hypothesis check (for negative controls).
LemmaCheck calc_lemma_check_unchecked(double alpha, double beta,
                                      const std::vector<double>& a_grid,
                                      const std::vector<double>& b_grid);

}  // namespace dispersmooth
