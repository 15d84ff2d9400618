#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dispersmooth/error.hpp"
#include "dispersmooth/resonance.hpp"
#include "dispersmooth/smoothing.hpp"

using namespace dispersmooth;

namespace {

double sq(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

}  // namespace

TEST(ResonanceA, WorkedValues) {
  EXPECT_NEAR(resonance_A({4.0, 0.0}, {-4.0, 0.0}, ResonanceBranch::minus), -5.0 / 8.0, 1e-15);
  EXPECT_NEAR(resonance_A({4.0, 0.0}, {-4.0, 0.0}, ResonanceBranch::plus), -3.0 / 8.0, 1e-15);
  EXPECT_NEAR(resonance_A({3.0, 0.0}, {0.0, 1.0}, ResonanceBranch::minus), 0.0, 1e-15);
  EXPECT_NEAR(angle_between({1.0, 0.0}, {0.0, 2.0}), std::numbers::pi / 2.0, 1e-15);
  EXPECT_THROW(resonance_A({0.0, 0.0}, {1.0, 0.0}, ResonanceBranch::minus), ConfigError);
  EXPECT_THROW(resonance_A({1.0}, {1.0, 0.0}, ResonanceBranch::minus), ShapeError);
}

TEST(ResonanceA, ModulationIdentityOnRandomTriples) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(-50.0, 50.0);
  std::uniform_int_distribution<int> dim(1, 4);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    std::vector<double> xi1(static_cast<std::size_t>(dim(rng)));
    std::vector<double> xi2(xi1.size());
    for (double& x : xi1) x = coord(rng);
    for (double& x : xi2) x = coord(rng);
    const auto branch = k % 2 == 0 ? ResonanceBranch::minus : ResonanceBranch::plus;
    const FrequencyTriple t = make_triple(xi1, xi2, branch);
    for (std::size_t i = 0; i < xi1.size(); ++i) EXPECT_EQ(t.xi0[i], -(xi1[i] + xi2[i]));
    const double lhs = 2.0 * std::sqrt(sq(xi1) * sq(xi2)) * std::abs(resonance_A(xi1, xi2, branch));
    const double rhs = modulation_lower_bound(t);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, rhs));
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(ResonanceA, ModulationDirectArithmetic) {
  // xi1 = (N, 0), xi2 = (0, 1): |xi0|^2 - |xi1|^2 = 1, so minus gives 0, plus gives 2.
  for (double N : {2.0, 8.0, 64.0}) {
    EXPECT_NEAR(modulation_lower_bound(make_triple({N, 0.0}, {0.0, 1.0}, ResonanceBranch::minus)),
                0.0, 1e-12);
    EXPECT_NEAR(modulation_lower_bound(make_triple({N, 0.0}, {0.0, 1.0}, ResonanceBranch::plus)),
                2.0, 1e-12);
  }
  // Scaling by lambda: quadratic part scales by lambda^2, the linear part by lambda.
  const std::vector<double> a{3.0, 1.0};
  const std::vector<double> b{-1.0, 2.0};
  const double quad = sq({-2.0, -3.0}) - sq(a);
  for (double lambda : {1.0, 2.0, 10.0}) {
    const std::vector<double> la{lambda * a[0], lambda * a[1]};
    const std::vector<double> lb{lambda * b[0], lambda * b[1]};
    EXPECT_NEAR(modulation_lower_bound(make_triple(la, lb, ResonanceBranch::minus)),
                std::abs(lambda * lambda * quad - lambda * std::sqrt(sq(b))), 1e-10);
  }
}

TEST(ResonantShell, PredicateThicknessAndLimit) {
  const std::vector<double> xi1{16.0, 0.0};
  const double nu = 0.05;
  const ShellSample s = resonant_shell_sample(xi1, nu, ResonanceBranch::minus, 20000, 3);
  ASSERT_EQ(s.points.size(), 20000u);
  EXPECT_TRUE(s.notice.empty());
  for (const ShellPoint& p : s.points) {
    EXPECT_GE(std::abs(p.A), nu);
    EXPECT_LE(std::abs(p.A), 2.0 * nu);
    EXPECT_EQ(p.A, resonance_A(xi1, p.xi2, ResonanceBranch::minus));
  }
  const double thickness = shell_thickness(s, xi1, 256);
  EXPECT_GT(thickness, 0.5 * 2.0 * nu * 16.0);
  EXPECT_LT(thickness, 2.0 * 2.0 * nu * 16.0);

  // Smaller nu: points sit closer to |xi2|^2 + 2|xi1||xi2|cos - |xi2| = 0.
  double prev = INFINITY;
  for (double n : {0.1, 0.01, 0.001}) {
    const ShellSample t = resonant_shell_sample(xi1, n, ResonanceBranch::minus, 200, 5);
    double worst = 0.0;
    for (const ShellPoint& p : t.points) {
      const double rho = std::sqrt(sq(p.xi2));
      const double surface = rho * rho + 2.0 * p.xi2[0] * 16.0 - rho;
      worst = std::max(worst, std::abs(surface) / (2.0 * 16.0 * rho));
    }
    EXPECT_LE(worst, 2.0 * n + 1e-12);
    EXPECT_LT(worst, prev);
    prev = worst;
  }
}

TEST(ResonantShell, EmptyRegionGivesNotice) {
  const ShellSample s = resonant_shell_sample({0.01, 0.0}, 1e-9, ResonanceBranch::plus, 5, 1);
  EXPECT_LT(s.points.size(), 5u);
  EXPECT_FALSE(s.notice.empty());
  EXPECT_THROW(resonant_shell_sample({1.0, 0.0}, 0.0, ResonanceBranch::minus, 5), ConfigError);
}

TEST(LatticeConvolution, MatchesDirectSum) {
  SpaceTimeLattice u;
  u.points = {3, 4};
  u.spacing = {0.5, 0.25};
  u.centre = {1.0, -2.0};
  SpaceTimeLattice v = u;
  v.centre = {0.0, 0.5};
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  for (SpaceTimeLattice* f : {&u, &v}) {
    f->values.resize(f->size());
    for (Complex& c : f->values) {
      const double re = normal(rng);
      c = Complex(re, normal(rng));
    }
  }
  const SpaceTimeLattice w = lattice_convolution(u, v, 1 << 20);
  ASSERT_EQ(w.points, (std::vector<int>{5, 7}));
  const double scale = u.cell() / std::pow(2.0 * std::numbers::pi, 2);
  for (std::size_t k = 0; k < w.size(); ++k) {
    const std::vector<double> z = w.coordinate(k);
    Complex direct = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      for (std::size_t j = 0; j < v.size(); ++j) {
        const auto p = u.coordinate(i);
        const auto q = v.coordinate(j);
        if (std::abs(p[0] + q[0] - z[0]) < 1e-9 && std::abs(p[1] + q[1] - z[1]) < 1e-9) {
          direct += u.values[i] * v.values[j];
        }
      }
    }
    EXPECT_LT(std::abs(w.values[k] - scale * direct), 1e-13);
  }
  EXPECT_THROW(lattice_convolution(u, v, 10), ResourceError);
}

TEST(Bilinear, BoxFamilyAgreesWithTriangleCounts) {
  CounterexampleOptions o;
  o.resolution = 3;
  for (double N : {8.0, 16.0}) {
    o.wave_sign = -1;
    const double direct = sharpness_counterexample(N, 0.0, 0.0, 0.8, 0.55, 2, o).ratio;
    const double fft = box_family_ratio(N, 0.0, 0.0, 0.8, 0.55, 2, 3, -1, 1 << 22);
    EXPECT_NEAR(fft, direct, 1e-10 * direct);
  }
}

TEST(Bilinear, InadmissibleBoxRatioGrowsWithPredictedSlope) {
  std::vector<double> ns;
  std::vector<double> ratios;
  for (double N : {8.0, 16.0, 32.0, 64.0}) {
    ns.push_back(N);
    ratios.push_back(box_family_ratio(N, 0.0, 0.0, 0.8, 0.55, 2, 3, +1, 1 << 22));
  }
  EXPECT_NEAR(log_log_slope(ns, ratios), 0.8 - 0.5, 0.1);
}

TEST(Bilinear, AdmissibleMaxStableUnderRefinement) {
  BilinearOptions coarse;
  coarse.xi_points = 32;
  coarse.time_modes = 32;
  BilinearOptions fine = coarse;
  fine.xi_points = 64;
  fine.time_modes = 64;
  const BilinearStats a = bilinear_constant_estimate(0.0, 0.0, 0.4, 0.55, coarse, 3, 11, false);
  const BilinearStats b = bilinear_constant_estimate(0.0, 0.0, 0.4, 0.55, fine, 3, 11, false);
  EXPECT_TRUE(a.admissible);
  EXPECT_EQ(a.members.size(), 3u);
  EXPECT_LT(std::abs(b.max_ratio - a.max_ratio), 0.2 * a.max_ratio);
  EXPECT_LE(a.mean_ratio, a.max_ratio);
}

TEST(Bilinear, AdversarialMembersAndSkips) {
  BilinearOptions o;
  o.xi_points = 16;
  o.time_modes = 16;
  o.box_N = 8.0;
  o.box_resolution = 2;
  const BilinearStats st = bilinear_constant_estimate(0.0, 0.0, 0.8, 0.55, o, 2, 3, true);
  EXPECT_FALSE(st.admissible);
  int resonant = 0;
  int box = 0;
  for (const BilinearMember& m : st.members) {
    resonant += m.kind == "resonant";
    box += m.kind == "box";
    EXPECT_TRUE(std::isfinite(m.ratio));
  }
  EXPECT_EQ(resonant, 2);
  EXPECT_EQ(box, 1);

  SpaceTimeLattice u = random_bump_field(o, ModulationSurface::schrodinger, 1);
  SpaceTimeLattice zero = u;
  std::fill(zero.values.begin(), zero.values.end(), Complex(0.0));
  EXPECT_TRUE(std::isnan(bilinear_ratio(u, zero, 0.0, 0.0, 0.4, 0.55, 1, 1 << 20)));

  BilinearOptions huge = o;
  huge.xi_points = 512;
  huge.time_modes = 512;
  EXPECT_THROW(bilinear_constant_estimate(0.0, 0.0, 0.4, 0.55, huge, 1, 1, false), ResourceError);
}

TEST(CalcLemma, BoundedUnderHypotheses) {
  const std::vector<double> a{0.0};
  const std::vector<double> b{0.0, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0};
  const LemmaCheck c = calc_lemma_check(1.5, 1.0, a, b);
  EXPECT_LE(c.max_ratio / c.min_ratio, 3.0);
  EXPECT_FALSE(c.growth_detected);
}

TEST(CalcLemma, BetaZeroIsTranslationInvariant) {
  const LemmaCheck c = calc_lemma_check(1.5, 0.0, {0.0, 3.0}, {-40.0, 0.0, 7.0, 90.0});
  // integral of (1 + y^2)^{-3/4} over R is sqrt(pi) Gamma(1/4) / Gamma(3/4).
  const double exact = std::sqrt(std::numbers::pi) * std::tgamma(0.25) / std::tgamma(0.75);
  for (const LemmaPoint& p : c.points) EXPECT_NEAR(p.integral, exact, 1e-6);
  EXPECT_NEAR(c.max_ratio, c.min_ratio, 1e-6);
}

TEST(CalcLemma, DiagonalBelowPureTerm) {
  for (double beta : {0.25, 0.5, 1.0, 1.5}) {
    const double diag = lemma_integral(1.5, beta, 3.0, 3.0);
    EXPECT_LE(diag, lemma_integral(1.5, 0.0, 3.0, 3.0));
  }
}

TEST(CalcLemma, HypothesisRejectionAndNegativeControl) {
  EXPECT_THROW(calc_lemma_check(0.9, 0.5, {0.0}, {1.0}), HypothesisError);
  EXPECT_THROW(calc_lemma_check(1.5, 2.0, {0.0}, {1.0}), HypothesisError);
  EXPECT_THROW(calc_lemma_check(1.5, -0.1, {0.0}, {1.0}), HypothesisError);
  const std::vector<double> b{0.0, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0};
  const LemmaCheck weak = calc_lemma_check_unchecked(0.9, 0.9, {0.0}, b);
  EXPECT_TRUE(weak.growth_detected);
  const LemmaCheck divergent = calc_lemma_check_unchecked(0.9, 0.0, {0.0}, b);
  EXPECT_TRUE(divergent.growth_detected);
  EXPECT_TRUE(std::isinf(divergent.max_ratio));
}
