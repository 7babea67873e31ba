#include <gtest/gtest.h>

#include <numbers>

#include "sqz/errors.hpp"
#include "sqz/oracles.hpp"
#include "sqz/quadrature.hpp"
#include "support.hpp"

using namespace sqz;

namespace {

constexpr double kPi = std::numbers::pi;

NonlinearCoupling finite_region(double L, cplx zeta = 1.0) {
  NonlinearCoupling c;
  c.zeta2 = zeta;
  c.region = {NonlinearRegion::Kind::finite, L, 0.0, 0.0};
  return c;
}

struct SpdcCase {
  KappaGrid grid = make_grid(32, 100.0);
  SpdcModes modes{{2e8, 1e5, 0, 0, 0}, {1.8e8, 1e4, 0, 0, 0}};
  NonlinearCoupling coupling = finite_region(6e-3, 1e3);
  MeanField pump;

  SpdcCase() {
    PumpSpec s;
    s.bandwidth = 300.0;
    s.mean_photon_number = 1e6;
    pump = make_pump(s, grid, modes.second_harmonic, 0.0);
  }
};

}  // namespace

TEST(PhaseMatching, TophatExamples) {
  const double L = 0.01;
  EXPECT_NEAR(std::abs(phase_matching_tophat(0.0, 2.0, L) - 2.0 * L), 0.0, 1e-18);
  EXPECT_NEAR(std::abs(phase_matching_tophat(2 * kPi / L, 2.0, L)), 0.0, 1e-17);
  EXPECT_NEAR(phase_matching_tophat(kPi / L, 1.0, L).real(), 2 * L / kPi, 1e-16);
  EXPECT_THROW(phase_matching_tophat(0.0, 1.0, 0.0), PreconditionError);
}

TEST(PhaseMatching, QuadratureMatchesTophat) {
  const double L = 0.01;
  const KappaGrid zg = make_grid(1024, 2 * kPi / 0.05);
  const NonlinearCoupling c = finite_region(L, cplx(0.5, 0.2));
  for (double q : {0.0, kPi / L, 2 * kPi / L, 3.3 / L}) {
    const cplx a = phase_matching_quadrature(q, c, zg);
    const cplx b = phase_matching_tophat(q, c.zeta2, L);
    EXPECT_LE(std::abs(a - b), 1e-3 * std::abs(c.zeta2) * L) << q;
  }
}

TEST(ComplexEnergies, ImaginaryParts) {
  const ComplexEnergies e = complex_energies(1.0, 2.0, 2.5, 0.3, 0.1);
  EXPECT_DOUBLE_EQ(e.eps_plus.real(), 5.5);
  EXPECT_DOUBLE_EQ(e.eps_minus.real(), 0.5);
  EXPECT_DOUBLE_EQ(e.eps_plus.imag(), 0.35);
  EXPECT_DOUBLE_EQ(e.eps_minus.imag(), -0.25);
  EXPECT_DOUBLE_EQ(complex_energies(0, 0, 0, 0.2, 0.4).eps_minus.imag(), 0.0);
}

TEST(SpdcOracle, ZeroPumpGivesZero) {
  SpdcCase c;
  c.pump.amplitudes.setZero();
  EXPECT_EQ(spdc_perturbative_moment(c.pump, c.modes, c.coupling, 1e-11, c.grid).norm(), 0.0);
}

TEST(SpdcOracle, SymmetricAndLinearInPump) {
  SpdcCase c;
  const Eigen::MatrixXcd a = spdc_perturbative_moment(c.pump, c.modes, c.coupling, 3e-11, c.grid);
  EXPECT_LE((a - a.transpose()).cwiseAbs().maxCoeff(), 0.0);
  MeanField twice = c.pump;
  twice.amplitudes *= 2;
  const Eigen::MatrixXcd b = spdc_perturbative_moment(twice, c.modes, c.coupling, 3e-11, c.grid);
  EXPECT_LE((b - 2 * a).norm(), 1e-13 * b.norm());
}

TEST(SpdcOracle, ClosedFormMatchesTimeQuadrature) {
  for (auto [gf, gsh] : {std::pair{0.0, 0.0}, std::pair{1e9, 2e9}, std::pair{3e9, 1e9}}) {
    SpdcCase c;
    c.modes.fundamental.gamma_loss = gf;
    c.modes.second_harmonic.gamma_loss = gsh;
    const double T = 4e-11;
    const Eigen::MatrixXcd closed = spdc_perturbative_moment(c.pump, c.modes, c.coupling, T, c.grid);
    const std::vector<std::pair<int, int>> entries{{16, 16}, {13, 20}, {3, 27}, {0, 31}, {7, 7}};
    const std::vector<cplx> quad =
        spdc_moment_time_quadrature(c.pump, c.modes, c.coupling, T, c.grid, entries);
    const double scale = closed.cwiseAbs().maxCoeff();
    for (std::size_t k = 0; k < entries.size(); ++k)
      EXPECT_LE(std::abs(quad[k] - closed(entries[k].first, entries[k].second)), 1e-8 * scale)
          << gf << " " << gsh << " entry " << k;
  }
}

TEST(SpdcOracle, ProductFormOnceThePulseHasCrossed) {
  // The pulse starts well before the crystal and ends well past it.
  SpdcCase c;
  c.grid = make_grid(64, 200.0);
  const double T = 8.4e-11;
  PumpSpec s;
  s.bandwidth = 1000.0;
  s.mean_photon_number = 1e6;
  s.center_z = -0.5 * T * c.modes.second_harmonic.v;
  c.pump = make_pump(s, c.grid, c.modes.second_harmonic, 0.0);
  const Eigen::MatrixXcd m = spdc_perturbative_moment(c.pump, c.modes, c.coupling, T, c.grid);
  const Eigen::MatrixXcd p = spdc_lowgain_product_jsa(c.pump, c.modes, c.coupling, c.grid, T);
  EXPECT_GE(frobenius_correlation(m, p), 0.99);
  // Stopping while the pulse is inside the crystal spoils the product form.
  const Eigen::MatrixXcd half = spdc_perturbative_moment(c.pump, c.modes, c.coupling, 0.5 * T, c.grid);
  const Eigen::MatrixXcd ph = spdc_lowgain_product_jsa(c.pump, c.modes, c.coupling, c.grid, 0.5 * T);
  EXPECT_LT(frobenius_correlation(half, ph), 0.95);
}

TEST(Comparison, CorrelationAndPhaseAlignedDistance) {
  std::mt19937_64 rng(1);
  const Eigen::MatrixXcd a = testutil::random_matrix(5, 5, rng);
  const cplx phase = std::polar(1.0, 0.7);
  EXPECT_NEAR(frobenius_correlation(a, 3.0 * phase * a), 1.0, 1e-14);
  EXPECT_NEAR(relative_l2_phase_aligned(phase * a, a), 0.0, 1e-14);
  EXPECT_NEAR(relative_l2_phase_aligned(2.0 * a, a), 1.0, 1e-14);
  EXPECT_THROW(frobenius_correlation(a, Eigen::MatrixXcd::Zero(4, 4)), DimensionError);
}

TEST(Interpolation, ReproducesGridValues) {
  const KappaGrid g = make_grid(32, 10.0);
  PumpSpec s;
  s.bandwidth = 30.0;
  s.mean_photon_number = 2.0;
  s.center_z = 0.05;
  const MeanField f = make_pump(s, g, {}, 0.0);
  for (int j : {3, 16, 20}) {
    const cplx expected = f.amplitudes(j) / std::sqrt(g.delta_kappa);
    EXPECT_NEAR(std::abs(interpolate_amplitude(f, g, g.kappa(j)) - expected), 0.0, 1e-12 * f.amplitudes.cwiseAbs().maxCoeff());
  }
}

TEST(SpmExact, ZeroGammaIsIdentity) {
  const KappaGrid g = make_grid(64, 100.0);
  const ModeParams m{7e7, 0, 0, 0, 1.2e15};
  PumpSpec s;
  s.bandwidth = 400.0;
  s.mean_photon_number = 1e8;
  const MeanField f = make_pump(s, g, m, 0.0);
  const MeanField out = spm_exact(f, 0.0, 0.1, g);
  EXPECT_LE((out.amplitudes - f.amplitudes).norm(), 1e-13 * f.amplitudes.norm());
  EXPECT_NEAR(out.time, 0.1 / 7e7, 1e-25);
}

TEST(SpmExact, ConservesPhotonsAndReverses) {
  const KappaGrid g = make_grid(64, 100.0);
  const ModeParams m{7e7, 0, 0, 0, 1.2e15};
  PumpSpec s;
  s.bandwidth = 400.0;
  s.mean_photon_number = 1e12;
  const MeanField f = make_pump(s, g, m, 0.0);
  const MeanField a = spm_exact(f, 10.0, 0.1, g);
  EXPECT_NEAR(a.photon_number() / f.photon_number(), 1.0, 1e-12);
  EXPECT_GT((a.amplitudes - f.amplitudes).norm(), 0.1 * f.amplitudes.norm());
  const MeanField back = spm_exact(a, -10.0, 0.1, g);
  EXPECT_LE((back.amplitudes - f.amplitudes).norm(), 1e-10 * f.amplitudes.norm());
}

TEST(Squeezing, ShapeConstantsMatchQuadrature) {
  for (PulseShape p : {PulseShape::lorentzian, PulseShape::sech, PulseShape::gaussian, PulseShape::rectangular})
    EXPECT_NEAR(shape_constant_quadrature(p), shape_constant(p), 1e-10) << to_string(p);
}

TEST(Squeezing, NoPhaseNoSqueezing) {
  for (PulseShape p : {PulseShape::lorentzian, PulseShape::gaussian}) EXPECT_EQ(shirasaki_vminus(p, 0.0), 1.0);
}

TEST(Squeezing, RectangularClosedForm) {
  for (double phi : {0.3, 1.0, 2.0, 4.0}) {
    const double expected = 1 + 2 * phi * phi - 2 * phi * std::sqrt(1 + phi * phi);
    EXPECT_NEAR(shirasaki_vminus(PulseShape::rectangular, phi), expected, 1e-10) << phi;
  }
}

TEST(Squeezing, MonotoneInPhase) {
  for (PulseShape p : {PulseShape::lorentzian, PulseShape::sech, PulseShape::gaussian, PulseShape::rectangular}) {
    double last = 1.0;
    for (int k = 1; k <= 50; ++k) {
      const double v = shirasaki_vminus(p, 0.1 * k);
      EXPECT_LT(v, last) << to_string(p) << " " << 0.1 * k;
      EXPECT_GT(v, 0.0);
      last = v;
    }
  }
}

TEST(Squeezing, StableUnderTighterTolerance) {
  for (PulseShape p : {PulseShape::lorentzian, PulseShape::sech, PulseShape::gaussian}) {
    const double a = shirasaki_vminus(p, 1.5, 1e-10), b = shirasaki_vminus(p, 1.5, 5e-11);
    EXPECT_NEAR(a, b, 1e-10) << to_string(p);
  }
}

TEST(Squeezing, RejectsNegativePhase) {
  EXPECT_THROW(shirasaki_vminus(PulseShape::gaussian, -1.0), PreconditionError);
}

TEST(Quadrature, KnownIntegrals) {
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_NEAR(integrate([](double x) { return std::exp(-x * x); }, -inf, inf), std::sqrt(kPi), 1e-12);
  EXPECT_NEAR(integrate([](double x) { return 1 / (1 + x * x); }, -inf, inf), kPi, 1e-11);
  EXPECT_NEAR(integrate([](double x) { return std::sin(x); }, 0, kPi), 2.0, 1e-13);
  std::vector<double> x, w;
  gauss_legendre(0.0, 2.0, 3, x, w);
  double acc = 0;
  for (std::size_t k = 0; k < x.size(); ++k) acc += w[k] * std::pow(x[k], 7);
  EXPECT_NEAR(acc, 32.0, 1e-12);
}
