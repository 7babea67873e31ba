#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sqz/kgrid.hpp"
#include "sqz/meanfield.hpp"

namespace sqz {

// Reference results used to check the numerical pipeline.

// Phi(q) = zeta L sinc(q L / 2) for a uniform zeta on [-L/2, L/2].
cplx phase_matching_tophat(double q, cplx zeta_bar, double L);

// Phi(q) = sum_l dz zeta2 s(z_l) e^{-i q z_l} on the z samples of `zgrid`, lab frame.
cplx phase_matching_quadrature(double q, const NonlinearCoupling& coupling, const KappaGrid& zgrid);

struct ComplexEnergies {
  cplx eps_plus;
  cplx eps_minus;
};

// eps+- = w_F(k) + w_F(k') +- w_SH(k'') +- i (2 gamma_F +- gamma_SH) / 2.
ComplexEnergies complex_energies(double omega_f_k, double omega_f_kp, double omega_sh,
                                 double gamma_f, double gamma_sh);

struct SpdcModes {
  ModeParams fundamental;
  ModeParams second_harmonic;
};

// First-order <b_F(k) b_F(k')> at t0 + T from vacuum, for a freely evolving
// second-harmonic pump given at t0. Continuum normalization (1/m); multiply by
// dk for the discrete moment. Phi uses the extended z grid, lab frame.
Eigen::MatrixXcd spdc_perturbative_moment(const MeanField& pump0, const SpdcModes& modes,
                                          const NonlinearCoupling& coupling, double T,
                                          const KappaGrid& grid,
                                          std::vector<std::string>* warnings = nullptr);

// The same moment for selected (j, j') entries, by direct time quadrature of
// the first-order equation instead of the closed-form time integral.
std::vector<cplx> spdc_moment_time_quadrature(const MeanField& pump0, const SpdcModes& modes,
                                              const NonlinearCoupling& coupling, double T,
                                              const KappaGrid& grid,
                                              const std::vector<std::pair<int, int>>& entries);

// Long-time lossless limit: pump amplitude at the energy-matched kappa'' times
// the phase-matching function, with the free-evolution phase e^{-i Omega T}.
// Normalized to unit Frobenius norm.
Eigen::MatrixXcd spdc_lowgain_product_jsa(const MeanField& pump0, const SpdcModes& modes,
                                          const NonlinearCoupling& coupling,
                                          const KappaGrid& grid, double T);

// |<A, B>| / (|A| |B|) in the Frobenius inner product.
double frobenius_correlation(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// min over a global phase of |A - e^{i p} B| / |B|.
double relative_l2_phase_aligned(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// Pump amplitude at an arbitrary kappa by trigonometric interpolation.
cplx interpolate_amplitude(const MeanField& field, const KappaGrid& grid, double kappa);

// A(z) -> e^{i gamma |A(z)|^2 L} A(z) with |A|^2 = hbar omega v |psi|^2, in
// the frame moving with the pulse; the result is stamped at t + L / v.
MeanField spm_exact(const MeanField& field0, double gamma_nl, double L, const KappaGrid& grid);

enum class PulseShape { lorentzian, sech, gaussian, rectangular };
PulseShape parse_pulse_shape(const std::string& name);
std::string to_string(PulseShape shape);

// Peak-normalized power profile Phi(t)/Phi(0) in units of the pulse width.
double pulse_power(PulseShape shape, double x);

// The constants 3/4, 4/5, sqrt(2/3), 1 of the squeezing formula.
double shape_constant(PulseShape shape);

// int f^3 / int f^2 of the power profile, by quadrature.
double shape_constant_quadrature(PulseShape shape);

// Minimum quadrature variance after single-pump SPM with peak nonlinear phase
// phi0, averaged over the pulse; 1 is shot noise.
double shirasaki_vminus(PulseShape shape, double phi0, double abs_tol = 1e-11);

}  // namespace sqz
