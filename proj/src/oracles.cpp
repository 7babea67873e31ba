#include "sqz/oracles.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>

#include "sqz/errors.hpp"
#include "sqz/quadrature.hpp"

namespace sqz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

// 2 sin(x T / 2) / x, continuous through x = 0.
cplx sinc_window(cplx x, double T) {
  const cplx h = 0.5 * x * T;
  if (std::abs(h) < 1e-6) return T * (1.0 - h * h / 6.0);
  return 2.0 * std::sin(h) / x;
}

// Phi on kappa_j + kappa_j' - kappa_j'' = (m - n/2) dk for m in [-(n-1), 2(n-1)].
std::vector<cplx> phase_matching_table(const NonlinearCoupling& coupling, const KappaGrid& grid) {
  const int n = grid.n_points;
  const KappaGrid ext = grid.extended();
  std::vector<cplx> table(3 * n - 2);
  for (int m = -(n - 1); m <= 2 * (n - 1); ++m)
    table[m + n - 1] = phase_matching_quadrature((m - n / 2) * grid.delta_kappa, coupling, ext);
  return table;
}

void check_pump(const MeanField& pump, const KappaGrid& grid) {
  if (pump.amplitudes.size() != grid.n_points)
    throw DimensionError("pump does not match the grid");
}

}  // namespace

cplx phase_matching_tophat(double q, cplx zeta_bar, double L) {
  if (!(L > 0)) throw PreconditionError("phase matching needs L > 0");
  const double x = 0.5 * q * L;
  const double sinc = std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
  return zeta_bar * L * sinc;
}

cplx phase_matching_quadrature(double q, const NonlinearCoupling& coupling, const KappaGrid& zgrid) {
  cplx acc = 0;
  for (int l = 0; l < zgrid.n_points; ++l) {
    const double z = zgrid.z(l);
    const double s = coupling.region.value(z, zgrid.delta_z);
    if (s != 0) acc += s * std::polar(1.0, -q * z);
  }
  return coupling.zeta2 * zgrid.delta_z * acc;
}

ComplexEnergies complex_energies(double omega_f_k, double omega_f_kp, double omega_sh,
                                 double gamma_f, double gamma_sh) {
  const double big = omega_f_k + omega_f_kp;
  return {cplx(big + omega_sh, 0.5 * (2 * gamma_f + gamma_sh)),
          cplx(big - omega_sh, -0.5 * (2 * gamma_f - gamma_sh))};
}

Eigen::MatrixXcd spdc_perturbative_moment(const MeanField& pump0, const SpdcModes& modes,
                                          const NonlinearCoupling& coupling, double T,
                                          const KappaGrid& grid,
                                          std::vector<std::string>* warnings) {
  check_pump(pump0, grid);
  const int n = grid.n_points;
  const double dk = grid.delta_kappa;
  const std::vector<cplx> phi = phase_matching_table(coupling, grid);
  const Eigen::ArrayXd wf = omega_on_grid(modes.fundamental, grid);
  const Eigen::ArrayXd wsh = omega_on_grid(modes.second_harmonic, grid);
  const double gf = modes.fundamental.gamma_loss, gsh = modes.second_harmonic.gamma_loss;
  const Eigen::VectorXcd b = pump0.amplitudes / std::sqrt(dk);
  const cplx pref = kI / std::pow(2 * kPi, 1.5) * dk;

  Eigen::MatrixXcd out(n, n);
  for (int j = 0; j < n; ++j)
    for (int jp = 0; jp <= j; ++jp) {
      cplx acc = 0;
      for (int jpp = 0; jpp < n; ++jpp) {
        if (b(jpp) == cplx(0)) continue;
        const ComplexEnergies e = complex_energies(wf(j), wf(jp), wsh(jpp), gf, gsh);
        // The time integral gives e^{-i conj(eps+) T/2}: free phase of the
        // pair plus damping at the summed rates.
        const cplx damp = std::exp(-0.5 * kI * T * std::conj(e.eps_plus));
        acc += phi[j + jp - jpp + n - 1] * b(jpp) * damp * sinc_window(e.eps_minus, T);
      }
      out(j, jp) = out(jp, j) = pref * acc;
    }
  if (warnings && (out * dk).cwiseAbs().maxCoeff() > 0.05)
    warnings->push_back("perturbative SPDC moment exceeds 0.05; gain too high for the oracle");
  return out;
}

std::vector<cplx> spdc_moment_time_quadrature(const MeanField& pump0, const SpdcModes& modes,
                                              const NonlinearCoupling& coupling, double T,
                                              const KappaGrid& grid,
                                              const std::vector<std::pair<int, int>>& entries) {
  check_pump(pump0, grid);
  const int n = grid.n_points;
  const double dk = grid.delta_kappa;
  const std::vector<cplx> phi = phase_matching_table(coupling, grid);
  const Eigen::ArrayXd wf = omega_on_grid(modes.fundamental, grid);
  const Eigen::ArrayXd wsh = omega_on_grid(modes.second_harmonic, grid);
  const double gf = modes.fundamental.gamma_loss, gsh = modes.second_harmonic.gamma_loss;
  const Eigen::VectorXcd b = pump0.amplitudes / std::sqrt(dk);
  const double t0 = -0.5 * T, t1 = 0.5 * T;
  const double rate = 2 * wf.abs().maxCoeff() + wsh.abs().maxCoeff() + 2 * gf + gsh;
  const int panels = 8 + static_cast<int>(std::ceil(rate * T));
  std::vector<double> ts, ws;
  gauss_legendre(t0, t1, panels, ts, ws);

  std::vector<cplx> out;
  for (auto [j, jp] : entries) {
    if (j < 0 || jp < 0 || j >= n || jp >= n) throw DimensionError("entry outside the grid");
    const cplx a = wf(j) + wf(jp) - kI * gf;
    cplx acc = 0;
    for (std::size_t q = 0; q < ts.size(); ++q) {
      const double t = ts[q];
      cplx s = 0;
      for (int jpp = 0; jpp < n; ++jpp)
        s += dk * phi[j + jp - jpp + n - 1] * b(jpp) *
             std::exp(-kI * (wsh(jpp) - 0.5 * kI * gsh) * (t - t0));
      s /= 2 * kPi;
      acc += ws[q] * std::exp(-kI * a * (t1 - t)) * s;
    }
    out.push_back(kI / std::sqrt(2 * kPi) * acc);
  }
  return out;
}

cplx interpolate_amplitude(const MeanField& field, const KappaGrid& grid, double kappa) {
  check_pump(field, grid);
  const Eigen::VectorXcd psi = field_on_z(grid, field.amplitudes);
  cplx acc = 0;
  for (int l = 0; l < grid.n_points; ++l) acc += std::polar(1.0, -kappa * grid.z(l)) * psi(l);
  return acc * grid.delta_z / std::sqrt(2 * kPi);
}

Eigen::MatrixXcd spdc_lowgain_product_jsa(const MeanField& pump0, const SpdcModes& modes,
                                          const NonlinearCoupling& coupling,
                                          const KappaGrid& grid, double T) {
  check_pump(pump0, grid);
  const int n = grid.n_points;
  const KappaGrid ext = grid.extended();
  const ModeParams& sh = modes.second_harmonic;
  const Eigen::ArrayXd wf = omega_on_grid(modes.fundamental, grid);
  const Eigen::VectorXcd psi = field_on_z(grid, pump0.amplitudes);

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int jp = 0; jp <= j; ++jp) {
      const double big = wf(j) + wf(jp);
      // Energy matching w_SH(k'') = Omega, on the root continuous through k'' = 0.
      const double disc = sh.v * sh.v + 2 * sh.v_prime * big;
      if (disc < 0) continue;
      const double root = sh.v + std::sqrt(disc);
      const double kpp = 2 * big / root;
      const double vg = std::abs(sh.v + sh.v_prime * kpp);
      cplx bk = 0;
      for (int l = 0; l < n; ++l) bk += std::polar(1.0, -kpp * grid.z(l)) * psi(l);
      bk *= grid.delta_z / std::sqrt(2 * kPi);
      const double q = grid.kappa(j) + grid.kappa(jp) - kpp;
      const cplx v = kI / std::sqrt(2 * kPi) * bk * phase_matching_quadrature(q, coupling, ext) *
                     std::polar(1.0, -big * T) / vg;
      out(j, jp) = out(jp, j) = v;
    }
  const double norm = out.norm();
  if (norm > 0) out /= norm;
  return out;
}

double frobenius_correlation(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("shape mismatch");
  const double na = a.norm(), nb = b.norm();
  if (na == 0 || nb == 0) return 0.0;
  return std::abs((a.conjugate().cwiseProduct(b)).sum()) / (na * nb);
}

double relative_l2_phase_aligned(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("shape mismatch");
  const double nb = b.norm();
  if (nb == 0) return a.norm() == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  const cplx overlap = (b.conjugate().cwiseProduct(a)).sum();
  const cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx(1.0);
  return (a - phase * b).norm() / nb;
}

MeanField spm_exact(const MeanField& field0, double gamma_nl, double L, const KappaGrid& grid) {
  check_pump(field0, grid);
  const ModeParams& m = field0.mode;
  Eigen::VectorXcd psi = field_on_z(grid, field0.amplitudes);
  const double k = gamma_nl * kHbar * m.center_omega * m.v * L;
  for (int l = 0; l < grid.n_points; ++l) psi(l) *= std::polar(1.0, k * std::norm(psi(l)));
  MeanField out = field0;
  out.amplitudes = amplitudes_from_z(grid, psi);
  out.time = field0.time + L / m.v;
  return out;
}

PulseShape parse_pulse_shape(const std::string& name) {
  if (name == "lorentzian") return PulseShape::lorentzian;
  if (name == "sech") return PulseShape::sech;
  if (name == "gaussian") return PulseShape::gaussian;
  if (name == "rectangular") return PulseShape::rectangular;
  throw ConfigError("unknown pulse shape '" + name + "'");
}

std::string to_string(PulseShape shape) {
  switch (shape) {
    case PulseShape::lorentzian: return "lorentzian";
    case PulseShape::sech: return "sech";
    case PulseShape::gaussian: return "gaussian";
    case PulseShape::rectangular: return "rectangular";
  }
  return "?";
}

double pulse_power(PulseShape shape, double x) {
  switch (shape) {
    case PulseShape::lorentzian: return 1.0 / (1.0 + x * x);
    case PulseShape::sech: {
      const double s = 1.0 / std::cosh(x);
      return s * s;
    }
    case PulseShape::gaussian: return std::exp(-x * x);
    case PulseShape::rectangular: return std::abs(x) <= 1.0 ? 1.0 : 0.0;
  }
  return 0.0;
}

double shape_constant(PulseShape shape) {
  switch (shape) {
    case PulseShape::lorentzian: return 0.75;
    case PulseShape::sech: return 0.8;
    case PulseShape::gaussian: return std::sqrt(2.0 / 3.0);
    case PulseShape::rectangular: return 1.0;
  }
  return 0.0;
}

namespace {

double shape_integral(PulseShape shape, const std::function<double(double)>& f, double tol) {
  if (shape == PulseShape::rectangular) return integrate(f, -1.0, 1.0, tol, 1e-14);
  const double inf = std::numeric_limits<double>::infinity();
  return integrate(f, -inf, inf, tol, 1e-14);
}

}  // namespace

double shape_constant_quadrature(PulseShape shape) {
  const double f3 = shape_integral(shape, [&](double x) { return std::pow(pulse_power(shape, x), 3); }, 1e-14);
  const double f2 = shape_integral(shape, [&](double x) { return std::pow(pulse_power(shape, x), 2); }, 1e-14);
  return f3 / f2;
}

double shirasaki_vminus(PulseShape shape, double phi0, double abs_tol) {
  if (!(phi0 >= 0) || !std::isfinite(phi0)) throw PreconditionError("phi0 must be non-negative");
  if (phi0 == 0) return 1.0;
  const double c = shape_constant(shape);
  const double root = std::sqrt(1 + c * c * phi0 * phi0);
  auto weighted = [&](double x) {
    const double p = phi0 * pulse_power(shape, x);
    return p * (1 + 2 * p * p - 2 * p * (1 + p * c * phi0) / root);
  };
  auto weight = [&](double x) { return phi0 * pulse_power(shape, x); };
  const double den = shape_integral(shape, weight, 1e-3 * abs_tol);
  const double num = shape_integral(shape, weighted, 1e-3 * abs_tol * den);
  return num / den;
}

}  // namespace sqz
