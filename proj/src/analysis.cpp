#include "sqz/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "sqz/errors.hpp"

namespace sqz {

namespace {

// Takagi factor of a small symmetric block G via the real symmetric embedding
// [[Re G, Im G], [Im G, -Re G]]: an eigenvector [u; v] with eigenvalue s > 0
// gives a Takagi vector w = u + i v with G w* = s w.
Eigen::MatrixXcd small_takagi(const Eigen::MatrixXcd& G) {
  const Eigen::Index k = G.rows();
  Eigen::MatrixXd H(2 * k, 2 * k);
  H << G.real(), G.imag(), G.imag(), -G.real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  // Eigenvalues ascend; the top k are the positive ones.
  const Eigen::MatrixXd top = es.eigenvectors().rightCols(k);
  Eigen::MatrixXcd w(k, k);
  w.real() = top.topRows(k);
  w.imag() = top.bottomRows(k);
  return w;
}

}  // namespace

TakagiResult takagi(const Eigen::MatrixXcd& M) {
  if (M.rows() != M.cols()) throw DimensionError("takagi needs a square matrix");
  const Eigen::Index n = M.rows();
  const double scale = n ? M.cwiseAbs().maxCoeff() : 0.0;
  if (!std::isfinite(scale)) throw NumericError("takagi input has non-finite entries");
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw PreconditionError("takagi input is not symmetric");

  TakagiResult out;
  if (scale == 0) {
    out.lambdas = Eigen::VectorXd::Zero(n);
    out.U = Eigen::MatrixXcd::Identity(n, n);
    return out;
  }

  const Eigen::MatrixXcd Ms = 0.5 * (M + M.transpose());
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(Ms, Eigen::ComputeFullU);
  const Eigen::VectorXd sigma = svd.singularValues();
  const Eigen::MatrixXcd& A = svd.matrixU();
  // In the left singular basis M is block diagonal, one block per cluster of
  // equal singular values.
  const Eigen::MatrixXcd G = A.adjoint() * Ms * A.conjugate();
  const double smax = sigma(0);

  Eigen::MatrixXcd U = A;
  Eigen::Index i = 0;
  while (i < n) {
    Eigen::Index j = i + 1;
    while (j < n && sigma(j - 1) - sigma(j) <= 1e-8 * smax) ++j;
    const Eigen::Index k = j - i;
    if (sigma(i) <= 1e-14 * smax) {
      // Numerically null tail: any unitary basis will do.
      break;
    }
    if (k == 1) {
      U.col(i) *= std::polar(1.0, 0.5 * std::arg(G(i, i)));
    } else {
      U.middleCols(i, k) = A.middleCols(i, k) * small_takagi(G.block(i, i, k, k));
    }
    i = j;
  }

  Eigen::VectorXd lam(n);
  const Eigen::MatrixXcd D = U.adjoint() * Ms * U.conjugate();
  for (Eigen::Index l = 0; l < n; ++l) lam(l) = l < i ? D(l, l).real() : sigma(l);

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return lam(a) > lam(b); });
  out.lambdas.resize(n);
  out.U.resize(n, n);
  for (Eigen::Index l = 0; l < n; ++l) {
    out.lambdas(l) = std::max(0.0, lam(order[l]));
    Eigen::VectorXcd u = U.col(order[l]);
    // Phases are fixed up to sign by M = U L U^T; pick the sign that makes the
    // largest component's real part positive.
    Eigen::Index big;
    u.cwiseAbs().maxCoeff(&big);
    if (u(big).real() < 0) u = -u;
    out.U.col(l) = u;
  }
  return out;
}

double schmidt_number(const Eigen::VectorXd& r_values) {
  double s1 = 0, s2 = 0;
  for (Eigen::Index l = 0; l < r_values.size(); ++l) {
    const double nl = std::pow(std::sinh(r_values(l)), 2);
    s1 += nl;
    s2 += nl * nl;
  }
  return s2 > 0 ? s1 * s1 / s2 : 1.0;
}

Eigen::MatrixXcd SchmidtData::continuous_modes(const KappaGrid& grid) const {
  return modes / std::sqrt(grid.delta_kappa);
}

SchmidtData schmidt_from_moment(const Eigen::MatrixXcd& M, const KappaGrid& grid) {
  if (M.rows() != grid.n_points) throw DimensionError("moment does not match the grid");
  const TakagiResult t = takagi(M);
  const Eigen::Index n = t.lambdas.size();
  Eigen::VectorXd r(n), occ(n);
  for (Eigen::Index l = 0; l < n; ++l) {
    r(l) = 0.5 * std::asinh(2 * t.lambdas(l));
    occ(l) = std::pow(std::sinh(r(l)), 2);
  }
  SchmidtData s;
  s.mean_photon = occ.sum();
  s.vacuum = !(s.mean_photon > 0);
  s.schmidt_number = schmidt_number(r);

  Eigen::Index keep = n;
  if (!s.vacuum)
    while (keep > 0 && occ(keep - 1) < 1e-12 * s.mean_photon) --keep;
  s.r_values = r.head(keep);
  s.modes = t.U.leftCols(keep);
  return s;
}

JsaMatrix assemble_jsa(const SchmidtData& s, const KappaGrid& grid) {
  JsaMatrix j;
  j.axes = grid;
  const Eigen::MatrixXcd& u = s.modes;
  j.values = u * s.r_values.asDiagonal() * u.transpose() / grid.delta_kappa;
  j.values = 0.5 * (j.values + j.values.transpose()).eval();
  if (s.r_values.size() == 0) j.values = Eigen::MatrixXcd::Zero(grid.n_points, grid.n_points);
  return j;
}

Eigen::ArrayXd photon_density(const Eigen::MatrixXcd& N, const KappaGrid& grid) {
  if (N.rows() != grid.n_points) throw DimensionError("N does not match the grid");
  return N.diagonal().real().array() / grid.delta_kappa;
}

Eigen::ArrayXd mean_field_density(const Eigen::VectorXcd& amplitudes, const KappaGrid& grid) {
  if (amplitudes.size() != grid.n_points) throw DimensionError("field does not match the grid");
  return amplitudes.array().abs2() / grid.delta_kappa;
}

namespace {

struct LoTerms {
  cplx a;       // phi* M phi^dagger
  double nphi;  // phi N phi^dagger
};

LoTerms lo_terms(const GaussianMoments& m, const Eigen::VectorXcd& lo) {
  if (lo.size() != m.N.rows()) throw DimensionError("LO length does not match the moments");
  if (std::abs(lo.squaredNorm() - 1.0) > 1e-10)
    throw PreconditionError("LO must have unit norm");
  const Eigen::VectorXcd lc = lo.conjugate();
  return {lc.transpose() * m.M * lc, (lo.transpose() * m.N * lc).value().real()};
}

}  // namespace

double homodyne_variance(const GaussianMoments& m, const Eigen::VectorXcd& lo, double theta) {
  const LoTerms t = lo_terms(m, lo);
  return 2 * (std::polar(1.0, 2 * theta) * t.a).real() + 2 * t.nphi + 1;
}

HomodyneExtrema homodyne_extrema(const GaussianMoments& m, const Eigen::VectorXcd& lo) {
  const LoTerms t = lo_terms(m, lo);
  const double mag = std::abs(t.a);
  HomodyneExtrema e;
  e.v_min = 2 * t.nphi + 1 - 2 * mag;
  e.v_max = 2 * t.nphi + 1 + 2 * mag;
  e.theta_min = 0.5 * (std::numbers::pi - std::arg(t.a));
  return e;
}

PhysicalityReport check_physicality(const GaussianMoments& m) {
  PhysicalityReport rep;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.N, Eigen::EigenvaluesOnly);
  Eigen::VectorXd occ = es.eigenvalues().reverse();
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m.M);
  const Eigen::VectorXd lam = svd.singularValues();
  rep.min_eigenvalue_n = occ.size() ? occ.minCoeff() : 0.0;
  rep.trace_n = m.N.trace().real();
  const double ref = occ.size() ? std::max(occ(0) * (occ(0) + 1), 1e-300) : 1.0;
  rep.uncertainty_excess = -std::numeric_limits<double>::infinity();
  for (Eigen::Index l = 0; l < lam.size(); ++l) {
    const double d = lam(l) * lam(l) - occ(l) * (occ(l) + 1);
    rep.uncertainty_excess = std::max(rep.uncertainty_excess, d);
    rep.purity_residual = std::max(rep.purity_residual, std::abs(d) / ref);
  }
  return rep;
}

double skewness(const Eigen::ArrayXd& x, const Eigen::ArrayXd& density) {
  if (x.size() != density.size()) throw DimensionError("skewness needs matching arrays");
  const double w = density.sum();
  if (!(w > 0)) return 0.0;
  const double mu = (x * density).sum() / w;
  const Eigen::ArrayXd d = x - mu;
  const double var = (d.square() * density).sum() / w;
  if (!(var > 0)) return 0.0;
  return (d.cube() * density).sum() / w / std::pow(var, 1.5);
}

}  // namespace sqz
