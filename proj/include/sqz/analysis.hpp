#pragma once

#include "sqz/kgrid.hpp"
#include "sqz/qprop.hpp"

namespace sqz {

// M = U diag(lambdas) U^T with U unitary and lambdas descending.
struct TakagiResult {
  Eigen::VectorXd lambdas;
  Eigen::MatrixXcd U;
};

TakagiResult takagi(const Eigen::MatrixXcd& M);

struct SchmidtData {
  // Squeezing parameters, descending; negligible modes trimmed.
  Eigen::VectorXd r_values;
  // Discrete Schmidt vectors u^(l) as columns.
  Eigen::MatrixXcd modes;
  double schmidt_number = 1.0;
  double mean_photon = 0.0;
  // Set when every r is zero; schmidt_number is then 1 by convention.
  bool vacuum = true;

  // rho^(l)(kappa_j) = u^(l)_j / sqrt(dk).
  Eigen::MatrixXcd continuous_modes(const KappaGrid& grid) const;
};

SchmidtData schmidt_from_moment(const Eigen::MatrixXcd& M, const KappaGrid& grid);

// Schmidt number (sum n)^2 / sum n^2 of occupations n_l = sinh^2 r_l.
double schmidt_number(const Eigen::VectorXd& r_values);

struct JsaMatrix {
  Eigen::MatrixXcd values;  // J(kappa_i, kappa_j), 1/m
  KappaGrid axes;
};

JsaMatrix assemble_jsa(const SchmidtData& s, const KappaGrid& grid);

// Re N_jj / dk, photons per unit wavevector.
Eigen::ArrayXd photon_density(const Eigen::MatrixXcd& N, const KappaGrid& grid);

// Mean-field density |beta_j|^2 / dk.
Eigen::ArrayXd mean_field_density(const Eigen::VectorXcd& amplitudes, const KappaGrid& grid);

// Quadrature variance for the discrete LO phi (unit norm); 1 is shot noise.
double homodyne_variance(const GaussianMoments& m, const Eigen::VectorXcd& lo, double theta);

struct HomodyneExtrema {
  double v_min = 1.0;
  double v_max = 1.0;
  double theta_min = 0.0;
};

HomodyneExtrema homodyne_extrema(const GaussianMoments& m, const Eigen::VectorXcd& lo);

inline double to_db(double variance) { return 10.0 * std::log10(variance); }

struct PhysicalityReport {
  // max_l (lambda_l^2 - n_l (n_l + 1)); must not exceed ~1e-9.
  double uncertainty_excess = 0.0;
  // max_l |lambda_l^2 - n_l (n_l + 1)| / (n_1 (n_1 + 1)); zero for pure states.
  double purity_residual = 0.0;
  double min_eigenvalue_n = 0.0;
  double trace_n = 0.0;
};

PhysicalityReport check_physicality(const GaussianMoments& m);

// Weighted third standardized moment of a density over x.
double skewness(const Eigen::ArrayXd& x, const Eigen::ArrayXd& density);

}  // namespace sqz
