#include "sqz/qprop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sqz/errors.hpp"

namespace sqz {

namespace {

// A doubled matrix [[a, b], [b*, a*]], closed under products and sums.
struct Doubled {
  Eigen::MatrixXcd a;
  Eigen::MatrixXcd b;
};

Doubled multiply(const Doubled& x, const Doubled& y) {
  Doubled r;
  r.a.noalias() = x.a * y.a;
  r.a.noalias() += x.b * y.b.conjugate();
  r.b.noalias() = x.a * y.b;
  r.b.noalias() += x.b * y.a.conjugate();
  return r;
}

// Induced 1-norm of the full 2n x 2n matrix.
double one_norm(const Doubled& x) {
  return (x.a.cwiseAbs().colwise().sum() + x.b.cwiseAbs().colwise().sum()).maxCoeff();
}

double log_factorial(int k) { return std::lgamma(k + 1.0); }

// Smallest Taylor degree whose remainder bound is below tol for norm eta <= 1.
int taylor_degree(double eta, double tol) {
  if (eta == 0) return 0;
  for (int m = 1; m <= 40; ++m) {
    const double bound = std::exp((m + 1) * std::log(eta) - log_factorial(m + 1)) /
                         (1 - eta / (m + 2));
    if (bound <= tol) return m;
  }
  return -1;
}

int block_size(int m) { return std::max(1, static_cast<int>(std::lround(std::sqrt(m)))); }

int product_count(int m) {
  if (m <= 1) return 0;
  const int p = block_size(m);
  return p - 1 + m / p;
}

// Paterson-Stockmeyer evaluation of sum_k x^k / k!, k <= m.
Doubled taylor(const Doubled& x, int m) {
  const Eigen::Index n = x.a.rows();
  std::vector<double> c(m + 1);
  for (int k = 0; k <= m; ++k) c[k] = std::exp(-log_factorial(k));
  const int p = block_size(m);
  std::vector<Doubled> pw(p + 1);
  pw[1] = x;
  for (int i = 2; i <= p; ++i) pw[i] = multiply(pw[i - 1], x);

  auto block = [&](int j) {
    Doubled r{c[j * p] * Eigen::MatrixXcd::Identity(n, n), Eigen::MatrixXcd::Zero(n, n)};
    for (int i = 1; i < p && j * p + i <= m; ++i) {
      r.a += c[j * p + i] * pw[i].a;
      r.b += c[j * p + i] * pw[i].b;
    }
    return r;
  };

  const int q = m / p;
  Doubled res = block(q);
  for (int j = q - 1; j >= 0; --j) {
    Doubled next = multiply(res, pw[p]);
    const Doubled bj = block(j);
    next.a += bj.a;
    next.b += bj.b;
    res = std::move(next);
  }
  return res;
}

bool is_diagonal(const Eigen::MatrixXcd& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != cplx(0)) return false;
  return true;
}

void check_square(const Eigen::MatrixXcd& m, Eigen::Index n, const char* what) {
  if (m.rows() != n || m.cols() != n)
    throw DimensionError(std::string(what) + " has shape " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected " + std::to_string(n));
}

bool all_finite(const Eigen::MatrixXcd& m) { return m.allFinite(); }

}  // namespace

BogoliubovBlocks BogoliubovBlocks::identity(int n, double t) {
  return {Eigen::MatrixXcd::Identity(n, n), Eigen::MatrixXcd::Zero(n, n), t, t};
}

GaussianMoments GaussianMoments::vacuum(int n, double t) {
  return {Eigen::MatrixXcd::Zero(n, n), Eigen::MatrixXcd::Zero(n, n), t};
}

double symplectic_residual(const BogoliubovBlocks& k) {
  const Eigen::Index n = k.V.rows();
  const Eigen::MatrixXcd c = k.V * k.V.adjoint() - k.W * k.W.adjoint() -
                             Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd vw = k.V * k.W.transpose();
  const Eigen::MatrixXcd sym = vw - vw.transpose();
  return std::max(c.cwiseAbs().maxCoeff(), sym.cwiseAbs().maxCoeff());
}

GeneratorBlocks build_drive_generator(const DriveFields& drive, const KappaGrid& grid) {
  const int n = grid.n_points;
  if (drive.sum_spectrum.size() != 2 * n || drive.diff_spectrum.size() != 2 * n)
    throw DimensionError("drive spectra must have 2n = " + std::to_string(2 * n) + " entries");
  if (!drive.sum_spectrum.allFinite() || !drive.diff_spectrum.allFinite())
    throw NumericError("non-finite drive field at t = " + std::to_string(drive.time));
  const double c = grid.delta_kappa / std::sqrt(2 * std::numbers::pi);
  GeneratorBlocks g;
  g.time = drive.time;
  g.R.resize(n, n);
  g.S.resize(n, n);
  for (int jp = 0; jp < n; ++jp)
    for (int j = 0; j < n; ++j) {
      g.R(j, jp) = 2 * c * drive.diff_spectrum(j - jp + n);
      g.S(j, jp) = c * drive.sum_spectrum(j + jp);
    }
  return g;
}

GeneratorBlocks build_generator(const DriveFields& drive, const ModeParams& mode,
                                const KappaGrid& grid, const Frame& frame) {
  GeneratorBlocks g = build_drive_generator(drive, grid);
  g.R.diagonal() -= omega_on_grid(mode, grid, frame).matrix().cast<cplx>();
  return g;
}

BogoliubovBlocks exponentiate(const GeneratorBlocks& gen, double dt) {
  const Eigen::Index n = gen.R.rows();
  check_square(gen.R, n, "R");
  check_square(gen.S, n, "S");
  BogoliubovBlocks out;
  out.t_start = gen.time - 0.5 * dt;
  out.t_end = gen.time + 0.5 * dt;

  if (gen.S.isZero(0) && is_diagonal(gen.R)) {
    out.V = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) out.V(j, j) = std::exp(cplx(0, dt) * gen.R(j, j));
    out.W = Eigen::MatrixXcd::Zero(n, n);
    return out;
  }

  const cplx idt(0, dt);
  Doubled x{idt * gen.R, idt * gen.S};
  const double norm = one_norm(x);
  if (!std::isfinite(norm))
    throw NumericError("matrix exponential of a non-finite generator at t = " +
                       std::to_string(gen.time));

  constexpr double tol = 1e-16;
  int best_s = 0, best_m = -1, best_cost = std::numeric_limits<int>::max();
  const int s0 = norm > 1 ? static_cast<int>(std::ceil(std::log2(norm))) : 0;
  for (int s = s0; s <= s0 + 5; ++s) {
    const int m = taylor_degree(std::ldexp(norm, -s), tol);
    if (m < 0) continue;
    const int cost = product_count(m) + s;
    if (cost < best_cost) best_cost = cost, best_s = s, best_m = m;
  }
  if (best_m < 0) throw NumericError("matrix exponential failed to converge");

  const double scale = std::ldexp(1.0, -best_s);
  x.a *= scale;
  x.b *= scale;
  Doubled e = taylor(x, best_m);
  for (int i = 0; i < best_s; ++i) e = multiply(e, e);
  if (!all_finite(e.a) || !all_finite(e.b))
    throw NumericError("matrix exponential overflowed at t = " + std::to_string(gen.time));
  out.V = std::move(e.a);
  out.W = std::move(e.b);
  return out;
}

BogoliubovBlocks concatenate(const BogoliubovBlocks& later, const BogoliubovBlocks& earlier) {
  check_square(later.V, earlier.V.rows(), "later V");
  const double span = std::max(std::abs(later.t_end - later.t_start),
                               std::abs(earlier.t_end - earlier.t_start));
  if (std::abs(earlier.t_end - later.t_start) >
      1e-9 * span + 1e-15 * std::abs(later.t_start))
    throw SequencingError("cannot concatenate: earlier block ends at " +
                          std::to_string(earlier.t_end) + ", later starts at " +
                          std::to_string(later.t_start));
  Doubled r = multiply(Doubled{later.V, later.W}, Doubled{earlier.V, earlier.W});
  return {std::move(r.a), std::move(r.b), earlier.t_start, later.t_end};
}

GaussianMoments update_moments_unitary(const GaussianMoments& m, const BogoliubovBlocks& k) {
  const Eigen::Index n = m.N.rows();
  check_square(m.N, n, "N");
  check_square(m.M, n, "M");
  check_square(k.V, n, "V");
  check_square(k.W, n, "W");
  const auto& V = k.V;
  const auto& W = k.W;
  const Eigen::MatrixXcd Vt = V.transpose();
  const Eigen::MatrixXcd Wt = W.transpose();

  // N' = W*MV^T + V*M*W^T + V*NV^T + W*N^TW^T + W*W^T; the second term is the
  // adjoint of the first since M is symmetric.
  const Eigen::MatrixXcd MVt = m.M * Vt;
  const Eigen::MatrixXcd NVt = m.N * Vt;
  const Eigen::MatrixXcd NtWt = m.N.transpose() * Wt;
  Eigen::MatrixXcd a = W.conjugate() * MVt;
  Eigen::MatrixXcd Nn = a + a.adjoint();
  Nn.noalias() += V.conjugate() * NVt;
  Nn.noalias() += W.conjugate() * NtWt;
  Nn.noalias() += W.conjugate() * Wt;

  // M' = VMV^T + WM*W^T + WNV^T + VN^TW^T + VW^T; the fourth term is the
  // transpose of the third.
  Eigen::MatrixXcd b = W * NVt;
  Eigen::MatrixXcd Mn = b + b.transpose();
  Mn.noalias() += V * MVt;
  Mn.noalias() += W * (m.M.conjugate() * Wt);
  Mn.noalias() += V * Wt;

  GaussianMoments out;
  out.N = 0.5 * (Nn + Nn.adjoint());
  out.M = 0.5 * (Mn + Mn.transpose());
  out.time = m.time + (k.t_end - k.t_start);
  return out;
}

GaussianMoments update_moments_loss(const GaussianMoments& m, double gamma_loss, double dt) {
  if (!(gamma_loss >= 0)) throw PreconditionError("loss rate must be non-negative");
  if (!(dt > 0)) throw PreconditionError("loss step needs dt > 0");
  const double eta = std::exp(-gamma_loss * dt);
  return {eta * m.N, eta * m.M, m.time + dt};
}

GaussianMoments moments_from_propagator(const BogoliubovBlocks& k) {
  GaussianMoments out;
  out.N = k.W.conjugate() * k.W.transpose();
  out.M = k.V * k.W.transpose();
  out.M = 0.5 * (out.M + out.M.transpose()).eval();
  out.time = k.t_end;
  return out;
}

TimeGrid uniform_times(double t0, double t1, int n_steps) {
  if (n_steps < 1) throw ConfigError("n_steps must be at least 1");
  if (!(t1 > t0)) throw ConfigError("end time must exceed start time");
  TimeGrid t(n_steps + 1);
  for (int k = 0; k <= n_steps; ++k) t[k] = t0 + (t1 - t0) * k / n_steps;
  t[n_steps] = t1;
  return t;
}

TimeGrid refined_times(double t0, double t1, int bulk_steps,
                       const std::vector<std::pair<double, double>>& windows,
                       int steps_per_window) {
  if (!(t1 > t0)) throw ConfigError("end time must exceed start time");
  if (bulk_steps < 1 || steps_per_window < 1) throw ConfigError("step counts must be positive");
  // Clip windows to [t0, t1], sort, and merge overlaps.
  std::vector<std::pair<double, double>> w;
  for (auto [a, b] : windows) {
    a = std::max(a, t0);
    b = std::min(b, t1);
    if (b > a) w.emplace_back(a, b);
  }
  std::sort(w.begin(), w.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& iv : w) {
    if (!merged.empty() && iv.first <= merged.back().second)
      merged.back().second = std::max(merged.back().second, iv.second);
    else
      merged.push_back(iv);
  }
  // Alternate bulk spans and windows.
  std::vector<std::pair<double, double>> bulk;
  double cursor = t0;
  for (const auto& iv : merged) {
    if (iv.first > cursor) bulk.emplace_back(cursor, iv.first);
    cursor = iv.second;
  }
  if (t1 > cursor) bulk.emplace_back(cursor, t1);
  double bulk_len = 0;
  for (const auto& b : bulk) bulk_len += b.second - b.first;

  TimeGrid t{t0};
  auto fill = [&](double a, double b, int k) {
    for (int i = 1; i <= k; ++i) t.push_back(i == k ? b : a + (b - a) * i / k);
  };
  std::size_t wi = 0;
  cursor = t0;
  for (const auto& b : bulk) {
    while (wi < merged.size() && merged[wi].first < b.first) {
      fill(merged[wi].first, merged[wi].second, steps_per_window);
      ++wi;
    }
    const int k = std::max(1, static_cast<int>(std::lround(bulk_steps * (b.second - b.first) / bulk_len)));
    fill(b.first, b.second, k);
  }
  while (wi < merged.size()) fill(merged[wi].first, merged[wi].second, steps_per_window), ++wi;
  return t;
}

PropagationResult propagate(DriveSource& drive, const ModeParams& mode, const KappaGrid& grid,
                            const TimeGrid& times, const Frame& frame,
                            const PropagationOptions& options) {
  validate(mode);
  if (times.size() < 2) throw ConfigError("propagation needs at least one step");
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1])) throw ConfigError("step times must increase");
  const int n = grid.n_points;
  const double gamma = mode.gamma_loss;
  const bool rebuild = options.moments_from_propagator;
  if (rebuild && (gamma > 0 || options.initial))
    throw PreconditionError("moments can be rebuilt from the propagator only for lossless vacuum input");
  const bool track = (options.track_propagator || rebuild) && gamma == 0;

  GaussianMoments moments = options.initial ? *options.initial : GaussianMoments::vacuum(n, times[0]);
  if (moments.N.rows() != n || moments.M.rows() != n)
    throw DimensionError("initial moments do not match the grid");
  moments.time = times[0];
  std::optional<BogoliubovBlocks> total;
  if (track) total = BogoliubovBlocks::identity(n, times[0]);
  const Eigen::ArrayXd omega = omega_on_grid(mode, grid, frame);

  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    const double t = times[k];
    const double dt = times[k + 1] - t;
    const DriveFields d = drive.midpoint_drive(t, dt);
    BogoliubovBlocks step;
    if (options.scheme == StepScheme::split) {
      step = exponentiate(build_drive_generator(d, grid), dt);
      Eigen::VectorXcd ph(n);
      for (int j = 0; j < n; ++j) ph(j) = std::polar(1.0, -0.5 * omega(j) * dt);
      step.V = ph.asDiagonal() * step.V * ph.asDiagonal();
      step.W = ph.asDiagonal() * step.W * ph.conjugate().asDiagonal();
    } else {
      step = exponentiate(build_generator(d, mode, grid, frame), dt);
    }
    step.t_start = t;
    step.t_end = times[k + 1];

    if (!rebuild) {
      if (gamma > 0) {
        moments = update_moments_loss(moments, gamma, 0.5 * dt);
        moments = update_moments_unitary(moments, step);
        moments = update_moments_loss(moments, gamma, 0.5 * dt);
      } else {
        moments = update_moments_unitary(moments, step);
      }
      moments.time = times[k + 1];
      if (!all_finite(moments.N) || !all_finite(moments.M))
        throw NumericError("non-finite moments at step " + std::to_string(k + 1) +
                           " (t = " + std::to_string(times[k + 1]) + ")");
    }
    if (track) {
      total = concatenate(step, *total);
      if (!all_finite(total->V) || !all_finite(total->W))
        throw NumericError("non-finite propagator at step " + std::to_string(k + 1) +
                           " (t = " + std::to_string(times[k + 1]) + ")");
    }

    if (options.trace) {
      TraceRow row;
      row.step = static_cast<int>(k + 1);
      row.time = times[k + 1];
      if (rebuild) {
        row.trace_n = total->W.squaredNorm();
        row.max_abs_m = (total->V * total->W.transpose()).cwiseAbs().maxCoeff();
      } else {
        row.trace_n = moments.N.trace().real();
        row.max_abs_m = moments.M.cwiseAbs().maxCoeff();
      }
      row.symplectic_residual = symplectic_residual(track ? *total : step);
      options.trace(row);
    }
  }

  PropagationResult result;
  if (rebuild) {
    result.moments = moments_from_propagator(*total);
  } else {
    result.moments = std::move(moments);
  }
  result.moments.time = times.back();
  if (track) result.propagator = std::move(total);
  return result;
}

PropagationResult propagate(DriveSource& drive, const ModeParams& mode, const KappaGrid& grid,
                            double t0, double t1, int n_steps, const Frame& frame,
                            const PropagationOptions& options) {
  return propagate(drive, mode, grid, uniform_times(t0, t1, n_steps), frame, options);
}

double recommended_dt(const GeneratorBlocks& gen, StepScheme scheme) {
  const Eigen::Index n = gen.R.rows();
  Eigen::MatrixXcd off = gen.R;
  off.diagonal().setZero();
  double rate = std::max(gen.S.cwiseAbs().maxCoeff() * n, off.cwiseAbs().maxCoeff() * n);
  if (scheme == StepScheme::midpoint) rate = std::max(rate, gen.R.diagonal().cwiseAbs().maxCoeff());
  return rate > 0 ? 0.1 / rate : std::numeric_limits<double>::infinity();
}

}  // namespace sqz
