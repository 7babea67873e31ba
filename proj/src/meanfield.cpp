#include "sqz/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "sqz/errors.hpp"

namespace sqz {

namespace {

constexpr double kPi = std::numbers::pi;

// Offset wrapped into [-L/2, L/2) so pulses stay centered on the periodic window.
double wrap(double u, double period) {
  return u - period * std::floor(u / period + 0.5);
}

void check_grid(const MeanField& f, const KappaGrid& grid) {
  if (f.amplitudes.size() != grid.n_points)
    throw DimensionError("mean field has " + std::to_string(f.amplitudes.size()) +
                         " points, grid has " + std::to_string(grid.n_points));
}

Eigen::VectorXcd linear_factors(const ModeParams& mode, const KappaGrid& grid, const Frame& frame,
                                double h) {
  const Eigen::ArrayXd w = omega_on_grid(mode, grid, frame);
  Eigen::VectorXcd f(grid.n_points);
  const double decay = std::exp(-0.5 * mode.gamma_loss * h);
  for (int j = 0; j < grid.n_points; ++j) f(j) = std::polar(decay, -w(j) * h);
  return f;
}

cplx interpolate(const std::vector<std::pair<double, cplx>>& samples, double k) {
  if (samples.empty() || k < samples.front().first || k > samples.back().first) return 0.0;
  auto hi = std::lower_bound(samples.begin(), samples.end(), k,
                             [](const auto& s, double x) { return s.first < x; });
  if (hi == samples.begin()) return hi->second;
  auto lo = hi - 1;
  const double span = hi->first - lo->first;
  if (span <= 0) return lo->second;
  const double a = (k - lo->first) / span;
  return (1 - a) * lo->second + a * hi->second;
}

}  // namespace

double gamma_to_zeta3(double gamma_nl, double omega, double v) {
  if (!std::isfinite(gamma_nl) || !std::isfinite(omega) || !(v > 0) || !std::isfinite(v))
    throw ConfigError("gamma_to_zeta3 needs finite inputs and v > 0");
  return gamma_nl * kHbar * omega * v * v;
}

PumpShape parse_pump_shape(const std::string& name) {
  if (name == "gaussian") return PumpShape::gaussian;
  if (name == "sech") return PumpShape::sech;
  if (name == "lorentzian") return PumpShape::lorentzian;
  if (name == "rectangular") return PumpShape::rectangular;
  if (name == "quartic_exponential") return PumpShape::quartic_exponential;
  if (name == "custom_array") return PumpShape::custom_array;
  throw ConfigError("unknown pump shape '" + name + "'");
}

std::string to_string(PumpShape shape) {
  switch (shape) {
    case PumpShape::gaussian: return "gaussian";
    case PumpShape::sech: return "sech";
    case PumpShape::lorentzian: return "lorentzian";
    case PumpShape::rectangular: return "rectangular";
    case PumpShape::quartic_exponential: return "quartic_exponential";
    case PumpShape::custom_array: return "custom_array";
  }
  return "?";
}

PumpDomain parse_pump_domain(const std::string& name) {
  if (name == "spectral") return PumpDomain::spectral;
  if (name == "temporal") return PumpDomain::temporal;
  throw ConfigError("unknown pump domain '" + name + "'");
}

std::string to_string(PumpDomain domain) {
  return domain == PumpDomain::spectral ? "spectral" : "temporal";
}

std::vector<std::pair<double, cplx>> load_custom_pump(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open custom pump file '" + path + "'");
  std::vector<std::pair<double, cplx>> samples;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double k, re, im = 0.0;
    if (!(ss >> k)) continue;
    if (!(ss >> re)) throw ConfigError(path + ":" + std::to_string(lineno) + ": missing amplitude");
    ss >> im;
    samples.emplace_back(k, cplx(re, im));
  }
  if (samples.size() < 2) throw ConfigError("custom pump file '" + path + "' needs at least two rows");
  std::sort(samples.begin(), samples.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return samples;
}

double smooth_box(double u, double half, double edge) {
  const double a = std::abs(u);
  if (edge <= 0) return a <= half ? 1.0 : 0.0;
  const double lo = half - 0.5 * edge;
  if (a <= lo) return 1.0;
  if (a >= half + 0.5 * edge) return 0.0;
  return 0.5 * (1 + std::cos(kPi * (a - lo) / edge));
}

double shape_profile(PumpShape shape, PumpDomain domain, double x, double edge) {
  const bool spectral = domain == PumpDomain::spectral;
  switch (shape) {
    case PumpShape::gaussian: return spectral ? std::exp(-0.5 * x * x) : std::exp(-x * x);
    case PumpShape::sech: {
      const double s = 1.0 / std::cosh(x);
      return spectral ? s : s * s;
    }
    case PumpShape::lorentzian: return 1.0 / (1.0 + x * x);
    case PumpShape::rectangular: return smooth_box(x, 1.0, edge);
    case PumpShape::quartic_exponential: return std::exp(-x * x * x * x);
    case PumpShape::custom_array: break;
  }
  throw ConfigError("shape has no analytic profile");
}

MeanField make_pump(const PumpSpec& spec, const KappaGrid& grid, const ModeParams& mode, double t0,
                    std::vector<std::string>* warnings) {
  if (!(spec.mean_photon_number >= 0) || !std::isfinite(spec.mean_photon_number))
    throw ConfigError("pump photon number must be non-negative");
  if (!(spec.bandwidth > 0) || !std::isfinite(spec.bandwidth))
    throw ConfigError("pump bandwidth must be positive");
  if (spec.center_kappa.empty() && spec.shape != PumpShape::custom_array)
    throw ConfigError("pump needs at least one center");

  const int n = grid.n_points;
  MeanField f;
  f.mode = mode;
  f.time = t0;
  f.amplitudes = Eigen::VectorXcd::Zero(n);

  double max_center = 0;
  for (double c : spec.center_kappa) max_center = std::max(max_center, std::abs(c));
  auto warn = [&](const std::string& msg) {
    if (warnings) warnings->push_back(msg);
  };
  // Widths beyond which the profile is negligible.
  const double reach = spec.shape == PumpShape::rectangular           ? 1.0
                       : spec.shape == PumpShape::quartic_exponential ? 2.0
                                                                      : 6.0;

  if (spec.shape == PumpShape::custom_array) {
    if (spec.custom_samples.empty()) throw ConfigError("custom_array pump has no samples");
    for (int j = 0; j < n; ++j) {
      const double k = grid.kappa(j);
      f.amplitudes(j) = interpolate(spec.custom_samples, k) * std::polar(1.0, -k * spec.center_z);
    }
  } else if (spec.domain == PumpDomain::spectral) {
    if (spec.bandwidth >= grid.half_window())
      throw ConfigError("pump bandwidth exceeds the grid window");
    if (reach * spec.bandwidth + max_center > grid.half_window())
      warn("pump spectrum extends past the grid window");
    const double edge = grid.delta_kappa / spec.bandwidth;
    for (int j = 0; j < n; ++j) {
      const double k = grid.kappa(j);
      double a = 0;
      for (double c : spec.center_kappa)
        a += shape_profile(spec.shape, spec.domain, (k - c) / spec.bandwidth, edge);
      f.amplitudes(j) = a * std::polar(1.0, -k * spec.center_z);
    }
  } else {
    const double width = 1.0 / spec.bandwidth;
    if (width >= 0.5 * grid.z_extent) throw ConfigError("pump pulse is longer than the z window");
    if (reach * width > 0.5 * grid.z_extent) warn("pump pulse tails reach the z window edge");
    const double edge = grid.delta_z / width;
    Eigen::VectorXcd psi(n);
    for (int l = 0; l < n; ++l) {
      const double u = wrap(grid.z(l) - spec.center_z, grid.z_extent);
      cplx a = 0;
      for (double c : spec.center_kappa)
        a += std::sqrt(shape_profile(spec.shape, spec.domain, u / width, edge)) *
             std::polar(1.0, c * u);
      psi(l) = a;
    }
    f.amplitudes = amplitudes_from_z(grid, psi);
  }

  if (spec.mean_photon_number == 0) {
    f.amplitudes.setZero();
    return f;
  }
  const double norm2 = f.amplitudes.squaredNorm();
  if (!(norm2 > 0)) throw ConfigError("pump has no support on the grid");
  f.amplitudes *= std::sqrt(spec.mean_photon_number / norm2);
  return f;
}

double NonlinearRegion::value(double z_lab, double cell) const {
  if (kind == Kind::uniform) return 1.0;
  return smooth_box(z_lab - center, 0.5 * length, edge > 0 ? edge : cell);
}

Eigen::ArrayXd NonlinearCoupling::profile(const KappaGrid& grid, const Frame& frame,
                                          double t) const {
  Eigen::ArrayXd s(grid.n_points);
  for (int l = 0; l < grid.n_points; ++l)
    s(l) = region.value(frame.lab_position(grid.z(l), t), grid.delta_z);
  return s;
}

Process parse_process(const std::string& name) {
  if (name == "spdc") return Process::spdc;
  if (name == "sfwm_single") return Process::sfwm_single;
  if (name == "sfwm_dual") return Process::sfwm_dual;
  throw ConfigError("unknown process '" + name + "'");
}

std::string to_string(Process process) {
  switch (process) {
    case Process::spdc: return "spdc";
    case Process::sfwm_single: return "sfwm_single";
    case Process::sfwm_dual: return "sfwm_dual";
  }
  return "?";
}

int required_pumps(Process process) { return process == Process::sfwm_dual ? 2 : 1; }

KerrCoefficients kerr_for(Process process, const NonlinearCoupling& coupling) {
  switch (process) {
    case Process::spdc: return {};
    case Process::sfwm_single: return {coupling.zeta3.pppp, 0.0};
    case Process::sfwm_dual: return {coupling.zeta3.pppp, coupling.zeta3.p1p2p1p2};
  }
  return {};
}

MeanField step_meanfield(const MeanField& field, const KerrCoefficients& kerr,
                         const NonlinearCoupling& coupling, std::span<const MeanField> partners,
                         const KappaGrid& grid, const Frame& frame, double dt) {
  if (!(dt > 0)) throw PreconditionError("mean-field step needs dt > 0");
  check_grid(field, grid);
  const double h = 0.5 * dt;
  const Eigen::VectorXcd lin = linear_factors(field.mode, grid, frame, h);
  Eigen::VectorXcd a = field.amplitudes.cwiseProduct(lin);

  const bool cross = kerr.cross != 0 && !partners.empty();
  if (kerr.self != 0 || cross) {
    Eigen::VectorXcd psi = field_on_z(grid, a);
    Eigen::ArrayXd rate = kerr.self * psi.array().abs2();
    for (const MeanField& p : partners) {
      check_grid(p, grid);
      if (std::abs(p.time - field.time) > 1e-9 * dt)
        throw SequencingError("XPM partner is not at the same time as the stepped field");
      const Eigen::VectorXcd pa = p.amplitudes.cwiseProduct(linear_factors(p.mode, grid, frame, h));
      rate += 2 * kerr.cross * field_on_z(grid, pa).array().abs2();
    }
    const Eigen::ArrayXd s = coupling.profile(grid, frame, field.time + h);
    for (int l = 0; l < grid.n_points; ++l) psi(l) *= std::polar(1.0, s(l) * rate(l) * dt);
    a = amplitudes_from_z(grid, psi);
  }

  MeanField out = field;
  out.amplitudes = a.cwiseProduct(lin);
  out.time = field.time + dt;
  return out;
}

void step_pumps(std::vector<MeanField>& pumps, Process process, const NonlinearCoupling& coupling,
                const KappaGrid& grid, const Frame& frame, double dt) {
  const KerrCoefficients kerr = kerr_for(process, coupling);
  std::vector<MeanField> next;
  next.reserve(pumps.size());
  for (std::size_t i = 0; i < pumps.size(); ++i) {
    std::vector<MeanField> partners;
    for (std::size_t k = 0; k < pumps.size(); ++k)
      if (k != i) partners.push_back(pumps[k]);
    next.push_back(step_meanfield(pumps[i], kerr, coupling, partners, grid, frame, dt));
  }
  pumps = std::move(next);
}

DriveSampling parse_drive_sampling(const std::string& name) {
  if (name == "extended") return DriveSampling::extended;
  if (name == "collocated") return DriveSampling::collocated;
  throw ConfigError("unknown drive sampling '" + name + "'");
}

std::string to_string(DriveSampling sampling) {
  return sampling == DriveSampling::extended ? "extended" : "collocated";
}

DriveFields zero_drive(const KappaGrid& grid, double time) {
  DriveFields d;
  d.sum_spectrum = Eigen::VectorXcd::Zero(2 * grid.n_points);
  d.diff_spectrum = Eigen::VectorXcd::Zero(2 * grid.n_points);
  d.time = time;
  return d;
}

DriveFields drive_fields(Process process, std::span<const MeanField> pumps,
                         const NonlinearCoupling& coupling, const KappaGrid& grid,
                         const Frame& frame, DriveSampling sampling) {
  const int needed = required_pumps(process);
  if (static_cast<int>(pumps.size()) < needed)
    throw ConfigError("process " + to_string(process) + " needs " + std::to_string(needed) +
                      " pump(s), got " + std::to_string(pumps.size()));
  for (const MeanField& p : pumps) check_grid(p, grid);
  const double t = pumps[0].time;
  for (const MeanField& p : pumps)
    if (std::abs(p.time - t) > 1e-12 * std::max(1.0, std::abs(t)))
      throw SequencingError("pumps are not at a common time");

  const int n = grid.n_points;
  const bool ext = sampling == DriveSampling::extended;
  const KappaGrid g = ext ? grid.extended() : grid;
  std::vector<Eigen::VectorXcd> psi;
  for (int i = 0; i < needed; ++i)
    psi.push_back(field_on_z(g, ext ? pad_to_extended(pumps[i].amplitudes) : pumps[i].amplitudes));
  const Eigen::ArrayXd s = coupling.profile(g, frame, t);

  Eigen::VectorXcd st(g.n_points), mt(g.n_points);
  switch (process) {
    case Process::spdc:
      st = coupling.zeta2 * (s * psi[0].array()).matrix();
      mt.setZero();
      break;
    case Process::sfwm_single:
      st = coupling.zeta3.pppp * (s * psi[0].array().square()).matrix();
      mt = (coupling.zeta3.pppp * s * psi[0].array().abs2()).cast<cplx>().matrix();
      break;
    case Process::sfwm_dual:
      st = 2 * coupling.zeta3.ssp1p2 * (s * psi[0].array() * psi[1].array()).matrix();
      mt = (s * (coupling.zeta3.sp1sp1 * psi[0].array().abs2() +
                 coupling.zeta3.sp2sp2 * psi[1].array().abs2()))
               .cast<cplx>()
               .matrix();
      break;
  }

  const Eigen::VectorXcd sk = continuous_spectrum(g, st);
  const Eigen::VectorXcd mk = continuous_spectrum(g, mt);
  DriveFields d;
  d.time = t;
  if (ext) {
    d.sum_spectrum = sk;
    d.diff_spectrum = mk;
  } else {
    // Local products alias: the n-point spectrum is periodic in kappa.
    d.sum_spectrum.resize(2 * n);
    d.diff_spectrum.resize(2 * n);
    for (int m = 0; m < 2 * n; ++m) {
      const int idx = ((m - n / 2) % n + n) % n;
      d.sum_spectrum(m) = sk(idx);
      d.diff_spectrum(m) = mk(idx);
    }
  }
  // M~ is real, so M(-kappa) = conj M(kappa); enforce it against rounding.
  for (int m = 1; m < n; ++m) {
    const cplx a = d.diff_spectrum(m), b = d.diff_spectrum(2 * n - m);
    d.diff_spectrum(m) = 0.5 * (a + std::conj(b));
    d.diff_spectrum(2 * n - m) = std::conj(d.diff_spectrum(m));
  }
  d.diff_spectrum(n) = d.diff_spectrum(n).real();
  return d;
}

PumpedWaveguide::PumpedWaveguide(Process process, std::vector<MeanField> pumps,
                                 NonlinearCoupling coupling, KappaGrid grid, Frame frame,
                                 DriveSampling sampling)
    : process_(process),
      pumps_(std::move(pumps)),
      coupling_(std::move(coupling)),
      grid_(std::move(grid)),
      frame_(frame),
      sampling_(sampling) {
  if (static_cast<int>(pumps_.size()) < required_pumps(process_))
    throw ConfigError("process " + to_string(process_) + " is missing a required pump");
  for (const MeanField& p : pumps_) check_grid(p, grid_);
}

DriveFields PumpedWaveguide::midpoint_drive(double t, double dt) {
  const double t_now = pumps_[0].time;
  if (std::abs(t_now - t) > 1e-6 * dt + 1e-14 * std::abs(t))
    throw SequencingError("drive requested at t = " + std::to_string(t) +
                          " but pumps are at t = " + std::to_string(t_now));
  for (MeanField& p : pumps_) p.time = t;
  step_pumps(pumps_, process_, coupling_, grid_, frame_, 0.5 * dt);
  DriveFields d = drive_fields(process_, pumps_, coupling_, grid_, frame_, sampling_);
  step_pumps(pumps_, process_, coupling_, grid_, frame_, 0.5 * dt);
  for (MeanField& p : pumps_) p.time = t + dt;
  return d;
}

}  // namespace sqz
