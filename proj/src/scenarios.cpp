#include "sqz/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "sqz/errors.hpp"

namespace sqz {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLightSpeed = 299792458.0;

std::string label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

PumpShape pump_shape_for(PulseShape s) {
  switch (s) {
    case PulseShape::lorentzian: return PumpShape::lorentzian;
    case PulseShape::sech: return PumpShape::sech;
    case PulseShape::gaussian: return PumpShape::gaussian;
    case PulseShape::rectangular: return PumpShape::rectangular;
  }
  return PumpShape::gaussian;
}

bool lossless(const ScenarioConfig& c) { return c.signal().gamma_loss == 0; }

json vector_json(const Eigen::ArrayXd& v, int limit) {
  json out = json::array();
  for (int i = 0; i < std::min<int>(limit, v.size()); ++i) out.push_back(v(i));
  return out;
}

json physicality_json(const PhysicalityReport& p) {
  return {{"uncertainty_excess", p.uncertainty_excess},
          {"purity_residual", p.purity_residual},
          {"min_eigenvalue_n", p.min_eigenvalue_n},
          {"trace_n", p.trace_n}};
}

json schmidt_json(const SchmidtData& s) {
  return {{"mean_photon", s.mean_photon},
          {"schmidt_number", s.schmidt_number},
          {"vacuum", s.vacuum},
          {"r_values", vector_json(s.r_values, 32)}};
}

Report base_report(const ScenarioConfig& c) {
  Report r;
  r.summary["version"] = kVersion;
  r.summary["scenario"] = to_string(c.scenario);
  r.summary["config"] = to_json(c);
  return r;
}

void finish(Report& r) {
  std::sort(r.warnings.begin(), r.warnings.end());
  r.warnings.erase(std::unique(r.warnings.begin(), r.warnings.end()), r.warnings.end());
  r.summary["warnings"] = r.warnings;
}

Table trace_table(const std::vector<TraceRow>& rows) {
  Table t{"trace", {"step", "time", "trace_n", "max_abs_m", "symplectic_residual"}, {}};
  for (const TraceRow& row : rows)
    t.rows.push_back({double(row.step), row.time, row.trace_n, row.max_abs_m, row.symplectic_residual});
  return t;
}

Table schmidt_table(const std::string& name, const SchmidtData& s) {
  Table t{name, {"index", "r", "occupation"}, {}};
  for (int l = 0; l < s.r_values.size(); ++l) {
    const double sh = std::sinh(s.r_values(l));
    t.rows.push_back({double(l), s.r_values(l), sh * sh});
  }
  return t;
}

// Standard artifacts of a propagated state, as requested by the outputs list.
void add_state_outputs(Report& r, const ScenarioConfig& c, const SimulationResult& sim,
                       const SchmidtData& s) {
  const KappaGrid& g = sim.grid;
  r.summary["state"] = schmidt_json(s);
  r.summary["physicality"] = physicality_json(check_physicality(sim.propagation.moments));
  if (sim.propagation.propagator)
    r.summary["symplectic_residual"] = symplectic_residual(*sim.propagation.propagator);
  if (c.wants(OutputKind::schmidt)) r.tables.push_back(schmidt_table("schmidt", s));
  if (c.wants(OutputKind::density)) {
    Table t{"density", {"kappa", "photon_density"}, {}};
    const Eigen::ArrayXd d = photon_density(sim.propagation.moments.N, g);
    for (int j = 0; j < g.n_points; ++j) t.rows.push_back({g.kappa(j), d(j)});
    r.tables.push_back(t);
    Table p{"pump_density", {"kappa"}, {}};
    std::vector<Eigen::ArrayXd> cols;
    for (std::size_t i = 0; i < sim.pumps_in.size(); ++i) {
      p.columns.push_back("input_" + std::to_string(i));
      p.columns.push_back("output_" + std::to_string(i));
      cols.push_back(mean_field_density(sim.pumps_in[i].amplitudes, g));
      cols.push_back(mean_field_density(sim.pumps_out[i].amplitudes, g));
    }
    for (int j = 0; j < g.n_points; ++j) {
      std::vector<double> row{g.kappa(j)};
      for (const auto& col : cols) row.push_back(col(j));
      p.rows.push_back(row);
    }
    r.tables.push_back(p);
  }
  if (c.wants(OutputKind::jsa))
    r.matrices.push_back({"jsa", assemble_jsa(s, g).values, g.kappa_values, g.delta_kappa});
  if (c.wants(OutputKind::moments)) {
    r.matrices.push_back({"moment_n", sim.propagation.moments.N, g.kappa_values, g.delta_kappa});
    r.matrices.push_back({"moment_m", sim.propagation.moments.M, g.kappa_values, g.delta_kappa});
  }
  if (!sim.trace.empty()) r.tables.push_back(trace_table(sim.trace));
}

}  // namespace

int worker_count() {
  if (const char* env = std::getenv("SQZ_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int count, const std::function<void(int)>& body) {
  const int workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::mutex lock;
  int next = 0;
  std::exception_ptr error;
  auto work = [&] {
    for (;;) {
      int i;
      {
        std::lock_guard<std::mutex> g(lock);
        if (next >= count || error) return;
        i = next++;
      }
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> g(lock);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

ScenarioConfig apply_overrides(ScenarioConfig c, const RunOptions& options) {
  if (options.with_oracle) c.oracle_compare = true;
  if (options.grid) c.n_points = *options.grid;
  if (options.steps) {
    if (*options.steps < 1) throw ConfigError("--steps must be at least 1");
    if (c.scenario == ScenarioKind::dualpump_jsa) c.dualpump.bulk_steps = *options.steps;
    else c.time.n_steps = *options.steps;
  }
  if (options.trace && !c.wants(OutputKind::trace)) c.outputs.push_back(OutputKind::trace);
  return c;
}

KappaGrid grid_for(const ScenarioConfig& c) {
  return make_grid(c.n_points, c.delta_kappa, c.signal().center_k);
}

Frame frame_for(const ScenarioConfig& c) { return Frame{c.frame_velocity(), c.time.t0}; }

TimeGrid times_for(const ScenarioConfig& c) {
  if (c.time.refine_windows.empty()) return uniform_times(c.time.t0, c.time.t1, c.time.n_steps);
  return refined_times(c.time.t0, c.time.t1, c.time.n_steps, c.time.refine_windows,
                       c.time.steps_per_window);
}

std::vector<MeanField> pumps_for(const ScenarioConfig& c, const KappaGrid& grid,
                                 std::vector<std::string>* warnings) {
  std::vector<MeanField> out;
  for (const PumpConfig& p : c.pumps) out.push_back(make_pump(p.spec, grid, c.mode(p.mode), c.time.t0, warnings));
  return out;
}

SimulationResult simulate(const ScenarioConfig& c, bool track_propagator, bool record_trace) {
  SimulationResult r;
  r.grid = grid_for(c);
  r.frame = frame_for(c);
  r.times = times_for(c);
  r.pumps_in = pumps_for(c, r.grid, &r.warnings);
  PumpedWaveguide source(c.process, r.pumps_in, c.coupling, r.grid, r.frame, c.sampling);
  PropagationOptions o;
  o.scheme = c.scheme;
  o.track_propagator = track_propagator;
  o.moments_from_propagator = lossless(c);
  if (record_trace) o.trace = [&r](const TraceRow& row) { r.trace.push_back(row); };
  r.propagation = propagate(source, c.signal(), r.grid, r.times, r.frame, o);
  r.pumps_out = source.pumps();
  return r;
}

Eigen::MatrixXcd spdc_oracle_moment(const ScenarioConfig& c, const MeanField& pump0,
                                    std::vector<std::string>* warnings) {
  if (c.process != Process::spdc) throw ConfigError("the SPDC oracle needs an SPDC process");
  const KappaGrid grid = grid_for(c);
  const SpdcModes modes{c.signal(), pump0.mode};
  const double T = c.time.t1 - c.time.t0;
  // The oracle takes the lab-frame pump at t0; frame and lab coincide then.
  Eigen::MatrixXcd m = spdc_perturbative_moment(pump0, modes, c.coupling, T, grid, warnings) *
                       grid.delta_kappa;
  const double v = c.frame_velocity();
  if (v != 0)
    for (int j = 0; j < grid.n_points; ++j)
      for (int jp = 0; jp < grid.n_points; ++jp)
        m(j, jp) *= std::polar(1.0, v * (grid.kappa(j) + grid.kappa(jp)) * T);
  return m;
}

HomodynePoint simulate_homodyne_point(const ScenarioConfig& base, PulseShape shape, double width,
                                      double phi0) {
  if (base.pumps.empty()) throw ConfigError("homodyne sweep needs a pump");
  ScenarioConfig c = base;
  PumpSpec& spec = c.pumps[0].spec;
  spec.shape = pump_shape_for(shape);
  spec.domain = PumpDomain::temporal;
  spec.bandwidth = 1.0 / width;
  spec.center_kappa = {0.0};
  spec.center_z = 0.0;
  spec.mean_photon_number = 1.0;

  const KappaGrid grid = grid_for(c);
  const MeanField unit = make_pump(spec, grid, c.mode(c.pumps[0].mode), c.time.t0);
  const double peak = field_on_z(grid, unit.amplitudes).cwiseAbs2().maxCoeff();
  const double zeta = c.coupling.zeta3.pppp;
  const double tf = c.time.t1 - c.time.t0;
  if (phi0 > 0 && !(zeta > 0)) throw ConfigError("homodyne sweep needs a positive zeta3 or gamma_nl");
  spec.mean_photon_number = phi0 > 0 ? phi0 / (zeta * tf * peak) : 0.0;

  HomodynePoint out;
  out.shape = shape;
  out.phi0 = phi0;
  out.analytic_v_minus = shirasaki_vminus(shape, phi0);
  const SimulationResult sim = simulate(c);
  const Eigen::VectorXcd pump_out = phi0 > 0 ? sim.pumps_out[0].amplitudes : unit.amplitudes;
  const Eigen::VectorXcd lo = pump_out / pump_out.norm();
  const HomodyneExtrema e = homodyne_extrema(sim.propagation.moments, lo);
  out.v_minus = e.v_min;
  out.v_plus = e.v_max;
  const TakagiResult t = takagi(sim.propagation.moments.M);
  const Eigen::VectorXcd schmidt_lo = t.U.col(0);
  out.schmidt_v_minus = homodyne_extrema(sim.propagation.moments, schmidt_lo).v_min;
  out.r1 = 0.5 * std::asinh(2 * t.lambdas(0));
  return out;
}

DualPumpPoint simulate_dualpump(const ScenarioConfig& base, double pump_photons) {
  ScenarioConfig c = base;
  if (c.pumps.empty()) throw ConfigError("dual-pump scenario needs a pump");
  c.pumps[0].spec.mean_photon_number = pump_photons;
  DualPumpPoint p;
  p.pump_photons = pump_photons;
  p.sim = simulate(c);
  p.schmidt = schmidt_from_moment(p.sim.propagation.moments.M, p.sim.grid);
  const Eigen::ArrayXd in = mean_field_density(p.sim.pumps_in[0].amplitudes, p.sim.grid);
  const Eigen::ArrayXd out = mean_field_density(p.sim.pumps_out[0].amplitudes, p.sim.grid);
  const double nin = in.matrix().norm(), nout = out.matrix().norm();
  p.reshape = nin > 0 && nout > 0 ? (in / nin - out / nout).matrix().norm() : 0.0;
  p.skewness = skewness(p.sim.grid.kappa_values, photon_density(p.sim.propagation.moments.N, p.sim.grid));
  return p;
}

DualPumpPoint tune_dualpump(const ScenarioConfig& c, double target,
                            std::vector<std::pair<double, double>>* history) {
  const double tol = c.dualpump.tolerance;
  const int max_runs = 16;
  double lo = 0, hi = 0, n_lo = 0, n_hi = 0;
  double guess = c.dualpump.photon_guess;
  std::optional<DualPumpPoint> best;
  for (int run = 0; run < max_runs; ++run) {
    DualPumpPoint p = simulate_dualpump(c, guess);
    const double n = p.schmidt.mean_photon;
    if (history) history->emplace_back(guess, n);
    if (!best || std::abs(n / target - 1) < std::abs(best->schmidt.mean_photon / target - 1)) best = p;
    if (std::abs(n / target - 1) <= tol) return p;
    if (n < target) {
      lo = guess;
      n_lo = n;
    } else {
      hi = guess;
      n_hi = n;
    }
    // Squeezing parameters scale linearly with the pump photon number, so
    // rescale by the ratio of per-mode r; fall back to bisection in log N.
    const double K = std::max(1.0, p.schmidt.schmidt_number);
    double next = n > 0 ? guess * std::asinh(std::sqrt(target / K)) / std::asinh(std::sqrt(n / K))
                        : guess * 100;
    next = std::clamp(next, guess / 100, guess * 100);
    if (lo > 0 && hi > 0 && !(next > lo && next < hi)) next = std::sqrt(lo * hi);
    if (!(next > 0) || !std::isfinite(next) || next > 1e12 * c.dualpump.photon_guess ||
        next < 1e-12 * c.dualpump.photon_guess)
      break;
    guess = next;
  }
  throw RangeError("could not reach <n> = " + label(target) + " within " + label(100 * tol) +
                   "%: bracket N in [" + label(lo) + ", " + label(hi) + "] gives <n> in [" +
                   label(n_lo) + ", " + label(n_hi) + "], closest <n> = " +
                   label(best ? best->schmidt.mean_photon : 0.0));
}

Report run_spdc_lowgain(const ScenarioConfig& c, const RunOptions& options) {
  Report r = base_report(c);
  const bool trace = options.trace || c.wants(OutputKind::trace);
  const SimulationResult sim = simulate(c, lossless(c), trace);
  r.warnings = sim.warnings;
  const SchmidtData s = schmidt_from_moment(sim.propagation.moments.M, sim.grid);
  add_state_outputs(r, c, sim, s);

  const Eigen::MatrixXcd& m = sim.propagation.moments.M;
  const Eigen::MatrixXcd oracle = spdc_oracle_moment(c, sim.pumps_in[0], &r.warnings);
  const double on = oracle.norm();
  json cmp{{"relative_l2", on > 0 ? (m - oracle).norm() / on : m.norm()},
           {"relative_l2_phase_aligned", relative_l2_phase_aligned(m, oracle)},
           {"max_abs_moment", m.cwiseAbs().maxCoeff()}};
  if (lossless(c) && c.mode(c.pumps[0].mode).gamma_loss == 0) {
    const KappaGrid& g = sim.grid;
    const double T = c.time.t1 - c.time.t0;
    Eigen::MatrixXcd prod = spdc_lowgain_product_jsa(sim.pumps_in[0], {c.signal(), sim.pumps_in[0].mode},
                                                     c.coupling, g, T);
    const double v = c.frame_velocity();
    for (int j = 0; j < g.n_points; ++j)
      for (int jp = 0; jp < g.n_points; ++jp)
        prod(j, jp) *= std::polar(1.0, v * (g.kappa(j) + g.kappa(jp)) * T);
    cmp["product_form_correlation"] = frobenius_correlation(m, prod);
    if (c.wants(OutputKind::jsa)) r.matrices.push_back({"product_form", prod, g.kappa_values, g.delta_kappa});
  }
  if (m.cwiseAbs().maxCoeff() > 0.05) r.warnings.push_back("moment exceeds the perturbative range (max |M| > 0.05)");
  r.summary["oracle"] = cmp;
  r.matrices.push_back({"oracle_moment_m", oracle, sim.grid.kappa_values, sim.grid.delta_kappa});
  if (!c.wants(OutputKind::moments))
    r.matrices.push_back({"moment_m", m, sim.grid.kappa_values, sim.grid.delta_kappa});
  finish(r);
  return r;
}

Report run_sfwm_homodyne(const ScenarioConfig& c, const RunOptions&) {
  Report r = base_report(c);
  const HomodyneConfig& h = c.homodyne;
  const int ns = h.shapes.size(), np = h.phi0.size();
  std::vector<HomodynePoint> points(ns * np);
  parallel_for(ns * np, [&](int i) {
    points[i] = simulate_homodyne_point(c, h.shapes[i / np], h.widths[i / np], h.phi0[i % np]);
  });
  json shapes = json::array();
  for (int s = 0; s < ns; ++s) {
    const PulseShape shape = h.shapes[s];
    Table t{"homodyne_" + to_string(shape),
            {"phi0", "v_minus_db", "analytic_db", "difference_db", "v_plus_db", "schmidt_v_minus_db", "r1"},
            {}};
    double worst = 0;
    for (int p = 0; p < np; ++p) {
      const HomodynePoint& q = points[s * np + p];
      const double diff = to_db(q.v_minus) - to_db(q.analytic_v_minus);
      worst = std::max(worst, std::abs(diff));
      t.rows.push_back({q.phi0, to_db(q.v_minus), to_db(q.analytic_v_minus), diff, to_db(q.v_plus),
                        to_db(q.schmidt_v_minus), q.r1});
    }
    r.tables.push_back(t);
    shapes.push_back({{"shape", to_string(shape)},
                      {"shape_constant", shape_constant(shape)},
                      {"width", h.widths[s]},
                      {"max_abs_difference_db", worst}});
  }
  r.summary["homodyne"] = shapes;
  finish(r);
  return r;
}

Report run_dualpump_jsa(const ScenarioConfig& c, const RunOptions&) {
  Report r = base_report(c);
  const std::vector<double>& targets = c.dualpump.targets;
  const int nt = targets.size();
  std::vector<DualPumpPoint> points(nt);
  std::vector<std::vector<std::pair<double, double>>> histories(nt);
  parallel_for(nt, [&](int i) { points[i] = tune_dualpump(c, targets[i], &histories[i]); });

  const KappaGrid& g = points[0].sim.grid;
  Table mf{"meanfield_density", {"kappa"}, {}};
  Table fl{"photon_density", {"kappa"}, {}};
  Table tuning{"tuning", {"target", "pump_photons", "mean_photon"}, {}};
  json results = json::array();
  for (int i = 0; i < nt; ++i) {
    const DualPumpPoint& p = points[i];
    const std::string tag = label(targets[i]);
    mf.columns.push_back("input_" + tag);
    mf.columns.push_back("output_" + tag);
    fl.columns.push_back("density_" + tag);
    for (const auto& [n_pump, n_out] : histories[i]) tuning.rows.push_back({targets[i], n_pump, n_out});
    r.tables.push_back(schmidt_table("schmidt_" + tag, p.schmidt));
    if (c.wants(OutputKind::jsa))
      r.matrices.push_back({"jsa_" + tag, assemble_jsa(p.schmidt, g).values, g.kappa_values, g.delta_kappa});
    if (c.wants(OutputKind::moments)) {
      r.matrices.push_back({"moment_n_" + tag, p.sim.propagation.moments.N, g.kappa_values, g.delta_kappa});
      r.matrices.push_back({"moment_m_" + tag, p.sim.propagation.moments.M, g.kappa_values, g.delta_kappa});
    }
    json res{{"target", targets[i]},
             {"pump_photons", p.pump_photons},
             {"runs", histories[i].size()},
             {"state", schmidt_json(p.schmidt)},
             {"reshape", p.reshape},
             {"skewness", p.skewness},
             {"physicality", physicality_json(check_physicality(p.sim.propagation.moments))}};
    if (p.sim.propagation.propagator)
      res["symplectic_residual"] = symplectic_residual(*p.sim.propagation.propagator);
    results.push_back(res);
    for (const std::string& w : p.sim.warnings) r.warnings.push_back(w);
  }
  std::vector<std::vector<Eigen::ArrayXd>> cols(nt);
  for (int j = 0; j < g.n_points; ++j) {
    std::vector<double> a{g.kappa(j)}, b{g.kappa(j)};
    for (int i = 0; i < nt; ++i) {
      if (j == 0) {
        cols[i] = {mean_field_density(points[i].sim.pumps_in[0].amplitudes, g),
                   mean_field_density(points[i].sim.pumps_out[0].amplitudes, g),
                   photon_density(points[i].sim.propagation.moments.N, g)};
      }
      a.push_back(cols[i][0](j));
      a.push_back(cols[i][1](j));
      b.push_back(cols[i][2](j));
    }
    mf.rows.push_back(a);
    fl.rows.push_back(b);
  }
  r.tables.push_back(mf);
  r.tables.push_back(fl);
  r.tables.push_back(tuning);
  r.summary["dualpump"] = results;
  finish(r);
  return r;
}

Report run_custom(const ScenarioConfig& c, const RunOptions& options) {
  Report r = base_report(c);
  const bool trace = options.trace || c.wants(OutputKind::trace);
  const SimulationResult sim = simulate(c, lossless(c), trace);
  r.warnings = sim.warnings;
  const SchmidtData s = schmidt_from_moment(sim.propagation.moments.M, sim.grid);
  add_state_outputs(r, c, sim, s);
  if (c.wants(OutputKind::homodyne)) {
    const Eigen::VectorXcd& b = sim.pumps_out[0].amplitudes;
    if (b.norm() == 0) throw ConfigError("homodyne output needs a nonzero pump as LO");
    const HomodyneExtrema e = homodyne_extrema(sim.propagation.moments, b / b.norm());
    r.summary["homodyne"] = {{"v_min", e.v_min},
                             {"v_max", e.v_max},
                             {"v_min_db", to_db(e.v_min)},
                             {"v_max_db", to_db(e.v_max)},
                             {"theta_min", e.theta_min}};
  }
  if (c.oracle_compare) {
    if (c.process == Process::spdc) {
      const Eigen::MatrixXcd oracle = spdc_oracle_moment(c, sim.pumps_in[0], &r.warnings);
      r.summary["oracle"] = {{"relative_l2_phase_aligned",
                              relative_l2_phase_aligned(sim.propagation.moments.M, oracle)}};
      r.matrices.push_back({"oracle_moment_m", oracle, sim.grid.kappa_values, sim.grid.delta_kappa});
    } else {
      r.warnings.push_back("no oracle is available for process " + to_string(c.process));
    }
  }
  finish(r);
  return r;
}

Report run(const ScenarioConfig& raw, const RunOptions& options) {
  const ScenarioConfig c = resolve(apply_overrides(raw, options));
  switch (c.scenario) {
    case ScenarioKind::spdc_lowgain: return run_spdc_lowgain(c, options);
    case ScenarioKind::sfwm_homodyne: return run_sfwm_homodyne(c, options);
    case ScenarioKind::dualpump_jsa: return run_dualpump_jsa(c, options);
    case ScenarioKind::custom: return run_custom(c, options);
  }
  throw ConfigError("unknown scenario");
}

ScenarioConfig default_config(ScenarioKind kind) {
  ScenarioConfig c;
  c.scenario = kind;
  switch (kind) {
    case ScenarioKind::spdc_lowgain: {
      // Fundamental and second harmonic with a 10% group-velocity mismatch,
      // a 6 mm crystal and a Gaussian pump crossing it completely. The weak
      // pump dispersion keeps the pulse compact over the whole run.
      c.process = Process::spdc;
      c.n_points = 128;
      c.delta_kappa = 100.0;
      c.modes = {{"F", {2.0e8, 1.0e5, 0.0, 0.0, 0.0}}, {"SH", {1.8e8, 1.0e4, 0.0, 0.0, 0.0}}};
      c.signal_mode = "F";
      const double T = 8.4e-11;
      PumpConfig p;
      p.mode = "SH";
      p.spec.shape = PumpShape::gaussian;
      p.spec.bandwidth = 1000.0;
      p.spec.mean_photon_number = 5.0e9;
      p.spec.center_z = -0.5 * T * 1.8e8;
      c.pumps = {p};
      c.coupling.zeta2 = 1.0e3;
      c.coupling.region = {NonlinearRegion::Kind::finite, 6e-3, 0.0, 0.0};
      c.time = {-0.5 * T, 0.5 * T, 200, {}, 0};
      c.outputs = {OutputKind::jsa, OutputKind::schmidt, OutputKind::density};
      c.oracle_compare = true;
      break;
    }
    case ScenarioKind::sfwm_homodyne: {
      c.process = Process::sfwm_single;
      c.n_points = 256;
      const double Lz = 0.01;
      c.delta_kappa = 2 * kPi / Lz;
      c.modes = {{"P", {2.0e8, 0.0, 0.0, 0.0, 2 * kPi * kLightSpeed / 1550e-9}}};
      c.signal_mode = "P";
      PumpConfig p;
      p.mode = "P";
      p.spec.shape = PumpShape::gaussian;
      p.spec.domain = PumpDomain::temporal;
      p.spec.bandwidth = 40 / Lz;
      p.spec.mean_photon_number = 1.0;
      c.pumps = {p};
      c.gamma_nl = 1.0;
      c.time.n_steps = 50;
      c.homodyne.shapes = {PulseShape::lorentzian, PulseShape::sech, PulseShape::gaussian,
                           PulseShape::rectangular};
      // The rectangle's half-width sits half a cell past a sample, so its
      // raised-cosine edge falls between samples and the pulse is flat.
      c.homodyne.widths = {Lz / 200, Lz / 40, Lz / 40, Lz / 4 + 0.5 * Lz / 256};
      c.homodyne.phi0 = {0.0, 0.5, 1.0, 1.5, 2.0};
      c.homodyne.length = 0.1;
      c.outputs = {OutputKind::homodyne};
      break;
    }
    case ScenarioKind::dualpump_jsa: {
      c.process = Process::sfwm_single;
      const double dk = 4180.0;
      c.n_points = 512;
      c.delta_kappa = 56 * dk / 512;
      const double omega = 2 * kPi * kLightSpeed / 1550e-9;
      c.modes = {{"P", {7.019e7, 4.711, 0.0, omega / kLightSpeed, omega}}};
      c.signal_mode = "P";
      PumpConfig p;
      p.mode = "P";
      p.spec.shape = PumpShape::quartic_exponential;
      p.spec.center_kappa = {-1.5 * dk, 1.5 * dk};
      p.spec.bandwidth = dk;
      p.spec.mean_photon_number = 3.0e5;
      c.pumps = {p};
      c.gamma_nl = 100.0;
      c.dualpump.targets = {0.0038, 0.8357};
      c.dualpump.photon_guess = 3.0e5;
      c.dualpump.length = 0.063;
      c.outputs = {OutputKind::jsa, OutputKind::schmidt, OutputKind::density};
      break;
    }
    case ScenarioKind::custom: {
      c.process = Process::sfwm_single;
      c.n_points = 64;
      c.delta_kappa = 1000.0;
      c.modes = {{"P", {2.0e8, 1.0, 0.0, 0.0, 2 * kPi * kLightSpeed / 1550e-9}}};
      c.signal_mode = "P";
      PumpConfig p;
      p.mode = "P";
      p.spec.bandwidth = 5000.0;
      p.spec.mean_photon_number = 1.0e6;
      c.pumps = {p};
      c.gamma_nl = 1.0;
      c.time = {0.0, 1e-10, 50, {}, 0};
      c.outputs = {OutputKind::schmidt, OutputKind::density};
      break;
    }
  }
  return c;
}

std::vector<ScenarioInfo> list_scenarios() {
  return {{"spdc_lowgain", "Low-gain SPDC; compares the moment with the perturbative oracle and the "
                           "pump x phase-matching product"},
          {"sfwm_homodyne", "Single-pump SFWM without dispersion; quadrature squeezing vs peak "
                            "nonlinear phase for four pulse shapes"},
          {"dualpump_jsa", "Dual-lobe pump SFWM; tunes pump power to target <n> and reports "
                           "densities, JSA, Schmidt spectra and K"},
          {"custom", "Any process and parameters; outputs as requested"}};
}

}  // namespace sqz
