// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "sqz/analysis.hpp"
#include "sqz/errors.hpp"
#include "sqz/scenarios.hpp"
#include "support.hpp"

using namespace sqz;

namespace {

// Tolerances and limits, fixed here.
constexpr double kSymplecticTol = 1e-8;
constexpr double kSymplecticSeconds = 30;
constexpr double kPurityTol = 1e-8;
constexpr double kSpdcTol = 0.01;
constexpr double kSpdcSeconds = 60;
constexpr double kProductCorrelation = 0.99;
constexpr double kHomodyneDb = 0.1;
constexpr double kHomodyneSeconds = 300;
constexpr double kSchmidtHomodyneTol = 1e-6;
constexpr double kDualTargetTol = 0.01;
constexpr double kSchmidtMin = 2.8, kSchmidtMax = 3.4;
constexpr double kReshapeLowMax = 0.01, kReshapeHighMin = 0.02;
constexpr double kDualSeconds = 900;
constexpr double kDecayTol = 1e-10;
constexpr double kMinOrder = 1.8;
constexpr double kFrameTol = 1e-8;

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [fail]");
  }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

ScenarioConfig shipped(const std::string& name) {
  return load_config(std::string(SQZ_CONFIG_DIR) + "/" + name + ".json");
}

Outcome symplectic_suite() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const KappaGrid g = make_grid(64, 1.0);
  const ModeParams m{1.0, 0.2, 0, 0, 0};
  double worst_c = 0, worst_s = 0, gain = 0;
  for (unsigned seed : {1u, 2u, 3u}) {
    for (double amp : {0.1, 1.0, 2.5}) {
      testutil::RandomDriveSource src(g, amp, seed);
      const PropagationResult r = propagate(src, m, g, 0.0, 2.0, 200, {}, testutil::tracking());
      const BogoliubovBlocks& k = *r.propagator;
      const Eigen::MatrixXcd c = k.V * k.V.adjoint() - k.W * k.W.adjoint() - Eigen::MatrixXcd::Identity(64, 64);
      const Eigen::MatrixXcd vw = k.V * k.W.transpose();
      worst_c = std::max(worst_c, c.cwiseAbs().maxCoeff());
      worst_s = std::max(worst_s, (vw - vw.transpose()).cwiseAbs().maxCoeff());
      gain = std::max(gain, k.W.cwiseAbs().maxCoeff());
    }
  }
  const double secs = seconds_since(start);
  o.check(worst_c <= kSymplecticTol, "max|VV^+ - WW^+ - I| = " + fmt("%.2e", worst_c));
  o.check(worst_s <= kSymplecticTol, "max|VW^T - (VW^T)^T| = " + fmt("%.2e", worst_s));
  o.check(secs < kSymplecticSeconds, "9 runs in " + fmt("%.1f", secs) + " s");
  o.detail += "; max|W| = " + fmt("%.3g", gain);
  return o;
}

Outcome purity_suite() {
  Outcome o;
  std::vector<ScenarioConfig> cases;
  cases.push_back(default_config(ScenarioKind::custom));
  ScenarioConfig strong = default_config(ScenarioKind::custom);
  strong.pumps[0].spec.mean_photon_number = 3e8;
  cases.push_back(strong);
  ScenarioConfig dual = shipped("dualpump_jsa");
  dual.n_points = 128;
  dual.delta_kappa *= 4;
  dual.dualpump.bulk_steps = 20;
  dual.dualpump.edge_steps = 8;
  dual.pumps[0].spec.mean_photon_number = 4e6;
  cases.push_back(dual);
  cases.push_back(shipped("spdc_lowgain"));
  double worst_purity = 0, worst_sum = 0, largest = 0;
  for (ScenarioConfig c : cases) {
    c = resolve(c);
    const SimulationResult sim = simulate(c);
    const GaussianMoments& mom = sim.propagation.moments;
    const SchmidtData s = schmidt_from_moment(mom.M, sim.grid);
    worst_purity = std::max(worst_purity, check_physicality(mom).purity_residual);
    const double trace = mom.N.trace().real();
    worst_sum = std::max(worst_sum, std::abs(trace - s.mean_photon) / s.mean_photon);
    largest = std::max(largest, s.mean_photon);
  }
  o.check(worst_purity <= kPurityTol, "max |lambda^2 - n(n+1)| rel = " + fmt("%.2e", worst_purity));
  o.check(worst_sum <= kPurityTol, "|sum N_jj - sum sinh^2 r| rel = " + fmt("%.2e", worst_sum));
  o.detail += "; " + std::to_string(cases.size()) + " runs, largest <n> = " + fmt("%.3g", largest);
  return o;
}

struct SpdcRuns {
  Report lossless, lossy;
  double seconds = 0;
};

SpdcRuns spdc_runs() {
  SpdcRuns r;
  const auto start = std::chrono::steady_clock::now();
  r.lossless = run(shipped("spdc_lowgain"));
  r.lossy = run(shipped("spdc_lowgain_lossy"));
  r.seconds = seconds_since(start);
  return r;
}

Outcome spdc_oracle(const SpdcRuns& r) {
  Outcome o;
  const double a = r.lossless.summary["oracle"]["relative_l2"].get<double>();
  const double b = r.lossy.summary["oracle"]["relative_l2"].get<double>();
  const int n = r.lossless.summary["config"]["grid"]["n_points"].get<int>();
  o.check(a <= kSpdcTol, "lossless rel L2 = " + fmt("%.2e", a));
  o.check(b <= kSpdcTol, "lossy rel L2 = " + fmt("%.2e", b));
  o.check(n == 128, "n = " + std::to_string(n));
  o.check(r.seconds < kSpdcSeconds, "both runs in " + fmt("%.1f", r.seconds) + " s");
  o.detail += "; max|M| = " + fmt("%.3g", r.lossless.summary["oracle"]["max_abs_moment"].get<double>());
  return o;
}

Outcome product_form(const SpdcRuns& r) {
  Outcome o;
  const double c = r.lossless.summary["oracle"]["product_form_correlation"].get<double>();
  o.check(c >= kProductCorrelation, "Frobenius correlation = " + fmt("%.5f", c));
  return o;
}

Outcome homodyne_curves() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const ScenarioConfig c = shipped("sfwm_homodyne");
  const Report r = run(c);
  const double secs = seconds_since(start);
  const double phi_max = *std::max_element(c.homodyne.phi0.begin(), c.homodyne.phi0.end());
  for (const auto& h : r.summary["homodyne"]) {
    const double d = h["max_abs_difference_db"].get<double>();
    o.check(d <= kHomodyneDb, h["shape"].get<std::string>() + " (C = " +
                                  fmt("%.4f", h["shape_constant"].get<double>()) + ") " + fmt("%.3f", d) + " dB");
  }
  o.check(r.summary["homodyne"].size() == 4, "4 shapes");
  o.check(phi_max >= 2.0, "phi0 up to " + fmt("%.1f", phi_max));
  o.check(c.n_points == 256, "n = " + std::to_string(c.n_points));
  o.check(secs < kHomodyneSeconds, fmt("%.0f", secs) + " s");
  return o;
}

Outcome schmidt_homodyne() {
  Outcome o;
  ScenarioConfig c = default_config(ScenarioKind::custom);
  c.pumps[0].spec.mean_photon_number = 3e8;
  c = resolve(c);
  const SimulationResult sim = simulate(c);
  const GaussianMoments& m = sim.propagation.moments;
  const TakagiResult t = takagi(m.M);
  double worst = 0;
  int modes = 0;
  for (int l = 0; l < 4; ++l) {
    const double r = 0.5 * std::asinh(2 * t.lambdas(l));
    if (r < 1e-3) break;
    const HomodyneExtrema e = homodyne_extrema(m, t.U.col(l));
    worst = std::max({worst, std::abs(e.v_min / std::exp(-2 * r) - 1), std::abs(e.v_max / std::exp(2 * r) - 1)});
    ++modes;
  }
  o.check(modes >= 2, std::to_string(modes) + " modes checked, r_1 = " + fmt("%.3f", 0.5 * std::asinh(2 * t.lambdas(0))));
  o.check(worst <= kSchmidtHomodyneTol, "max rel error of V+- = " + fmt("%.2e", worst));
  return o;
}

Outcome dual_pump() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const ScenarioConfig c = shipped("dualpump_jsa");
  Report r;
  try {
    r = run(c);
  } catch (const RangeError& e) {
    o.check(false, std::string("tuning failed: ") + e.what());
    return o;
  }
  const double secs = seconds_since(start);
  const auto& res = r.summary["dualpump"];
  std::vector<double> reshape, skew;
  for (const auto& p : res) {
    const double target = p["target"].get<double>(), n = p["state"]["mean_photon"].get<double>();
    const double K = p["state"]["schmidt_number"].get<double>();
    o.check(std::abs(n / target - 1) <= kDualTargetTol,
            "<n> = " + fmt("%.5g", n) + " for target " + fmt("%g", target) + " (N_pump " +
                fmt("%.4g", p["pump_photons"].get<double>()) + ")");
    o.check(K >= kSchmidtMin && K <= kSchmidtMax, "K = " + fmt("%.3f", K));
    reshape.push_back(p["reshape"].get<double>());
    skew.push_back(p["skewness"].get<double>());
  }
  if (reshape.size() == 2) {
    o.check(reshape[0] <= kReshapeLowMax, "low-gain reshape = " + fmt("%.4f", reshape[0]));
    o.check(reshape[1] >= kReshapeHighMin, "high-gain reshape = " + fmt("%.4f", reshape[1]));
    o.check((skew[0] > 0) != (skew[1] > 0),
            "skewness sign change " + fmt("%.4f", skew[0]) + " -> " + fmt("%.4f", skew[1]));
  } else {
    o.check(false, "expected two targets");
  }
  o.check(c.n_points == 512, "n = " + std::to_string(c.n_points));
  o.check(secs < kDualSeconds, fmt("%.0f", secs) + " s");
  return o;
}

Outcome loss_oracle() {
  Outcome o;
  // Nonlinearity off: the pumped waveguide supplies zero drive.
  ScenarioConfig c = default_config(ScenarioKind::custom);
  c.modes[0].params.gamma_loss = 2e10;
  c.gamma_nl.reset();
  c.coupling = {};
  c = resolve(c);
  const KappaGrid g = grid_for(c);
  std::mt19937_64 rng(42);
  const Eigen::MatrixXcd a = testutil::random_matrix(g.n_points, g.n_points, rng);
  PropagationOptions opt;
  opt.initial = GaussianMoments{a * a.adjoint(), testutil::random_symmetric(g.n_points, rng), c.time.t0};
  PumpedWaveguide src(c.process, pumps_for(c, g), c.coupling, g, frame_for(c), c.sampling);
  const PropagationResult r = propagate(src, c.signal(), g, times_for(c), frame_for(c), opt);
  const double T = c.time.t1 - c.time.t0, decay = std::exp(-c.signal().gamma_loss * T);
  const Eigen::ArrayXd w = omega_on_grid(c.signal(), g, frame_for(c));
  double worst = 0;
  for (int j = 0; j < g.n_points; ++j)
    for (int jp = 0; jp < g.n_points; ++jp) {
      const cplx n = opt.initial->N(j, jp) * decay * std::polar(1.0, (w(j) - w(jp)) * T);
      const cplx m = opt.initial->M(j, jp) * decay * std::polar(1.0, -(w(j) + w(jp)) * T);
      worst = std::max({worst, std::abs(r.moments.N(j, jp) - n), std::abs(r.moments.M(j, jp) - m)});
    }
  worst /= opt.initial->N.cwiseAbs().maxCoeff() * decay;
  o.check(worst <= kDecayTol, "free decay error " + fmt("%.2e", worst) + " (relative to e^-gT N0)");

  // Loss interleaved with a strong drive: self-convergence in dt.
  ScenarioConfig d = default_config(ScenarioKind::custom);
  d.modes[0].params.gamma_loss = 1e10;
  d.pumps[0].spec.mean_photon_number = 1e8;
  std::vector<Eigen::MatrixXcd> ms;
  for (int steps : {16, 32, 64}) {
    ScenarioConfig e = d;
    e.time.n_steps = steps;
    ms.push_back(simulate(resolve(e)).propagation.moments.M);
  }
  const double order = std::log2((ms[0] - ms[1]).norm() / (ms[1] - ms[2]).norm());
  o.check(order >= kMinOrder, "observed order " + fmt("%.3f", order));
  return o;
}

struct FrameDiff {
  double n = 0, K = 0, r = 0;
};

FrameDiff frame_difference(const ScenarioConfig& base, double v_ref) {
  ScenarioConfig a = base, b = base;
  a.v_ref = 0.0;
  b.v_ref = v_ref;
  const SimulationResult ra = simulate(resolve(a)), rb = simulate(resolve(b));
  const SchmidtData sa = schmidt_from_moment(ra.propagation.moments.M, ra.grid);
  const SchmidtData sb = schmidt_from_moment(rb.propagation.moments.M, rb.grid);
  FrameDiff d;
  d.n = std::abs(sb.mean_photon / sa.mean_photon - 1);
  d.K = std::abs(sb.schmidt_number / sa.schmidt_number - 1);
  const int m = std::min<int>({10, static_cast<int>(sa.r_values.size()), static_cast<int>(sb.r_values.size())});
  for (int l = 0; l < m; ++l) d.r = std::max(d.r, std::abs(sa.r_values(l) - sb.r_values(l)) / sa.r_values(0));
  return d;
}

std::string describe(const FrameDiff& d) {
  return "<n> " + fmt("%.1e", d.n) + ", K " + fmt("%.1e", d.K) + ", r_l " + fmt("%.1e", d.r);
}

Outcome frame_invariance() {
  Outcome o;
  // SPDC in a uniform medium: the comoving frame is an exact relabeling.
  ScenarioConfig spdc = default_config(ScenarioKind::spdc_lowgain);
  spdc.coupling.region.kind = NonlinearRegion::Kind::uniform;
  spdc.time = {0.0, 2e-11, 100, {}, 0};
  spdc.pumps[0].spec.center_z = 0.0;
  spdc.pumps[0].spec.mean_photon_number = 5e10;
  const FrameDiff a = frame_difference(spdc, 1.9e8);
  o.check(std::max({a.n, a.K, a.r}) <= kFrameTol, "SPDC lab vs v_ref=1.9e8: " + describe(a));

  // SFWM with the frame moving a whole number of z cells per half step.
  ScenarioConfig sfwm = default_config(ScenarioKind::custom);
  const KappaGrid g = make_grid(sfwm.n_points, sfwm.delta_kappa);
  const double v = sfwm.modes[0].params.v;
  const int steps = 50;
  sfwm.time = {0.0, steps * 4 * g.delta_z / v, steps, {}, 0};
  sfwm.pumps[0].spec.mean_photon_number = 1e8;
  const FrameDiff b = frame_difference(sfwm, v);
  o.check(std::max({b.n, b.K, b.r}) <= kFrameTol, "SFWM lab vs comoving: " + describe(b));

  // Generic step: the Kerr products see sub-cell shifts; reported only.
  sfwm.time.t1 *= 1.0137;
  const FrameDiff c = frame_difference(sfwm, v);
  o.detail += "; SFWM off-cell step (info): " + describe(c);
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> tests;
  SpdcRuns spdc;
  bool spdc_done = false;
  auto spdc_once = [&]() -> const SpdcRuns& {
    if (!spdc_done) {
      spdc = spdc_runs();
      spdc_done = true;
    }
    return spdc;
  };
  tests.emplace_back("symplectic structure under random drives", symplectic_suite);
  tests.emplace_back("purity and photon-number consistency", purity_suite);
  tests.emplace_back("low-gain SPDC oracle", [&] { return spdc_oracle(spdc_once()); });
  tests.emplace_back("low-gain product form", [&] { return product_form(spdc_once()); });
  tests.emplace_back("single-pump SPM squeezing curves", homodyne_curves);
  tests.emplace_back("Schmidt-mode homodyne identity", schmidt_homodyne);
  tests.emplace_back("dual-pump JSA at two gains", dual_pump);
  tests.emplace_back("loss oracle and Strang order", loss_oracle);
  tests.emplace_back("frame invariance", frame_invariance);

  int failures = 0;
  for (std::size_t i = 0; i < tests.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = tests[i].second();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %zu: %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, tests[i].first.c_str(),
                o.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
