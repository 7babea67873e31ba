#include "sqz/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <regex>
#include <set>

#include "sqz/errors.hpp"

namespace sqz {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items())
    if (!ok.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

double number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + " is missing '" + key + "'");
  if (!j.at(key).is_number()) throw ConfigError(where + "." + key + " must be a number");
  return j.at(key).get<double>();
}

double number_or(const json& j, const char* key, double fallback, const std::string& where) {
  return j.contains(key) ? number(j, key, where) : fallback;
}

int integer_or(const json& j, const char* key, int fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
  return j.at(key).get<int>();
}

std::string text(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + " is missing '" + key + "'");
  if (!j.at(key).is_string()) throw ConfigError(where + "." + key + " must be a string");
  return j.at(key).get<std::string>();
}

std::vector<double> numbers(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + " must be an array");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number()) throw ConfigError(where + " must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

ModeParams parse_mode(const json& j, const std::string& where) {
  check_keys(j, where, {"name", "v", "v_prime", "gamma_loss", "center_k", "center_omega"});
  ModeParams m;
  m.v = number(j, "v", where);
  m.v_prime = number_or(j, "v_prime", 0.0, where);
  m.gamma_loss = number_or(j, "gamma_loss", 0.0, where);
  m.center_k = j.contains("center_k") ? parse_wavenumber(j.at("center_k"), where + ".center_k") : 0.0;
  m.center_omega = number_or(j, "center_omega", 0.0, where);
  try {
    validate(m);
  } catch (const ConfigError& e) {
    throw ConfigError(where + ": " + e.what());
  }
  return m;
}

PumpConfig parse_pump(const json& j, const std::string& where) {
  check_keys(j, where, {"mode", "shape", "domain", "center_kappa", "bandwidth", "mean_photon_number",
                        "center_z", "file", "samples"});
  PumpConfig p;
  p.mode = text(j, "mode", where);
  p.spec.shape = parse_pump_shape(text(j, "shape", where));
  if (j.contains("domain")) p.spec.domain = parse_pump_domain(text(j, "domain", where));
  p.spec.center_kappa.clear();
  if (j.contains("center_kappa")) {
    const json& c = j.at("center_kappa");
    if (c.is_array()) {
      for (std::size_t i = 0; i < c.size(); ++i)
        p.spec.center_kappa.push_back(parse_wavenumber(c[i], where + ".center_kappa"));
    } else {
      p.spec.center_kappa.push_back(parse_wavenumber(c, where + ".center_kappa"));
    }
  } else {
    p.spec.center_kappa.push_back(0.0);
  }
  p.spec.bandwidth = parse_wavenumber(j.at("bandwidth"), where + ".bandwidth");
  p.spec.mean_photon_number = number(j, "mean_photon_number", where);
  p.spec.center_z = number_or(j, "center_z", 0.0, where);
  if (j.contains("file")) {
    p.file = text(j, "file", where);
    p.spec.custom_samples = load_custom_pump(p.file);
  } else if (j.contains("samples")) {
    for (const auto& row : j.at("samples")) {
      const std::vector<double> r = numbers(row, where + ".samples");
      if (r.size() != 3) throw ConfigError(where + ".samples rows are [kappa, re, im]");
      p.spec.custom_samples.emplace_back(r[0], cplx(r[1], r[2]));
    }
    std::sort(p.spec.custom_samples.begin(), p.spec.custom_samples.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  if (p.spec.shape == PumpShape::custom_array && p.spec.custom_samples.empty())
    throw ConfigError(where + ": custom_array needs 'file' or 'samples'");
  return p;
}

json pump_to_json(const PumpConfig& p) {
  json j{{"mode", p.mode},
         {"shape", to_string(p.spec.shape)},
         {"domain", to_string(p.spec.domain)},
         {"center_kappa", p.spec.center_kappa},
         {"bandwidth", p.spec.bandwidth},
         {"mean_photon_number", p.spec.mean_photon_number},
         {"center_z", p.spec.center_z}};
  if (!p.file.empty()) {
    j["file"] = p.file;
  } else if (!p.spec.custom_samples.empty()) {
    json rows = json::array();
    for (const auto& [k, a] : p.spec.custom_samples) rows.push_back({k, a.real(), a.imag()});
    j["samples"] = rows;
  }
  return j;
}

}  // namespace

ScenarioKind parse_scenario(const std::string& name) {
  if (name == "spdc_lowgain") return ScenarioKind::spdc_lowgain;
  if (name == "sfwm_homodyne") return ScenarioKind::sfwm_homodyne;
  if (name == "dualpump_jsa") return ScenarioKind::dualpump_jsa;
  if (name == "custom") return ScenarioKind::custom;
  throw ConfigError("unknown scenario '" + name + "'");
}

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::spdc_lowgain: return "spdc_lowgain";
    case ScenarioKind::sfwm_homodyne: return "sfwm_homodyne";
    case ScenarioKind::dualpump_jsa: return "dualpump_jsa";
    case ScenarioKind::custom: return "custom";
  }
  return "?";
}

OutputKind parse_output(const std::string& name) {
  if (name == "jsa") return OutputKind::jsa;
  if (name == "schmidt") return OutputKind::schmidt;
  if (name == "density") return OutputKind::density;
  if (name == "homodyne") return OutputKind::homodyne;
  if (name == "moments") return OutputKind::moments;
  if (name == "trace") return OutputKind::trace;
  throw ConfigError("unknown output '" + name + "'");
}

std::string to_string(OutputKind kind) {
  switch (kind) {
    case OutputKind::jsa: return "jsa";
    case OutputKind::schmidt: return "schmidt";
    case OutputKind::density: return "density";
    case OutputKind::homodyne: return "homodyne";
    case OutputKind::moments: return "moments";
    case OutputKind::trace: return "trace";
  }
  return "?";
}

std::string scheme_name(StepScheme scheme) {
  return scheme == StepScheme::split ? "split" : "midpoint";
}

const ModeParams& ScenarioConfig::mode(const std::string& name) const {
  for (const ModeConfig& m : modes)
    if (m.name == name) return m.params;
  throw ConfigError("no mode named '" + name + "'");
}

bool ScenarioConfig::wants(OutputKind kind) const {
  return std::find(outputs.begin(), outputs.end(), kind) != outputs.end();
}

double parse_wavenumber(const json& value, const std::string& where) {
  if (value.is_number()) return value.get<double>();
  if (!value.is_string()) throw ConfigError(where + " must be a number or a string with units");
  static const std::regex re(R"(^\s*([-+0-9.eE]+)\s*(cm\^-1|cm-1|1/cm|/cm|m\^-1|m-1|1/m|/m)?\s*$)");
  std::smatch m;
  const std::string s = value.get<std::string>();
  if (!std::regex_match(s, m, re)) throw ConfigError(where + ": cannot parse wavenumber '" + s + "'");
  double x;
  try {
    std::size_t used = 0;
    x = std::stod(m[1].str(), &used);
    if (used != m[1].str().size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw ConfigError(where + ": bad number in '" + s + "'");
  }
  const std::string unit = m[2].str();
  if (unit.find("cm") != std::string::npos) x *= 100.0;
  return x;
}

ScenarioConfig parse_config(const json& j) {
  try {
    check_keys(j, "config", {"scenario", "process", "signal_mode", "grid", "modes", "pumps", "coupling",
                             "time", "frame", "numerics", "outputs", "oracle_compare", "homodyne",
                             "dualpump"});
    ScenarioConfig c;
    c.scenario = parse_scenario(text(j, "scenario", "config"));
    if (j.contains("process")) c.process = parse_process(text(j, "process", "config"));

    const json& g = j.at("grid");
    check_keys(g, "grid", {"n_points", "delta_kappa"});
    c.n_points = integer_or(g, "n_points", 0, "grid");
    c.delta_kappa = parse_wavenumber(g.at("delta_kappa"), "grid.delta_kappa");

    if (!j.contains("modes") || !j.at("modes").is_array() || j.at("modes").empty())
      throw ConfigError("config needs a non-empty 'modes' array");
    for (std::size_t i = 0; i < j.at("modes").size(); ++i) {
      const json& m = j.at("modes")[i];
      const std::string where = "modes[" + std::to_string(i) + "]";
      c.modes.push_back({text(m, "name", where), parse_mode(m, where)});
    }
    c.signal_mode = j.contains("signal_mode") ? text(j, "signal_mode", "config") : c.modes[0].name;

    if (j.contains("pumps")) {
      if (!j.at("pumps").is_array()) throw ConfigError("'pumps' must be an array");
      for (std::size_t i = 0; i < j.at("pumps").size(); ++i)
        c.pumps.push_back(parse_pump(j.at("pumps")[i], "pumps[" + std::to_string(i) + "]"));
    }

    if (j.contains("coupling")) {
      const json& k = j.at("coupling");
      check_keys(k, "coupling", {"zeta2", "zeta3", "gamma_nl", "region"});
      if (k.contains("zeta2")) {
        const json& z = k.at("zeta2");
        if (z.is_number()) {
          c.coupling.zeta2 = z.get<double>();
        } else {
          const auto v = numbers(z, "coupling.zeta2");
          if (v.size() != 2) throw ConfigError("coupling.zeta2 must be a number or [re, im]");
          c.coupling.zeta2 = cplx(v[0], v[1]);
        }
      }
      if (k.contains("zeta3")) {
        const json& z = k.at("zeta3");
        check_keys(z, "coupling.zeta3", {"pppp", "ssp1p2", "sp1sp1", "sp2sp2", "p1p2p1p2"});
        c.coupling.zeta3.pppp = number_or(z, "pppp", 0.0, "coupling.zeta3");
        c.coupling.zeta3.ssp1p2 = number_or(z, "ssp1p2", 0.0, "coupling.zeta3");
        c.coupling.zeta3.sp1sp1 = number_or(z, "sp1sp1", 0.0, "coupling.zeta3");
        c.coupling.zeta3.sp2sp2 = number_or(z, "sp2sp2", 0.0, "coupling.zeta3");
        c.coupling.zeta3.p1p2p1p2 = number_or(z, "p1p2p1p2", 0.0, "coupling.zeta3");
      }
      if (k.contains("gamma_nl")) c.gamma_nl = number(k, "gamma_nl", "coupling");
      if (k.contains("region")) {
        const json& r = k.at("region");
        check_keys(r, "coupling.region", {"kind", "length", "center", "edge"});
        const std::string kind = text(r, "kind", "coupling.region");
        if (kind == "uniform") {
          c.coupling.region.kind = NonlinearRegion::Kind::uniform;
        } else if (kind == "finite") {
          c.coupling.region.kind = NonlinearRegion::Kind::finite;
        } else {
          throw ConfigError("coupling.region.kind must be 'uniform' or 'finite'");
        }
        c.coupling.region.length = number_or(r, "length", 0.0, "coupling.region");
        c.coupling.region.center = number_or(r, "center", 0.0, "coupling.region");
        c.coupling.region.edge = number_or(r, "edge", 0.0, "coupling.region");
      }
    }

    if (j.contains("time")) {
      const json& t = j.at("time");
      check_keys(t, "time", {"t0", "t1", "n_steps", "refine_windows", "steps_per_window"});
      c.time.t0 = number_or(t, "t0", 0.0, "time");
      c.time.t1 = number_or(t, "t1", 0.0, "time");
      c.time.n_steps = integer_or(t, "n_steps", 0, "time");
      c.time.steps_per_window = integer_or(t, "steps_per_window", 0, "time");
      if (t.contains("refine_windows"))
        for (const auto& w : t.at("refine_windows")) {
          const auto v = numbers(w, "time.refine_windows");
          if (v.size() != 2) throw ConfigError("time.refine_windows entries are [start, end]");
          c.time.refine_windows.emplace_back(v[0], v[1]);
        }
    }

    if (j.contains("frame")) {
      const json& f = j.at("frame");
      check_keys(f, "frame", {"v_ref"});
      if (f.contains("v_ref")) {
        const json& v = f.at("v_ref");
        if (v.is_number()) {
          c.v_ref = v.get<double>();
        } else if (!(v.is_string() && v.get<std::string>() == "signal")) {
          throw ConfigError("frame.v_ref must be a number or \"signal\"");
        }
      }
    }

    if (j.contains("numerics")) {
      const json& nm = j.at("numerics");
      check_keys(nm, "numerics", {"drive_sampling", "scheme"});
      if (nm.contains("drive_sampling"))
        c.sampling = parse_drive_sampling(text(nm, "drive_sampling", "numerics"));
      if (nm.contains("scheme")) {
        const std::string s = text(nm, "scheme", "numerics");
        if (s == "split") {
          c.scheme = StepScheme::split;
        } else if (s == "midpoint") {
          c.scheme = StepScheme::midpoint;
        } else {
          throw ConfigError("numerics.scheme must be 'split' or 'midpoint'");
        }
      }
    }

    if (j.contains("outputs"))
      for (const auto& o : j.at("outputs")) {
        if (!o.is_string()) throw ConfigError("outputs must be strings");
        c.outputs.push_back(parse_output(o.get<std::string>()));
      }
    if (j.contains("oracle_compare")) {
      if (!j.at("oracle_compare").is_boolean()) throw ConfigError("oracle_compare must be true or false");
      c.oracle_compare = j.at("oracle_compare").get<bool>();
    }

    if (j.contains("homodyne")) {
      const json& h = j.at("homodyne");
      check_keys(h, "homodyne", {"shapes", "phi0", "widths", "length"});
      for (const auto& s : h.at("shapes")) c.homodyne.shapes.push_back(parse_pulse_shape(s.get<std::string>()));
      c.homodyne.phi0 = numbers(h.at("phi0"), "homodyne.phi0");
      c.homodyne.widths = numbers(h.at("widths"), "homodyne.widths");
      c.homodyne.length = number(h, "length", "homodyne");
    }

    if (j.contains("dualpump")) {
      const json& d = j.at("dualpump");
      check_keys(d, "dualpump", {"targets", "tolerance", "photon_guess", "length", "margin", "bulk_steps",
                                 "edge_steps"});
      c.dualpump.targets = numbers(d.at("targets"), "dualpump.targets");
      c.dualpump.tolerance = number_or(d, "tolerance", 0.01, "dualpump");
      c.dualpump.photon_guess = number(d, "photon_guess", "dualpump");
      c.dualpump.length = number(d, "length", "dualpump");
      c.dualpump.margin = number_or(d, "margin", 0.0, "dualpump");
      c.dualpump.bulk_steps = integer_or(d, "bulk_steps", 40, "dualpump");
      c.dualpump.edge_steps = integer_or(d, "edge_steps", 16, "dualpump");
    }
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

json to_json(const ScenarioConfig& c) {
  json j;
  j["scenario"] = to_string(c.scenario);
  j["process"] = to_string(c.process);
  j["signal_mode"] = c.signal_mode;
  j["grid"] = {{"n_points", c.n_points}, {"delta_kappa", c.delta_kappa}};
  j["modes"] = json::array();
  for (const ModeConfig& m : c.modes)
    j["modes"].push_back({{"name", m.name},
                          {"v", m.params.v},
                          {"v_prime", m.params.v_prime},
                          {"gamma_loss", m.params.gamma_loss},
                          {"center_k", m.params.center_k},
                          {"center_omega", m.params.center_omega}});
  j["pumps"] = json::array();
  for (const PumpConfig& p : c.pumps) j["pumps"].push_back(pump_to_json(p));
  const Zeta3& z = c.coupling.zeta3;
  json coupling{{"zeta2", {c.coupling.zeta2.real(), c.coupling.zeta2.imag()}},
                {"zeta3",
                 {{"pppp", z.pppp},
                  {"ssp1p2", z.ssp1p2},
                  {"sp1sp1", z.sp1sp1},
                  {"sp2sp2", z.sp2sp2},
                  {"p1p2p1p2", z.p1p2p1p2}}},
                {"region",
                 {{"kind", c.coupling.region.kind == NonlinearRegion::Kind::uniform ? "uniform" : "finite"},
                  {"length", c.coupling.region.length},
                  {"center", c.coupling.region.center},
                  {"edge", c.coupling.region.edge}}}};
  if (c.gamma_nl) coupling["gamma_nl"] = *c.gamma_nl;
  j["coupling"] = coupling;
  json windows = json::array();
  for (const auto& [a, b] : c.time.refine_windows) windows.push_back({a, b});
  j["time"] = {{"t0", c.time.t0},
               {"t1", c.time.t1},
               {"n_steps", c.time.n_steps},
               {"refine_windows", windows},
               {"steps_per_window", c.time.steps_per_window}};
  j["frame"] = json::object();
  if (c.v_ref) j["frame"]["v_ref"] = *c.v_ref;
  else j["frame"]["v_ref"] = "signal";
  j["numerics"] = {{"drive_sampling", to_string(c.sampling)}, {"scheme", scheme_name(c.scheme)}};
  j["outputs"] = json::array();
  for (OutputKind o : c.outputs) j["outputs"].push_back(to_string(o));
  j["oracle_compare"] = c.oracle_compare;
  if (!c.homodyne.shapes.empty()) {
    json shapes = json::array();
    for (PulseShape s : c.homodyne.shapes) shapes.push_back(to_string(s));
    j["homodyne"] = {{"shapes", shapes},
                     {"phi0", c.homodyne.phi0},
                     {"widths", c.homodyne.widths},
                     {"length", c.homodyne.length}};
  }
  if (!c.dualpump.targets.empty())
    j["dualpump"] = {{"targets", c.dualpump.targets},       {"tolerance", c.dualpump.tolerance},
                     {"photon_guess", c.dualpump.photon_guess}, {"length", c.dualpump.length},
                     {"margin", c.dualpump.margin},         {"bulk_steps", c.dualpump.bulk_steps},
                     {"edge_steps", c.dualpump.edge_steps}};
  return j;
}

ScenarioConfig resolve(ScenarioConfig c) {
  make_grid(c.n_points, c.delta_kappa);  // validates the grid
  const ModeParams& sig = c.signal();
  for (const PumpConfig& p : c.pumps) c.mode(p.mode);

  switch (c.scenario) {
    case ScenarioKind::spdc_lowgain: c.process = Process::spdc; break;
    case ScenarioKind::sfwm_homodyne:
    case ScenarioKind::dualpump_jsa: c.process = Process::sfwm_single; break;
    case ScenarioKind::custom: break;
  }
  if (static_cast<int>(c.pumps.size()) < required_pumps(c.process))
    throw ConfigError("scenario " + to_string(c.scenario) + " (" + to_string(c.process) + ") needs " +
                      std::to_string(required_pumps(c.process)) + " pump(s)");

  if (c.gamma_nl) {
    const double z = gamma_to_zeta3(*c.gamma_nl, sig.center_omega, sig.v);
    Zeta3& t = c.coupling.zeta3;
    for (double* f : {&t.pppp, &t.ssp1p2, &t.sp1sp1, &t.sp2sp2, &t.p1p2p1p2})
      if (*f == 0) *f = z;
  }
  if (c.coupling.region.kind == NonlinearRegion::Kind::finite && !(c.coupling.region.length > 0))
    throw ConfigError("a finite nonlinear region needs a positive length");

  if (c.scenario == ScenarioKind::sfwm_homodyne) {
    const HomodyneConfig& h = c.homodyne;
    if (h.shapes.empty()) throw ConfigError("homodyne.shapes is empty");
    if (h.widths.size() != h.shapes.size())
      throw ConfigError("homodyne.widths needs one width per shape");
    if (!(h.length > 0)) throw ConfigError("homodyne.length must be positive");
    for (double p : h.phi0)
      if (!(p >= 0)) throw ConfigError("homodyne.phi0 values must be non-negative");
    if (sig.v_prime != 0 || sig.gamma_loss != 0)
      throw ConfigError("sfwm_homodyne compares against a dispersionless lossless formula; "
                        "set v_prime and gamma_loss to 0 or use the custom scenario");
    c.coupling.region.kind = NonlinearRegion::Kind::uniform;
    c.time.t0 = 0.0;
    c.time.t1 = h.length / sig.v;
    c.time.refine_windows.clear();
    c.sampling = DriveSampling::collocated;
    if (!c.v_ref) c.v_ref = sig.v;
  }

  if (c.scenario == ScenarioKind::dualpump_jsa) {
    DualPumpConfig& d = c.dualpump;
    if (d.targets.empty()) throw ConfigError("dualpump.targets is empty");
    for (double t : d.targets)
      if (!(t > 0)) throw ConfigError("dualpump.targets must be positive");
    if (!(d.tolerance > 0)) throw ConfigError("dualpump.tolerance must be positive");
    if (!(d.photon_guess > 0)) throw ConfigError("dualpump.photon_guess must be positive");
    if (!(d.length > 0)) throw ConfigError("dualpump.length must be positive");
    if (d.bulk_steps < 1 || d.edge_steps < 1) throw ConfigError("dualpump step counts must be positive");
    if (!(d.margin > 0)) d.margin = 8.0 / c.pumps.at(0).spec.bandwidth;
    const double v = sig.v;
    c.coupling.region.kind = NonlinearRegion::Kind::finite;
    c.coupling.region.length = d.length;
    c.coupling.region.center = d.margin + 0.5 * d.length;
    c.time.t0 = 0.0;
    c.time.t1 = (d.length + 2 * d.margin) / v;
    c.time.n_steps = d.bulk_steps;
    c.time.refine_windows = {{0.0, 2 * d.margin / v}, {d.length / v, c.time.t1}};
    c.time.steps_per_window = d.edge_steps;
    if (!c.v_ref) c.v_ref = v;
  }

  if (!(c.time.t1 > c.time.t0)) throw ConfigError("time.t1 must exceed time.t0");
  if (c.time.n_steps < 1) throw ConfigError("time.n_steps must be at least 1");
  if (!c.time.refine_windows.empty() && c.time.steps_per_window < 1)
    throw ConfigError("time.steps_per_window must be positive when refine_windows are given");
  // The SPDC oracle lives in the lab frame.
  if (!c.v_ref) c.v_ref = c.scenario == ScenarioKind::spdc_lowgain ? 0.0 : sig.v;

  for (OutputKind o : c.outputs) {
    const bool homodyne_only = c.scenario == ScenarioKind::sfwm_homodyne;
    const bool ok = homodyne_only ? (o == OutputKind::homodyne || o == OutputKind::trace)
                                  : (o != OutputKind::homodyne || c.scenario == ScenarioKind::custom);
    if (!ok)
      throw ConfigError("output '" + to_string(o) + "' is not available for scenario " +
                        to_string(c.scenario));
  }
  if (c.scenario == ScenarioKind::custom && c.wants(OutputKind::homodyne) &&
      c.process == Process::spdc)
    throw ConfigError("homodyne output uses the pump as LO and needs an SFWM process");
  return c;
}

}  // namespace sqz
