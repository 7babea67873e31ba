#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "sqz/config.hpp"
#include "sqz/errors.hpp"
#include "sqz/scenarios.hpp"

using namespace sqz;
using nlohmann::json;

namespace {

json minimal() {
  return json::parse(R"({
    "scenario": "custom",
    "process": "sfwm_single",
    "grid": {"n_points": 32, "delta_kappa": 1000},
    "modes": [{"name": "P", "v": 2e8, "v_prime": 1, "center_omega": 1.2e15}],
    "pumps": [{"mode": "P", "shape": "gaussian", "bandwidth": 3000, "mean_photon_number": 1e6}],
    "coupling": {"gamma_nl": 1.0},
    "time": {"t0": 0, "t1": 1e-10, "n_steps": 10},
    "outputs": ["schmidt"]
  })");
}

}  // namespace

TEST(Wavenumber, Units) {
  EXPECT_DOUBLE_EQ(parse_wavenumber(json(4180.0), "x"), 4180.0);
  EXPECT_NEAR(parse_wavenumber(json("41.8 cm^-1"), "x"), 4180.0, 1e-9);
  EXPECT_NEAR(parse_wavenumber(json("41.8cm-1"), "x"), 4180.0, 1e-9);
  EXPECT_NEAR(parse_wavenumber(json("41.8 1/cm"), "x"), 4180.0, 1e-9);
  EXPECT_NEAR(parse_wavenumber(json("-62.7 /cm"), "x"), -6270.0, 1e-9);
  EXPECT_DOUBLE_EQ(parse_wavenumber(json("4180 m^-1"), "x"), 4180.0);
  EXPECT_DOUBLE_EQ(parse_wavenumber(json("1e3"), "x"), 1000.0);
  EXPECT_THROW(parse_wavenumber(json("12 furlongs"), "x"), ConfigError);
  EXPECT_THROW(parse_wavenumber(json(true), "x"), ConfigError);
}

TEST(Config, ParsesMinimal) {
  const ScenarioConfig c = parse_config(minimal());
  EXPECT_EQ(c.scenario, ScenarioKind::custom);
  EXPECT_EQ(c.n_points, 32);
  EXPECT_EQ(c.signal_mode, "P");
  EXPECT_DOUBLE_EQ(c.signal().v, 2e8);
  ASSERT_EQ(c.pumps.size(), 1u);
  EXPECT_DOUBLE_EQ(c.pumps[0].spec.bandwidth, 3000.0);
  ASSERT_TRUE(c.gamma_nl);
  EXPECT_TRUE(c.wants(OutputKind::schmidt));
  EXPECT_FALSE(c.wants(OutputKind::jsa));
}

TEST(Config, RoundTrip) {
  for (ScenarioKind k : {ScenarioKind::spdc_lowgain, ScenarioKind::sfwm_homodyne, ScenarioKind::dualpump_jsa,
                         ScenarioKind::custom}) {
    const json a = to_json(default_config(k));
    const json b = to_json(parse_config(a));
    EXPECT_EQ(a, b) << to_string(k);
  }
}

TEST(Config, ResolveIsIdempotent) {
  for (ScenarioKind k : {ScenarioKind::spdc_lowgain, ScenarioKind::sfwm_homodyne, ScenarioKind::dualpump_jsa,
                         ScenarioKind::custom}) {
    const ScenarioConfig once = resolve(default_config(k));
    EXPECT_EQ(to_json(resolve(once)), to_json(once)) << to_string(k);
  }
}

TEST(Config, GammaFillsZeta) {
  const ScenarioConfig c = resolve(parse_config(minimal()));
  EXPECT_DOUBLE_EQ(c.coupling.zeta3.pppp, gamma_to_zeta3(1.0, 1.2e15, 2e8));
  EXPECT_DOUBLE_EQ(c.frame_velocity(), 2e8);
}

TEST(Config, RejectsUnknownKeys) {
  json j = minimal();
  j["gird"] = 1;
  EXPECT_THROW(parse_config(j), ConfigError);
  j = minimal();
  j["modes"][0]["speed"] = 1;
  EXPECT_THROW(parse_config(j), ConfigError);
  j = minimal();
  j["pumps"][0]["colour"] = "red";
  EXPECT_THROW(parse_config(j), ConfigError);
}

TEST(Config, RejectsBadValues) {
  json j = minimal();
  j["grid"]["n_points"] = 31;
  EXPECT_THROW(resolve(parse_config(j)), ConfigError);
  j = minimal();
  j["modes"][0]["v"] = -1;
  EXPECT_THROW(parse_config(j), ConfigError);
  j = minimal();
  j["pumps"][0]["shape"] = "triangle";
  EXPECT_THROW(parse_config(j), ConfigError);
  j = minimal();
  j["pumps"][0]["mode"] = "Q";
  EXPECT_THROW(resolve(parse_config(j)), ConfigError);
  j = minimal();
  j["time"]["t1"] = 0;
  EXPECT_THROW(resolve(parse_config(j)), ConfigError);
  j = minimal();
  j["outputs"] = {"nonsense"};
  EXPECT_THROW(parse_config(j), ConfigError);
  j = minimal();
  j["process"] = "sfwm_dual";
  EXPECT_THROW(resolve(parse_config(j)), ConfigError);
  j = minimal();
  j["grid"]["n_points"] = "many";
  EXPECT_THROW(parse_config(j), ConfigError);
}

TEST(Config, HomodyneNeedsDispersionless) {
  ScenarioConfig c = default_config(ScenarioKind::sfwm_homodyne);
  c.modes[0].params.v_prime = 1.0;
  EXPECT_THROW(resolve(c), ConfigError);
}

TEST(Config, OutputCompatibility) {
  ScenarioConfig c = default_config(ScenarioKind::spdc_lowgain);
  c.outputs = {OutputKind::homodyne};
  EXPECT_THROW(resolve(c), ConfigError);
}

TEST(Config, DualPumpDerivesTimesAndRegion) {
  const ScenarioConfig c = resolve(default_config(ScenarioKind::dualpump_jsa));
  const double v = c.signal().v, L = c.dualpump.length, m = c.dualpump.margin;
  EXPECT_GT(m, 0.0);
  EXPECT_EQ(c.coupling.region.kind, NonlinearRegion::Kind::finite);
  EXPECT_DOUBLE_EQ(c.coupling.region.center, m + L / 2);
  EXPECT_DOUBLE_EQ(c.time.t1, (L + 2 * m) / v);
  EXPECT_EQ(c.time.refine_windows.size(), 2u);
}

TEST(Config, LoadsFilesAndReportsMissing) {
  const auto dir = std::filesystem::temp_directory_path() / "sqz_config_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "c.json";
  std::ofstream(path) << minimal().dump();
  EXPECT_EQ(load_config(path.string()).n_points, 32);
  EXPECT_THROW(load_config((dir / "absent.json").string()), ConfigError);
  std::ofstream(dir / "broken.json") << "{ not json";
  EXPECT_THROW(load_config((dir / "broken.json").string()), ConfigError);
  std::filesystem::remove_all(dir);
}

TEST(Config, CustomPumpFromSamplesAndFile) {
  json j = minimal();
  j["pumps"][0]["shape"] = "custom_array";
  j["pumps"][0]["samples"] = {{-2000, 0, 0}, {0, 1, 0}, {2000, 0, 0}};
  EXPECT_EQ(parse_config(j).pumps[0].spec.custom_samples.size(), 3u);
  j["pumps"][0].erase("samples");
  EXPECT_THROW(parse_config(j), ConfigError);
  const auto path = std::filesystem::temp_directory_path() / "sqz_pump.txt";
  std::ofstream(path) << "# kappa re im\n-2000 0 0\n0, 1, 0.5\n2000 0 0\n";
  j["pumps"][0]["file"] = path.string();
  const ScenarioConfig c = parse_config(j);
  ASSERT_EQ(c.pumps[0].spec.custom_samples.size(), 3u);
  EXPECT_EQ(c.pumps[0].spec.custom_samples[1].second, cplx(1, 0.5));
  std::filesystem::remove(path);
}
