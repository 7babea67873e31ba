#include <CLI11.hpp>
#include <chrono>
#include <iostream>

#include "sqz/errors.hpp"
#include "sqz/export.hpp"
#include "sqz/scenarios.hpp"

namespace {

constexpr int kConfigFailure = 2;
constexpr int kNumericFailure = 3;
constexpr int kIOFailure = 4;

void print_digest(const sqz::Report& r, std::ostream& out) {
  const nlohmann::json& s = r.summary;
  out << sqz::kVersion << "  scenario " << s.value("scenario", "?") << '\n';
  if (s.contains("state")) {
    const auto& st = s["state"];
    out << "  <n> = " << st["mean_photon"] << "   K = " << st["schmidt_number"] << '\n';
  }
  if (s.contains("symplectic_residual")) out << "  symplectic residual " << s["symplectic_residual"] << '\n';
  if (s.contains("oracle")) {
    for (const auto& [k, v] : s["oracle"].items()) out << "  " << k << " = " << v << '\n';
  }
  if (s.contains("homodyne") && s["homodyne"].is_array()) {
    for (const auto& h : s["homodyne"])
      out << "  " << h["shape"].get<std::string>() << ": C = " << h["shape_constant"]
          << ", max |V- numeric - analytic| = " << h["max_abs_difference_db"] << " dB\n";
  } else if (s.contains("homodyne")) {
    out << "  V- = " << s["homodyne"]["v_min_db"] << " dB, V+ = " << s["homodyne"]["v_max_db"] << " dB\n";
  }
  if (s.contains("dualpump")) {
    for (const auto& d : s["dualpump"])
      out << "  target " << d["target"] << ": N_pump = " << d["pump_photons"]
          << ", <n> = " << d["state"]["mean_photon"] << ", K = " << d["state"]["schmidt_number"]
          << ", reshape = " << d["reshape"] << ", skewness = " << d["skewness"] << '\n';
  }
  for (const std::string& w : r.warnings) out << "  warning: " << w << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Squeezed-light waveguide simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "sqz_out";
  sqz::RunOptions options;
  int steps = 0, grid = 0;
  CLI::App* run = app.add_subcommand("run", "Run a scenario from a JSON config");
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--out", out_dir, "Output directory");
  run->add_flag("--with-oracle", options.with_oracle, "Compare against the available oracle");
  run->add_option("--steps", steps, "Override the number of time steps")->check(CLI::PositiveNumber);
  run->add_option("--grid", grid, "Override the number of grid points")->check(CLI::PositiveNumber);
  run->add_flag("--trace", options.trace, "Write the per-step trace");

  CLI::App* scen = app.add_subcommand("scenarios", "Built-in scenarios");
  scen->require_subcommand(1);
  scen->add_subcommand("list", "List scenario kinds");
  std::string show_name;
  CLI::App* show = scen->add_subcommand("show", "Print the default config of a scenario");
  show->add_option("name", show_name, "Scenario name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigFailure;
  }

  try {
    if (scen->parsed()) {
      if (show->parsed()) {
        std::cout << sqz::to_json(sqz::default_config(sqz::parse_scenario(show_name))).dump(2) << '\n';
      } else {
        for (const auto& s : sqz::list_scenarios()) std::cout << s.name << "\t" << s.description << '\n';
      }
      return 0;
    }
    if (steps > 0) options.steps = steps;
    if (grid > 0) options.grid = grid;
    const auto start = std::chrono::steady_clock::now();
    const sqz::Report report = sqz::run(sqz::load_config(config_path), options);
    const auto files = sqz::export_report(report, out_dir);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    print_digest(report, std::cout);
    std::cout << "  wrote " << files.size() << " files to " << out_dir << " in " << secs << " s\n";
    return 0;
  } catch (const sqz::IOError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIOFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigFailure;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  }
}
