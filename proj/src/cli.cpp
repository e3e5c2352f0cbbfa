#include "flyq/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "flyq/errors.hpp"
#include "flyq/scenario.hpp"

namespace flyq {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::string param;
  std::string grid;
};

fs::path output_path(const Options& opt, const ScenarioConfig& config, const std::string& suffix = "") {
  fs::path p(config.output);
  if (!suffix.empty()) p = p.parent_path() / (p.stem().string() + suffix + p.extension().string());
  if (!opt.out_dir.empty()) p = fs::path(opt.out_dir) / p.filename();
  return p;
}

void write_table(const fs::path& path, const ScenarioConfig& config, const Table& table) {
  for (const auto& w : table.warnings) std::cerr << "warning: " << w << "\n";
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << render_csv(config, table);
  std::cout << "wrote " << path.string() << "\n";
}

ScenarioConfig prepared(const Options& opt) {
  ScenarioConfig config = load_config(opt.config);
  if (opt.seed) config.master_seed = *opt.seed;
  return config;
}

void run_all(const Options& opt, const ScenarioConfig& config) {
  write_table(output_path(opt, config), config, transit_curve(config, opt.threads));
  if (config.badcavity_enabled) {
    write_table(output_path(opt, config, "_badcavity"), config, badcavity_curve(config));
    if (!config.alpha_sweep.empty()) {
      write_table(output_path(opt, config, "_alpha"), config, alpha_discord(config));
    }
  }
}

void run_sweep(const Options& opt) {
  const ScenarioConfig config = prepared(opt);
  const Table table = sweep(config, opt.param, parse_grid(opt.grid), opt.threads);
  write_table(output_path(opt, config, "_sweep_" + opt.param), config, table);
  std::cout << table.notes.back() << "\n";
}

void run_figures(const Options& opt) {
  const fs::path dir = opt.out_dir.empty() ? fs::path("figures") : fs::path(opt.out_dir);
  fs::create_directories(dir);
  Options local = opt;
  local.out_dir = dir.string();
  for (auto [name, config] : bundled_figures()) {
    if (opt.seed) config.master_seed = *opt.seed;
    std::ofstream(dir / (name + ".json")) << config_json(config) << "\n";
    run_all(local, config);
  }
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  auto to_double = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw ConfigError("grid", "cannot parse \"" + s + "\" as a number");
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(to_double(part));
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
      throw ConfigError("grid", "expected start:stop:step with step > 0 and stop >= start");
    }
    const long n = std::lround(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    for (long k = 0; k <= n; ++k) grid.push_back(parts[0] + static_cast<double>(k) * parts[2]);
  } else {
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) grid.push_back(to_double(part));
  }
  if (grid.empty()) throw ConfigError("grid", "empty grid");
  return grid;
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Entanglement transfer from correlated light to flying qubits"};
  app.require_subcommand(1);
  Options opt;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", opt.config, "Scenario JSON file");
    if (needs_config) c->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out_dir, "Output directory");
    sub->add_option("--seed", seed, "Master seed (overrides the config)");
    sub->add_option("--threads", opt.threads, "Worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
  };

  CLI::App* run = app.add_subcommand("run", "Run one scenario");
  add_common(run, true);
  CLI::App* sw = app.add_subcommand("sweep", "Final-time observables over a parameter grid");
  add_common(sw, true);
  sw->add_option("--param", opt.param, "alpha, omega0, T, V or g")
      ->required()
      ->check(CLI::IsMember(sweep_parameters()));
  sw->add_option("--grid", opt.grid, "start:stop:step or a comma-separated list")->required();
  CLI::App* figs = app.add_subcommand("figures", "Write and run the bundled figure scenarios");
  add_common(figs, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (CLI::App* sub : {run, sw, figs}) {
    if (sub->parsed() && sub->count("--seed") > 0) opt.seed = seed;
  }

  try {
    if (run->parsed()) {
      run_all(opt, prepared(opt));
    } else if (sw->parsed()) {
      run_sweep(opt);
    } else {
      run_figures(opt);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const TruncationError& e) {
    std::cerr << "truncation error: " << e.what();
    if (e.required() > 0) std::cerr << " (needs truncation >= " << e.required() << ")";
    std::cerr << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace flyq
