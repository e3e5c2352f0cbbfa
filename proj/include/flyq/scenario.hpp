#pragma once

// Scenario files: a JSON description of one experiment, the pipelines that
// execute it, and the CSV tables they produce.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "flyq/coupling.hpp"
#include "flyq/resources.hpp"

namespace flyq {

struct ScenarioConfig {
  std::string resource_type = "noon";  // "noon" | "ecs"
  int photons = 1;
  double alpha = 1.0;
  double transmittivity = 0.9;
  int mode_u = 0;
  int mode_v = 0;
  double waist_m = 10e-6;
  std::string trajectory_type = "freefall";  // "freefall" | "uniform"
  double x0_over_waist = -4.0;
  double g = 9.82;
  double velocity = 1e-3;
  double omega0_rad_s = 1e3;
  double gamma_rad_s = 0.0;
  int truncation = 0;     // 0 = automatic
  double t_max_s = 0.0;   // 0 = until the atom leaves the mode
  int samples = 201;
  int n_traj = 1;
  std::uint64_t master_seed = 1;
  double tol = 1e-9;
  bool badcavity_enabled = false;
  double gamma_t_max = 50.0;
  std::vector<double> alpha_sweep;
  std::string output = "flyq.csv";

  bool operator==(const ScenarioConfig&) const = default;
};

/// Range checks shared by parsing and parameter sweeps; throws ConfigError.
void validate(const ScenarioConfig& config);

/// Parses and validates a scenario. Unknown keys, missing required keys and
/// out-of-range values throw ConfigError naming the key path and line.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

/// Canonical single-line JSON; parse_config(config_json(c)) == c.
std::string config_json(const ScenarioConfig& config);

/// Recovers the config echoed in the header of a CSV written by render_csv.
ScenarioConfig config_from_csv(const std::string& csv_text);

DrivingResource scenario_resource(const ScenarioConfig& config);
CouplingProfile scenario_profile(const ScenarioConfig& config);
/// Uniform grid of `samples` points on [0, t_max].
std::vector<double> scenario_times(const ScenarioConfig& config);

struct Table {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> notes;     // extra header lines
  std::vector<std::string> warnings;  // reported to the user, not written
};

/// Qubit observables along the transit: unitary when gamma = 0, quantum-jump
/// ensemble otherwise.
Table transit_curve(const ScenarioConfig& config, int threads = 1);

/// Reduced bad-cavity dynamics from |00> driven by the resource's covariance
/// matrix, on gamma t in [0, gamma_t_max]; the steady state goes in the notes.
Table badcavity_curve(const ScenarioConfig& config);

/// Steady-state negativity and discord against the ECS amplitude for each
/// value of alpha_sweep.
Table alpha_discord(const ScenarioConfig& config);

/// Sweepable parameter names: alpha, omega0, T, V, g.
const std::vector<std::string>& sweep_parameters();
ScenarioConfig with_parameter(const ScenarioConfig& config, const std::string& name, double value);

/// Final-time negativity, its standard error and discord at each grid value
/// (plus bad-cavity steady-state columns when enabled). The notes report the
/// row with the largest final negativity.
Table sweep(const ScenarioConfig& config, const std::string& name, const std::vector<double>& grid,
            int threads = 1);

/// Header (title, config echo, content hash) followed by the CSV body.
/// Numbers carry 17 significant digits.
std::string render_csv(const ScenarioConfig& config, const Table& table);

/// Git blob hash (SHA-1 of "blob <size>\0" + body) in hex.
std::string content_hash(const std::string& body);

/// Bundled configs for the transit, dissipation and bad-cavity
/// figures, keyed by file stem.
std::vector<std::pair<std::string, ScenarioConfig>> bundled_figures();

}  // namespace flyq
