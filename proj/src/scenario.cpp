#include "flyq/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "flyq/badcavity.hpp"
#include "flyq/errors.hpp"
#include "flyq/measures.hpp"
#include "flyq/trajectories.hpp"
#include "flyq/unitary_dynamics.hpp"

namespace flyq {

namespace {

using json = nlohmann::json;

class ConfigReader {
 public:
  explicit ConfigReader(const std::string& text) : text_(text) {}

  int line_of(const std::vector<std::string>& path) const {
    std::size_t pos = 0;
    for (const auto& key : path) {
      const std::size_t found = text_.find("\"" + key + "\"", pos);
      if (found == std::string::npos) return 0;
      pos = found;
    }
    return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
  }

  [[noreturn]] void fail(const std::vector<std::string>& path, const std::string& what) const {
    std::string field;
    for (const auto& k : path) field += (field.empty() ? "" : ".") + k;
    const int line = line_of(path);
    throw ConfigError(field, line > 0 ? what + " (line " + std::to_string(line) + ")" : what);
  }

  void expect_keys(const json& obj, const std::vector<std::string>& path, const std::set<std::string>& allowed,
                   const std::set<std::string>& required) const {
    if (!obj.is_object()) fail(path, "expected an object");
    for (const auto& [key, value] : obj.items()) {
      if (!allowed.count(key)) {
        auto p = path;
        p.push_back(key);
        fail(p, "unknown key");
      }
    }
    for (const auto& key : required) {
      if (!obj.contains(key)) {
        auto p = path;
        p.push_back(key);
        fail(p, "missing required key");
      }
    }
  }

  double number(const json& obj, std::vector<std::string> path, double fallback) const {
    const std::string key = path.back();
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
  }

  long long integer(const json& obj, std::vector<std::string> path, long long fallback) const {
    const std::string key = path.back();
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<long long>();
  }

  std::string string(const json& obj, std::vector<std::string> path, const std::string& fallback) const {
    const std::string key = path.back();
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
  }

 private:
  const std::string& text_;
};

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Row of qubit observables; rho is in ascending basis order |q1 q2>.
std::vector<double> qubit_columns(const Matrix& rho) {
  const DensityOperator op(two_qubit_layout(), rho);
  return {negativity(rho), discord(op),
          rho(3, 3).real(), rho(2, 2).real(), rho(1, 1).real(), rho(0, 0).real(),
          rho(2, 1).real(), rho(2, 1).imag(), rho(2, 0).real(), rho(2, 0).imag()};
}

const std::vector<std::string> kStateColumns{"rho_11_11", "rho_10_10", "rho_01_01", "rho_00_00",
                                             "re_rho_10_01", "im_rho_10_01", "re_rho_10_00", "im_rho_10_00"};

std::vector<DrivenPair> driven_pairs(const ScenarioConfig& config) {
  const CouplingProfile profile = scenario_profile(config);
  return {DrivenPair{kPair1A, profile}, DrivenPair{kPair2B, profile}};
}

struct FinalValues {
  double negativity;
  double stderr_;
  double discord;
};

// Eigenvalues below 1e-10 are truncation residue of the loaded state; keeping
// them only inflates the purifier.
StateVector jump_initial_state(const DrivingResource& resource, const CavityLoad& load) {
  return with_ground_qubits(purify(load_cavities(resource, load), 1e-10).normalized());
}

FinalValues final_values(const ScenarioConfig& config, int threads) {
  const std::vector<double> times = scenario_times(config);
  const DrivingResource resource = scenario_resource(config);
  const CavityLoad load(config.transmittivity);
  if (config.gamma_rad_s == 0.0) {
    const double mu = scenario_profile(config).pulse_area(times.back());
    const DensityOperator rho = UnitaryProtocol(resource, load).qubits(mu, mu);
    return {negativity(rho), 0.0, discord(rho)};
  }
  const auto pairs = driven_pairs(config);
  JumpConfig jc{config.gamma_rad_s, config.n_traj, config.master_seed, config.tol, {times.back()}};
  const StateVector initial = jump_initial_state(resource, load);
  const EnsembleEstimate est = run_ensemble(initial, pairs, jc, threads);
  const DensityOperator rho(two_qubit_layout(), est.mean_rho.back());
  return {est.negativity.back(), est.negativity_stderr.back(), discord(rho)};
}

DensityOperator badcavity_steady(const DrivingResource& resource) {
  return steady_state(reduced_generator(kossakowski(driving_covariance(resource))));
}

json config_to_object(const ScenarioConfig& c) {
  json resource{{"type", c.resource_type}};
  if (c.resource_type == "noon") {
    resource["N"] = c.photons;
  } else {
    resource["alpha"] = c.alpha;
  }
  json trajectory{{"type", c.trajectory_type}, {"x0_over_waist", c.x0_over_waist}};
  if (c.trajectory_type == "freefall") {
    trajectory["g"] = c.g;
  } else {
    trajectory["V"] = c.velocity;
  }
  return json{{"resource", resource},
              {"T", c.transmittivity},
              {"mode", {{"u", c.mode_u}, {"v", c.mode_v}, {"waist_m", c.waist_m}}},
              {"trajectory", trajectory},
              {"omega0_rad_s", c.omega0_rad_s},
              {"gamma_rad_s", c.gamma_rad_s},
              {"truncation", c.truncation},
              {"time_grid", {{"t_max_s", c.t_max_s}, {"samples", c.samples}}},
              {"mc", {{"n_traj", c.n_traj}, {"master_seed", c.master_seed}, {"tol", c.tol}}},
              {"badcavity",
               {{"enabled", c.badcavity_enabled}, {"gamma_t_max", c.gamma_t_max}, {"alpha_sweep", c.alpha_sweep}}},
              {"output", c.output}};
}

}  // namespace

void validate(const ScenarioConfig& c) {
  if (c.resource_type != "noon" && c.resource_type != "ecs") {
    throw ConfigError("resource.type", "must be \"noon\" or \"ecs\"");
  }
  if (c.resource_type == "noon" && c.photons < 0) throw ConfigError("resource.N", "must be >= 0");
  if (c.resource_type == "ecs" && !(c.alpha > 0.0)) throw ConfigError("resource.alpha", "must be > 0");
  if (!(c.transmittivity >= 0.0 && c.transmittivity <= 1.0)) throw ConfigError("T", "must lie in [0, 1]");
  if (c.mode_u < 0) throw ConfigError("mode.u", "must be >= 0");
  if (c.mode_v != 0) throw ConfigError("mode.v", "only v = 0 is supported");
  if (!(c.waist_m > 0.0)) throw ConfigError("mode.waist_m", "must be > 0");
  if (c.trajectory_type != "freefall" && c.trajectory_type != "uniform") {
    throw ConfigError("trajectory.type", "must be \"freefall\" or \"uniform\"");
  }
  if (!(c.x0_over_waist < 0.0)) throw ConfigError("trajectory.x0_over_waist", "must be < 0");
  if (c.trajectory_type == "freefall" && !(c.g > 0.0)) throw ConfigError("trajectory.g", "must be > 0");
  if (c.trajectory_type == "uniform" && !(c.velocity > 0.0)) throw ConfigError("trajectory.V", "must be > 0");
  if (!(c.omega0_rad_s > 0.0)) throw ConfigError("omega0_rad_s", "must be > 0");
  if (!(c.gamma_rad_s >= 0.0)) throw ConfigError("gamma_rad_s", "must be >= 0");
  if (c.truncation < 0) throw ConfigError("truncation", "must be >= 0");
  if (!(c.t_max_s >= 0.0)) throw ConfigError("time_grid.t_max_s", "must be >= 0");
  if (c.samples < 2) throw ConfigError("time_grid.samples", "must be >= 2");
  if (c.n_traj < 1) throw ConfigError("mc.n_traj", "must be >= 1");
  if (!(c.tol > 0.0)) throw ConfigError("mc.tol", "must be > 0");
  if (!(c.gamma_t_max > 0.0)) throw ConfigError("badcavity.gamma_t_max", "must be > 0");
  for (double a : c.alpha_sweep) {
    if (!(a > 0.0)) throw ConfigError("badcavity.alpha_sweep", "values must be > 0");
  }
  if (c.output.empty()) throw ConfigError("output", "must not be empty");
}

ScenarioConfig parse_config(const std::string& text) {
  const ConfigReader r(text);
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n'));
    throw ConfigError("", "malformed JSON at line " + std::to_string(line) + ": " + e.what());
  }

  r.expect_keys(root, {},
                {"resource", "T", "mode", "trajectory", "omega0_rad_s", "gamma_rad_s", "truncation", "time_grid",
                 "mc", "badcavity", "output"},
                {"resource", "T", "mode", "trajectory", "omega0_rad_s"});
  ScenarioConfig c;

  const json& res = root.at("resource");
  r.expect_keys(res, {"resource"}, {"type", "N", "alpha"}, {"type"});
  c.resource_type = r.string(res, {"resource", "type"}, "");
  if (c.resource_type == "noon") {
    if (res.contains("alpha")) r.fail({"resource", "alpha"}, "not allowed for a noon resource");
    if (!res.contains("N")) r.fail({"resource", "N"}, "missing required key");
    c.photons = static_cast<int>(r.integer(res, {"resource", "N"}, 1));
  } else if (c.resource_type == "ecs") {
    if (res.contains("N")) r.fail({"resource", "N"}, "not allowed for an ecs resource");
    if (!res.contains("alpha")) r.fail({"resource", "alpha"}, "missing required key");
    c.alpha = r.number(res, {"resource", "alpha"}, 1.0);
  } else {
    r.fail({"resource", "type"}, "must be \"noon\" or \"ecs\"");
  }

  c.transmittivity = r.number(root, {"T"}, c.transmittivity);

  const json& mode = root.at("mode");
  r.expect_keys(mode, {"mode"}, {"u", "v", "waist_m"}, {"u", "waist_m"});
  c.mode_u = static_cast<int>(r.integer(mode, {"mode", "u"}, 0));
  c.mode_v = static_cast<int>(r.integer(mode, {"mode", "v"}, 0));
  c.waist_m = r.number(mode, {"mode", "waist_m"}, c.waist_m);

  const json& traj = root.at("trajectory");
  r.expect_keys(traj, {"trajectory"}, {"type", "x0_over_waist", "g", "V"}, {"type", "x0_over_waist"});
  c.trajectory_type = r.string(traj, {"trajectory", "type"}, "");
  c.x0_over_waist = r.number(traj, {"trajectory", "x0_over_waist"}, c.x0_over_waist);
  if (c.trajectory_type == "freefall") {
    if (traj.contains("V")) r.fail({"trajectory", "V"}, "not allowed for a freefall trajectory");
    c.g = r.number(traj, {"trajectory", "g"}, c.g);
  } else if (c.trajectory_type == "uniform") {
    if (traj.contains("g")) r.fail({"trajectory", "g"}, "not allowed for a uniform trajectory");
    if (!traj.contains("V")) r.fail({"trajectory", "V"}, "missing required key");
    c.velocity = r.number(traj, {"trajectory", "V"}, c.velocity);
  } else {
    r.fail({"trajectory", "type"}, "must be \"freefall\" or \"uniform\"");
  }

  c.omega0_rad_s = r.number(root, {"omega0_rad_s"}, c.omega0_rad_s);
  c.gamma_rad_s = r.number(root, {"gamma_rad_s"}, c.gamma_rad_s);
  c.truncation = static_cast<int>(r.integer(root, {"truncation"}, c.truncation));

  if (root.contains("time_grid")) {
    const json& grid = root.at("time_grid");
    r.expect_keys(grid, {"time_grid"}, {"t_max_s", "samples"}, {});
    c.t_max_s = r.number(grid, {"time_grid", "t_max_s"}, c.t_max_s);
    c.samples = static_cast<int>(r.integer(grid, {"time_grid", "samples"}, c.samples));
  }
  if (root.contains("mc")) {
    const json& mc = root.at("mc");
    r.expect_keys(mc, {"mc"}, {"n_traj", "master_seed", "tol"}, {});
    c.n_traj = static_cast<int>(r.integer(mc, {"mc", "n_traj"}, c.n_traj));
    if (mc.contains("master_seed")) {
      const json& s = mc.at("master_seed");
      if (!s.is_number_unsigned()) r.fail({"mc", "master_seed"}, "expected a non-negative integer");
      c.master_seed = s.get<std::uint64_t>();
    }
    c.tol = r.number(mc, {"mc", "tol"}, c.tol);
  }
  if (root.contains("badcavity")) {
    const json& bc = root.at("badcavity");
    r.expect_keys(bc, {"badcavity"}, {"enabled", "gamma_t_max", "alpha_sweep"}, {});
    if (bc.contains("enabled")) {
      if (!bc.at("enabled").is_boolean()) r.fail({"badcavity", "enabled"}, "expected true or false");
      c.badcavity_enabled = bc.at("enabled").get<bool>();
    }
    c.gamma_t_max = r.number(bc, {"badcavity", "gamma_t_max"}, c.gamma_t_max);
    if (bc.contains("alpha_sweep")) {
      const json& list = bc.at("alpha_sweep");
      if (!list.is_array()) r.fail({"badcavity", "alpha_sweep"}, "expected an array of numbers");
      for (const json& v : list) {
        if (!v.is_number()) r.fail({"badcavity", "alpha_sweep"}, "expected an array of numbers");
        c.alpha_sweep.push_back(v.get<double>());
      }
    }
  }
  c.output = r.string(root, {"output"}, c.output);

  try {
    validate(c);
  } catch (const ConfigError& e) {
    std::vector<std::string> path;
    std::stringstream ss(e.field());
    for (std::string part; std::getline(ss, part, '.');) path.push_back(part);
    const int line = r.line_of(path);
    if (line > 0) throw ConfigError(e.field(), std::string(e.what()).substr(e.field().size() + 2) +
                                                   " (line " + std::to_string(line) + ")");
    throw;
  }
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_json(const ScenarioConfig& config) { return config_to_object(config).dump(); }

ScenarioConfig config_from_csv(const std::string& csv_text) {
  const std::string tag = "# config: ";
  std::stringstream ss(csv_text);
  for (std::string line; std::getline(ss, line);) {
    if (line.rfind(tag, 0) == 0) return parse_config(line.substr(tag.size()));
  }
  throw ConfigError("", "no config echo found in CSV header");
}

DrivingResource scenario_resource(const ScenarioConfig& config) {
  if (config.resource_type == "noon") return DrivingResource::noon(config.photons, config.truncation);
  return DrivingResource::ecs(config.alpha, config.truncation);
}

CouplingProfile scenario_profile(const ScenarioConfig& config) {
  const ModeGeometry mode{config.mode_u, config.mode_v, config.waist_m};
  const double x0 = config.x0_over_waist * config.waist_m;
  if (config.trajectory_type == "freefall") {
    return CouplingProfile::hermite_gauss(config.omega0_rad_s, mode, FreeFall{x0, config.g});
  }
  return CouplingProfile::hermite_gauss(config.omega0_rad_s, mode, Uniform{x0, config.velocity});
}

std::vector<double> scenario_times(const ScenarioConfig& config) {
  const double t_max = config.t_max_s > 0.0 ? config.t_max_s : scenario_profile(config).exit_time();
  std::vector<double> times(static_cast<std::size_t>(config.samples));
  for (int k = 0; k < config.samples; ++k) times[k] = t_max * k / (config.samples - 1);
  times.back() = t_max;
  return times;
}

Table transit_curve(const ScenarioConfig& config, int threads) {
  validate(config);
  Table table;
  table.columns = {"t_s", "mu1", "negativity", "negativity_stderr", "discord", "mean_jumps"};
  table.columns.insert(table.columns.end(), kStateColumns.begin(), kStateColumns.end());

  const std::vector<double> times = scenario_times(config);
  const CouplingProfile profile = scenario_profile(config);
  const std::vector<double> mu = profile.pulse_areas(times);
  const DrivingResource resource = scenario_resource(config);
  const CavityLoad load(config.transmittivity);

  auto add_row = [&](std::size_t k, const Matrix& rho, double stderr_, double jumps) {
    const std::vector<double> q = qubit_columns(rho);
    std::vector<double> row{times[k], mu[k], q[0], stderr_, q[1], jumps};
    row.insert(row.end(), q.begin() + 2, q.end());
    table.rows.push_back(std::move(row));
  };

  if (config.gamma_rad_s == 0.0) {
    table.title = "unitary transit";
    if (config.n_traj > 1) {
      table.warnings.push_back("gamma_rad_s = 0: dynamics are deterministic, running a single trajectory instead of " +
                               std::to_string(config.n_traj));
    }
    const UnitaryProtocol protocol(resource, load);
    for (std::size_t k = 0; k < times.size(); ++k) add_row(k, protocol.qubits(mu[k], mu[k]).matrix(), 0.0, 0.0);
    return table;
  }

  table.title = "quantum-jump transit";
  const auto pairs = driven_pairs(config);
  JumpConfig jc{config.gamma_rad_s, config.n_traj, config.master_seed, config.tol, times};
  const StateVector initial = jump_initial_state(resource, load);
  const EnsembleEstimate est = run_ensemble(initial, pairs, jc, threads);
  for (std::size_t k = 0; k < times.size(); ++k) {
    add_row(k, est.mean_rho[k], est.negativity_stderr[k], est.mean_jumps[k]);
  }
  return table;
}

Table badcavity_curve(const ScenarioConfig& config) {
  validate(config);
  Table table;
  table.title = "bad-cavity reduced dynamics";
  table.columns = {"gamma_t", "negativity", "discord"};
  table.columns.insert(table.columns.end(), kStateColumns.begin(), kStateColumns.end());

  const ReducedGenerator gen = reduced_generator(kossakowski(driving_covariance(scenario_resource(config))));
  std::vector<double> grid(static_cast<std::size_t>(config.samples));
  for (int k = 0; k < config.samples; ++k) grid[k] = config.gamma_t_max * k / (config.samples - 1);
  const auto states = evolve_reduced(ground_qubits(), gen, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    std::vector<double> row{grid[k]};
    const std::vector<double> q = qubit_columns(states[k].matrix());
    row.insert(row.end(), q.begin(), q.end());
    table.rows.push_back(std::move(row));
  }

  const DensityOperator ss = steady_state(gen);
  const std::vector<double> q = qubit_columns(ss.matrix());
  std::string note = "steady_state:";
  for (std::size_t i = 0; i < q.size(); ++i) note += " " + table.columns[i + 1] + "=" + format_double(q[i]);
  table.notes.push_back(note);
  return table;
}

Table alpha_discord(const ScenarioConfig& config) {
  validate(config);
  Table table;
  table.title = "bad-cavity steady state against ECS amplitude";
  table.columns = {"alpha", "steady_negativity", "steady_discord"};
  double best = -1.0;
  double best_alpha = 0.0;
  for (double alpha : config.alpha_sweep) {
    const DensityOperator ss = badcavity_steady(DrivingResource::ecs(alpha));
    const double d = discord(ss);
    table.rows.push_back({alpha, negativity(ss), d});
    if (d > best) {
      best = d;
      best_alpha = alpha;
    }
  }
  if (!table.rows.empty()) {
    table.notes.push_back("argmax: alpha=" + format_double(best_alpha) + " steady_discord=" + format_double(best));
  }
  return table;
}

const std::vector<std::string>& sweep_parameters() {
  static const std::vector<std::string> names{"alpha", "omega0", "T", "V", "g"};
  return names;
}

ScenarioConfig with_parameter(const ScenarioConfig& config, const std::string& name, double value) {
  ScenarioConfig c = config;
  if (name == "alpha") {
    if (c.resource_type != "ecs") throw ConfigError("resource.type", "an alpha sweep needs an ecs resource");
    c.alpha = value;
  } else if (name == "omega0") {
    c.omega0_rad_s = value;
  } else if (name == "T") {
    c.transmittivity = value;
  } else if (name == "V") {
    if (c.trajectory_type != "uniform") throw ConfigError("trajectory.type", "a V sweep needs a uniform trajectory");
    c.velocity = value;
  } else if (name == "g") {
    if (c.trajectory_type != "freefall") throw ConfigError("trajectory.type", "a g sweep needs a freefall trajectory");
    c.g = value;
  } else {
    throw ConfigError("param", "unknown sweep parameter \"" + name + "\" (expected alpha, omega0, T, V or g)");
  }
  validate(c);
  return c;
}

Table sweep(const ScenarioConfig& config, const std::string& name, const std::vector<double>& grid, int threads) {
  if (grid.empty()) throw ConfigError("grid", "sweep grid is empty");
  Table table;
  table.title = "sweep over " + name;
  table.columns = {name, "final_negativity", "final_negativity_stderr", "final_discord"};
  if (config.badcavity_enabled) {
    table.columns.push_back("steady_negativity");
    table.columns.push_back("steady_discord");
  }
  if (config.gamma_rad_s == 0.0 && config.n_traj > 1) {
    table.warnings.push_back("gamma_rad_s = 0: dynamics are deterministic, running a single trajectory per point");
  }
  std::size_t best = 0;
  for (double value : grid) {
    const ScenarioConfig c = with_parameter(config, name, value);
    const FinalValues f = final_values(c, threads);
    std::vector<double> row{value, f.negativity, f.stderr_, f.discord};
    if (config.badcavity_enabled) {
      const DensityOperator ss = badcavity_steady(scenario_resource(c));
      row.push_back(negativity(ss));
      row.push_back(discord(ss));
    }
    table.rows.push_back(std::move(row));
    if (table.rows.back()[1] > table.rows[best][1]) best = table.rows.size() - 1;
  }
  table.notes.push_back("argmax: " + name + "=" + format_double(table.rows[best][0]) +
                        " final_negativity=" + format_double(table.rows[best][1]));
  return table;
}

std::string content_hash(const std::string& body) {
  const std::string blob = "blob " + std::to_string(body.size()) + std::string(1, '\0') + body;
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(blob.data(), blob.size(), md, &len, EVP_sha1(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::string render_csv(const ScenarioConfig& config, const Table& table) {
  std::string body;
  for (std::size_t i = 0; i < table.columns.size(); ++i) body += (i ? "," : "") + table.columns[i];
  body += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) body += (i ? "," : "") + format_double(row[i]);
    body += "\n";
  }
  std::string out = "# flyq " + table.title + "\n";
  out += "# config: " + config_json(config) + "\n";
  for (const auto& note : table.notes) out += "# " + note + "\n";
  out += "# content_sha1: " + content_hash(body) + "\n";
  return out + body;
}

std::vector<std::pair<std::string, ScenarioConfig>> bundled_figures() {
  ScenarioConfig noon;
  noon.resource_type = "noon";
  noon.photons = 1;
  noon.transmittivity = 0.9;
  noon.mode_u = 2;
  noon.waist_m = 10e-6;
  noon.x0_over_waist = -4.0;

  ScenarioConfig fig2a = noon;
  fig2a.trajectory_type = "freefall";
  fig2a.g = 9.82;
  fig2a.omega0_rad_s = 5.9e3;
  fig2a.output = "fig2a.csv";

  ScenarioConfig fig2b = noon;
  fig2b.trajectory_type = "uniform";
  fig2b.velocity = 1e-3;
  fig2b.omega0_rad_s = 365.0;
  fig2b.output = "fig2b.csv";

  ScenarioConfig fig2c = fig2a;
  fig2c.gamma_rad_s = scenario_profile(fig2a).max_rate() / 100.0;
  fig2c.n_traj = 2000;
  fig2c.output = "fig2c.csv";

  ScenarioConfig ecs = noon;
  ecs.resource_type = "ecs";
  ecs.alpha = 1.1;
  ecs.waist_m = 30e-6;

  ScenarioConfig fig4a = ecs;
  fig4a.trajectory_type = "freefall";
  fig4a.g = 9.82;
  fig4a.omega0_rad_s = 6.1e3;
  fig4a.output = "fig4a.csv";

  ScenarioConfig fig4b = ecs;
  fig4b.trajectory_type = "uniform";
  fig4b.velocity = 5e-3;
  fig4b.omega0_rad_s = 850.0;
  fig4b.output = "fig4b.csv";

  ScenarioConfig fig4c = fig4b;
  fig4c.alpha = 0.9;
  fig4c.omega0_rad_s = 340.0;
  fig4c.gamma_rad_s = scenario_profile(fig4c).max_rate() / 100.0;
  fig4c.n_traj = 2000;
  fig4c.output = "fig4c.csv";

  ScenarioConfig fig5 = fig2a;
  fig5.badcavity_enabled = true;
  fig5.gamma_t_max = 10.0;
  for (int k = 1; k <= 60; ++k) fig5.alpha_sweep.push_back(0.05 * k);
  fig5.output = "fig5.csv";

  return {{"fig2a", fig2a}, {"fig2b", fig2b}, {"fig2c", fig2c}, {"fig4a", fig4a},
          {"fig4b", fig4b}, {"fig4c", fig4c}, {"fig5", fig5}};
}

}  // namespace flyq
