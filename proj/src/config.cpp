#include "gsel/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace gsel {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      fail("config error: unknown key '" + it.key() + "' in " + where);
}

Eigen::VectorXd to_vector(const json& arr, const std::string& key) {
  if (!arr.is_array() || arr.empty())
    fail("config error: key '" + key + "' must be a non-empty array of numbers");
  Eigen::VectorXd v(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) fail("config error: key '" + key + "' must contain only numbers");
    v[i] = arr[i].get<double>();
  }
  return v;
}

EnvironmentSpec parse_env(const json& j) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "experiment1") return EnvironmentSpec::experiment1();
    fail("config error: key 'env': unknown environment '" + name + "'");
  }
  if (!j.is_object()) fail("config error: key 'env' must be a string or object");
  const std::string type = j.value("type", std::string());
  if (type == "synthetic-normal") {
    check_keys(j, {"type", "means", "stds"}, "env");
    if (!j.contains("means") || !j.contains("stds"))
      fail("config error: env 'synthetic-normal' requires keys 'means' and 'stds'");
    return EnvironmentSpec::synthetic_normal(to_vector(j["means"], "env.means"),
                                             to_vector(j["stds"], "env.stds"));
  }
  if (type == "inventory") {
    check_keys(j,
               {"type", "table", "demand_mean", "horizon", "setup_cost", "unit_cost",
                "holding_cost", "shortage_cost", "true_best", "initial_level",
                "carry_backlog"},
               "env");
    std::vector<InventoryPolicy> table = j.contains("table")
                                             ? load_inventory_table_csv(j["table"].get<std::string>())
                                             : default_inventory_table();
    InventoryParams params;
    params.demand_mean = j.value("demand_mean", params.demand_mean);
    params.horizon = j.value("horizon", params.horizon);
    params.setup_cost = j.value("setup_cost", params.setup_cost);
    params.unit_cost = j.value("unit_cost", params.unit_cost);
    params.holding_cost = j.value("holding_cost", params.holding_cost);
    params.shortage_cost = j.value("shortage_cost", params.shortage_cost);
    params.carry_backlog = j.value("carry_backlog", params.carry_backlog);
    if (j.contains("initial_level")) {
      if (j["initial_level"].is_string()) {
        if (j["initial_level"].get<std::string>() != "capacity")
          fail("config error: key 'initial_level' must be \"capacity\" or an integer");
      } else {
        params.initial_level = j["initial_level"].get<int>();
        if (params.initial_level < 0) fail("config error: key 'initial_level' must be >= 0");
      }
    }
    const int best_1based = j.value("true_best", 12);
    if (best_1based < 1 || best_1based > static_cast<int>(table.size()))
      fail("config error: key 'true_best' out of range for the alternative table");
    return EnvironmentSpec::inventory(std::move(table), params, best_1based - 1);
  }
  fail("config error: key 'env.type': unknown type '" + type + "'");
}

PriorSpec parse_prior(const json& j, const EnvironmentSpec& env) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "uninformative") return PriorSpec::uninformative();
    if (name == "generating") {
      // the environment's own hyper-distribution, where one exists
      if (env.kind != EnvironmentSpec::Kind::SyntheticExperiment1)
        fail("config error: key 'prior': 'generating' needs the experiment1 environment");
      Eigen::VectorXd means = Eigen::VectorXd::Zero(50);
      Eigen::VectorXd variances(50);
      for (int i = 0; i < 50; ++i) {
        const double sd = (50.0 - i) / 10.0;
        variances[i] = sd * sd;
      }
      return PriorSpec::informative_each(std::move(means), std::move(variances));
    }
    fail("config error: key 'prior': unknown value '" + name + "'");
  }
  if (!j.is_object()) fail("config error: key 'prior' must be a string or object");
  if (j.contains("means") || j.contains("variances")) {
    check_keys(j, {"means", "variances"}, "prior");
    if (!j.contains("means") || !j.contains("variances"))
      fail("config error: per-alternative prior requires keys 'means' and 'variances'");
    return PriorSpec::informative_each(to_vector(j["means"], "prior.means"),
                                       to_vector(j["variances"], "prior.variances"));
  }
  check_keys(j, {"mean", "variance"}, "prior");
  if (!j.contains("mean") || !j.contains("variance"))
    fail("config error: informative prior requires keys 'mean' and 'variance'");
  return PriorSpec::informative(j["mean"].get<double>(), j["variance"].get<double>());
}

VarianceMode parse_variance_mode(const json& j, const EnvironmentSpec& env, double floor) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "plug-in") return VarianceMode::plug_in(floor);
    if (name == "known-true") {
      if (env.kind == EnvironmentSpec::Kind::SyntheticNormal)
        return VarianceMode::known(env.stds.array().square());
      if (env.kind == EnvironmentSpec::Kind::SyntheticExperiment1) {
        Eigen::VectorXd v(50);
        for (int i = 0; i < 50; ++i) v[i] = static_cast<double>(50 - i) * (50 - i);
        return VarianceMode::known(std::move(v));
      }
      fail("config error: key 'variance_mode': 'known-true' needs a synthetic environment");
    }
    fail("config error: key 'variance_mode': unknown value '" + name + "'");
  }
  if (!j.is_object()) fail("config error: key 'variance_mode' must be a string or object");
  check_keys(j, {"known"}, "variance_mode");
  if (!j.contains("known"))
    fail("config error: variance_mode object requires key 'known'");
  return VarianceMode::known(to_vector(j["known"], "variance_mode.known"));
}

int line_of_offset(const std::string& text, size_t byte) {
  int line = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& source_name) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(source_name + ":" + std::to_string(line_of_offset(text, e.byte)) +
         ": " + e.what());
  }
  if (!j.is_object()) fail("config error: top level must be a JSON object");
  check_keys(j,
             {"schema_version", "env", "m", "T", "n0", "policy", "macros", "seed",
              "checkpoints", "prior", "variance_mode", "plugin_floor",
              "freeze_plugin_after_init"},
             "config");
  for (const char* req : {"env", "m", "T", "policy", "seed"})
    if (!j.contains(req)) fail(std::string("config error: missing required key '") + req + "'");
  const int schema = j.value("schema_version", 1);
  if (schema != 1) fail("config error: key 'schema_version': unsupported version");

  ExperimentConfig cfg;
  cfg.env = parse_env(j["env"]);
  cfg.m = j["m"].get<int>();
  cfg.budget = j["T"].get<long long>();
  cfg.n0 = j.value("n0", 10);
  cfg.macros = j.value("macros", 20000LL);
  cfg.seed = j["seed"].get<std::uint64_t>();

  const json& pol = j["policy"];
  if (pol.is_string()) {
    const std::string name = pol.get<std::string>();
    if (name == "aoa-gs") {
      cfg.policy = PolicyKind::AoaGs;
    } else if (name == "equal-allocation" || name == "ea") {
      cfg.policy = PolicyKind::EqualAllocation;
    } else {
      fail("config error: key 'policy': unknown policy '" + name + "'");
    }
  } else if (pol.is_object()) {
    check_keys(pol, {"external"}, "policy");
    if (!pol.contains("external")) fail("config error: policy object requires key 'external'");
    cfg.policy = PolicyKind::External;
    cfg.external_name = pol["external"].get<std::string>();
  } else {
    fail("config error: key 'policy' must be a string or object");
  }

  if (j.contains("checkpoints")) {
    if (!j["checkpoints"].is_array()) fail("config error: key 'checkpoints' must be an array");
    for (const auto& c : j["checkpoints"]) cfg.checkpoints.push_back(c.get<long long>());
  }
  cfg.prior = j.contains("prior") ? parse_prior(j["prior"], cfg.env) : PriorSpec::uninformative();
  const double floor = j.value("plugin_floor", 1e-12);
  if (!(floor > 0.0)) fail("config error: key 'plugin_floor' must be > 0");
  cfg.var_mode = j.contains("variance_mode")
                     ? parse_variance_mode(j["variance_mode"], cfg.env, floor)
                     : VarianceMode::plug_in(floor);
  cfg.freeze_plugin_after_init = j.value("freeze_plugin_after_init", false);

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("config error: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

std::string describe_config(const ExperimentConfig& config) {
  std::ostringstream os;
  os << "env=";
  switch (config.env.kind) {
    case EnvironmentSpec::Kind::SyntheticNormal: os << "synthetic-normal"; break;
    case EnvironmentSpec::Kind::SyntheticExperiment1: os << "experiment1"; break;
    case EnvironmentSpec::Kind::Inventory: os << "inventory"; break;
  }
  os << " k=" << config.env.k() << " m=" << config.m << " T=" << config.budget
     << " n0=" << config.n0 << " policy=" << policy_name(config.policy)
     << " macros=" << config.macros << " seed=" << config.seed;
  os << " prior="
     << (config.prior.mode == PriorMode::Uninformative
             ? "uninformative"
             : (config.prior.per_alternative() ? "informative-per-alternative"
                                               : "informative"));
  os << " variance="
     << (config.var_mode.kind == VarianceModeKind::PlugIn ? "plug-in" : "known");
  os << " checkpoints=[";
  const auto cps = config.effective_checkpoints();
  for (size_t i = 0; i < cps.size(); ++i) os << (i ? "," : "") << cps[i];
  os << "]";
  if (config.freeze_plugin_after_init) os << " freeze_plugin_after_init=true";
  return os.str();
}

}  // namespace gsel
