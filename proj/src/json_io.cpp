#include "stochorder/json_io.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace stochorder {

namespace {

double get_number(const ordered_json& j, const std::string& key) {
  const auto it = j.find(key);
  if (it == j.end())
    throw std::invalid_argument("component JSON missing key \"" + key + "\"");
  if (!it->is_number())
    throw std::invalid_argument("component key \"" + key + "\" must be a number");
  return it->get<double>();
}

void reject_unknown_keys(const ordered_json& j, const std::set<std::string>& allowed) {
  for (const auto& item : j.items())
    if (!allowed.count(item.key()))
      throw std::invalid_argument("unknown key \"" + item.key() +
                                  "\" in component JSON");
}

}  // namespace

ordered_json component_to_json(const ComponentSpec& c) {
  ordered_json j;
  if (c.family.is_pgw()) {
    j["family"] = "pgw";
    j["p"] = c.family.shape1();
    j["q"] = c.family.shape2();
  } else {
    j["family"] = "gg";
    j["alpha"] = c.family.shape1();
    j["beta"] = c.family.shape2();
  }
  j["lambda"] = c.lambda;
  j["shape_exp"] = c.shape_exp;
  return j;
}

ComponentSpec component_from_json(const ordered_json& j) {
  if (!j.is_object()) throw std::invalid_argument("component JSON must be an object");
  const auto fam_it = j.find("family");
  if (fam_it == j.end() || !fam_it->is_string())
    throw std::invalid_argument("component JSON needs a string \"family\" key");
  const std::string fam = fam_it->get<std::string>();

  const double lambda = get_number(j, "lambda");
  const double shape_exp = j.contains("shape_exp") ? get_number(j, "shape_exp") : 1.0;

  if (fam == "pgw") {
    reject_unknown_keys(j, {"family", "p", "q", "lambda", "shape_exp"});
    return ComponentSpec(BaselineFamily::pgw(get_number(j, "p"), get_number(j, "q")),
                         lambda, shape_exp);
  }
  if (fam == "gg") {
    reject_unknown_keys(j, {"family", "alpha", "beta", "lambda", "shape_exp"});
    return ComponentSpec(
        BaselineFamily::gg(get_number(j, "alpha"), get_number(j, "beta")), lambda,
        shape_exp);
  }
  throw std::invalid_argument("family must be \"pgw\" or \"gg\", got \"" + fam + "\"");
}

ordered_json system_to_json(const ParallelSystem& s) {
  ordered_json j;
  j["components"] = ordered_json::array();
  for (const auto& c : s.components()) j["components"].push_back(component_to_json(c));
  return j;
}

ParallelSystem system_from_json(const ordered_json& j) {
  const ordered_json* arr = nullptr;
  if (j.is_array()) {
    arr = &j;
  } else if (j.is_object()) {
    const auto it = j.find("components");
    if (it == j.end() || !it->is_array())
      throw std::invalid_argument("system JSON needs a \"components\" array");
    for (const auto& item : j.items())
      if (item.key() != "components")
        throw std::invalid_argument("unknown key \"" + item.key() +
                                    "\" in system JSON");
    arr = &*it;
  } else {
    throw std::invalid_argument("system JSON must be an object or an array");
  }
  std::vector<ComponentSpec> comps;
  for (const auto& cj : *arr) comps.push_back(component_from_json(cj));
  return ParallelSystem(std::move(comps));
}

ParallelSystem load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open system file: " + path);
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("parse error in " + path + ": " + e.what());
  }
  return system_from_json(j);
}

SimConfig sim_config_from_json(const ordered_json& j) {
  if (!j.is_object()) throw std::invalid_argument("sim config must be a JSON object");
  const auto sys_it = j.find("system");
  if (sys_it == j.end())
    throw std::invalid_argument("sim config needs a \"system\" key");
  for (const auto& item : j.items()) {
    static const std::set<std::string> allowed{"system", "n_samples", "seed",
                                               "grid", "threads"};
    if (!allowed.count(item.key()))
      throw std::invalid_argument("unknown key \"" + item.key() + "\" in sim config");
  }
  SimConfig cfg{system_from_json(*sys_it)};
  if (j.contains("n_samples")) {
    const auto n = j["n_samples"].get<long long>();
    if (n < 1) throw std::invalid_argument("n_samples must be positive");
    cfg.n_samples = static_cast<std::size_t>(n);
  }
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    cfg.grid = EvalGrid::log_spaced(g.at("lo").get<double>(),
                                    g.at("hi").get<double>(),
                                    g.at("points").get<std::size_t>());
  }
  return cfg;
}

SimConfig load_sim_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sim config: " + path);
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("parse error in " + path + ": " + e.what());
  }
  return sim_config_from_json(j);
}

}  // namespace stochorder
