#include "heis/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace heis {

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> table = {
      {"hardy_bound", 0.7985},
      {"hardy_self_convergence", 1e-8},
      {"plancherel_defect", 5e-2},
      {"deficiency_slope_rel", 0.05},
      {"associativity", 1e-12},
      {"commutator", 1e-5},
      {"sublaplacian", 1e-5},
      {"harmonicity", 1e-4},
      {"oscillator", 1e-9},
      {"hermite_commutation", 1e-12},
      {"composition", 1e-14},
      {"jacobian_rel", 1e-6},
      {"round_trip", 1e-9},
      {"horizontality", 1e-6},
      {"unit_gradient", 1e-6},
      {"garofalo", 1e-8},
  };
  return table;
}

double RunConfig::tolerance(const std::string& name) const {
  if (auto it = tolerances.find(name); it != tolerances.end()) return it->second;
  const auto& d = default_tolerances();
  if (auto it = d.find(name); it != d.end()) return it->second;
  throw ConfigError("unknown tolerance '" + name + "'");
}

void RunConfig::validate() const {
  if (truncation < 1 || lambda_nodes < 1 || box_nodes < 1 || r_nodes < 1 || candidate_truncation < 1 ||
      spectrum_truncation < 1 || ray_samples < 1)
    throw ConfigError("all counts must be >= 1");
  if (!(lambda_min > 0.0)) throw ConfigError("lambda_min must be positive");
  if (!(lambda_max > lambda_min)) throw ConfigError("lambda_max must exceed lambda_min");
  if (!(box_halfwidth > 0.0)) throw ConfigError("box_halfwidth must be positive");
  if (!(fd_step > 0.0)) throw ConfigError("fd_step must be positive");
  for (const auto& [name, v] : tolerances)
    if (!(v > 0.0)) throw ConfigError("tolerance '" + name + "' must be positive");
  for (const auto& rung : plancherel_ladder) {
    if (rung.truncation < 1 || rung.lambda_nodes < 4 || rung.lambda_nodes % 2 != 0)
      throw ConfigError("plancherel rung needs truncation >= 1 and an even lambda_nodes >= 4");
    if (!(rung.lambda_min > 0.0) || !(rung.lambda_max > rung.lambda_min))
      throw ConfigError("plancherel rung needs 0 < lambda_min < lambda_max");
  }
  if (plancherel_function != "gaussian" && plancherel_function != "zero")
    throw ConfigError("plancherel_function must be 'gaussian' or 'zero'");
  bool any = false;
  for (const auto& [a, c] : candidate) {
    if (a.a1 < 0 || a.a2 < 0 || a.a3 < 0 || a.order() > kMaxMultiIndexOrder)
      throw ConfigError("candidate multi-index out of range");
    any = any || c != cplx{};
  }
  if (!any) throw ConfigError("deficiency candidate has no nonzero coefficient");
  if (!(deficiency_lambda_lo > 0.0)) throw ConfigError("deficiency_lambda_lo must be positive");
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (!(cutoffs[i] > deficiency_lambda_lo)) throw ConfigError("cutoffs must exceed deficiency_lambda_lo");
    if (i > 0 && !(cutoffs[i] > cutoffs[i - 1])) throw ConfigError("cutoffs must increase");
  }
  if (cutoffs.empty()) throw ConfigError("at least one cutoff is required");
  if (alpha.a1 < 0 || alpha.a2 < 0 || alpha.a3 < 0 || alpha.order() > kMaxMultiIndexOrder)
    throw ConfigError("alpha out of range");
  if (spectrum_truncation < alpha.band() + 1 || spectrum_truncation > kMaxDeltaTruncation)
    throw ConfigError("spectrum_truncation incompatible with alpha");
}

RunConfig default_config() {
  RunConfig c;
  c.plancherel_ladder = {{4, 0.1, 6.0, 24}, {8, 0.03, 8.0, 48}, {16, 0.01, 10.0, 96}};
  c.candidate = {{MultiIndex{0, 0, 0}, cplx(1.0, 0.0)}};
  for (int e = 3; e <= 9; ++e) c.cutoffs.push_back(std::pow(10.0, e));
  return c;
}

namespace {

MultiIndex parse_alpha(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("multi-index must be an array of three integers");
  return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}

template <class T>
void read(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  RunConfig c = default_config();
  try {
    const auto j = nlohmann::json::parse(json_text);
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const std::set<std::string> known{
        "truncation", "lambda_min", "lambda_max", "lambda_nodes", "box_halfwidth", "box_nodes", "fd_step",
        "r_nodes", "output_dir", "seed", "plancherel_function", "candidate_truncation", "cutoffs",
        "deficiency_lambda_lo", "spectrum_truncation", "tolerances", "plancherel_ladder", "candidate", "alpha", "ray"};
    for (const auto& [k, v] : j.items())
      if (!known.contains(k)) throw ConfigError("unknown config key '" + k + "'");
    read(j, "truncation", c.truncation);
    read(j, "lambda_min", c.lambda_min);
    read(j, "lambda_max", c.lambda_max);
    read(j, "lambda_nodes", c.lambda_nodes);
    read(j, "box_halfwidth", c.box_halfwidth);
    read(j, "box_nodes", c.box_nodes);
    read(j, "fd_step", c.fd_step);
    read(j, "r_nodes", c.r_nodes);
    read(j, "output_dir", c.output_dir);
    read(j, "seed", c.seed);
    read(j, "plancherel_function", c.plancherel_function);
    read(j, "candidate_truncation", c.candidate_truncation);
    read(j, "cutoffs", c.cutoffs);
    read(j, "deficiency_lambda_lo", c.deficiency_lambda_lo);
    read(j, "spectrum_truncation", c.spectrum_truncation);
    if (j.contains("tolerances"))
      for (const auto& [k, v] : j.at("tolerances").items()) {
        if (!default_tolerances().contains(k)) throw ConfigError("unknown tolerance '" + k + "'");
        c.tolerances[k] = v.get<double>();
      }
    if (j.contains("plancherel_ladder")) {
      c.plancherel_ladder.clear();
      for (const auto& r : j.at("plancherel_ladder")) {
        PlancherelRung rung;
        read(r, "truncation", rung.truncation);
        read(r, "lambda_min", rung.lambda_min);
        read(r, "lambda_max", rung.lambda_max);
        read(r, "lambda_nodes", rung.lambda_nodes);
        c.plancherel_ladder.push_back(rung);
      }
    }
    if (j.contains("candidate")) {
      c.candidate.clear();
      for (const auto& e : j.at("candidate")) {
        const double re = e.value("re", 0.0), im = e.value("im", 0.0);
        c.candidate.emplace_back(parse_alpha(e.at("alpha")), cplx(re, im));
      }
    }
    if (j.contains("alpha")) c.alpha = parse_alpha(j.at("alpha"));
    if (j.contains("ray")) {
      const auto& r = j.at("ray");
      read(r, "theta", c.ray_theta);
      read(r, "h0", c.ray_h0);
      read(r, "samples", c.ray_samples);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config parse failure: ") + e.what());
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace heis
