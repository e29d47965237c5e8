#include <CLI11.hpp>

#include <vector>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "heis/commands.hpp"
#include "heis/config.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<int> r_nodes;
  std::optional<double> fd_step;
  std::optional<int> truncation;
  std::vector<int> alpha;
  std::optional<double> theta;
  std::optional<double> h0;
  std::optional<int> samples;
};

heis::RunConfig resolve(const Overrides& o) {
  heis::RunConfig cfg = o.config_path.empty() ? heis::default_config() : heis::load_config(o.config_path);
  if (o.out) cfg.output_dir = *o.out;
  if (o.seed) cfg.seed = *o.seed;
  if (o.r_nodes) cfg.r_nodes = *o.r_nodes;
  if (o.fd_step) cfg.fd_step = *o.fd_step;
  if (o.truncation) cfg.spectrum_truncation = *o.truncation;
  if (!o.alpha.empty()) cfg.alpha = {o.alpha[0], o.alpha[1], o.alpha[2]};
  if (o.theta) cfg.ray_theta = *o.theta;
  if (o.h0) cfg.ray_h0 = *o.h0;
  if (o.samples) cfg.ray_samples = *o.samples;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical lab for the first Heisenberg group"};
  app.require_subcommand(1);
  app.fallthrough();
  Overrides o;
  app.add_option("--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", o.out, "Output directory");
  app.add_option("--seed", o.seed, "Seed for randomized property sweeps");
  app.add_option("--r-nodes", o.r_nodes, "Quadrature nodes in r");
  app.add_option("--fd-step", o.fd_step, "Finite-difference step");

  auto* hardy = app.add_subcommand("hardy", "Hardy quotient and alpha sweep");
  auto* plancherel = app.add_subcommand("plancherel", "Plancherel convergence ladder");
  auto* deficiency = app.add_subcommand("deficiency", "Divergence of the deficiency-space norm");
  auto* spectrum = app.add_subcommand("delta-spectrum", "Print B_alpha as CSV");
  spectrum->add_option("--alpha", o.alpha, "Multi-index a1 a2 a3")->expected(3);
  spectrum->add_option("-N,--truncation", o.truncation, "Matrix size");
  auto* geodesic = app.add_subcommand("geodesic", "Tabulate the exponential chart along a ray");
  geodesic->add_option("--theta", o.theta, "Initial angle");
  geodesic->add_option("--h0", o.h0, "Ratio r / t along the ray");
  geodesic->add_option("--samples", o.samples, "Number of samples");
  auto* check = app.add_subcommand("check", "Run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? heis::kExitOk : heis::kExitUsage;
  }

  heis::RunConfig cfg;
  try {
    cfg = resolve(o);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return heis::kExitUsage;
  }

  try {
    if (*hardy) return heis::cmd_hardy(cfg, std::cout);
    if (*plancherel) return heis::cmd_plancherel(cfg, std::cout);
    if (*deficiency) return heis::cmd_deficiency(cfg, std::cout);
    if (*spectrum) return heis::cmd_delta_spectrum(cfg, std::cout);
    if (*geodesic) return heis::cmd_geodesic(cfg, std::cout);
    if (*check) return heis::cmd_check(cfg, std::cout);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return heis::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return heis::kExitCriterion;
  }
  return heis::kExitUsage;
}
