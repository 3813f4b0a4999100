// Command-line front end: config-driven sweeps and figure presets.

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "dfwm/errors.hpp"
#include "dfwm/mcoracle.hpp"
#include "dfwm/sweep.hpp"

namespace {

using namespace dfwm;

constexpr int kExitConfig = 2;
constexpr int kExitPhysics = 3;

int run(const std::filesystem::path& config_path)
{
  const sweep::RunConfig cfg = sweep::load_config(config_path);
  const sweep::Table table = sweep::run_sweep(cfg);
  sweep::emit_csv(table, cfg.out);
  const auto above = std::count_if(table.rows.begin(), table.rows.end(),
                                   [](const sweep::Row& r) { return r.above_threshold; });
  std::cout << "wrote " << table.rows.size() << " rows to " << cfg.out << '\n';
  if (!table.rows.empty() && above == static_cast<long>(table.rows.size())) {
    std::cerr << "every grid point is above the phase-conjugate threshold\n";
    return kExitPhysics;
  }
  return 0;
}

int preset(const std::string& name, const std::filesystem::path& out_dir)
{
  const auto runs = sweep::preset(name);
  std::filesystem::create_directories(out_dir);
  for (const auto& r : runs) {
    const auto path = out_dir / r.file_name;
    sweep::emit_csv(sweep::run_sweep(r.config), path);
    std::cout << "wrote " << path.string() << '\n';
  }
  return 0;
}

// Parses the config, then cross-checks the first grid point against the
// Monte-Carlo oracle.
int validate(const std::filesystem::path& config_path, std::uint64_t seed)
{
  const sweep::RunConfig cfg = sweep::load_config(config_path);
  std::cout << "config ok: " << cfg.axis_grid().size() << " grid points along "
            << sweep::axis_name(cfg.axis) << '\n';

  const double v = cfg.axis_grid().front();
  const sweep::Row row = sweep::evaluate_point(cfg, v);
  const double kl = row.coupling_l;
  const double eta = cfg.axis == sweep::SweepAxis::Eta ? v : cfg.eta;
  const auto coupling = fwmcoupling::coupling_from_magnitude(cfg.geometry, kl, 0.0, cfg.length);
  const auto lossy = quantumnoise::apply_loss(
      quantumnoise::mode_transform(coupling, quantumnoise::ThresholdPolicy::AnalyticContinuation),
      {eta, eta});
  const auto best = quantumnoise::optimal_quadrature_squeezing(lossy);

  quantumnoise::DetectionConfig det;
  det.theta_f = best.phase;
  const auto [phi_1, phi_2] = quantumnoise::detector_phases(cfg.geometry, det);
  mcoracle::SamplingOptions options;
  options.samples = 200'000;
  options.seed = seed;
  const auto estimate = mcoracle::mc_estimate(mcoracle::GaussianState::coherent_seed(2, 0.0),
                                              mcoracle::AffineModeMap::from_transform(lossy),
                                              mcoracle::Observable::quadrature(phi_1, phi_2),
                                              options);
  const double deviation =
      std::abs(estimate.variance - best.result.noise_variance) / estimate.standard_error;
  std::cout << "first point: |c|L = " << kl << ", optimal joint-quadrature variance "
            << best.result.noise_variance << ", Monte-Carlo " << estimate.variance << " +- "
            << estimate.standard_error << " (" << deviation << " sigma)\n";
  return deviation <= 4.0 ? 0 : kExitPhysics;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Squeezing projections for degenerate four-wave mixing in atomic vapor"};
  app.require_subcommand(1);
  int threads = 0;
  std::uint64_t seed = 20240607;
  app.add_option("--threads", threads, "worker threads (0 = OpenMP default)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", seed, "seed for Monte-Carlo checks");

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "run a sweep described by a config file");
  run_cmd->add_option("config", config_path, "config file")->required();

  std::string preset_name;
  std::string out_dir = ".";
  auto* preset_cmd = app.add_subcommand("preset", "reproduce a figure data set");
  preset_cmd->add_option("name", preset_name, "preset name")
      ->required()
      ->check(CLI::IsMember(sweep::preset_names()));
  preset_cmd->add_option("--out", out_dir, "output directory");

  auto* validate_cmd = app.add_subcommand("validate", "check a config and spot-check the oracle");
  validate_cmd->add_option("config", config_path, "config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (*run_cmd) return run(config_path);
    if (*preset_cmd) return preset(preset_name, out_dir);
    if (*validate_cmd) return validate(config_path, seed);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitPhysics;
  } catch (const IntegrationError& e) {
    std::cerr << "integration error: " << e.what() << '\n';
    return kExitPhysics;
  } catch (const SingularSystemError& e) {
    std::cerr << "singular system: " << e.what() << '\n';
    return kExitPhysics;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
