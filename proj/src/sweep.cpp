#include <cmath>
#include <cstdint>
#include <limits>

#include "dfwm/constants.hpp"
#include "dfwm/errors.hpp"
#include "dfwm/sweep.hpp"

namespace dfwm::sweep {

namespace {

using fwmcoupling::Geometry;
using quantumnoise::Detection;
using quantumnoise::DetectionConfig;

constexpr double kWattsPerSquareCm = 1e4;

}  // namespace

std::string axis_name(SweepAxis axis)
{
  switch (axis) {
    case SweepAxis::PumpIntensity:
      return "pump_intensity";
    case SweepAxis::CouplingL:
      return "coupling_l";
    case SweepAxis::HomodynePhase:
      return "phase";
    case SweepAxis::Eta:
      break;
  }
  return "eta";
}

Row evaluate_point(const RunConfig& cfg, double axis_value)
{
  double eta = cfg.eta;
  double intensity = cfg.pump_intensity;
  double phase_f = cfg.phase_f;
  std::optional<double> coupling_l = cfg.coupling_l;
  switch (cfg.axis) {
    case SweepAxis::Eta:
      eta = axis_value;
      break;
    case SweepAxis::PumpIntensity:
      intensity = axis_value;
      break;
    case SweepAxis::CouplingL:
      coupling_l = axis_value;
      break;
    case SweepAxis::HomodynePhase:
      // axis_value is theta_f - theta_b (phase conjugate) or theta_+ + theta_-.
      phase_f = cfg.geometry == Geometry::PhaseConjugate ? axis_value + cfg.phase_b
                                                         : axis_value - cfg.phase_b;
      break;
  }

  Row row;
  row.axis_value = cfg.axis == SweepAxis::PumpIntensity ? axis_value / kWattsPerSquareCm
                                                        : axis_value;
  fwmcoupling::CouplingStrength coupling;
  if (coupling_l) {
    coupling = fwmcoupling::coupling_from_magnitude(cfg.geometry, *coupling_l, 0.0, cfg.length);
  } else {
    const auto atom = cfg.atom();
    const auto drive = cfg.drive(intensity);
    const auto susc = cfg.doppler ? atomvapor::doppler_average(atom, drive)
                                  : atomvapor::susceptibility(atom, drive);
    row.expansion_valid = susc.expansion_valid;
    coupling = fwmcoupling::make_coupling(susc, drive, {cfg.geometry, cfg.theta, cfg.length});
  }
  row.coupling_l = coupling.magnitude_l;
  row.above_threshold = !coupling.below_threshold();
  row.gain = row.above_threshold ? std::numeric_limits<double>::quiet_NaN()
                                 : fwmcoupling::gain(coupling);

  const auto transform = quantumnoise::mode_transform(
      coupling, quantumnoise::ThresholdPolicy::AnalyticContinuation);
  const auto lossy = quantumnoise::apply_loss(transform, {eta, eta});

  row.mq_optimal_db = quantumnoise::optimal_quadrature_squeezing(lossy).result.squeezing_db;

  DetectionConfig quadrature;
  quadrature.theta_f = phase_f;
  quadrature.theta_b = cfg.phase_b;
  row.mq_phase_db = quantumnoise::quadrature_squeezing_db(lossy, quadrature).squeezing_db;

  DetectionConfig difference;
  difference.detection = Detection::IntensityDifference;
  difference.seed_photons = cfg.gamma_seed;
  row.mid_db = quantumnoise::intensity_diff_squeezing_db(lossy, difference).squeezing_db;
  return row;
}

Table run_sweep_serial(const RunConfig& cfg)
{
  cfg.validate();
  Table table{axis_name(cfg.axis), {}};
  for (double v : cfg.axis_grid()) table.rows.push_back(evaluate_point(cfg, v));
  return table;
}

Table run_sweep(const RunConfig& cfg)
{
  cfg.validate();
  const auto& grid = cfg.axis_grid();
  Table table{axis_name(cfg.axis), std::vector<Row>(grid.size())};
  const auto n = static_cast<std::int64_t>(grid.size());
  // Exceptions must not escape an OpenMP region; keep the first by index.
  std::vector<std::exception_ptr> errors(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      table.rows[k] = evaluate_point(cfg, grid[k]);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return table;
}

}  // namespace dfwm::sweep
