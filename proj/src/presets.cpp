#include "dfwm/constants.hpp"
#include "dfwm/errors.hpp"
#include "dfwm/sweep.hpp"

namespace dfwm::sweep {

namespace {

using constants::pi;
using fwmcoupling::Geometry;
using quantumnoise::Detection;

std::vector<double> linear_grid(double lo, double hi, int n)
{
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    v[static_cast<std::size_t>(i)] =
        i == n - 1 ? hi : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  }
  return v;
}

std::vector<PresetRun> fig2()
{
  std::vector<PresetRun> runs;
  for (const auto& [name, kl] : {std::pair{"pi6", pi / 6.0}, std::pair{"pi3", pi / 3.0}}) {
    RunConfig cfg;
    cfg.geometry = Geometry::PhaseConjugate;
    cfg.axis = SweepAxis::HomodynePhase;
    cfg.grid_points = 361;
    cfg.phase_grid = linear_grid(0.0, 2.0 * pi, 361);
    cfg.phase_b = 0.0;
    cfg.eta = 1.0;
    cfg.coupling_l = kl;
    runs.push_back({std::string("fig2_kl_") + name + ".csv", cfg});
  }
  return runs;
}

PresetRun fig3(Geometry geometry, const char* file)
{
  RunConfig cfg;
  cfg.geometry = geometry;
  cfg.axis = SweepAxis::Eta;
  return {file, cfg};
}

std::vector<PresetRun> fig4(Geometry geometry, Detection detection, const std::string& panel)
{
  std::vector<PresetRun> runs;
  for (const auto& [label, ratio] :
       {std::pair{"0.5", 0.5}, std::pair{"0.2", 0.2}, std::pair{"0.1", 0.1},
        std::pair{"0.05", 0.05}}) {
    RunConfig cfg;
    cfg.geometry = geometry;
    cfg.detection = detection;
    cfg.gamma_23 = ratio * cfg.gamma;
    cfg.eta = 0.7;
    cfg.axis = SweepAxis::PumpIntensity;
    cfg.grid_points = 200;
    cfg.pump_intensity_grid = linear_grid(0.25e4, 50.0e4, 200);
    runs.push_back({panel + "_gamma23_" + label + ".csv", cfg});
  }
  return runs;
}

}  // namespace

std::vector<std::string> preset_names()
{
  return {"fig2", "fig3a", "fig3b", "fig4a", "fig4b", "fig4c", "fig4d"};
}

std::vector<PresetRun> preset(const std::string& name)
{
  if (name == "fig2") return fig2();
  if (name == "fig3a") return {fig3(Geometry::PhaseConjugate, "fig3a.csv")};
  if (name == "fig3b") return {fig3(Geometry::Forward, "fig3b.csv")};
  if (name == "fig4a") return fig4(Geometry::PhaseConjugate, Detection::JointQuadrature, name);
  if (name == "fig4b") return fig4(Geometry::PhaseConjugate, Detection::IntensityDifference, name);
  if (name == "fig4c") return fig4(Geometry::Forward, Detection::JointQuadrature, name);
  if (name == "fig4d") return fig4(Geometry::Forward, Detection::IntensityDifference, name);
  throw ConfigError("unknown preset '" + name + "'", 0);
}

}  // namespace dfwm::sweep
