#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dfwm/atomvapor.hpp"
#include "dfwm/fwmcoupling.hpp"
#include "dfwm/quantumnoise.hpp"

namespace dfwm::sweep {

enum class SweepAxis { PumpIntensity, Eta, CouplingL, HomodynePhase };

/// Validated run description. Internal units are SI (rates in rad/s,
/// intensities in W/m^2, angles in rad).
struct RunConfig
{
  double gamma = atomvapor::reference_gamma;
  double gamma_13 = atomvapor::reference_gamma;
  double gamma_14 = atomvapor::reference_gamma;
  double gamma_23 = 0.1 * atomvapor::reference_gamma;
  double gamma_24 = 2.0 * 3.14159265358979323846 * 30.0e3;
  double dipole_31 = 1.1e-29;
  double density = 1.0e16;
  double mass = 0.0;  // set to Rb-87 by the constructor
  double wavelength = 780e-9;
  double delta = 50.0 * atomvapor::reference_gamma;
  double pump_intensity = 8.0e4;
  std::vector<double> pump_intensity_grid;
  double length = 0.03;
  double temperature = 383.15;
  fwmcoupling::Geometry geometry = fwmcoupling::Geometry::PhaseConjugate;
  double theta = 4e-3;
  double eta = 0.7;
  std::vector<double> eta_grid;
  double gamma_seed = 1e6;
  quantumnoise::Detection detection = quantumnoise::Detection::JointQuadrature;
  double phase_f = 1.5 * 3.14159265358979323846;
  double phase_b = 0.0;
  std::vector<double> phase_grid;
  std::optional<double> coupling_l;
  std::vector<double> coupling_l_grid;
  SweepAxis axis = SweepAxis::Eta;
  int grid_points = 101;
  bool doppler = true;
  std::string out = "dfwm.csv";

  RunConfig();

  /// Grid of the active axis.
  const std::vector<double>& axis_grid() const;
  /// Throws ConfigError (line 0) when the configuration is inconsistent.
  void validate() const;

  atomvapor::AtomModel atom() const;
  atomvapor::DriveConfig drive(double pump_intensity) const;
};

/// Parses `key = value [unit]` lines. '#' starts a comment; `[section]`
/// headers are accepted and ignored. Unset keys keep their defaults.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

struct Row
{
  double axis_value = 0.0;
  double coupling_l = 0.0;
  double gain = 0.0;           // nan above threshold
  double mq_optimal_db = 0.0;  // joint quadrature at the optimal phase
  double mq_phase_db = 0.0;    // joint quadrature at the configured phases
  double mid_db = 0.0;         // intensity difference
  bool above_threshold = false;
  bool expansion_valid = true;

  bool operator==(const Row&) const = default;
};

struct Table
{
  std::string axis_name;
  std::vector<Row> rows;
};

std::string axis_name(SweepAxis axis);

/// Evaluates one grid point.
Row evaluate_point(const RunConfig& cfg, double axis_value);

/// Grid points evaluated concurrently; rows ordered by grid index.
Table run_sweep(const RunConfig& cfg);
Table run_sweep_serial(const RunConfig& cfg);

/// Header plus one line per row, floats at 12 significant digits.
std::string format_csv(const Table& table);
void emit_csv(const Table& table, const std::filesystem::path& path);
/// Parses text produced by format_csv.
Table parse_csv(const std::string& text);

/// Quotes a field when it contains a comma, quote or line break.
std::string csv_field(const std::string& value);

struct PresetRun
{
  std::string file_name;
  RunConfig config;
};

std::vector<std::string> preset_names();
/// Throws ConfigError for an unknown preset.
std::vector<PresetRun> preset(const std::string& name);

}  // namespace dfwm::sweep
