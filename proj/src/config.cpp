#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "dfwm/constants.hpp"
#include "dfwm/errors.hpp"
#include "dfwm/sweep.hpp"

namespace dfwm::sweep {

namespace {

using constants::pi;

enum class Dimension { Rate, Dipole, Density, Mass, Wavelength, Intensity, Length, Temperature,
                       Angle, None };

struct Unit
{
  const char* name;
  double scale;
  double offset;
  bool gamma_multiple;
};

const std::map<Dimension, std::vector<Unit>>& unit_table()
{
  static const std::map<Dimension, std::vector<Unit>> table = {
      {Dimension::Rate,
       {{"Gamma", 1.0, 0.0, true},
        {"rad/s", 1.0, 0.0, false},
        {"Hz", 2.0 * pi, 0.0, false},
        {"kHz", 2.0 * pi * 1e3, 0.0, false},
        {"MHz", 2.0 * pi * 1e6, 0.0, false}}},
      {Dimension::Dipole, {{"C*m", 1.0, 0.0, false}, {"Cm", 1.0, 0.0, false}}},
      {Dimension::Density, {{"m^-3", 1.0, 0.0, false}, {"cm^-3", 1e6, 0.0, false}}},
      {Dimension::Mass, {{"kg", 1.0, 0.0, false}, {"u", constants::atomic_mass_unit, 0.0, false}}},
      {Dimension::Wavelength,
       {{"m", 1.0, 0.0, false}, {"um", 1e-6, 0.0, false}, {"nm", 1e-9, 0.0, false}}},
      {Dimension::Intensity,
       {{"W/cm^2", 1e4, 0.0, false},
        {"mW/cm^2", 10.0, 0.0, false},
        {"W/m^2", 1.0, 0.0, false}}},
      {Dimension::Length,
       {{"m", 1.0, 0.0, false}, {"cm", 1e-2, 0.0, false}, {"mm", 1e-3, 0.0, false}}},
      {Dimension::Temperature, {{"K", 1.0, 0.0, false}, {"C", 1.0, 273.15, false}}},
      {Dimension::Angle,
       {{"rad", 1.0, 0.0, false}, {"mrad", 1e-3, 0.0, false}, {"deg", pi / 180.0, 0.0, false}}},
  };
  return table;
}

std::string trim(const std::string& s)
{
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

bool parse_number(const std::string& token, double& out)
{
  const char* first = token.data();
  const char* last = first + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

// A value with its numbers and an optional trailing unit.
struct Quantity
{
  std::vector<double> numbers;
  std::string unit;
  bool list = false;  // comma-separated
};

Quantity split_quantity(const std::string& text, int line)
{
  Quantity q;
  q.list = text.find(',') != std::string::npos;
  std::string spaced = text;
  std::replace(spaced.begin(), spaced.end(), ',', ' ');
  std::istringstream in(spaced);
  std::string token;
  std::vector<std::string> tokens;
  while (in >> token) tokens.push_back(token);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    double value = 0.0;
    if (parse_number(tokens[i], value)) {
      if (!q.unit.empty()) throw ConfigError("number after unit in '" + text + "'", line);
      q.numbers.push_back(value);
    } else if (i + 1 == tokens.size() && !q.numbers.empty()) {
      q.unit = tokens[i];
    } else {
      throw ConfigError("cannot parse '" + text + "'", line);
    }
  }
  if (q.numbers.empty()) throw ConfigError("missing value", line);
  return q;
}

struct Entry
{
  std::string value;
  int line = 0;
};

// Raw range before grid_points is known.
struct RangeSpec
{
  std::vector<double> values;
  bool explicit_list = false;
  int line = 0;
};

class Parser
{
 public:
  explicit Parser(const std::map<std::string, Entry>& entries) : entries_(entries) {}

  RunConfig run()
  {
    RunConfig cfg;
    // gamma first: the other rates may be given in its units.
    scalar("gamma", Dimension::Rate, cfg.gamma, false);
    if (!(cfg.gamma > 0.0)) fail("gamma", "gamma must be positive");
    gamma_ = cfg.gamma;

    scalar("gamma_13", Dimension::Rate, cfg.gamma_13);
    scalar("gamma_14", Dimension::Rate, cfg.gamma_14);
    scalar("gamma_23", Dimension::Rate, cfg.gamma_23);
    scalar("gamma_24", Dimension::Rate, cfg.gamma_24);
    scalar("dipole_31", Dimension::Dipole, cfg.dipole_31);
    scalar("density", Dimension::Density, cfg.density);
    scalar("mass", Dimension::Mass, cfg.mass);
    scalar("lambda", Dimension::Wavelength, cfg.wavelength);
    scalar("delta", Dimension::Rate, cfg.delta);
    scalar("length", Dimension::Length, cfg.length);
    scalar("temperature", Dimension::Temperature, cfg.temperature);
    scalar("theta", Dimension::Angle, cfg.theta);
    scalar("phase_f", Dimension::Angle, cfg.phase_f);
    scalar("phase_b", Dimension::Angle, cfg.phase_b);
    scalar("pump_intensity", Dimension::Intensity, cfg.pump_intensity);
    scalar("eta", Dimension::None, cfg.eta);
    scalar("gamma_seed", Dimension::None, cfg.gamma_seed);
    if (has("coupling_l")) {
      double x = 0.0;
      scalar("coupling_l", Dimension::None, x);
      cfg.coupling_l = x;
    }
    if (has("grid_points")) {
      double n = 0.0;
      scalar("grid_points", Dimension::None, n);
      if (n < 2 || n != std::floor(n) || n > 1e6) {
        fail("grid_points", "grid_points must be an integer in [2, 1e6]");
      }
      cfg.grid_points = static_cast<int>(n);
    }

    choice("geometry", {{"pc", [&] { cfg.geometry = fwmcoupling::Geometry::PhaseConjugate; }},
                        {"forward", [&] { cfg.geometry = fwmcoupling::Geometry::Forward; }}});
    choice("detection",
           {{"quadrature", [&] { cfg.detection = quantumnoise::Detection::JointQuadrature; }},
            {"intensity_difference",
             [&] { cfg.detection = quantumnoise::Detection::IntensityDifference; }}});
    choice("sweep_axis", {{"pump_intensity", [&] { cfg.axis = SweepAxis::PumpIntensity; }},
                          {"eta", [&] { cfg.axis = SweepAxis::Eta; }},
                          {"coupling_l", [&] { cfg.axis = SweepAxis::CouplingL; }},
                          {"homodyne_phase", [&] { cfg.axis = SweepAxis::HomodynePhase; }}});
    choice("doppler", {{"on", [&] { cfg.doppler = true; }}, {"off", [&] { cfg.doppler = false; }}});
    if (has("out")) {
      cfg.out = entries_.at("out").value;
      if (cfg.out.empty()) fail("out", "empty output path");
    }

    range("eta_range", Dimension::None, cfg.grid_points, cfg.eta_grid, 0.0, 1.0);
    range("pump_intensity_range", Dimension::Intensity, cfg.grid_points, cfg.pump_intensity_grid,
          0.0, INFINITY);
    range("coupling_l_range", Dimension::None, cfg.grid_points, cfg.coupling_l_grid, 0.0,
          INFINITY);
    range("phase_range", Dimension::Angle, cfg.grid_points, cfg.phase_grid, -INFINITY, INFINITY);
    if (!has("eta_range") && has("grid_points") && cfg.axis == SweepAxis::Eta) {
      cfg.eta_grid = linspace(0.0, 1.0, cfg.grid_points);
    }

    bounds("eta", cfg.eta, 0.0, 1.0);
    bounds("gamma_seed", cfg.gamma_seed, 0.0, INFINITY);
    bounds("pump_intensity", cfg.pump_intensity, 0.0, INFINITY);
    if (cfg.coupling_l) bounds("coupling_l", *cfg.coupling_l, 0.0, INFINITY);
    const std::pair<const char*, double> rates[] = {{"gamma_13", cfg.gamma_13},
                                                    {"gamma_14", cfg.gamma_14},
                                                    {"gamma_23", cfg.gamma_23},
                                                    {"gamma_24", cfg.gamma_24}};
    for (const auto& [key, value] : rates) bounds(key, value, 0.0, INFINITY);
    positive("dipole_31", cfg.dipole_31);
    positive("density", cfg.density);
    positive("mass", cfg.mass);
    positive("lambda", cfg.wavelength);
    positive("length", cfg.length);
    positive("temperature", cfg.temperature);
    bounds("theta", cfg.theta, 0.0, 0.5 * pi - 1e-12);

    cfg.validate();
    return cfg;
  }

  static std::vector<double> linspace(double lo, double hi, int n)
  {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      v[static_cast<std::size_t>(i)] =
          i == n - 1 ? hi : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    }
    return v;
  }

 private:
  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const
  {
    const auto it = entries_.find(key);
    throw ConfigError(key + ": " + what, it == entries_.end() ? 0 : it->second.line);
  }

  double convert(const std::string& key, Dimension dim, double value, const std::string& unit,
                 bool allow_gamma) const
  {
    if (dim == Dimension::None) {
      if (!unit.empty()) fail(key, "takes no unit, got '" + unit + "'");
      return value;
    }
    if (unit.empty()) fail(key, "missing unit");
    for (const Unit& u : unit_table().at(dim)) {
      if (unit != u.name) continue;
      if (u.gamma_multiple) {
        if (!allow_gamma) fail(key, "cannot be given in units of Gamma");
        return value * gamma_;
      }
      return value * u.scale + u.offset;
    }
    fail(key, "unknown unit '" + unit + "'");
  }

  void scalar(const std::string& key, Dimension dim, double& target, bool allow_gamma = true)
  {
    if (!has(key)) return;
    const Entry& e = entries_.at(key);
    const Quantity q = split_quantity(e.value, e.line);
    if (q.numbers.size() != 1) fail(key, "expects a single value");
    target = convert(key, dim, q.numbers[0], q.unit, allow_gamma);
    if (!std::isfinite(target)) fail(key, "value must be finite");
  }

  void choice(const std::string& key,
              const std::vector<std::pair<std::string, std::function<void()>>>& options)
  {
    if (!has(key)) return;
    const std::string& value = entries_.at(key).value;
    for (const auto& [name, apply] : options) {
      if (value == name) {
        apply();
        return;
      }
    }
    std::string allowed;
    for (const auto& [name, apply] : options) allowed += (allowed.empty() ? "" : "|") + name;
    fail(key, "expected " + allowed + ", got '" + value + "'");
  }

  void range(const std::string& key, Dimension dim, int points, std::vector<double>& target,
             double lo, double hi)
  {
    if (!has(key)) return;
    const Entry& e = entries_.at(key);
    const Quantity q = split_quantity(e.value, e.line);
    std::vector<double> values;
    for (double v : q.numbers) values.push_back(convert(key, dim, v, q.unit, true));
    if (!q.list) {
      if (values.size() != 2) fail(key, "expects 'low high [unit]' or a comma-separated list");
      values = linspace(values[0], values[1], points);
    }
    if (values.size() < 2) fail(key, "needs at least two grid points");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!(values[i] >= lo && values[i] <= hi)) fail(key, "grid value out of range");
      if (i > 0 && !(values[i] > values[i - 1])) fail(key, "grid must be strictly increasing");
    }
    target = std::move(values);
  }

  void bounds(const std::string& key, double value, double lo, double hi) const
  {
    if (!(value >= lo && value <= hi)) {
      std::ostringstream msg;
      msg << "value " << value << " outside [" << lo << ", " << hi << "]";
      fail(key, msg.str());
    }
  }

  void positive(const std::string& key, double value) const
  {
    if (!(value > 0.0)) fail(key, "must be positive");
  }

  const std::map<std::string, Entry>& entries_;
  double gamma_ = atomvapor::reference_gamma;
};

const std::vector<std::string>& known_keys()
{
  static const std::vector<std::string> keys = {
      "gamma",       "gamma_23",    "gamma_24",   "gamma_13",         "gamma_14",
      "dipole_31",   "density",     "mass",       "lambda",           "delta",
      "pump_intensity", "pump_intensity_range", "length", "temperature", "geometry",
      "theta",       "eta",         "eta_range",  "gamma_seed",       "detection",
      "phase_f",     "phase_b",     "phase_range", "sweep_axis",      "grid_points",
      "doppler",     "out",         "coupling_l", "coupling_l_range"};
  return keys;
}

}  // namespace

RunConfig::RunConfig()
    : mass(constants::rb87_mass), eta_grid(Parser::linspace(0.0, 1.0, 101))
{
}

const std::vector<double>& RunConfig::axis_grid() const
{
  switch (axis) {
    case SweepAxis::PumpIntensity:
      return pump_intensity_grid;
    case SweepAxis::CouplingL:
      return coupling_l_grid;
    case SweepAxis::HomodynePhase:
      return phase_grid;
    case SweepAxis::Eta:
      break;
  }
  return eta_grid;
}

void RunConfig::validate() const
{
  if (axis_grid().empty()) {
    throw ConfigError("sweep axis " + axis_name(axis) + " needs a range (" + axis_name(axis) +
                          "_range)",
                      0);
  }
  atom().validate();
  drive(pump_intensity).validate();
}

atomvapor::AtomModel RunConfig::atom() const
{
  atomvapor::DecayRates rates{gamma_13, gamma_14, gamma_23, gamma_24};
  try {
    return atomvapor::AtomModel::from_decay_rates(rates, dipole_31, density, mass);
  } catch (const DomainError& e) {
    throw ConfigError(e.what(), 0);
  }
}

atomvapor::DriveConfig RunConfig::drive(double intensity) const
{
  atomvapor::DriveConfig d;
  d.delta_1 = delta;
  d.delta_2 = delta;
  d.pump_intensity = intensity;
  d.wavelength = wavelength;
  d.length = length;
  d.temperature = temperature;
  return d;
}

RunConfig parse_config(const std::string& text)
{
  std::map<std::string, Entry> entries;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (content.empty()) continue;
    if (content.front() == '[') {
      if (content.back() != ']') throw ConfigError("malformed section header", line);
      continue;
    }
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError("unknown key '" + key + "'", line);
    }
    if (value.empty()) throw ConfigError("missing value for '" + key + "'", line);
    if (!entries.emplace(key, Entry{value, line}).second) {
      throw ConfigError("duplicate key '" + key + "'", line);
    }
  }
  return Parser(entries).run();
}

RunConfig load_config(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string(), 0);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace dfwm::sweep
