#include "dfwm/atomvapor.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "dfwm/constants.hpp"
#include "dfwm/errors.hpp"

namespace dfwm::atomvapor {

namespace {

void require(bool ok, const std::string& what)
{
  if (!ok) throw DomainError(what);
}

bool close(double a, double b)
{
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

// Weak-pump numerator and denominator pieces of sigma_11,33:
//   A = G3 G14 G42 |xi31|^2,  B = G23 G4 G31 |xi42|^2.
struct PopulationTerms
{
  double a;
  double b;
};

PopulationTerms population_terms(const AtomModel& atom, const ComplexRateFactors& rates)
{
  return {atom.gamma_3 * atom.gamma_14 * atom.gamma_42 * std::norm(rates.xi_31()),
          atom.gamma_23 * atom.gamma_4 * atom.gamma_31 * std::norm(rates.xi_42())};
}

}  // namespace

AtomModel AtomModel::from_decay_rates(const DecayRates& rates, double dipole_31, double density,
                                      double mass)
{
  AtomModel atom;
  atom.gamma_13 = rates.gamma_13;
  atom.gamma_14 = rates.gamma_14;
  atom.gamma_23 = rates.gamma_23;
  atom.gamma_24 = rates.gamma_24;
  atom.gamma_3 = rates.gamma_13 + rates.gamma_23;
  atom.gamma_4 = rates.gamma_14 + rates.gamma_24;

  atom.gamma_31 = rates.gamma_13;
  atom.gamma_42 = rates.gamma_24;
  atom.gamma_32 = 0.5 * atom.gamma_3 + rates.gamma_23;
  atom.gamma_41 = 0.5 * atom.gamma_4 + rates.gamma_23;
  atom.gamma_43 = 0.5 * (atom.gamma_3 + atom.gamma_4) + rates.gamma_23;
  atom.gamma_21 = rates.gamma_23;

  atom.dipole_31 = dipole_31;
  atom.density = density;
  atom.mass = mass;
  atom.validate();
  return atom;
}

void AtomModel::validate() const
{
  for (double rate : {gamma_13, gamma_14, gamma_23, gamma_24, gamma_3, gamma_4, gamma_31, gamma_42,
                      gamma_32, gamma_41, gamma_43, gamma_21}) {
    require(std::isfinite(rate) && rate >= 0.0, "decay rates must be finite and non-negative");
  }
  require(close(gamma_3, gamma_13 + gamma_23), "gamma_3 must equal gamma_13 + gamma_23");
  require(close(gamma_4, gamma_14 + gamma_24), "gamma_4 must equal gamma_14 + gamma_24");
  require(dipole_31 > 0.0, "dipole_31 must be positive");
  require(density > 0.0, "density must be positive");
  require(mass > 0.0, "mass must be positive");
}

double DriveConfig::wavenumber() const
{
  return 2.0 * constants::pi / wavelength;
}

void DriveConfig::validate() const
{
  require(std::isfinite(delta_1) && std::isfinite(delta_2), "detunings must be finite");
  require(pump_intensity >= 0.0, "pump intensity must be non-negative");
  require(wavelength > 0.0, "wavelength must be positive");
  require(length > 0.0, "interaction length must be positive");
  require(temperature > 0.0, "temperature must be positive");
}

ComplexRateFactors::ComplexRateFactors(const AtomModel& atom, double delta_1, double delta_2)
    : xi_31_(-atom.gamma_31, delta_1), xi_42_(-atom.gamma_42, delta_2)
{
}

complex Susceptibility::saturation_ratio() const
{
  if (chi_lin == complex{}) return {};
  return -chi_nl / chi_lin;
}

double avg_thermal_velocity(double temperature, double mass)
{
  require(temperature > 0.0, "temperature must be positive");
  require(mass > 0.0, "mass must be positive");
  return std::sqrt(2.0 * constants::boltzmann * temperature / mass);
}

double wall_collision_rate(double speed, double distance)
{
  require(speed >= 0.0, "speed must be non-negative");
  require(distance > 0.0, "distance must be positive");
  return speed / distance;
}

double rabi_frequency(const AtomModel& atom, double intensity)
{
  require(intensity >= 0.0, "intensity must be non-negative");
  const double field = std::sqrt(intensity / (2.0 * constants::epsilon0 * constants::speed_of_light));
  return 2.0 * atom.dipole_31 * field / constants::hbar;
}

double saturation_intensity(const AtomModel& atom, const ComplexRateFactors& rates)
{
  const double denom = atom.dipole_31 * atom.dipole_31 * atom.gamma_31 * atom.gamma_42 *
                       (2.0 * (atom.gamma_14 + atom.gamma_23));
  if (!(denom > 0.0)) {
    throw SingularSystemError("saturation intensity: gamma_31, gamma_42 and gamma_14 + gamma_23 "
                              "must all be positive",
                              std::numeric_limits<double>::infinity());
  }
  const auto [a, b] = population_terms(atom, rates);
  return constants::epsilon0 * constants::speed_of_light * constants::hbar * constants::hbar *
         (a + b) / denom;
}

double population_diff_unsaturated(const AtomModel& atom, const ComplexRateFactors& rates)
{
  const auto [a, b] = population_terms(atom, rates);
  if (!(a + b > 0.0)) {
    throw SingularSystemError("population difference undefined for these rates",
                              std::numeric_limits<double>::infinity());
  }
  return a / (a + b);
}

double population_diff_weak_pump(const AtomModel& atom, const ComplexRateFactors& rates,
                                 double pump_intensity)
{
  return population_diff_unsaturated(atom, rates) *
         (1.0 - pump_intensity / saturation_intensity(atom, rates));
}

double population_diff_exact(const AtomModel& atom, const ComplexRateFactors& rates,
                             double pump_intensity)
{
  return population_diff_unsaturated(atom, rates) /
         (1.0 + pump_intensity / saturation_intensity(atom, rates));
}

namespace {

// -i n |d|^2 / (hbar eps0 xi_31)
complex chi_prefactor(const AtomModel& atom, const ComplexRateFactors& rates)
{
  const double scale = atom.density * atom.dipole_31 * atom.dipole_31 /
                       (constants::hbar * constants::epsilon0);
  return complex(0.0, -scale) / rates.xi_31();
}

}  // namespace

complex chi_31(const AtomModel& atom, const ComplexRateFactors& rates, double pump_intensity)
{
  return chi_prefactor(atom, rates) * population_diff_exact(atom, rates, pump_intensity);
}

complex two_level_chi(const AtomModel& atom, double delta_1, double field_squared)
{
  const double g = atom.gamma_31;
  const double detuning_factor = 1.0 + delta_1 * delta_1 / (g * g);
  const double field_sat = constants::hbar * constants::hbar * g * g * detuning_factor /
                           (4.0 * atom.dipole_31 * atom.dipole_31);
  const double scale = atom.density * atom.dipole_31 * atom.dipole_31 /
                       (constants::hbar * constants::epsilon0 * g * detuning_factor);
  return -scale * complex(delta_1 / g, -1.0) / (1.0 + field_squared / field_sat);
}

Susceptibility susceptibility(const AtomModel& atom, const DriveConfig& drive)
{
  drive.validate();
  const ComplexRateFactors rates(atom, drive.delta_1, drive.delta_2);
  const double i_sat = saturation_intensity(atom, rates);

  Susceptibility s;
  s.chi_lin = chi_prefactor(atom, rates) * population_diff_unsaturated(atom, rates);
  s.chi_nl = -s.chi_lin * (drive.pump_intensity / i_sat);
  s.i_sat = i_sat;
  s.population_diff = population_diff_exact(atom, rates, drive.pump_intensity);
  s.expansion_valid = drive.pump_intensity < i_sat;
  return s;
}

AtomModel reference_atom(double gamma_23)
{
  DecayRates rates;
  rates.gamma_13 = reference_gamma;
  rates.gamma_14 = reference_gamma;
  rates.gamma_23 = gamma_23;
  rates.gamma_24 = 2.0 * constants::pi * 30.0e3;
  return AtomModel::from_decay_rates(rates, 1.1e-29, 1.0e16, constants::rb87_mass);
}

DriveConfig reference_drive(double pump_intensity)
{
  DriveConfig drive;
  drive.delta_1 = 50.0 * reference_gamma;
  drive.delta_2 = 50.0 * reference_gamma;
  drive.pump_intensity = pump_intensity;
  return drive;
}

}  // namespace dfwm::atomvapor
