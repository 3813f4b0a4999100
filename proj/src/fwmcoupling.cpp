#include "dfwm/fwmcoupling.hpp"

#include <cmath>
#include <sstream>

#include "dfwm/constants.hpp"
#include "dfwm/errors.hpp"

namespace dfwm::fwmcoupling {

namespace {

CouplingStrength make(complex value, double length, Geometry geometry)
{
  if (!(length > 0.0)) throw DomainError("interaction length must be positive");
  return {value, std::abs(value) * length, geometry};
}

}  // namespace

void GeometryConfig::validate() const
{
  if (!(length > 0.0)) throw DomainError("interaction length must be positive");
  if (!(theta >= 0.0)) throw DomainError("pump-probe angle must be non-negative");
}

bool CouplingStrength::below_threshold() const
{
  return geometry == Geometry::Forward || magnitude_l < 0.5 * constants::pi;
}

complex CouplingStrength::phase() const
{
  const double m = std::abs(value);
  return m > 0.0 ? value / m : complex(1.0, 0.0);
}

CouplingStrength coupling_from_magnitude(Geometry geometry, double magnitude_l, double phase,
                                         double length)
{
  if (!(magnitude_l >= 0.0)) throw DomainError("|c|L must be non-negative");
  return make(std::polar(magnitude_l / length, phase), length, geometry);
}

CouplingStrength coupling_pc(const Susceptibility& susc, const DriveConfig& drive)
{
  drive.validate();
  return make(-0.5 * drive.wavenumber() * susc.chi_nl, drive.length, Geometry::PhaseConjugate);
}

CouplingStrength coupling_ffwm(const Susceptibility& susc, const DriveConfig& drive,
                               const GeometryConfig& geom)
{
  drive.validate();
  geom.validate();
  if (geom.theta >= 0.5 * constants::pi) {
    throw DomainError("forward geometry needs theta < pi/2");
  }
  const double scale = drive.wavenumber() / (2.0 * std::cos(geom.theta));
  return make(scale * susc.chi_nl, geom.length, Geometry::Forward);
}

CouplingStrength make_coupling(const Susceptibility& susc, const DriveConfig& drive,
                               const GeometryConfig& geom)
{
  if (geom.geometry == Geometry::Forward) return coupling_ffwm(susc, drive, geom);
  DriveConfig d = drive;
  d.length = geom.length;
  return coupling_pc(susc, d);
}

complex pump_phase_delta(const Susceptibility& susc, const DriveConfig& drive)
{
  drive.validate();
  return 0.5 * drive.wavenumber() * (susc.chi_lin + 3.0 * susc.chi_nl);
}

double phase_match_angle(const Susceptibility& susc, const DriveConfig& drive,
                         Realification mode)
{
  drive.validate();
  // chi_lin I_p / I_sDelta = -chi_NL, also after velocity averaging.
  const double radicand = mode == Realification::RealPart ? std::abs(std::real(susc.chi_nl))
                                                          : std::abs(susc.chi_nl);
  if (!std::isfinite(radicand)) throw DomainError("phase-matching angle undefined");
  return std::sqrt(radicand);
}

complex phase_mismatch(const Susceptibility& susc, const DriveConfig& drive, double alpha)
{
  const double k = drive.wavenumber();
  return pump_phase_delta(susc, drive) + k - k * std::cos(alpha);
}

double gain(const CouplingStrength& c)
{
  const double x = c.magnitude_l;
  if (c.geometry == Geometry::Forward) return std::pow(std::cosh(x), 2);
  if (!c.below_threshold()) {
    std::ostringstream msg;
    msg << "phase-conjugate coupling |kappa|L = " << x << " is at or above threshold pi/2";
    throw AboveThresholdError(msg.str(), x);
  }
  return 1.0 / std::pow(std::cos(x), 2);
}

}  // namespace dfwm::fwmcoupling
