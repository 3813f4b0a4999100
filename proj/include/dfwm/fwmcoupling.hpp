#pragma once

#include <complex>

#include "dfwm/atomvapor.hpp"

namespace dfwm::fwmcoupling {

using complex = std::complex<double>;
using atomvapor::DriveConfig;
using atomvapor::Susceptibility;

enum class Geometry { PhaseConjugate, Forward };

struct GeometryConfig
{
  Geometry geometry = Geometry::PhaseConjugate;
  double theta = 4e-3;   // pump-probe angle (rad)
  double length = 0.03;  // m

  void validate() const;
};

/// kappa for the phase-conjugate geometry, nu for the forward geometry.
struct CouplingStrength
{
  complex value;             // rad/m
  double magnitude_l = 0.0;  // |value| L
  Geometry geometry = Geometry::PhaseConjugate;

  /// Always true in the forward geometry, which has no oscillation threshold.
  bool below_threshold() const;

  /// Unit phase factor value/|value|; 1 when the coupling vanishes.
  complex phase() const;
};

/// Builds a coupling directly from |c|L and its phase, for sweeps at fixed
/// interaction strength.
CouplingStrength coupling_from_magnitude(Geometry geometry, double magnitude_l, double phase,
                                         double length);

/// kappa = -(k/2) chi_NL.
CouplingStrength coupling_pc(const Susceptibility& susc, const DriveConfig& drive);

/// nu = (k / (2 cos theta)) chi_NL = -(k / (2 cos theta)) chi_lin I_p / I_sDelta.
CouplingStrength coupling_ffwm(const Susceptibility& susc, const DriveConfig& drive,
                               const GeometryConfig& geom);

/// Dispatches on geom.geometry; both use geom.length for |c|L.
CouplingStrength make_coupling(const Susceptibility& susc, const DriveConfig& drive,
                               const GeometryConfig& geom);

/// Pump propagation rate delta = (k/2) chi_lin (1 - 3 I_p / I_sDelta), written
/// as (k/2)(chi_lin + 3 chi_NL) so that Doppler-averaged values carry through.
complex pump_phase_delta(const Susceptibility& susc, const DriveConfig& drive);

/// How the complex radicand chi_lin I_p / I_sDelta is turned into a real angle.
enum class Realification {
  RealPart,  // |Re(.)|: the dispersive part sets phase matching
  Modulus,   // |.|
};

/// Optimal forward pump-probe angle alpha = sqrt(chi_lin I_p / I_sDelta),
/// realified as requested.
double phase_match_angle(const Susceptibility& susc, const DriveConfig& drive,
                         Realification mode = Realification::RealPart);

/// Diagnostic wave-vector mismatch delta + k - k cos(alpha).
complex phase_mismatch(const Susceptibility& susc, const DriveConfig& drive, double alpha);

/// Power gain: sec^2(|kappa|L) for phase conjugation, cosh^2(|nu|L) forward.
/// Throws AboveThresholdError for |kappa|L >= pi/2.
double gain(const CouplingStrength& c);

}  // namespace dfwm::fwmcoupling
