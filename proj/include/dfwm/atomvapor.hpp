#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace dfwm::atomvapor {

using complex = std::complex<double>;

/// Branch decay rates of the four-level scheme, angular units (rad/s).
/// |3> decays to |1> and |2>, |4> decays to |1> and |2>.
struct DecayRates
{
  double gamma_13 = 0.0;
  double gamma_14 = 0.0;
  double gamma_23 = 0.0;
  double gamma_24 = 0.0;
};

/// Level structure and vapor properties. All rates in rad/s.
///
/// Ground states |1> (mixing) and |2> (spectator), excited states |3> and |4>.
/// The 1-3 transition carries the four-wave mixing; |2> -> |4> -> |1> is the
/// optical pumping path back into the mixing cycle.
struct AtomModel
{
  double gamma_13 = 0.0, gamma_14 = 0.0, gamma_23 = 0.0, gamma_24 = 0.0;
  double gamma_3 = 0.0, gamma_4 = 0.0;
  double gamma_31 = 0.0, gamma_42 = 0.0, gamma_32 = 0.0, gamma_41 = 0.0, gamma_43 = 0.0,
         gamma_21 = 0.0;
  double dipole_31 = 0.0;  // C m
  double density = 0.0;    // atoms / m^3
  double mass = 0.0;       // kg

  /// Builds a model from branch rates. Population decay totals follow from
  /// the branches. Optical coherences default to gamma_31 = gamma_13 and
  /// gamma_42 = gamma_24, the identification under which the closed-form
  /// population difference agrees with the density-matrix equations. The
  /// remaining coherences get half the summed population decay of their two
  /// levels plus gamma_23 of collisional dephasing.
  static AtomModel from_decay_rates(const DecayRates& rates, double dipole_31, double density,
                                    double mass);

  /// Throws DomainError when an invariant is violated.
  void validate() const;
};

/// Pump and cell configuration.
struct DriveConfig
{
  double delta_1 = 0.0;         // rad/s
  double delta_2 = 0.0;         // rad/s
  double pump_intensity = 0.0;  // W/m^2
  double wavelength = 780e-9;   // m
  double length = 0.03;         // m
  double temperature = 383.15;  // K

  double wavenumber() const;
  void validate() const;
};

/// xi_31 = i delta_1 - gamma_31 and xi_42 = i delta_2 - gamma_42.
class ComplexRateFactors
{
 public:
  ComplexRateFactors(const AtomModel& atom, double delta_1, double delta_2);

  complex xi_31() const { return xi_31_; }
  complex xi_42() const { return xi_42_; }

 private:
  complex xi_31_;
  complex xi_42_;
};

struct Susceptibility
{
  complex chi_lin;
  complex chi_nl;
  double i_sat = 0.0;            // W/m^2
  double population_diff = 0.0;  // sigma_11 - sigma_33 at the configured pump
  bool expansion_valid = true;   // weak-pump expansion holds, |chi_nl| < |chi_lin|

  /// I_p / I_sDelta as seen by the nonlinearity. Real for a stationary atom,
  /// complex after velocity averaging.
  complex saturation_ratio() const;
};

// Thermal motion ----------------------------------------------------------

/// sqrt(2 k_B T / m).
double avg_thermal_velocity(double temperature, double mass);

/// speed / distance, in s^-1.
double wall_collision_rate(double speed, double distance);

// Closed forms ------------------------------------------------------------

/// Rabi frequency of a pump of intensity I = 2 eps0 c |E|^2 on the 1-3
/// transition, Omega = 2 d31 |E| / hbar.
double rabi_frequency(const AtomModel& atom, double intensity);

/// Off-resonant saturation intensity I_sDelta (W/m^2).
double saturation_intensity(const AtomModel& atom, const ComplexRateFactors& rates);

/// sigma_11 - sigma_33 in the zero-intensity limit.
double population_diff_unsaturated(const AtomModel& atom, const ComplexRateFactors& rates);

/// First-order weak-pump expansion, D0 (1 - I_p / I_sDelta).
double population_diff_weak_pump(const AtomModel& atom, const ComplexRateFactors& rates,
                                 double pump_intensity);

/// Exact steady-state D0 / (1 + I_p / I_sDelta) for equal pump Rabi frequencies.
double population_diff_exact(const AtomModel& atom, const ComplexRateFactors& rates,
                             double pump_intensity);

/// Full susceptibility of the 1-3 transition, -i n |d|^2 sigma_11,33 / (hbar eps0 xi_31),
/// with the saturated population difference.
complex chi_31(const AtomModel& atom, const ComplexRateFactors& rates, double pump_intensity);

/// Two-level susceptibility with field-intensity ratio |E|^2 / |E_sDelta|^2, where
/// |E_sDelta|^2 = hbar^2 (gamma_31^2 + delta^2) / (4 |d31|^2).
complex two_level_chi(const AtomModel& atom, double delta_1, double field_squared);

/// Linear and nonlinear susceptibility of a stationary atom.
Susceptibility susceptibility(const AtomModel& atom, const DriveConfig& drive);

// Density matrix ----------------------------------------------------------

using DensityMatrix = Eigen::Matrix4cd;

/// Right-hand side of the rotating-frame equations of motion; indices are
/// zero-based, so sigma(2, 0) is sigma_31.
DensityMatrix bloch_rhs(const AtomModel& atom, const DriveConfig& drive, complex rabi_p1,
                        complex rabi_p2, const DensityMatrix& sigma);

/// Steady state from the vectorized Liouvillian with the sigma_11 row replaced by
/// the trace constraint. With both pumps off the mixing ground state is returned.
DensityMatrix steady_state_numeric(const AtomModel& atom, const DriveConfig& drive,
                                   complex rabi_p1, complex rabi_p2);

// Doppler averaging -------------------------------------------------------

enum class DopplerMethod { Adaptive, GaussHermite };

/// How the longitudinal velocity shifts the two detunings.
enum class DopplerShift {
  Common,   // delta_1 - k v and delta_2 - k v
  Opposed,  // delta_1 - k v and delta_2 + k v
};

struct DopplerOptions
{
  DopplerMethod method = DopplerMethod::Adaptive;
  DopplerShift shift = DopplerShift::Common;
  double tolerance = 1e-6;             // relative
  std::size_t initial_nodes = 64;      // Gauss-Hermite
  std::size_t max_nodes = 1024;        // Gauss-Hermite
};

/// Susceptibility averaged over a Maxwell-Boltzmann distribution of v_z.
Susceptibility doppler_average(const AtomModel& atom, const DriveConfig& drive,
                               const DopplerOptions& options = {});

/// Nodes and weights for the weight function exp(-x^2) on the real line.
struct GaussHermiteRule
{
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

GaussHermiteRule gauss_hermite_rule(std::size_t n);

// Reference parameters ----------------------------------------------------

/// 2 pi x 6 MHz.
inline constexpr double reference_gamma = 2.0 * 3.14159265358979323846 * 6.0e6;

/// Rubidium-like atom: gamma_13 = gamma_14 = Gamma, gamma_24 = 2 pi x 30 kHz,
/// d31 = 1.1e-29 C m, n = 1e16 m^-3, Rb-87 mass.
AtomModel reference_atom(double gamma_23);

/// delta_1 = delta_2 = 50 Gamma, L = 3 cm, 780 nm, 383.15 K.
DriveConfig reference_drive(double pump_intensity);

}  // namespace dfwm::atomvapor
