#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "dfwm/atomvapor.hpp"
#include "dfwm/quantumnoise.hpp"

namespace dfwm::mcoracle {

using complex = std::complex<double>;

/// Wigner-function description of N bosonic modes with a = X + iY.
/// Quadratures are ordered (X1, Y1, X2, Y2, ...); vacuum has covariance I/4.
struct GaussianState
{
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;

  static GaussianState vacuum(int modes);
  /// Coherent state on mode 0 with real amplitude sqrt(photons), vacuum elsewhere.
  static GaussianState coherent_seed(int modes, double photons);

  int modes() const { return static_cast<int>(mean.size() / 2); }

  /// Throws DomainError unless the covariance is symmetric and
  /// covariance + i Omega / 4 is positive semidefinite.
  void validate() const;
};

/// Output quadratures R' = A R + B V + b, with V the quadratures of extra vacuum
/// inputs (covariance I/4).
struct AffineModeMap
{
  Eigen::MatrixXd a;
  Eigen::MatrixXd b_vacuum;
  Eigen::VectorXd offset;

  static AffineModeMap identity(int modes);

  /// Converts a 4x8 ladder map (two signal modes followed by two vacuum
  /// modes) into quadrature form.
  static AffineModeMap from_ladder(const Eigen::Matrix<complex, 4, 8>& ladder);
  static AffineModeMap from_transform(const quantumnoise::LossyTransform& t);
};

GaussianState propagate(const GaussianState& state, const AffineModeMap& map);

enum class ObservableKind { JointQuadrature, IntensityDifference };

/// JointQuadrature: sum_m (e^{-i phi_m} a_m + h.c.) with (phi_1, phi_2) the
/// local-oscillator phases as applied to each mode. IntensityDifference: n1 - n2.
struct Observable
{
  ObservableKind kind = ObservableKind::JointQuadrature;
  double phi_1 = 0.0;
  double phi_2 = 0.0;

  static Observable quadrature(double phi_1, double phi_2);
  static Observable intensity_difference();
};

struct Estimate
{
  double mean = 0.0;
  double variance = 0.0;
  double standard_error = 0.0;  // of the variance
  double shot_noise = 0.0;      // reference for the same detector
};

/// Exact variance from the propagated covariance. The intensity difference
/// uses the full Gaussian fourth moment.
Estimate observable_variance(const GaussianState& output, const Observable& obs);

/// Bright-beam linearization n_m ~ |mu_m|^2 + 2 mu_m . dR_m; shot noise |mu|^2.
Estimate observable_variance_linearized(const GaussianState& output, const Observable& obs);

/// Brightness required by the linearized intensity-difference estimators.
inline constexpr double min_linearized_photons = 1e3;

struct SamplingOptions
{
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 20240607;
  std::uint64_t chunk_size = 8192;
};

/// Monte-Carlo sampling of the input Wigner function pushed through the map.
/// Intensity difference uses the linearized photon numbers and refuses inputs
/// below min_linearized_photons. Chunks draw from independent substreams and
/// merge in chunk order, so the result does not depend on the thread count.
Estimate mc_estimate(const GaussianState& input, const AffineModeMap& map, const Observable& obs,
                     const SamplingOptions& options = {});

/// Single-threaded reference for mc_estimate; bit-identical results.
Estimate mc_estimate_serial(const GaussianState& input, const AffineModeMap& map,
                            const Observable& obs, const SamplingOptions& options = {});

struct VelocityAverage
{
  complex chi_lin;
  complex chi_nl;
  double population_diff = 0.0;
};

/// Stratified Monte-Carlo average over the Maxwell-Boltzmann v_z distribution.
VelocityAverage velocity_average_mc(const atomvapor::AtomModel& atom,
                                    const atomvapor::DriveConfig& drive,
                                    atomvapor::DopplerShift shift = atomvapor::DopplerShift::Common,
                                    const SamplingOptions& options = {});

VelocityAverage velocity_average_mc_serial(
    const atomvapor::AtomModel& atom, const atomvapor::DriveConfig& drive,
    atomvapor::DopplerShift shift = atomvapor::DopplerShift::Common,
    const SamplingOptions& options = {});

}  // namespace dfwm::mcoracle
