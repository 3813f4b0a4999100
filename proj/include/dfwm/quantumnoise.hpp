#pragma once

#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "dfwm/fwmcoupling.hpp"

namespace dfwm::quantumnoise {

using complex = std::complex<double>;
using fwmcoupling::CouplingStrength;
using fwmcoupling::Geometry;

/// Ladder operators are ordered (a1, a1^dag, a2, a2^dag). Mode 1 is the seeded
/// probe (a_f, or a_- forward), mode 2 the conjugate (a_b, or a_+ forward).
using LadderMatrix = Eigen::Matrix4cd;

/// Commutator metric diag(1, -1, 1, -1); lossless maps satisfy M J M^dag = J.
LadderMatrix commutator_metric();

struct ModeTransform
{
  LadderMatrix matrix;
  Geometry geometry = Geometry::PhaseConjugate;
  CouplingStrength coupling;
};

/// What pc_mode_transform does at or above |kappa|L = pi/2.
enum class ThresholdPolicy {
  Enforce,                // throw AboveThresholdError
  AnalyticContinuation,   // evaluate sec/tan past threshold
};

ModeTransform pc_mode_transform(const CouplingStrength& c,
                                ThresholdPolicy policy = ThresholdPolicy::Enforce);
ModeTransform ffwm_mode_transform(const CouplingStrength& c);

/// Dispatches on the coupling's geometry.
ModeTransform mode_transform(const CouplingStrength& c,
                             ThresholdPolicy policy = ThresholdPolicy::Enforce);

/// Beam-splitter power transmissions on the two output beams.
struct LossChannel
{
  double eta_f = 1.0;
  double eta_b = 1.0;

  void validate() const;
  bool lossless() const { return eta_f == 1.0 && eta_b == 1.0; }
};

/// Output ladder operators as linear combinations of the eight input operators
/// (a1, a1^dag, a2, a2^dag, v1, v1^dag, v2, v2^dag); v are the vacuum modes
/// admitted by the loss beam splitters.
struct LossyTransform
{
  Eigen::Matrix<complex, 4, 8> ladder;
  Geometry geometry = Geometry::PhaseConjugate;
  CouplingStrength coupling;
  LossChannel loss;
};

/// [L M | V] with L = diag(sqrt eta) and V the vacuum-injection block.
LossyTransform apply_loss(const ModeTransform& t, const LossChannel& loss);

enum class Detection { JointQuadrature, IntensityDifference };

struct DetectionConfig
{
  Detection detection = Detection::JointQuadrature;
  double theta_f = 0.0;       // homodyne phase, mode 1
  double theta_b = 0.0;       // homodyne phase, mode 2
  double seed_photons = 0.0;  // gamma, coherent seed on mode 1

  void validate() const;
};

/// Local-oscillator phases applied to (a1, a2) in j = sum e^{-i phi} a + h.c.
/// The backward beam counter-propagates, so its phase enters with opposite
/// sign; the variance then depends on theta_f - theta_b. Forward beams use
/// theta_+ + theta_- directly.
std::pair<double, double> detector_phases(Geometry geometry, const DetectionConfig& det);

/// The phase combination the joint quadrature depends on:
/// theta_f - theta_b (phase conjugate) or theta_+ + theta_- (forward).
double relative_phase(Geometry geometry, const DetectionConfig& det);

struct SqueezingResult
{
  double noise_variance = 0.0;
  double shot_noise_variance = 0.0;
  double squeezing_db = 0.0;
  Geometry geometry = Geometry::PhaseConjugate;
  Detection detection = Detection::JointQuadrature;
  bool bright_limit = false;  // gamma >> 1 closed form used
};

// Joint quadrature ----------------------------------------------------------

/// Lossless closed forms, vacuum-normalized so that no mixing gives 2.
double pc_quadrature_variance(const CouplingStrength& c, double theta_f_minus_b);
double ffwm_quadrature_variance(const CouplingStrength& c, double theta_sum);

/// Lossless closed form, extended to unequal end losses through the common
/// marginal variance of the two arms. Independent of the seed.
double joint_quadrature_variance(const LossyTransform& t, const DetectionConfig& det);

SqueezingResult quadrature_squeezing_db(const LossyTransform& t, const DetectionConfig& det);

struct OptimalPhase
{
  double phase = 0.0;  // relative_phase at the minimum
  SqueezingResult result;
};

/// Golden-section minimum over the relative phase, bracketed around the
/// lossless optimum arg(c) + 3 pi / 2.
OptimalPhase optimal_quadrature_squeezing(const LossyTransform& t, double tolerance = 1e-6);

// Intensity difference ------------------------------------------------------

/// Mean photon numbers (n1, n2) for a coherent seed of gamma photons on mode 1.
std::pair<double, double> output_photon_numbers(const LossyTransform& t,
                                                const DetectionConfig& det);

/// Exact Var(n1 - n2) for the Gaussian output (Wick expansion), any seed.
double intensity_diff_variance(const LossyTransform& t, const DetectionConfig& det);

/// Closed-form noise/shot ratios.
double pc_intensity_diff_ratio_lossless(double kappa_l, double gamma);
double pc_intensity_diff_ratio_bright(double kappa_l, double eta);
double ffwm_intensity_diff_ratio_lossless(double nu_l, double gamma);
double ffwm_intensity_diff_ratio_bright(double nu_l, double eta);

/// Seed brightness above which the gamma >> 1 lossy closed forms are used.
inline constexpr double bright_seed_threshold = 1e3;

/// Closed forms where they apply (lossless any gamma; equal eta with
/// gamma >= 1e3), otherwise the exact Gaussian result. Zero shot noise
/// (eta = 0) reports 0 dB.
SqueezingResult intensity_diff_squeezing_db(const LossyTransform& t, const DetectionConfig& det);

SqueezingResult intensity_diff_squeezing_db(const CouplingStrength& c, const LossChannel& loss,
                                            const DetectionConfig& det,
                                            ThresholdPolicy policy = ThresholdPolicy::Enforce);

/// 10 log10(noise / shot); 0 dB when both vanish.
double to_db(double noise, double shot);

}  // namespace dfwm::quantumnoise
