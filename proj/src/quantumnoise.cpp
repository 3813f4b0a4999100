#include "dfwm/quantumnoise.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "dfwm/constants.hpp"
#include "dfwm/errors.hpp"

namespace dfwm::quantumnoise {

namespace {

constexpr complex I{0.0, 1.0};

// Both geometries share one ladder structure:
//   a1 -> d a1 + i u o a2^dag,  a2 -> d a2 + i u o a1^dag
// with (d, o) = (sec, tan) for phase conjugation, (cosh, sinh) forward.
LadderMatrix two_mode_map(double diagonal, double off, complex u)
{
  LadderMatrix m = LadderMatrix::Zero();
  m(0, 0) = diagonal;
  m(0, 3) = I * u * off;
  m(1, 1) = diagonal;
  m(1, 2) = -I * std::conj(u) * off;
  m(2, 1) = I * u * off;
  m(2, 2) = diagonal;
  m(3, 0) = -I * std::conj(u) * off;
  m(3, 3) = diagonal;
  return m;
}

// d + o and d - o without cancellation, so that the squeezed quadrature keeps
// its relative accuracy when d and o are both large.
struct SumDifference
{
  double sum;
  double difference;
};

SumDifference sum_difference(const CouplingStrength& c)
{
  const double x = c.magnitude_l;
  if (c.geometry == Geometry::Forward) return {std::exp(x), std::exp(-x)};
  const double s = std::sin(x), co = std::cos(x);
  // sec +- tan = (1 +- sin)/cos = cos/(1 -+ sin); pick the form without 1 - 1.
  if (s >= 0.0) return {(1.0 + s) / co, co / (1.0 + s)};
  return {co / (1.0 - s), (1.0 - s) / co};
}

// 2 |d + w o|^2 with w = i e^{-i phase} u, written as
// 2 [(d + o)^2 cos^2(psi/2) + (d - o)^2 sin^2(psi/2)], psi = arg w.
double lossless_joint_variance(const CouplingStrength& c, double phase)
{
  const auto [sum, difference] = sum_difference(c);
  const double psi = std::remainder(0.5 * constants::pi - phase + std::arg(c.phase()),
                                    2.0 * constants::pi);
  const double cos_half = std::cos(0.5 * psi), sin_half = std::sin(0.5 * psi);
  return 2.0 * (sum * sum * cos_half * cos_half + difference * difference * sin_half * sin_half);
}

// With X_m the unit-vacuum quadratures of the lossless outputs, the detected
// signal is a X_1 + b X_2 (a, b = sqrt eta) plus vacuum. Both arms have the
// marginal variance d^2 + o^2, so
//   Var = a b Var(X_1 + X_2) + (a - b)^2 (d^2 + o^2) + 2 - a^2 - b^2.
double with_loss(const CouplingStrength& c, const LossChannel& loss, double lossless)
{
  if (loss.lossless()) return lossless;
  const auto [sum, difference] = sum_difference(c);
  const double marginal = 0.5 * (sum * sum + difference * difference);
  const double a = std::sqrt(loss.eta_f), b = std::sqrt(loss.eta_b);
  return a * b * lossless + (a - b) * (a - b) * marginal + (2.0 - loss.eta_f - loss.eta_b);
}

bool equal_eta(const LossChannel& loss)
{
  return loss.eta_f == loss.eta_b;
}

}  // namespace

LadderMatrix commutator_metric()
{
  return Eigen::Vector4cd(1.0, -1.0, 1.0, -1.0).asDiagonal();
}

ModeTransform pc_mode_transform(const CouplingStrength& c, ThresholdPolicy policy)
{
  if (c.geometry != Geometry::PhaseConjugate) {
    throw DomainError("pc_mode_transform needs a phase-conjugate coupling");
  }
  if (policy == ThresholdPolicy::Enforce && !c.below_threshold()) {
    std::ostringstream msg;
    msg << "|kappa|L = " << c.magnitude_l << " is at or above threshold pi/2";
    throw AboveThresholdError(msg.str(), c.magnitude_l);
  }
  const double x = c.magnitude_l;
  return {two_mode_map(1.0 / std::cos(x), std::tan(x), c.phase()), c.geometry, c};
}

ModeTransform ffwm_mode_transform(const CouplingStrength& c)
{
  if (c.geometry != Geometry::Forward) {
    throw DomainError("ffwm_mode_transform needs a forward coupling");
  }
  const double x = c.magnitude_l;
  return {two_mode_map(std::cosh(x), std::sinh(x), c.phase()), c.geometry, c};
}

ModeTransform mode_transform(const CouplingStrength& c, ThresholdPolicy policy)
{
  return c.geometry == Geometry::Forward ? ffwm_mode_transform(c) : pc_mode_transform(c, policy);
}

void LossChannel::validate() const
{
  for (double eta : {eta_f, eta_b}) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("transmission must lie in [0, 1]");
  }
}

LossyTransform apply_loss(const ModeTransform& t, const LossChannel& loss)
{
  loss.validate();
  const double tf = std::sqrt(loss.eta_f);
  const double tb = std::sqrt(loss.eta_b);
  const double rf = std::sqrt(1.0 - loss.eta_f);
  const double rb = std::sqrt(1.0 - loss.eta_b);

  LossyTransform out;
  out.ladder.setZero();
  const Eigen::Vector4cd transmission(tf, tf, tb, tb);
  out.ladder.leftCols<4>() = transmission.asDiagonal() * t.matrix;
  out.ladder(0, 4) = I * rf;
  out.ladder(1, 5) = -I * rf;
  out.ladder(2, 6) = I * rb;
  out.ladder(3, 7) = -I * rb;
  out.geometry = t.geometry;
  out.coupling = t.coupling;
  out.loss = loss;
  return out;
}

void DetectionConfig::validate() const
{
  if (!(seed_photons >= 0.0)) throw DomainError("seed photon number must be non-negative");
  if (!std::isfinite(theta_f) || !std::isfinite(theta_b)) {
    throw DomainError("homodyne phases must be finite");
  }
}

std::pair<double, double> detector_phases(Geometry geometry, const DetectionConfig& det)
{
  if (geometry == Geometry::PhaseConjugate) return {det.theta_f, -det.theta_b};
  return {det.theta_f, det.theta_b};
}

double relative_phase(Geometry geometry, const DetectionConfig& det)
{
  const auto [phi_1, phi_2] = detector_phases(geometry, det);
  return phi_1 + phi_2;
}

double to_db(double noise, double shot)
{
  if (noise == 0.0 && shot == 0.0) return 0.0;
  return 10.0 * std::log10(noise / shot);
}

double pc_quadrature_variance(const CouplingStrength& c, double theta_f_minus_b)
{
  if (c.geometry != Geometry::PhaseConjugate) {
    throw DomainError("pc_quadrature_variance needs a phase-conjugate coupling");
  }
  return lossless_joint_variance(c, theta_f_minus_b);
}

double ffwm_quadrature_variance(const CouplingStrength& c, double theta_sum)
{
  if (c.geometry != Geometry::Forward) {
    throw DomainError("ffwm_quadrature_variance needs a forward coupling");
  }
  return lossless_joint_variance(c, theta_sum);
}

double joint_quadrature_variance(const LossyTransform& t, const DetectionConfig& det)
{
  det.validate();
  return with_loss(t.coupling, t.loss,
                   lossless_joint_variance(t.coupling, relative_phase(t.geometry, det)));
}

SqueezingResult quadrature_squeezing_db(const LossyTransform& t, const DetectionConfig& det)
{
  SqueezingResult r;
  r.noise_variance = joint_quadrature_variance(t, det);
  r.shot_noise_variance = 2.0;
  r.squeezing_db = to_db(r.noise_variance, r.shot_noise_variance);
  r.geometry = t.geometry;
  r.detection = Detection::JointQuadrature;
  return r;
}

OptimalPhase optimal_quadrature_squeezing(const LossyTransform& t, double tolerance)
{
  // Lossless optimum; past the first threshold sec and tan can have opposite
  // signs, which moves the minimum by pi.
  double centre = std::arg(t.coupling.phase()) + 1.5 * constants::pi;
  const auto [sum, difference] = sum_difference(t.coupling);
  const bool flipped = std::abs(sum) < std::abs(difference);
  if (flipped) centre += constants::pi;

  const auto variance_at = [&](double phase) {
    DetectionConfig det;
    det.theta_f = phase;
    return joint_quadrature_variance(t, det);
  };
  // The relative phase equals theta_f when theta_b = 0 in both geometries.
  const int bits = static_cast<int>(std::ceil(-std::log2(tolerance / (2.0 * constants::pi))));
  auto [phase, variance] = boost::math::tools::brent_find_minima(
      variance_at, centre - 0.5 * constants::pi, centre + 0.5 * constants::pi,
      std::min(bits, std::numeric_limits<double>::digits / 2));
  // The loss terms do not depend on the phase, so the lossless optimum is
  // exact; it wins when the minimum is narrower than the search tolerance.
  // Taken at psi = pi (or 0) exactly: going through a rounded phase would
  // leave a floor of about e^{2|c|L} eps^2.
  const double extreme = flipped ? sum : difference;
  const double at_centre = with_loss(t.coupling, t.loss, 2.0 * extreme * extreme);
  if (at_centre <= variance) {
    phase = centre;
    variance = at_centre;
  }

  OptimalPhase out;
  out.phase = std::remainder(phase, 2.0 * constants::pi);
  if (out.phase < 0.0) out.phase += 2.0 * constants::pi;
  out.result.noise_variance = variance;
  out.result.shot_noise_variance = 2.0;
  out.result.squeezing_db = to_db(variance, 2.0);
  out.result.geometry = t.geometry;
  out.result.detection = Detection::JointQuadrature;
  return out;
}

namespace {

struct PhotonStatistics
{
  Eigen::Vector2cd mean;  // output field amplitudes <a_m>
  Eigen::Matrix2cd m;     // <d_m d_n>
  Eigen::Matrix2cd n;     // <d_m^dag d_n>
  Eigen::Matrix2cd k;     // <d_m d_n^dag>
};

PhotonStatistics photon_statistics(const LossyTransform& t, const DetectionConfig& det)
{
  det.validate();
  const double amplitude = std::sqrt(det.seed_photons);
  PhotonStatistics s;
  s.m.setZero();
  s.n.setZero();
  s.k.setZero();
  for (int a = 0; a < 2; ++a) {
    s.mean(a) = (t.ladder(2 * a, 0) + t.ladder(2 * a, 1)) * amplitude;
    for (int b = 0; b < 2; ++b) {
      for (int p = 0; p < 4; ++p) {
        const complex alpha_a = t.ladder(2 * a, 2 * p), beta_a = t.ladder(2 * a, 2 * p + 1);
        const complex alpha_b = t.ladder(2 * b, 2 * p), beta_b = t.ladder(2 * b, 2 * p + 1);
        s.m(a, b) += alpha_a * beta_b;
        s.n(a, b) += std::conj(beta_a) * beta_b;
        s.k(a, b) += alpha_a * std::conj(alpha_b);
      }
    }
  }
  return s;
}

}  // namespace

std::pair<double, double> output_photon_numbers(const LossyTransform& t,
                                                const DetectionConfig& det)
{
  const PhotonStatistics s = photon_statistics(t, det);
  return {std::norm(s.mean(0)) + std::real(s.n(0, 0)), std::norm(s.mean(1)) + std::real(s.n(1, 1))};
}

double intensity_diff_variance(const LossyTransform& t, const DetectionConfig& det)
{
  const PhotonStatistics s = photon_statistics(t, det);
  const double sign[2] = {1.0, -1.0};
  complex variance;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const complex ma = s.mean(a), mb = s.mean(b);
      const complex linear = std::conj(ma) * std::conj(mb) * s.m(a, b) +
                             std::conj(ma) * mb * s.k(a, b) + ma * std::conj(mb) * s.n(a, b) +
                             ma * mb * std::conj(s.m(b, a));
      const complex quartic = std::norm(s.m(a, b)) + s.n(a, b) * s.k(a, b);
      variance += sign[a] * sign[b] * (linear + quartic);
    }
  }
  return std::real(variance);
}

double pc_intensity_diff_ratio_lossless(double kappa_l, double gamma)
{
  const double sec2 = 1.0 / std::pow(std::cos(kappa_l), 2);
  const double tan2 = std::pow(std::tan(kappa_l), 2);
  return gamma / (gamma * sec2 + (gamma + 2.0) * tan2);
}

double pc_intensity_diff_ratio_bright(double kappa_l, double eta)
{
  return 1.0 - eta * (2.0 + 4.0 / (std::cos(2.0 * kappa_l) - 3.0));
}

double ffwm_intensity_diff_ratio_lossless(double nu_l, double gamma)
{
  return gamma / (-1.0 + (1.0 + gamma) * std::cosh(2.0 * nu_l));
}

double ffwm_intensity_diff_ratio_bright(double nu_l, double eta)
{
  return 1.0 - eta + eta / std::cosh(2.0 * nu_l);
}

SqueezingResult intensity_diff_squeezing_db(const LossyTransform& t, const DetectionConfig& det)
{
  SqueezingResult r;
  r.geometry = t.geometry;
  r.detection = Detection::IntensityDifference;

  const auto [n1, n2] = output_photon_numbers(t, det);
  r.shot_noise_variance = n1 + n2;
  const double gamma = det.seed_photons;
  const double x = t.coupling.magnitude_l;
  const bool forward = t.geometry == Geometry::Forward;

  if (r.shot_noise_variance == 0.0) {
    r.noise_variance = 0.0;
  } else if (t.loss.lossless() && gamma > 0.0) {
    const double ratio = forward ? ffwm_intensity_diff_ratio_lossless(x, gamma)
                                 : pc_intensity_diff_ratio_lossless(x, gamma);
    r.noise_variance = ratio * r.shot_noise_variance;
  } else if (equal_eta(t.loss) && gamma >= bright_seed_threshold) {
    const double eta = t.loss.eta_f;
    const double ratio = forward ? ffwm_intensity_diff_ratio_bright(x, eta)
                                 : pc_intensity_diff_ratio_bright(x, eta);
    r.noise_variance = ratio * r.shot_noise_variance;
    r.bright_limit = true;
  } else {
    r.noise_variance = intensity_diff_variance(t, det);
  }
  r.squeezing_db = to_db(r.noise_variance, r.shot_noise_variance);
  return r;
}

SqueezingResult intensity_diff_squeezing_db(const CouplingStrength& c, const LossChannel& loss,
                                            const DetectionConfig& det, ThresholdPolicy policy)
{
  return intensity_diff_squeezing_db(apply_loss(mode_transform(c, policy), loss), det);
}

}  // namespace dfwm::quantumnoise
