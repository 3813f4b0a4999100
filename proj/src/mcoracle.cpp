#include "dfwm/mcoracle.hpp"

#include <cmath>
#include <random>
#include <vector>

#include <boost/math/special_functions/erf.hpp>

#include "dfwm/errors.hpp"
#include "dfwm/moments.hpp"

namespace dfwm::mcoracle {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t chunk)
{
  return splitmix64(splitmix64(seed) ^ splitmix64(chunk + 0x632be59bd9b4e019ULL));
}

void require(bool ok, const char* what)
{
  if (!ok) throw DomainError(what);
}

Eigen::MatrixXd symplectic_form(int modes)
{
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int m = 0; m < modes; ++m) {
    omega(2 * m, 2 * m + 1) = 1.0;
    omega(2 * m + 1, 2 * m) = -1.0;
  }
  return omega;
}

// Matrix square root factor S with S S^T = C, valid for singular C.
Eigen::MatrixXd sampling_factor(const Eigen::MatrixXd& covariance)
{
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(covariance);
  const Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * root.asDiagonal();
}

Eigen::VectorXd quadrature_weights(const Observable& obs)
{
  Eigen::VectorXd q(4);
  q << 2.0 * std::cos(obs.phi_1), 2.0 * std::sin(obs.phi_1), 2.0 * std::cos(obs.phi_2),
      2.0 * std::sin(obs.phi_2);
  return q;
}

// diag(1, 1, -1, -1): n1 - n2 = R^T Q R + const.
Eigen::MatrixXd number_difference_form()
{
  return Eigen::Vector4d(1.0, 1.0, -1.0, -1.0).asDiagonal();
}

struct Sampler
{
  const GaussianState& input;
  const AffineModeMap& map;
  const Observable& obs;
  Eigen::MatrixXd factor;
  Eigen::VectorXd output_mean;
  Eigen::VectorXd weights;  // linear functional of the output quadratures

  Sampler(const GaussianState& in, const AffineModeMap& m, const Observable& o)
      : input(in), map(m), obs(o)
  {
    require(m.a.rows() == 4 && m.a.cols() == in.mean.size(),
            "mode map and input state dimensions disagree");
    input.validate();
    factor = sampling_factor(input.covariance);
    output_mean = map.a * input.mean + map.offset;
    if (obs.kind == ObservableKind::JointQuadrature) {
      weights = quadrature_weights(obs);
    } else {
      if (input.mean.squaredNorm() < min_linearized_photons) {
        throw InsufficientBrightnessError(
            "linearized intensity-difference sampling needs at least 1e3 seed photons");
      }
      weights = 2.0 * number_difference_form() * output_mean;
    }
  }

  RunningMoments chunk(std::uint64_t seed, std::uint64_t index, std::uint64_t count) const
  {
    std::mt19937_64 rng(substream_seed(seed, index));
    std::normal_distribution<double> normal;
    const Eigen::Index n_in = input.mean.size();
    const Eigen::Index n_vac = map.b_vacuum.cols();
    Eigen::VectorXd z_in(n_in), z_vac(n_vac);
    const Eigen::RowVectorXd w_in = weights.transpose() * map.a * factor;
    const Eigen::RowVectorXd w_vac = 0.5 * weights.transpose() * map.b_vacuum;
    const double centre = weights.dot(output_mean);
    RunningMoments moments;
    for (std::uint64_t s = 0; s < count; ++s) {
      for (Eigen::Index i = 0; i < n_in; ++i) z_in(i) = normal(rng);
      for (Eigen::Index i = 0; i < n_vac; ++i) z_vac(i) = normal(rng);
      moments.add(centre + w_in.dot(z_in) + w_vac.dot(z_vac));
    }
    return moments;
  }

  Estimate finish(const RunningMoments& m) const
  {
    Estimate e;
    e.variance = m.variance();
    e.standard_error = m.variance_standard_error();
    if (obs.kind == ObservableKind::JointQuadrature) {
      e.mean = m.mean();
      e.shot_noise = weights.squaredNorm() / 4.0;
    } else {
      // The sampled functional is the fluctuation part; restore <n1> - <n2>.
      const Eigen::MatrixXd q = number_difference_form();
      e.mean = m.mean() - output_mean.dot(q * output_mean);
      e.shot_noise = output_mean.squaredNorm();
    }
    return e;
  }
};

std::uint64_t chunk_count(const SamplingOptions& options)
{
  require(options.samples >= 10'000, "Monte-Carlo estimates need at least 1e4 samples");
  require(options.chunk_size > 0, "chunk size must be positive");
  return (options.samples + options.chunk_size - 1) / options.chunk_size;
}

std::uint64_t chunk_length(const SamplingOptions& options, std::uint64_t index)
{
  const std::uint64_t begin = index * options.chunk_size;
  return std::min(options.chunk_size, options.samples - begin);
}

}  // namespace

GaussianState GaussianState::vacuum(int modes)
{
  return {Eigen::VectorXd::Zero(2 * modes), 0.25 * Eigen::MatrixXd::Identity(2 * modes, 2 * modes)};
}

GaussianState GaussianState::coherent_seed(int modes, double photons)
{
  require(photons >= 0.0, "photon number must be non-negative");
  GaussianState s = vacuum(modes);
  s.mean(0) = std::sqrt(photons);
  return s;
}

void GaussianState::validate() const
{
  const Eigen::Index n = mean.size();
  require(n % 2 == 0 && covariance.rows() == n && covariance.cols() == n,
          "Gaussian state dimensions are inconsistent");
  const double scale = std::max(1.0, covariance.cwiseAbs().maxCoeff());
  require((covariance - covariance.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
          "covariance must be symmetric");
  const Eigen::MatrixXcd bound =
      covariance.cast<complex>() + complex(0.0, 0.25) * symplectic_form(modes()).cast<complex>();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(bound);
  require(eig.eigenvalues().minCoeff() >= -1e-10 * scale,
          "covariance violates the uncertainty principle");
}

AffineModeMap AffineModeMap::identity(int modes)
{
  return {Eigen::MatrixXd::Identity(2 * modes, 2 * modes), Eigen::MatrixXd::Zero(2 * modes, 0),
          Eigen::VectorXd::Zero(2 * modes)};
}

AffineModeMap AffineModeMap::from_ladder(const Eigen::Matrix<complex, 4, 8>& ladder)
{
  // a_m = sum_k alpha a_k + beta a_k^dag with a = X + iY gives
  //   X_m = Re(alpha + beta) X_k - Im(alpha - beta) Y_k
  //   Y_m = Im(alpha + beta) X_k + Re(alpha - beta) Y_k
  Eigen::MatrixXd full(4, 8);
  for (int m = 0; m < 2; ++m) {
    for (int k = 0; k < 4; ++k) {
      const complex alpha = ladder(2 * m, 2 * k);
      const complex beta = ladder(2 * m, 2 * k + 1);
      full(2 * m, 2 * k) = std::real(alpha + beta);
      full(2 * m, 2 * k + 1) = -std::imag(alpha - beta);
      full(2 * m + 1, 2 * k) = std::imag(alpha + beta);
      full(2 * m + 1, 2 * k + 1) = std::real(alpha - beta);
    }
  }
  return {full.leftCols(4), full.rightCols(4), Eigen::VectorXd::Zero(4)};
}

AffineModeMap AffineModeMap::from_transform(const quantumnoise::LossyTransform& t)
{
  return from_ladder(t.ladder);
}

GaussianState propagate(const GaussianState& state, const AffineModeMap& map)
{
  require(map.a.cols() == state.mean.size() && map.offset.size() == map.a.rows() &&
              map.b_vacuum.rows() == map.a.rows(),
          "mode map and state dimensions disagree");
  GaussianState out;
  out.mean = map.a * state.mean + map.offset;
  out.covariance = map.a * state.covariance * map.a.transpose() +
                   0.25 * map.b_vacuum * map.b_vacuum.transpose();
  return out;
}

Observable Observable::quadrature(double phi_1, double phi_2)
{
  return {ObservableKind::JointQuadrature, phi_1, phi_2};
}

Observable Observable::intensity_difference()
{
  return {ObservableKind::IntensityDifference, 0.0, 0.0};
}

Estimate observable_variance(const GaussianState& output, const Observable& obs)
{
  require(output.mean.size() == 4, "observables are defined on two modes");
  Estimate e;
  const Eigen::MatrixXd& c = output.covariance;
  const Eigen::VectorXd& mu = output.mean;
  if (obs.kind == ObservableKind::JointQuadrature) {
    const Eigen::VectorXd q = quadrature_weights(obs);
    e.mean = q.dot(mu);
    e.variance = q.dot(c * q);
    e.shot_noise = q.squaredNorm() / 4.0;
    return e;
  }
  // n_m = X_m^2 + Y_m^2 - 1/2. For a Gaussian Wigner function
  // Var(R^T Q R) = 2 tr(QCQC) + 4 mu^T QCQ mu, and reordering X^2 Y^2 within
  // a mode removes 1/4 per mode.
  const Eigen::MatrixXd q = number_difference_form();
  const Eigen::MatrixXd qc = q * c;
  e.variance = 2.0 * (qc * qc).trace() + 4.0 * mu.dot(qc * q * mu) - 0.5;
  const double n1 = mu.head<2>().squaredNorm() + c(0, 0) + c(1, 1) - 0.5;
  const double n2 = mu.tail<2>().squaredNorm() + c(2, 2) + c(3, 3) - 0.5;
  e.mean = n1 - n2;
  e.shot_noise = n1 + n2;
  return e;
}

Estimate observable_variance_linearized(const GaussianState& output, const Observable& obs)
{
  if (obs.kind == ObservableKind::JointQuadrature) return observable_variance(output, obs);
  require(output.mean.size() == 4, "observables are defined on two modes");
  const Eigen::MatrixXd q = number_difference_form();
  const Eigen::VectorXd& mu = output.mean;
  Estimate e;
  e.mean = mu.dot(q * mu);
  e.variance = 4.0 * mu.dot(q * output.covariance * q * mu);
  e.shot_noise = mu.squaredNorm();
  return e;
}

Estimate mc_estimate_serial(const GaussianState& input, const AffineModeMap& map,
                            const Observable& obs, const SamplingOptions& options)
{
  const Sampler sampler(input, map, obs);
  const std::uint64_t chunks = chunk_count(options);
  RunningMoments total;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    total.merge(sampler.chunk(options.seed, c, chunk_length(options, c)));
  }
  return sampler.finish(total);
}

Estimate mc_estimate(const GaussianState& input, const AffineModeMap& map, const Observable& obs,
                     const SamplingOptions& options)
{
  const Sampler sampler(input, map, obs);
  const auto chunks = static_cast<std::int64_t>(chunk_count(options));
  std::vector<RunningMoments> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const auto index = static_cast<std::uint64_t>(c);
    partial[index] = sampler.chunk(options.seed, index, chunk_length(options, index));
  }
  RunningMoments total;
  for (const auto& p : partial) total.merge(p);
  return sampler.finish(total);
}

namespace {

struct VelocitySums
{
  complex chi_lin;
  complex chi_nl;
  double population_diff = 0.0;
};

// Stratum i of N covers U in [i/N, (i+1)/N); x = v_z / u has density
// exp(-x^2)/sqrt(pi), so x = erf^-1(2U - 1).
VelocitySums velocity_chunk(const atomvapor::AtomModel& atom, const atomvapor::DriveConfig& drive,
                            double doppler_scale, double second_sign,
                            const SamplingOptions& options, std::uint64_t index)
{
  std::mt19937_64 rng(substream_seed(options.seed, index));
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const double n = static_cast<double>(options.samples);
  const std::uint64_t begin = index * options.chunk_size;
  const std::uint64_t count = chunk_length(options, index);
  VelocitySums sums;
  for (std::uint64_t s = begin; s < begin + count; ++s) {
    double u = (static_cast<double>(s) + uniform(rng)) / n;
    u = std::clamp(u, 1e-300, std::nextafter(1.0, 0.0));
    const double x = boost::math::erf_inv(2.0 * u - 1.0);
    atomvapor::DriveConfig shifted = drive;
    shifted.delta_1 = drive.delta_1 - doppler_scale * x;
    shifted.delta_2 = drive.delta_2 - second_sign * doppler_scale * x;
    const atomvapor::Susceptibility chi = atomvapor::susceptibility(atom, shifted);
    sums.chi_lin += chi.chi_lin;
    sums.chi_nl += chi.chi_nl;
    sums.population_diff += chi.population_diff;
  }
  return sums;
}

VelocityAverage average(const std::vector<VelocitySums>& partial, std::uint64_t samples)
{
  VelocitySums total;
  for (const auto& p : partial) {
    total.chi_lin += p.chi_lin;
    total.chi_nl += p.chi_nl;
    total.population_diff += p.population_diff;
  }
  const double n = static_cast<double>(samples);
  return {total.chi_lin / n, total.chi_nl / n, total.population_diff / n};
}

double velocity_scale(const atomvapor::AtomModel& atom, const atomvapor::DriveConfig& drive)
{
  drive.validate();
  return drive.wavenumber() * atomvapor::avg_thermal_velocity(drive.temperature, atom.mass);
}

}  // namespace

VelocityAverage velocity_average_mc_serial(const atomvapor::AtomModel& atom,
                                           const atomvapor::DriveConfig& drive,
                                           atomvapor::DopplerShift shift,
                                           const SamplingOptions& options)
{
  const double scale = velocity_scale(atom, drive);
  const double sign = shift == atomvapor::DopplerShift::Common ? 1.0 : -1.0;
  const std::uint64_t chunks = chunk_count(options);
  std::vector<VelocitySums> partial(chunks);
  for (std::uint64_t c = 0; c < chunks; ++c) {
    partial[c] = velocity_chunk(atom, drive, scale, sign, options, c);
  }
  return average(partial, options.samples);
}

VelocityAverage velocity_average_mc(const atomvapor::AtomModel& atom,
                                    const atomvapor::DriveConfig& drive,
                                    atomvapor::DopplerShift shift, const SamplingOptions& options)
{
  const double scale = velocity_scale(atom, drive);
  const double sign = shift == atomvapor::DopplerShift::Common ? 1.0 : -1.0;
  const auto chunks = static_cast<std::int64_t>(chunk_count(options));
  std::vector<VelocitySums> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const auto index = static_cast<std::uint64_t>(c);
    partial[index] = velocity_chunk(atom, drive, scale, sign, options, index);
  }
  return average(partial, options.samples);
}

}  // namespace dfwm::mcoracle
