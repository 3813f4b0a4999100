#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dfwm/atomvapor.hpp"
#include "dfwm/constants.hpp"
#include "dfwm/errors.hpp"

namespace dfwm::atomvapor {

namespace {

// Reduced velocity x = v_z / u; the distribution is exp(-x^2) / sqrt(pi).
constexpr double kVelocityCutoff = 7.0;

struct VelocityClass
{
  const AtomModel& atom;
  const DriveConfig& drive;
  double doppler_scale;  // k u
  double second_sign;

  Susceptibility at(double x) const
  {
    DriveConfig shifted = drive;
    shifted.delta_1 = drive.delta_1 - doppler_scale * x;
    shifted.delta_2 = drive.delta_2 - second_sign * doppler_scale * x;
    return susceptibility(atom, shifted);
  }
};

Susceptibility finish(const AtomModel& atom, const DriveConfig& drive, complex chi_lin,
                      complex chi_nl, double population_diff)
{
  Susceptibility out = susceptibility(atom, drive);
  out.chi_lin = chi_lin;
  out.chi_nl = chi_nl;
  out.population_diff = population_diff;
  out.expansion_valid = std::abs(out.saturation_ratio()) < 1.0;
  return out;
}

bool converged(complex now, complex before, double tolerance)
{
  return std::abs(now - before) <= tolerance * std::abs(now);
}

Susceptibility gauss_hermite_average(const VelocityClass& velocity, const DopplerOptions& options)
{
  complex lin_prev, nl_prev;
  bool have_prev = false;
  for (std::size_t n = options.initial_nodes; n <= options.max_nodes; n *= 2) {
    const GaussHermiteRule rule = gauss_hermite_rule(n);
    complex lin, nl;
    double pop = 0.0;
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
      const Susceptibility s = velocity.at(rule.nodes(i));
      lin += rule.weights(i) * s.chi_lin;
      nl += rule.weights(i) * s.chi_nl;
      pop += rule.weights(i) * s.population_diff;
    }
    const double norm = std::sqrt(constants::pi);
    lin /= norm;
    nl /= norm;
    pop /= norm;
    if (have_prev && converged(lin, lin_prev, options.tolerance) &&
        (nl == complex{} || converged(nl, nl_prev, options.tolerance))) {
      return finish(velocity.atom, velocity.drive, lin, nl, pop);
    }
    lin_prev = lin;
    nl_prev = nl;
    have_prev = true;
  }
  throw IntegrationError("Gauss-Hermite Doppler average did not converge within " +
                         std::to_string(options.max_nodes) + " nodes");
}

template <class F>
auto integrate_pieces(F f, const std::vector<double>& breaks, double tolerance)
{
  using boost::math::quadrature::gauss_kronrod;
  decltype(f(0.0)) total{};
  double error_sum = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    double error = 0.0;
    total += gauss_kronrod<double, 31>::integrate(f, breaks[i], breaks[i + 1], 30,
                                                  1e-3 * tolerance, &error);
    error_sum += error;
  }
  if (error_sum > tolerance * std::abs(total) && error_sum > 1e-300) {
    throw IntegrationError("adaptive Doppler average did not reach the requested tolerance");
  }
  return total / std::sqrt(constants::pi);
}

Susceptibility adaptive_average(const VelocityClass& velocity, const DopplerOptions& options)
{
  std::vector<double> breaks{-kVelocityCutoff, kVelocityCutoff};
  if (velocity.doppler_scale > 0.0) {
    for (double r : {velocity.drive.delta_1 / velocity.doppler_scale,
                     velocity.drive.delta_2 / (velocity.second_sign * velocity.doppler_scale)}) {
      if (std::abs(r) < kVelocityCutoff) breaks.push_back(r);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const auto weight = [](double x) { return std::exp(-x * x); };
  const complex lin = integrate_pieces(
      [&](double x) { return weight(x) * velocity.at(x).chi_lin; }, breaks, options.tolerance);
  complex nl;
  if (velocity.drive.pump_intensity > 0.0) {
    nl = integrate_pieces([&](double x) { return weight(x) * velocity.at(x).chi_nl; }, breaks,
                          options.tolerance);
  }
  const double pop = integrate_pieces(
      [&](double x) { return weight(x) * velocity.at(x).population_diff; }, breaks,
      options.tolerance);
  return finish(velocity.atom, velocity.drive, lin, nl, pop);
}

}  // namespace

Susceptibility doppler_average(const AtomModel& atom, const DriveConfig& drive,
                               const DopplerOptions& options)
{
  drive.validate();
  const double u = avg_thermal_velocity(drive.temperature, atom.mass);
  const VelocityClass velocity{atom, drive, drive.wavenumber() * u,
                               options.shift == DopplerShift::Common ? 1.0 : -1.0};
  switch (options.method) {
    case DopplerMethod::GaussHermite:
      return gauss_hermite_average(velocity, options);
    case DopplerMethod::Adaptive:
      break;
  }
  return adaptive_average(velocity, options);
}

}  // namespace dfwm::atomvapor
