#include <cmath>
#include <sstream>

#include "dfwm/atomvapor.hpp"
#include "dfwm/errors.hpp"

namespace dfwm::atomvapor {

namespace {

constexpr complex I{0.0, 1.0};

struct Coherence
{
  int upper;
  int lower;
  double frequency;
  double decay;
};

}  // namespace

DensityMatrix bloch_rhs(const AtomModel& atom, const DriveConfig& drive, complex rabi_p1,
                        complex rabi_p2, const DensityMatrix& sigma)
{
  // Pump couplings: p1 drives 1-3, p2 drives 2-4.
  DensityMatrix v = DensityMatrix::Zero();
  v(2, 0) = rabi_p1;
  v(0, 2) = std::conj(rabi_p1);
  v(3, 1) = rabi_p2;
  v(1, 3) = std::conj(rabi_p2);

  DensityMatrix rhs = 0.5 * I * (v * sigma - sigma * v);

  const double d1 = drive.delta_1;
  const double d2 = drive.delta_2;
  const Coherence coherences[] = {
      {2, 0, d1, atom.gamma_31},      {3, 1, d2, atom.gamma_42},
      {3, 2, d2 - d1, atom.gamma_43}, {3, 0, d2, atom.gamma_41},
      {2, 1, d1, atom.gamma_32},      {1, 0, d2 - d1, atom.gamma_21},
  };
  for (const auto& c : coherences) {
    rhs(c.upper, c.lower) += complex(-c.decay, c.frequency) * sigma(c.upper, c.lower);
    rhs(c.lower, c.upper) += complex(-c.decay, -c.frequency) * sigma(c.lower, c.upper);
  }

  rhs(0, 0) += atom.gamma_13 * sigma(2, 2) + atom.gamma_14 * sigma(3, 3);
  rhs(1, 1) += atom.gamma_23 * sigma(2, 2) + atom.gamma_24 * sigma(3, 3);
  rhs(2, 2) -= atom.gamma_3 * sigma(2, 2);
  rhs(3, 3) -= atom.gamma_4 * sigma(3, 3);
  return rhs;
}

DensityMatrix steady_state_numeric(const AtomModel& atom, const DriveConfig& drive,
                                   complex rabi_p1, complex rabi_p2)
{
  atom.validate();
  DensityMatrix ground = DensityMatrix::Zero();
  ground(0, 0) = 1.0;
  // Undriven: both ground states are stationary; the mixing ground state is
  // the physical starting point.
  if (rabi_p1 == complex{} && rabi_p2 == complex{}) return ground;

  using Liouvillian = Eigen::Matrix<complex, 16, 16>;
  Liouvillian liouvillian;
  for (int k = 0; k < 4; ++k) {
    for (int l = 0; l < 4; ++l) {
      DensityMatrix basis = DensityMatrix::Zero();
      basis(k, l) = 1.0;
      const DensityMatrix column = bloch_rhs(atom, drive, rabi_p1, rabi_p2, basis);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) liouvillian(4 * i + j, 4 * k + l) = column(i, j);
    }
  }

  const double scale = liouvillian.cwiseAbs().maxCoeff();
  liouvillian /= scale;
  // Trace row replaces the (linearly dependent) sigma_11 equation.
  liouvillian.row(0).setZero();
  for (int i = 0; i < 4; ++i) liouvillian(0, 5 * i) = 1.0;

  Eigen::Matrix<complex, 16, 1> rhs = Eigen::Matrix<complex, 16, 1>::Zero();
  rhs(0) = 1.0;

  const Eigen::JacobiSVD<Liouvillian> svd(liouvillian);
  const auto& singular = svd.singularValues();
  const double condition = singular(0) / singular(15);
  if (!std::isfinite(condition) || condition > 1e13) {
    std::ostringstream msg;
    msg << "steady-state system is singular (condition number " << condition << ")";
    throw SingularSystemError(msg.str(), condition);
  }
  // Extended precision keeps the solve well inside the 1e-6 weak-pump budget
  // when the rates span several decades.
  using Wide = std::complex<long double>;
  const Eigen::Matrix<Wide, 16, 16> wide = liouvillian.cast<Wide>();
  const Eigen::Matrix<Wide, 16, 1> wide_rhs = rhs.cast<Wide>();
  const Eigen::FullPivLU<Eigen::Matrix<Wide, 16, 16>> lu(wide);
  Eigen::Matrix<Wide, 16, 1> wide_solution = lu.solve(wide_rhs);
  wide_solution += lu.solve(wide_rhs - wide * wide_solution);
  const Eigen::Matrix<complex, 16, 1> solution = wide_solution.cast<complex>();

  DensityMatrix sigma;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) sigma(i, j) = solution(4 * i + j);
  return sigma;
}

}  // namespace dfwm::atomvapor
