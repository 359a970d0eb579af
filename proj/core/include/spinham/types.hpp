#pragma once

#include <complex>

#include <Eigen/Dense>

namespace spinham {

using Complex = std::complex<double>;

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;
using CMat3 = Eigen::Matrix3cd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// Speed of light in atomic units; the Bohr magneton is 1/(2c).
inline constexpr double kSpeedOfLight = 137.035999084;

/// Largest entrywise modulus, 0 for an empty matrix.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived> &m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

} // namespace spinham
