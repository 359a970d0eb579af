#include "spinham/spin_algebra.hpp"

#include <cmath>
#include <string>

#include "spinham/errors.hpp"
#include "spinham/linalg.hpp"
#include "spinham/tolerances.hpp"

namespace spinham {

SpinQuantum::SpinQuantum(int two_s) : two_s_(two_s) {
  if (two_s < kMinTwoS || two_s > kMaxTwoS) {
    throw DimensionError("two_s = " + std::to_string(two_s) +
                         " outside supported range [1, 15] (dimension cap m <= 16)");
  }
}

const CMatrix &SpinMatrices::operator[](int u) const {
  switch (u) {
  case 0:
    return sx;
  case 1:
    return sy;
  case 2:
    return sz;
  default:
    throw ValidationError("spin component index must be 0, 1 or 2");
  }
}

CMatrix SpinMatrices::dot(const Vec3 &n) const { return n(0) * sx + n(1) * sy + n(2) * sz; }

double SpinMatrices::trace_square() const {
  const double s = this->s.spin();
  return s * (s + 1.0) * (2.0 * s + 1.0) / 3.0;
}

AxisAngle::AxisAngle(double theta, const Vec3 &axis) : theta_(theta), axis_(axis) {
  if (!std::isfinite(theta) || !axis.allFinite()) {
    throw ValidationError("axis-angle: non-finite input");
  }
  if (std::abs(axis.norm() - 1.0) > Tolerances::unit_axis) {
    throw ValidationError("axis-angle: axis is not a unit vector (|n| = " + std::to_string(axis.norm()) + ")");
  }
}

RotationGenerators rotation_generators() {
  RotationGenerators g;
  for (int u = 0; u < 3; ++u) {
    g.r[static_cast<std::size_t>(u)] = CMat3::Zero();
  }
  // (R_u)_vw = -i eps_uvw
  auto set = [&](int u, int v, int w, double eps) { g.r[static_cast<std::size_t>(u)](v, w) = -kI * eps; };
  set(0, 1, 2, 1.0);
  set(0, 2, 1, -1.0);
  set(1, 2, 0, 1.0);
  set(1, 0, 2, -1.0);
  set(2, 0, 1, 1.0);
  set(2, 1, 0, -1.0);
  return g;
}

SpinMatrices spin_matrices(SpinQuantum s) {
  const int m = s.dim();
  const double S = s.spin();
  CMatrix splus = CMatrix::Zero(m, m);
  // Row k-1 holds M + 1 where column k holds M.
  for (int k = 1; k < m; ++k) {
    const double mk = s.m_value(k);
    splus(k - 1, k) = std::sqrt(S * (S + 1.0) - mk * (mk + 1.0));
  }
  const CMatrix sminus = splus.adjoint();

  CMatrix sz = CMatrix::Zero(m, m);
  for (int k = 0; k < m; ++k) {
    sz(k, k) = s.m_value(k);
  }
  return SpinMatrices{s, (splus + sminus) * 0.5, (splus - sminus) / (2.0 * kI), sz};
}

CMatrix matrix_exp_hermitian_generator(const CMatrix &h, double t) {
  if (h.rows() != h.cols()) {
    throw ValidationError("matrix exponential: generator is not square");
  }
  if (hermiticity_residual(h) > Tolerances::hermitian) {
    throw ValidationError("matrix exponential: generator is not Hermitian");
  }
  const HermitianEigen eig = hermitian_eigen(h);
  CVector phases(eig.values.size());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    phases(k) = std::exp(-kI * (t * eig.values(k)));
  }
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

CMatrix su_rotation(const SpinMatrices &sm, const AxisAngle &aa) {
  return matrix_exp_hermitian_generator(sm.dot(aa.axis()), aa.theta());
}

Mat3 so3_rotation(const AxisAngle &aa) {
  const Vec3 &n = aa.axis();
  const double c = std::cos(aa.theta());
  const double s = std::sin(aa.theta());
  Mat3 cross;
  cross << 0.0, -n(2), n(1), n(2), 0.0, -n(0), -n(1), n(0), 0.0;
  return c * Mat3::Identity() + s * cross + (1.0 - c) * (n * n.transpose());
}

Mat3 so3_rotation_from_generators(const AxisAngle &aa) {
  const RotationGenerators gen = rotation_generators();
  CMat3 rn = CMat3::Zero();
  for (int u = 0; u < 3; ++u) {
    rn += aa.axis()(u) * gen.r[static_cast<std::size_t>(u)];
  }
  const CMatrix o = matrix_exp_hermitian_generator(rn, aa.theta());
  return o.real();
}

double homomorphism_residual(const SpinMatrices &sm, const AxisAngle &aa) {
  const CMatrix u = su_rotation(sm, AxisAngle(-aa.theta(), aa.axis()));
  const Mat3 o = so3_rotation(aa);
  double worst = 0.0;
  for (int a = 0; a < 3; ++a) {
    CMatrix rhs = o(a, 0) * sm.sx + o(a, 1) * sm.sy + o(a, 2) * sm.sz;
    worst = std::max(worst, max_abs(u * sm[a] * u.adjoint() - rhs));
  }
  return worst;
}

U2Factorization factor_u2(const CMatrix &u) {
  if (u.rows() != 2 || u.cols() != 2) {
    throw ValidationError("factor_u2: matrix must be 2x2");
  }
  if (unitarity_residual(u) > Tolerances::unitary_input) {
    throw ValidationError("factor_u2: matrix is not unitary");
  }
  const double alpha = wrap_angle(std::arg(determinant(u)));
  return {alpha, std::exp(-kI * (0.5 * alpha)) * u};
}

AxisAngle axis_angle_from_rotation(const Mat3 &o) {
  // Shepperd's quaternion extraction, branch picked by the largest pivot.
  const double tr = o.trace();
  double w, x, y, z;
  if (tr >= o(0, 0) && tr >= o(1, 1) && tr >= o(2, 2)) {
    w = 0.5 * std::sqrt(std::max(0.0, 1.0 + tr));
    x = (o(2, 1) - o(1, 2)) / (4.0 * w);
    y = (o(0, 2) - o(2, 0)) / (4.0 * w);
    z = (o(1, 0) - o(0, 1)) / (4.0 * w);
  } else if (o(0, 0) >= o(1, 1) && o(0, 0) >= o(2, 2)) {
    x = 0.5 * std::sqrt(std::max(0.0, 1.0 + o(0, 0) - o(1, 1) - o(2, 2)));
    w = (o(2, 1) - o(1, 2)) / (4.0 * x);
    y = (o(0, 1) + o(1, 0)) / (4.0 * x);
    z = (o(0, 2) + o(2, 0)) / (4.0 * x);
  } else if (o(1, 1) >= o(2, 2)) {
    y = 0.5 * std::sqrt(std::max(0.0, 1.0 - o(0, 0) + o(1, 1) - o(2, 2)));
    w = (o(0, 2) - o(2, 0)) / (4.0 * y);
    x = (o(0, 1) + o(1, 0)) / (4.0 * y);
    z = (o(1, 2) + o(2, 1)) / (4.0 * y);
  } else {
    z = 0.5 * std::sqrt(std::max(0.0, 1.0 - o(0, 0) - o(1, 1) + o(2, 2)));
    w = (o(1, 0) - o(0, 1)) / (4.0 * z);
    x = (o(0, 2) + o(2, 0)) / (4.0 * z);
    y = (o(1, 2) + o(2, 1)) / (4.0 * z);
  }
  if (w < 0.0) {
    w = -w;
    x = -x;
    y = -y;
    z = -z;
  }
  const Vec3 v(x, y, z);
  const double vn = v.norm();
  if (vn == 0.0) {
    return AxisAngle(0.0, Vec3::UnitZ());
  }
  return AxisAngle(2.0 * std::atan2(vn, w), v / vn);
}

Mat3 induced_rotation(const CMatrix &u, const SpinMatrices &sm) {
  if (u.rows() != sm.s.dim() || u.cols() != sm.s.dim()) {
    throw ValidationError("induced rotation: dimension mismatch");
  }
  const double norm = sm.trace_square();
  Mat3 q;
  for (int v = 0; v < 3; ++v) {
    const CMatrix rotated = u * sm[v] * u.adjoint();
    for (int w = 0; w < 3; ++w) {
      q(v, w) = std::real((rotated * sm[w]).trace()) / norm;
    }
  }
  return q;
}

IrrepMembership su2_irrep_membership(const CMatrix &u, const SpinMatrices &sm) {
  const Mat3 q = induced_rotation(u, sm);
  // Project onto the nearest rotation so the axis-angle read-off is well posed
  // even when u is only approximately in the irrep.
  Eigen::JacobiSVD<Mat3> svd(q, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 d = Mat3::Identity();
  if ((svd.matrixU() * svd.matrixV().transpose()).determinant() < 0.0) {
    d(2, 2) = -1.0;
  }
  const Mat3 rot = svd.matrixU() * d * svd.matrixV().transpose();

  // u S_v u^dagger = Rot(-theta, n)_vw S_w for u = exp(-i theta S.n).
  const AxisAngle q_aa = axis_angle_from_rotation(rot);
  const AxisAngle aa(-q_aa.theta(), q_aa.axis());
  const CMatrix rebuilt = su_rotation(sm, aa);
  const double plus = max_abs(u - rebuilt);
  const double minus = max_abs(u + rebuilt);
  if (plus <= minus) {
    return {plus, 1, aa.theta(), aa.axis()};
  }
  return {minus, -1, aa.theta(), aa.axis()};
}

} // namespace spinham
