#pragma once

#include <array>

#include "spinham/types.hpp"

namespace spinham {

/// Fictitious spin quantum number stored as 2S, so half-integer spins are exact.
///
/// Multiplicity m = 2S + 1 is capped at 16; m = 1 has no Zeeman structure and
/// is rejected as well.
class SpinQuantum {
public:
  static constexpr int kMinTwoS = 1;
  static constexpr int kMaxTwoS = 15;

  /// Throws DimensionError outside [kMinTwoS, kMaxTwoS].
  explicit SpinQuantum(int two_s);

  int two_s() const noexcept { return two_s_; }
  int dim() const noexcept { return two_s_ + 1; }
  double spin() const noexcept { return 0.5 * two_s_; }

  /// M value of basis index k (0-based) in the descending order S, S-1, ..., -S.
  double m_value(int k) const noexcept { return spin() - k; }

  /// (-1)^(2S): the square of the time-reversal operator on this multiplet.
  int parity() const noexcept { return (two_s_ % 2 == 0) ? 1 : -1; }

  friend bool operator==(SpinQuantum, SpinQuantum) = default;

private:
  int two_s_;
};

/// Spin operator matrices S_x, S_y, S_z in the |S, M> basis, M descending.
struct SpinMatrices {
  SpinQuantum s;
  CMatrix sx;
  CMatrix sy;
  CMatrix sz;

  const CMatrix &operator[](int u) const;

  /// sum_u n_u S_u
  CMatrix dot(const Vec3 &n) const;

  /// tr(S_u S_u) = S(S+1)(2S+1)/3, identical for the three components.
  double trace_square() const;
};

/// Rotation angle and unit axis. The axis must already be normalized.
class AxisAngle {
public:
  /// Throws ValidationError if | |axis| - 1 | > 1e-12.
  AxisAngle(double theta, const Vec3 &axis);

  double theta() const noexcept { return theta_; }
  const Vec3 &axis() const noexcept { return axis_; }

private:
  double theta_;
  Vec3 axis_;
};

/// The so(3) generators in the adjoint representation, (R_u)_vw = -i eps_uvw.
struct RotationGenerators {
  std::array<CMat3, 3> r;
};

RotationGenerators rotation_generators();

/// Ladder-operator construction of the spin matrices:
///   <S, M+-1 | S_+- | S, M> = sqrt(S(S+1) - M(M+-1)),
///   S_x = (S_+ + S_-)/2,  S_y = (S_+ - S_-)/(2i).
SpinMatrices spin_matrices(SpinQuantum s);

/// exp(-i t H) for Hermitian H via eigen-decomposition V exp(-i t Lambda) V^dagger.
/// Throws ValidationError if H is not Hermitian within 1e-10.
CMatrix matrix_exp_hermitian_generator(const CMatrix &h, double t);

/// Returns exp(-i theta S.n).
///
/// Sign convention: this is the basis-change form U = exp(-i theta S.n). The
/// adjoint form exp(+i theta S.n) used in U S_u U^dagger = O_uv S_v is obtained
/// by passing -theta.
CMatrix su_rotation(const SpinMatrices &sm, const AxisAngle &aa);

/// Proper rotation exp(-i theta R.n) in R^3 (Rodrigues' formula):
///   O v = v cos(theta) + (n x v) sin(theta) + (1 - cos(theta)) n (n.v)
Mat3 so3_rotation(const AxisAngle &aa);

/// exp(-i theta R.n) computed from the generators by Hermitian
/// eigen-decomposition instead of Rodrigues' formula.
Mat3 so3_rotation_from_generators(const AxisAngle &aa);

/// max_u max |U S_u U^dagger - sum_v O_uv S_v| with U = exp(+i theta S.n) and
/// O = exp(-i theta R.n).
double homomorphism_residual(const SpinMatrices &sm, const AxisAngle &aa);

struct U2Factorization {
  double alpha;  ///< det u = exp(i alpha), alpha in (-pi, pi]
  CMatrix u_plus; ///< u = exp(i alpha / 2) u_plus, det u_plus = 1
};

/// Splits a 2x2 unitary into a global phase and an SU(2) element.
/// Throws ValidationError for non-2x2 or non-unitary input (1e-10).
U2Factorization factor_u2(const CMatrix &u);

/// Axis and angle of a proper rotation, theta in [0, pi]. At theta = 0 the
/// axis is reported as +z.
AxisAngle axis_angle_from_rotation(const Mat3 &o);

/// The SO(3) matrix Q induced by a unitary u through u S_v u^dagger = Q_vw S_w,
/// read off by trace orthogonality. Q is only orthogonal when u is in the
/// SU(2) irrep up to a phase.
Mat3 induced_rotation(const CMatrix &u, const SpinMatrices &sm);

struct IrrepMembership {
  double distance;   ///< max |u - sign * exp(-i theta S.n)|
  int sign;          ///< +1 or -1, the double-cover branch that fits best
  double theta;
  Vec3 axis;
};

/// Checks whether u is a member of the m-dimensional SU(2) irrep, up to the
/// global sign of the double cover, by reading (theta, n) from the rotation u
/// induces on the spin matrices and rebuilding exp(-i theta S.n).
IrrepMembership su2_irrep_membership(const CMatrix &u, const SpinMatrices &sm);

} // namespace spinham
