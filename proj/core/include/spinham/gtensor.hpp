#pragma once

#include <array>

#include "spinham/spin_algebra.hpp"
#include "spinham/tolerances.hpp"
#include "spinham/types.hpp"

namespace spinham {

/// The three projected Zeeman matrices H_u = dH/dB_u at zero field.
class ZeemanTriple {
public:
  /// Throws DimensionError if a matrix is not m x m, ValidationError if one is
  /// not Hermitian within 1e-10.
  ZeemanTriple(SpinQuantum s, std::array<CMatrix, 3> h);

  SpinQuantum spin() const noexcept { return s_; }
  const CMatrix &operator[](int u) const { return h_.at(static_cast<std::size_t>(u)); }
  const std::array<CMatrix, 3> &matrices() const noexcept { return h_; }

private:
  SpinQuantum s_;
  std::array<CMatrix, 3> h_;
};

/// The 3x3 array g_uv: row u is the field direction, column v the fictitious
/// spin direction. No symmetry is assumed.
class GMatrixSmall {
public:
  GMatrixSmall() : g_(Mat3::Zero()) {}

  /// Throws ValidationError on non-finite entries.
  explicit GMatrixSmall(const Mat3 &g);

  const Mat3 &matrix() const noexcept { return g_; }
  double operator()(int u, int v) const { return g_(u, v); }

private:
  Mat3 g_;
};

/// G = g g^T, stored exactly symmetric.
class CapitalG {
public:
  explicit CapitalG(const Mat3 &g_sym);

  const Mat3 &matrix() const noexcept { return g_; }

private:
  Mat3 g_;
};

struct PrincipalDecomposition {
  Mat3 o_r;          ///< real-space rotation, det +1
  Mat3 o_f;          ///< fictitious-space rotation, det +1
  Mat3 w;            ///< normalized rows of o_r^T g as columns, before the I- fix
  Vec3 g_values;     ///< diagonal of o_r^T g o_f
  Vec3 g_eigs;       ///< eigenvalues of G, descending
  int det_sign = 1;  ///< sign of det g; +1 when g is singular
  bool singular = false;
  double g_diag_residual = 0.0; ///< max off-diagonal of o_r^T g o_f
};

struct GExtraction {
  GMatrixSmall g;
  double span_residual; ///< max_u |h_u - (1/2c) g_uv S_v|
};

struct CapitalGEigen {
  Mat3 o_r;  ///< columns are eigenvectors, det +1
  Vec3 eigs; ///< descending
};

struct RowFrame {
  Mat3 w;
  std::array<bool, 3> zero{};
};

struct Splitting {
  Vec3 b;          ///< b_v = (1/2c) B_u g_uv
  RVector levels;  ///< M_k |b| with M ascending
  CMatrix vectors; ///< eigenvectors in the columns, matching levels
};

struct ZeemanLevels {
  RVector energies; ///< ascending
  CMatrix coeffs;
};

/// h_u = (1/2c) g_uv S_v. Throws ValidationError unless c > 0.
ZeemanTriple build_zeeman(const GMatrixSmall &g, const SpinMatrices &sm, double c);

/// max_u |K h_u K^-1 + h_u| under kramers_rep(s).
double tr_antisymmetry_residual(const ZeemanTriple &zt);

/// Reads g from a Kramers-adapted doublet basis:
///   g_u1 = 4c Re(h_u)_12, g_u2 = -4c Im(h_u)_12, g_u3 = 4c (h_u)_11.
/// Throws DimensionError unless m = 2 and StructuralError if
/// |(h_u)_22 + (h_u)_11| exceeds tol.
GMatrixSmall extract_g_doublet(const ZeemanTriple &zt, double c, double tol = Tolerances::kramers_structure);

/// g_uv = 2c Re tr(h_u S_v) / tr(S_v S_v), with the residual of the fit.
GExtraction extract_g_general(const ZeemanTriple &zt, const SpinMatrices &sm, double c);

CapitalG capital_g(const GMatrixSmall &g);

/// Eigenvectors of G with each column's largest entry made positive and the
/// third column flipped if needed for det +1.
CapitalGEigen diag_capital_g(const CapitalG &g);

/// Orthonormal frame from the rows of a matrix whose rows are mutually
/// orthogonal. Row v with row_sq(v) <= zero_tol is zero; its column is filled
/// by Gram-Schmidt over e_1, e_2, e_3 against the other columns.
RowFrame row_frame(const Mat3 &rows, const Vec3 &row_sq, double zero_tol);

/// Simultaneous real-space and fictitious-space rotations that make g diagonal.
PrincipalDecomposition principal_axes(const GMatrixSmall &g, double zero_row = Tolerances::zero_row);

/// o^T g. Throws ValidationError unless o is orthogonal within 1e-10.
GMatrixSmall rotate_g_real(const GMatrixSmall &g, const Mat3 &o);

/// g o_plus. Throws ValidationError unless o_plus is a proper rotation.
GMatrixSmall rotate_g_fict(const GMatrixSmall &g, const Mat3 &o_plus);

/// Levels and eigenvectors of b.S in closed form. The eigenvectors are the
/// columns of exp(-i theta S.n), n = (z x b)/|z x b|, cos(theta) = b_z/|b|,
/// reordered to ascending M.
Splitting splittings_closed_form(const GMatrixSmall &g, const Vec3 &field, const SpinMatrices &sm, double c);

/// Diagonalizes diag(e0) + B_u h_u.
ZeemanLevels zeeman_eigensystem(const RVector &e0, const ZeemanTriple &zt, const Vec3 &field);

/// The change of g under the doublet phase change diag(e^{i alpha}, e^{-i alpha}):
/// [[cos 2a, sin 2a, 0], [-sin 2a, cos 2a, 0], [0, 0, 1]].
Mat3 phase_rotation_doublet(double alpha);

/// s_u = <v|S_u|v>. Throws ValidationError unless |v| = 1 within 1e-10.
Vec3 spin_orientation(const CVector &v, const SpinMatrices &sm);

} // namespace spinham
