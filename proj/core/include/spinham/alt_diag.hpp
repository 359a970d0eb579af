#pragma once

#include <cstdint>
#include <optional>

#include "spinham/gtensor.hpp"
#include "spinham/spin_algebra.hpp"
#include "spinham/tolerances.hpp"
#include "spinham/types.hpp"

namespace spinham {

struct AltDiagOptions {
  double model_span = Tolerances::model_span;
  double diagonal_frame = Tolerances::diagonal_g_frame;
  double super_diagonal = Tolerances::super_diagonal;
  double vanishing_row = Tolerances::vanishing_row;
};

struct AltDiagResult {
  CMatrix u;            ///< C p, unitary with det 1
  GMatrixSmall g_diag;  ///< g in the basis u
  double residual = 0.0; ///< max off-diagonal of g_diag

  CMatrix c;            ///< eigenvectors of h_z, eigenvalues descending
  GMatrixSmall g_tilde; ///< g in the basis c
  double g33 = 0.0;     ///< least-squares fit of the h_z spectrum to g33 M_k / 2c
  double eigen_consistency = 0.0; ///< max_k |e_k - g33 M_k / 2c|
  double gamma = 0.0;   ///< arg det c
  RVector betas;        ///< arg (c^dagger h_x c)_{k,k+1}
  RVector alphas;       ///< phases of p, wrapped to (-pi, pi]
  int branch = 0;       ///< alphas were shifted by 2 pi branch / m
  double super_diagonal_spread = 0.0; ///< spread of 2c |X_{k,k+1}| / (S_x)_{k,k+1}
  double orthogonality = 0.0; ///< |row_1 . row_2| of g_tilde
  double zero_entries = 0.0;  ///< max(|g_tilde_31|, |g_tilde_32|)
  double span_residual = 0.0;

  std::optional<double> eta;             ///< m = 2 only: atan2(g_tilde_12, g_tilde_11)
  std::optional<double> eta_consistency; ///< m = 2 only: |wrap(beta_1 + eta)| and rotated off-diagonal

  bool fallback = false;      ///< u built from the row frame instead of the phase system
  bool degenerate_hz = false; ///< h_z has a repeated eigenvalue
  IrrepMembership membership{};
};

/// Diagonalizes g through a basis change built from the eigenvectors of h_z
/// and phases fixed by h_x. The real frame must already make G diagonal.
///
/// Throws ValidationError if G is not diagonal, ModelViolation if the triple
/// is not linear in S.
AltDiagResult alt_diagonalize(const ZeemanTriple &zt, const SpinMatrices &sm, double c,
                              const AltDiagOptions &opts = {});

/// Rows k < m-1: e_k - e_{k+1}; last row: all ones.
RMatrix phase_system_matrix(int m);

/// Exact determinant of phase_system_matrix(m) by fraction-free elimination.
std::int64_t phase_system_determinant(int m);

/// Solves alpha_k - alpha_{k+1} = beta_k, sum alpha = -gamma.
RVector solve_phase_system(const RVector &beta, double gamma);

struct CrossValidation {
  PrincipalDecomposition principal;
  AltDiagResult alt;
  Vec3 alt_values;  ///< diagonal of alt.g_diag
  int alt_det_sign = 1;
  double max_deviation = 0.0; ///< max_v ||g_values_v| - |alt_values_v||
};

/// Runs principal_axes and alt_diagonalize on the triple rotated into the G
/// frame and compares them.
///
/// Throws InconsistencyError if |g| values differ by more than tol or the
/// determinant signs differ.
CrossValidation cross_validate(const GMatrixSmall &g, const SpinMatrices &sm, double c,
                               double tol = Tolerances::cross_validate, const AltDiagOptions &opts = {});

} // namespace spinham
