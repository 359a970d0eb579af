#pragma once

#include "spinham/types.hpp"

namespace spinham {

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending and
/// eigenvectors in the matching columns.
struct HermitianEigen {
  RVector values;
  CMatrix vectors;
};

/// Real-symmetric counterpart of HermitianEigen.
struct SymmetricEigen {
  RVector values;
  RMatrix vectors;
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Only the upper triangle is trusted; the input is symmetrized first. Sized
/// for the small dense problems in this library (m <= 16): every rotation is
/// exactly unitary so V stays unitary to machine precision. A matrix that is
/// already diagonal comes back with V = I.
///
/// Throws NumericalError if the sweep limit is reached.
HermitianEigen hermitian_eigen(const CMatrix &h);

/// Cyclic Jacobi diagonalization of a real symmetric matrix.
SymmetricEigen symmetric_eigen(const RMatrix &a);

/// Determinant via LU with partial pivoting.
Complex determinant(const CMatrix &a);

/// max |A - A^dagger|
double hermiticity_residual(const CMatrix &a);

/// max |U^dagger U - I|
double unitarity_residual(const CMatrix &u);

/// max |O^T O - I| for a real square matrix.
double orthogonality_residual(const RMatrix &o);

/// A B - B A
CMatrix commutator(const CMatrix &a, const CMatrix &b);

} // namespace spinham
