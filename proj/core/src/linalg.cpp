#include "spinham/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "spinham/errors.hpp"

namespace spinham {

double wrap_angle(double a) {
  double r = std::remainder(a, 2.0 * kPi);
  if (r <= -kPi) {
    r += 2.0 * kPi;
  }
  return r;
}

namespace {

constexpr int kMaxSweeps = 100;

double conj_s(double x) { return x; }
Complex conj_s(const Complex &x) { return std::conj(x); }

template <typename Matrix>
double off_norm2(const Matrix &a) {
  double s = 0.0;
  const auto n = a.rows();
  for (Eigen::Index q = 1; q < n; ++q) {
    for (Eigen::Index p = 0; p < q; ++p) {
      s += std::norm(a(p, q));
    }
  }
  return s;
}

// One Jacobi rotation in the (p, q) plane:
//   J_pp = c, J_pq = s e^{i phi}, J_qp = -s e^{-i phi}, J_qq = c
// chosen so that (J^dagger A J)_pq = 0. For real matrices e^{i phi} = +-1.
template <typename Scalar, typename Matrix, typename VMatrix>
void rotate(Matrix &a, VMatrix &v, Eigen::Index p, Eigen::Index q) {
  const Scalar apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) {
    return;
  }
  const Scalar phase = apq / mag;
  const double app = std::real(a(p, p));
  const double aqq = std::real(a(q, q));
  const double tau = (aqq - app) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const Scalar jpq = s * phase;             // J_pq
  const Scalar jqp = -s * conj_s(phase); // J_qp
  const auto n = a.rows();

  // A <- A J (columns p, q)
  for (Eigen::Index k = 0; k < n; ++k) {
    const Scalar akp = a(k, p);
    const Scalar akq = a(k, q);
    a(k, p) = akp * c + akq * jqp;
    a(k, q) = akp * jpq + akq * c;
  }
  // A <- J^dagger A (rows p, q)
  for (Eigen::Index k = 0; k < n; ++k) {
    const Scalar apk = a(p, k);
    const Scalar aqk = a(q, k);
    a(p, k) = c * apk + conj_s(jqp) * aqk;
    a(q, k) = conj_s(jpq) * apk + c * aqk;
  }
  a(p, q) = Scalar(0);
  a(q, p) = Scalar(0);
  a(p, p) = Scalar(std::real(a(p, p)));
  a(q, q) = Scalar(std::real(a(q, q)));

  for (Eigen::Index k = 0; k < n; ++k) {
    const Scalar vkp = v(k, p);
    const Scalar vkq = v(k, q);
    v(k, p) = vkp * c + vkq * jqp;
    v(k, q) = vkp * jpq + vkq * c;
  }
}

template <typename Scalar, typename Matrix>
std::pair<RVector, Matrix> jacobi(const Matrix &input) {
  if (input.rows() != input.cols()) {
    throw ValidationError("eigensolver: matrix is not square");
  }
  const auto n = input.rows();
  Matrix a = (input + input.adjoint()) * 0.5;
  Matrix v = Matrix::Identity(n, n);

  const double scale = std::max(a.cwiseAbs2().sum(), std::numeric_limits<double>::min());
  const double eps = std::numeric_limits<double>::epsilon();
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    const double off = off_norm2(a);
    if (off <= eps * eps * scale * 1e-4) {
      break;
    }
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        // Skip entries that are already negligible against both diagonals.
        const double mag = std::abs(a(p, q));
        const double dp = std::abs(std::real(a(p, p)));
        const double dq = std::abs(std::real(a(q, q)));
        if (sweep > 3 && dp + 100.0 * mag == dp && dq + 100.0 * mag == dq) {
          a(p, q) = Scalar(0);
          a(q, p) = Scalar(0);
          continue;
        }
        rotate<Scalar>(a, v, p, q);
      }
    }
  }
  if (sweep == kMaxSweeps) {
    throw NumericalError("eigensolver: Jacobi sweeps did not converge (n = " + std::to_string(n) + ")");
  }

  RVector diag(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    diag(k) = std::real(a(k, k));
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return diag(i) < diag(j); });

  RVector values(n);
  Matrix vectors(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    values(k) = diag(order[static_cast<std::size_t>(k)]);
    vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return {values, vectors};
}

} // namespace

HermitianEigen hermitian_eigen(const CMatrix &h) {
  auto [values, vectors] = jacobi<Complex>(h);
  return {std::move(values), std::move(vectors)};
}

SymmetricEigen symmetric_eigen(const RMatrix &a) {
  auto [values, vectors] = jacobi<double>(a);
  return {std::move(values), std::move(vectors)};
}

Complex determinant(const CMatrix &a) {
  if (a.rows() != a.cols()) {
    throw ValidationError("determinant: matrix is not square");
  }
  if (a.rows() == 0) {
    return Complex(1.0);
  }
  return a.partialPivLu().determinant();
}

double hermiticity_residual(const CMatrix &a) {
  if (a.rows() != a.cols()) {
    throw ValidationError("hermiticity check: matrix is not square");
  }
  return max_abs(a - a.adjoint());
}

double unitarity_residual(const CMatrix &u) {
  if (u.rows() != u.cols()) {
    throw ValidationError("unitarity check: matrix is not square");
  }
  return max_abs(u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols()));
}

double orthogonality_residual(const RMatrix &o) {
  if (o.rows() != o.cols()) {
    throw ValidationError("orthogonality check: matrix is not square");
  }
  return max_abs(o.transpose() * o - RMatrix::Identity(o.rows(), o.cols()));
}

CMatrix commutator(const CMatrix &a, const CMatrix &b) { return a * b - b * a; }

} // namespace spinham
