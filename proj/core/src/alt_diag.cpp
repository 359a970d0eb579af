#include "spinham/alt_diag.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "spinham/errors.hpp"
#include "spinham/linalg.hpp"

namespace spinham {

namespace {

double off_diagonal(const Mat3 &g) {
  double off = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j) {
        off = std::max(off, std::abs(g(i, j)));
      }
    }
  }
  return off;
}

ZeemanTriple transform_triple(const ZeemanTriple &zt, const CMatrix &u) {
  std::array<CMatrix, 3> h;
  for (int k = 0; k < 3; ++k) {
    CMatrix t = u.adjoint() * zt[k] * u;
    h[static_cast<std::size_t>(k)] = 0.5 * (t + t.adjoint());
  }
  return ZeemanTriple(zt.spin(), std::move(h));
}

void finish(AltDiagResult &out, const ZeemanTriple &zt, const SpinMatrices &sm, double c) {
  out.g_diag = extract_g_general(transform_triple(zt, out.u), sm, c).g;
  out.residual = off_diagonal(out.g_diag.matrix());
  out.membership = su2_irrep_membership(out.u, sm);
}

void run_fallback(AltDiagResult &out, const ZeemanTriple &zt, const SpinMatrices &sm, double c, const Mat3 &g,
                  double vanishing_row) {
  Vec3 row_sq;
  for (int v = 0; v < 3; ++v) {
    row_sq(v) = g.row(v).squaredNorm();
  }
  const double max_row = std::sqrt(row_sq.maxCoeff());
  const RowFrame frame = row_frame(g, row_sq, std::pow(vanishing_row * max_row, 2));
  Mat3 o_f = frame.w;
  if (o_f.determinant() < 0.0) {
    o_f.col(2) = -o_f.col(2);
  }
  out.fallback = true;
  out.u = su_rotation(sm, axis_angle_from_rotation(o_f));
  out.c = out.u;
  out.alphas = RVector::Zero(sm.s.dim());
  out.betas = RVector();
  finish(out, zt, sm, c);
  out.g_tilde = out.g_diag;
}

} // namespace

RMatrix phase_system_matrix(int m) {
  if (m < 2) {
    throw DimensionError("phase system needs m >= 2");
  }
  RMatrix a = RMatrix::Zero(m, m);
  for (int k = 0; k + 1 < m; ++k) {
    a(k, k) = 1.0;
    a(k, k + 1) = -1.0;
  }
  a.row(m - 1).setOnes();
  return a;
}

std::int64_t phase_system_determinant(int m) {
  const RMatrix a = phase_system_matrix(m);
  std::vector<std::vector<std::int64_t>> b(static_cast<std::size_t>(m), std::vector<std::int64_t>(static_cast<std::size_t>(m)));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = static_cast<std::int64_t>(a(i, j));
    }
  }
  // Bareiss elimination: every intermediate quotient is exact.
  std::int64_t sign = 1;
  std::int64_t prev = 1;
  for (int k = 0; k + 1 < m; ++k) {
    auto &rk = b[static_cast<std::size_t>(k)];
    if (rk[static_cast<std::size_t>(k)] == 0) {
      int swap = -1;
      for (int i = k + 1; i < m; ++i) {
        if (b[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] != 0) {
          swap = i;
          break;
        }
      }
      if (swap < 0) {
        return 0;
      }
      std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(swap)]);
      sign = -sign;
    }
    const auto &pivot_row = b[static_cast<std::size_t>(k)];
    const std::int64_t pivot = pivot_row[static_cast<std::size_t>(k)];
    for (int i = k + 1; i < m; ++i) {
      auto &ri = b[static_cast<std::size_t>(i)];
      for (int j = k + 1; j < m; ++j) {
        ri[static_cast<std::size_t>(j)] =
            (ri[static_cast<std::size_t>(j)] * pivot - ri[static_cast<std::size_t>(k)] * pivot_row[static_cast<std::size_t>(j)]) /
            prev;
      }
      ri[static_cast<std::size_t>(k)] = 0;
    }
    prev = pivot;
  }
  return sign * b[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(m - 1)];
}

RVector solve_phase_system(const RVector &beta, double gamma) {
  const int m = static_cast<int>(beta.size()) + 1;
  RVector rhs(m);
  rhs.head(m - 1) = beta;
  rhs(m - 1) = -gamma;
  return phase_system_matrix(m).partialPivLu().solve(rhs);
}

AltDiagResult alt_diagonalize(const ZeemanTriple &zt, const SpinMatrices &sm, double c, const AltDiagOptions &opts) {
  if (zt.spin() != sm.s) {
    throw DimensionError("alt_diagonalize: Zeeman triple and spin matrices have different multiplicities");
  }
  const int m = sm.s.dim();
  double h_scale = 0.0;
  for (int u = 0; u < 3; ++u) {
    h_scale = std::max(h_scale, max_abs(zt[u]));
  }

  AltDiagResult out;
  const GExtraction ext = extract_g_general(zt, sm, c);
  out.span_residual = ext.span_residual;
  if (ext.span_residual > opts.model_span * std::max(1.0, h_scale)) {
    throw ModelViolation("alt_diagonalize: Zeeman matrices are not linear in S (span residual " +
                         std::to_string(ext.span_residual) + ")");
  }
  const Mat3 &g = ext.g.matrix();
  const Mat3 big_g = g * g.transpose();
  if (off_diagonal(big_g) > opts.diagonal_frame * std::max(1.0, max_abs(big_g))) {
    throw ValidationError("alt_diagonalize: G is not diagonal in the given real frame");
  }

  double max_row = 0.0;
  for (int v = 0; v < 3; ++v) {
    max_row = std::max(max_row, g.row(v).norm());
  }
  const bool row1_zero = g.row(0).norm() <= opts.vanishing_row * max_row;
  const bool row3_zero = g.row(2).norm() <= opts.vanishing_row * max_row;

  // Step 1: eigenvectors of h_z with eigenvalues descending, paired with M descending.
  const HermitianEigen eig = hermitian_eigen(zt[2]);
  RVector e(m);
  out.c.resize(m, m);
  for (int k = 0; k < m; ++k) {
    e(k) = eig.values(m - 1 - k);
    out.c.col(k) = eig.vectors.col(m - 1 - k);
  }
  for (int k = 0; k + 1 < m; ++k) {
    if (e(k) - e(k + 1) <= opts.vanishing_row * std::max(h_scale, 1e-300)) {
      out.degenerate_hz = true;
    }
  }
  if (row1_zero || row3_zero || out.degenerate_hz) {
    run_fallback(out, zt, sm, c, g, opts.vanishing_row);
    return out;
  }

  double num = 0.0;
  double den = 0.0;
  for (int k = 0; k < m; ++k) {
    num += e(k) * sm.s.m_value(k);
    den += sm.s.m_value(k) * sm.s.m_value(k);
  }
  out.g33 = 2.0 * c * num / den;
  for (int k = 0; k < m; ++k) {
    out.eigen_consistency = std::max(out.eigen_consistency, std::abs(e(k) - out.g33 * sm.s.m_value(k) / (2.0 * c)));
  }

  out.g_tilde = extract_g_general(transform_triple(zt, out.c), sm, c).g;
  const Mat3 &gt = out.g_tilde.matrix();
  out.orthogonality = std::abs(gt.row(0).dot(gt.row(1)));
  out.zero_entries = std::max(std::abs(gt(2, 0)), std::abs(gt(2, 1)));

  // Step 2: phase of det C.
  out.gamma = wrap_angle(std::arg(determinant(out.c)));

  // Step 3: super-diagonal of C^dagger h_x C.
  const CMatrix x = out.c.adjoint() * zt[0] * out.c;
  out.betas.resize(m - 1);
  RVector ratios(m - 1);
  for (int k = 0; k + 1 < m; ++k) {
    const Complex z = x(k, k + 1);
    if (std::abs(z) < opts.vanishing_row * std::max(max_abs(zt[0]), 1e-300)) {
      run_fallback(out, zt, sm, c, g, opts.vanishing_row);
      return out;
    }
    out.betas(k) = std::arg(z);
    ratios(k) = 2.0 * c * std::abs(z) / std::real(sm.sx(k, k + 1));
  }
  const double mean_ratio = ratios.mean();
  out.super_diagonal_spread = (ratios.array() - mean_ratio).abs().maxCoeff();
  if (out.super_diagonal_spread > opts.super_diagonal * std::max(1.0, std::abs(mean_ratio))) {
    throw ModelViolation("alt_diagonalize: super-diagonal of the transformed h_x does not follow the S_x pattern");
  }

  // Step 4: phases. The system fixes sum alpha only modulo 2 pi, so the m
  // solutions differ by the global factors exp(2 pi i j / m); keep the one
  // that lands in the irrep.
  RVector alpha = solve_phase_system(out.betas, out.gamma);
  CVector p(m);
  for (int k = 0; k < m; ++k) {
    p(k) = std::exp(kI * alpha(k));
  }
  const CMatrix u0 = out.c * p.asDiagonal();
  const IrrepMembership probe = su2_irrep_membership(u0, sm);
  const CMatrix rebuilt = su_rotation(sm, AxisAngle(probe.theta, probe.axis));
  const Complex omega = (rebuilt.adjoint() * u0).trace() / double(m);
  int best = 0;
  double best_dist = std::abs(omega - 1.0);
  for (int j = 1; j < m; ++j) {
    const double d = std::abs(omega * std::exp(kI * (2.0 * kPi * j / m)) - 1.0);
    if (d < best_dist - 1e-12) {
      best = j;
      best_dist = d;
    }
  }
  out.branch = best;
  const double shift = 2.0 * kPi * best / m;
  out.alphas.resize(m);
  for (int k = 0; k < m; ++k) {
    out.alphas(k) = wrap_angle(alpha(k) + shift);
  }

  // Step 5.
  out.u = u0 * std::exp(kI * shift);

  // Step 6.
  finish(out, zt, sm, c);

  if (m == 2) {
    const double eta = std::atan2(gt(0, 1), gt(0, 0));
    const double ce = std::cos(eta);
    const double se = std::sin(eta);
    const double off12 = std::abs(-gt(0, 0) * se + gt(0, 1) * ce);
    const double off21 = std::abs(gt(1, 0) * ce + gt(1, 1) * se);
    out.eta = eta;
    out.eta_consistency = std::max({std::abs(wrap_angle(out.betas(0) + eta)), off12, off21});
  }
  return out;
}

CrossValidation cross_validate(const GMatrixSmall &g, const SpinMatrices &sm, double c, double tol,
                               const AltDiagOptions &opts) {
  CrossValidation out;
  out.principal = principal_axes(g);
  const ZeemanTriple zt = build_zeeman(g, sm, c);
  const Mat3 &o = out.principal.o_r;
  std::array<CMatrix, 3> rotated;
  for (int u = 0; u < 3; ++u) {
    CMatrix h = CMatrix::Zero(sm.s.dim(), sm.s.dim());
    for (int q = 0; q < 3; ++q) {
      h += o(q, u) * zt[q];
    }
    rotated[static_cast<std::size_t>(u)] = std::move(h);
  }
  out.alt = alt_diagonalize(ZeemanTriple(sm.s, std::move(rotated)), sm, c, opts);
  out.alt_values = out.alt.g_diag.matrix().diagonal();

  for (int v = 0; v < 3; ++v) {
    out.max_deviation =
        std::max(out.max_deviation, std::abs(std::abs(out.principal.g_values(v)) - std::abs(out.alt_values(v))));
  }
  const double prod = out.alt_values.prod();
  out.alt_det_sign = prod < 0.0 ? -1 : 1;
  if (out.max_deviation > tol) {
    throw InconsistencyError("cross_validate: |g| values differ by " + std::to_string(out.max_deviation));
  }
  if (!out.principal.singular && out.alt_det_sign != out.principal.det_sign) {
    throw InconsistencyError("cross_validate: determinant signs differ");
  }
  return out;
}

} // namespace spinham
