#include "spinham/gtensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spinham/errors.hpp"
#include "spinham/linalg.hpp"
#include "spinham/time_reversal.hpp"

namespace spinham {

namespace {

void require_c(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw ValidationError("speed of light must be positive and finite");
  }
}

void require_same_spin(const ZeemanTriple &zt, const SpinMatrices &sm) {
  if (zt.spin() != sm.s) {
    throw DimensionError("Zeeman triple and spin matrices have different multiplicities");
  }
}

} // namespace

ZeemanTriple::ZeemanTriple(SpinQuantum s, std::array<CMatrix, 3> h) : s_(s), h_(std::move(h)) {
  for (int u = 0; u < 3; ++u) {
    const CMatrix &m = h_[static_cast<std::size_t>(u)];
    if (m.rows() != s.dim() || m.cols() != s.dim()) {
      throw DimensionError("Zeeman matrix " + std::to_string(u) + " is " + std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()) + ", expected " + std::to_string(s.dim()) + "x" +
                           std::to_string(s.dim()));
    }
    if (!m.allFinite()) {
      throw ValidationError("Zeeman matrix " + std::to_string(u) + " has non-finite entries");
    }
    if (hermiticity_residual(m) > Tolerances::hermitian) {
      throw ValidationError("Zeeman matrix " + std::to_string(u) + " is not Hermitian");
    }
  }
}

GMatrixSmall::GMatrixSmall(const Mat3 &g) : g_(g) {
  if (!g.allFinite()) {
    throw ValidationError("g matrix has non-finite entries");
  }
}

CapitalG::CapitalG(const Mat3 &g_sym) : g_(0.5 * (g_sym + g_sym.transpose())) {}

ZeemanTriple build_zeeman(const GMatrixSmall &g, const SpinMatrices &sm, double c) {
  require_c(c);
  std::array<CMatrix, 3> h;
  for (int u = 0; u < 3; ++u) {
    h[static_cast<std::size_t>(u)] = (g(u, 0) * sm.sx + g(u, 1) * sm.sy + g(u, 2) * sm.sz) / (2.0 * c);
  }
  return ZeemanTriple(sm.s, std::move(h));
}

double tr_antisymmetry_residual(const ZeemanTriple &zt) {
  const AntiunitaryRep k = kramers_rep(zt.spin());
  double worst = 0.0;
  for (int u = 0; u < 3; ++u) {
    worst = std::max(worst, max_abs(k.transform(zt[u]) + zt[u]));
  }
  return worst;
}

GMatrixSmall extract_g_doublet(const ZeemanTriple &zt, double c, double tol) {
  require_c(c);
  if (zt.spin().dim() != 2) {
    throw DimensionError("doublet extraction requires m = 2");
  }
  Mat3 g;
  for (int u = 0; u < 3; ++u) {
    const CMatrix &h = zt[u];
    if (std::abs(h(1, 1) + h(0, 0)) > tol) {
      throw StructuralError("doublet extraction: basis is not Kramers-adapted ((h_" + std::to_string(u) +
                            ")_22 != -(h_" + std::to_string(u) + ")_11)");
    }
    g(u, 0) = 4.0 * c * h(0, 1).real();
    g(u, 1) = -4.0 * c * h(0, 1).imag();
    g(u, 2) = 4.0 * c * h(0, 0).real();
  }
  return GMatrixSmall(g);
}

GExtraction extract_g_general(const ZeemanTriple &zt, const SpinMatrices &sm, double c) {
  require_c(c);
  require_same_spin(zt, sm);
  const double norm = sm.trace_square();
  Mat3 g;
  for (int u = 0; u < 3; ++u) {
    for (int v = 0; v < 3; ++v) {
      g(u, v) = 2.0 * c * std::real((zt[u] * sm[v]).trace()) / norm;
    }
  }
  double residual = 0.0;
  for (int u = 0; u < 3; ++u) {
    const CMatrix model = (g(u, 0) * sm.sx + g(u, 1) * sm.sy + g(u, 2) * sm.sz) / (2.0 * c);
    residual = std::max(residual, max_abs(zt[u] - model));
  }
  return {GMatrixSmall(g), residual};
}

CapitalG capital_g(const GMatrixSmall &g) { return CapitalG(g.matrix() * g.matrix().transpose()); }

CapitalGEigen diag_capital_g(const CapitalG &g) {
  const SymmetricEigen eig = symmetric_eigen(g.matrix());
  // Descending order; equal eigenvalues keep the solver's column order.
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return eig.values(a) > eig.values(b); });
  Mat3 o;
  Vec3 eigs;
  for (int j = 0; j < 3; ++j) {
    o.col(j) = eig.vectors.col(order[static_cast<std::size_t>(j)]);
    eigs(j) = eig.values(order[static_cast<std::size_t>(j)]);
  }
  for (int j = 0; j < 3; ++j) {
    Eigen::Index imax = 0;
    o.col(j).cwiseAbs().maxCoeff(&imax);
    if (o(imax, j) < 0.0) {
      o.col(j) = -o.col(j);
    }
  }
  if (o.determinant() < 0.0) {
    o.col(2) = -o.col(2);
  }
  return {o, eigs};
}

RowFrame row_frame(const Mat3 &rows, const Vec3 &row_sq, double zero_tol) {
  RowFrame frame;
  frame.w = Mat3::Zero();
  std::array<bool, 3> filled{};
  for (int v = 0; v < 3; ++v) {
    frame.zero[static_cast<std::size_t>(v)] = row_sq(v) <= zero_tol;
  }
  for (int v = 0; v < 3; ++v) {
    if (frame.zero[static_cast<std::size_t>(v)]) {
      continue;
    }
    Vec3 col = rows.row(v).transpose();
    for (int j = 0; j < 3; ++j) {
      if (filled[static_cast<std::size_t>(j)]) {
        col -= frame.w.col(j) * frame.w.col(j).dot(col);
      }
    }
    frame.w.col(v) = col.normalized();
    filled[static_cast<std::size_t>(v)] = true;
  }
  for (int v = 0; v < 3; ++v) {
    if (filled[static_cast<std::size_t>(v)]) {
      continue;
    }
    // The first standard basis vector with a substantial remainder; in three
    // dimensions one of them always leaves at least 1/sqrt(3).
    for (int e = 0; e < 3; ++e) {
      Vec3 col = Vec3::Unit(e);
      for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j < 3; ++j) {
          if (filled[static_cast<std::size_t>(j)]) {
            col -= frame.w.col(j) * frame.w.col(j).dot(col);
          }
        }
      }
      if (col.norm() > 0.5) {
        frame.w.col(v) = col.normalized();
        filled[static_cast<std::size_t>(v)] = true;
        break;
      }
    }
  }
  return frame;
}

PrincipalDecomposition principal_axes(const GMatrixSmall &g, double zero_row) {
  const CapitalGEigen diag = diag_capital_g(capital_g(g));
  const Mat3 g_r = diag.o_r.transpose() * g.matrix();
  const double tau = zero_row * std::max(1.0, diag.eigs.maxCoeff());
  const RowFrame frame = row_frame(g_r, diag.eigs, tau);

  PrincipalDecomposition out;
  out.o_r = diag.o_r;
  out.g_eigs = diag.eigs;
  out.w = frame.w;
  out.o_f = frame.w;
  const double det_w = frame.w.determinant();
  if (det_w < 0.0) {
    out.o_f.col(2) = -out.o_f.col(2);
  }
  out.singular = std::any_of(frame.zero.begin(), frame.zero.end(), [](bool z) { return z; });
  out.det_sign = out.singular ? 1 : (det_w < 0.0 ? -1 : 1);

  const Mat3 g_bar = g_r * out.o_f;
  double off = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j) {
        off = std::max(off, std::abs(g_bar(i, j)));
      }
    }
    out.g_values(i) = frame.zero[static_cast<std::size_t>(i)] ? 0.0 : g_bar(i, i);
  }
  out.g_diag_residual = off;
  return out;
}

GMatrixSmall rotate_g_real(const GMatrixSmall &g, const Mat3 &o) {
  if (orthogonality_residual(o) > Tolerances::orthogonal_input) {
    throw ValidationError("rotate_g_real: matrix is not orthogonal");
  }
  return GMatrixSmall(o.transpose() * g.matrix());
}

GMatrixSmall rotate_g_fict(const GMatrixSmall &g, const Mat3 &o_plus) {
  if (orthogonality_residual(o_plus) > Tolerances::orthogonal_input) {
    throw ValidationError("rotate_g_fict: matrix is not orthogonal");
  }
  if (std::abs(o_plus.determinant() - 1.0) > Tolerances::orthogonal_input) {
    throw ValidationError("rotate_g_fict: improper rotations have no fictitious-spin counterpart");
  }
  return GMatrixSmall(g.matrix() * o_plus);
}

Splitting splittings_closed_form(const GMatrixSmall &g, const Vec3 &field, const SpinMatrices &sm, double c) {
  require_c(c);
  const int m = sm.s.dim();
  Splitting out;
  out.b = g.matrix().transpose() * field / (2.0 * c);
  out.levels = RVector::Zero(m);
  const double bn = out.b.norm();
  if (bn == 0.0) {
    out.vectors = CMatrix::Identity(m, m);
    return out;
  }
  for (int k = 0; k < m; ++k) {
    out.levels(k) = (-sm.s.spin() + k) * bn;
  }

  const double bz = out.b(2);
  CMatrix rot;
  if (bz >= bn * (1.0 - Tolerances::closed_form_pole)) {
    rot = CMatrix::Identity(m, m);
  } else if (bz <= -bn * (1.0 - Tolerances::closed_form_pole)) {
    rot = su_rotation(sm, AxisAngle(kPi, Vec3::UnitX()));
  } else {
    const Vec3 axis = Vec3::UnitZ().cross(out.b).normalized();
    const double theta = std::acos(std::clamp(bz / bn, -1.0, 1.0));
    rot = su_rotation(sm, AxisAngle(theta, axis));
  }
  out.vectors.resize(m, m);
  for (int k = 0; k < m; ++k) {
    out.vectors.col(k) = rot.col(m - 1 - k);
  }
  return out;
}

ZeemanLevels zeeman_eigensystem(const RVector &e0, const ZeemanTriple &zt, const Vec3 &field) {
  const int m = zt.spin().dim();
  if (e0.size() != m) {
    throw DimensionError("zeeman_eigensystem: " + std::to_string(e0.size()) + " zero-field energies for m = " +
                         std::to_string(m));
  }
  CMatrix h = e0.cast<Complex>().asDiagonal();
  for (int u = 0; u < 3; ++u) {
    h += field(u) * zt[u];
  }
  const HermitianEigen eig = hermitian_eigen(h);
  return {eig.values, eig.vectors};
}

Mat3 phase_rotation_doublet(double alpha) {
  const double c = std::cos(2.0 * alpha);
  const double s = std::sin(2.0 * alpha);
  Mat3 r;
  r << c, s, 0.0, -s, c, 0.0, 0.0, 0.0, 1.0;
  return r;
}

Vec3 spin_orientation(const CVector &v, const SpinMatrices &sm) {
  if (v.size() != sm.s.dim()) {
    throw DimensionError("spin_orientation: vector length does not match the multiplicity");
  }
  if (std::abs(v.norm() - 1.0) > Tolerances::normalized_input) {
    throw ValidationError("spin_orientation: vector is not normalized");
  }
  Vec3 s;
  for (int u = 0; u < 3; ++u) {
    s(u) = std::real(v.dot(sm[u] * v));
  }
  return s;
}

} // namespace spinham
