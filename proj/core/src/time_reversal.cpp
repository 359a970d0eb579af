#include "spinham/time_reversal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spinham/errors.hpp"
#include "spinham/linalg.hpp"
#include "spinham/random.hpp"
#include "spinham/tolerances.hpp"

namespace spinham {

namespace {

constexpr double kRepTolerance = 1e-12;

void require_dim(const AntiunitaryRep &k, const CVector &v, const char *what) {
  if (v.size() != k.dim()) {
    throw DimensionError(std::string(what) + ": vector of length " + std::to_string(v.size()) +
                         " does not match representation dimension " + std::to_string(k.dim()));
  }
}

double max_norm(const std::vector<CVector> &vs) {
  double n = 0.0;
  for (const auto &v : vs) {
    n = std::max(n, v.norm());
  }
  return n;
}

// Removes the components along an orthonormal set; applied twice for stability.
CVector project_out(CVector r, const std::vector<CVector> &basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto &b : basis) {
      r -= b * b.dot(r);
    }
  }
  return r;
}

// Orthonormal basis of span(vs); throws RankError if the vectors are dependent.
std::vector<CVector> input_span(const std::vector<CVector> &vs, double threshold, const char *what) {
  std::vector<CVector> basis;
  for (const auto &v : vs) {
    const CVector r = project_out(v, basis);
    if (r.norm() < threshold || r.norm() == 0.0) {
      throw RankError(std::string(what) + ": input vectors are linearly dependent (rank " +
                      std::to_string(basis.size()) + " after " + std::to_string(basis.size() + 1) + " vectors)");
    }
    basis.push_back(r / r.norm());
  }
  return basis;
}

// Every constructed vector must lie in the span of the input.
void require_span_closed(const std::vector<CVector> &span, const std::vector<CVector> &built, const char *what) {
  for (const auto &v : built) {
    if (project_out(v, span).norm() > Tolerances::nonzero_remainder) {
      throw StructuralError(std::string(what) + ": input space is not closed under time reversal");
    }
  }
}

double gram_residual(const std::vector<CVector> &basis) {
  double worst = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Complex expected = (i == j) ? Complex(1.0) : Complex(0.0);
      worst = std::max(worst, std::abs(basis[i].dot(basis[j]) - expected));
    }
  }
  return worst;
}

std::vector<CVector> columns(const CMatrix &m) {
  std::vector<CVector> out;
  out.reserve(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    out.emplace_back(m.col(j));
  }
  return out;
}

} // namespace

AntiunitaryRep::AntiunitaryRep(CMatrix t_mat, int parity) : t_(std::move(t_mat)), parity_(parity) {
  if (parity != 1 && parity != -1) {
    throw ValidationError("antiunitary representation: parity must be +1 or -1");
  }
  if (t_.rows() != t_.cols() || t_.rows() == 0) {
    throw DimensionError("antiunitary representation: matrix must be square and non-empty");
  }
  if (unitarity_residual(t_) > kRepTolerance) {
    throw ValidationError("antiunitary representation: matrix is not unitary");
  }
  const CMatrix square = t_ * t_.conjugate();
  if (max_abs(square - double(parity) * CMatrix::Identity(t_.rows(), t_.cols())) > kRepTolerance) {
    throw ValidationError("antiunitary representation: T conj(T) differs from parity * I");
  }
}

CVector AntiunitaryRep::apply(const CVector &v) const { return t_ * v.conjugate(); }

CMatrix AntiunitaryRep::transform(const CMatrix &a) const { return t_ * a.conjugate() * t_.adjoint(); }

HermitianOp::HermitianOp(CMatrix h) : h_(std::move(h)) {
  if (h_.rows() != h_.cols()) {
    throw DimensionError("Hermitian operator: matrix is not square");
  }
  if (hermiticity_residual(h_) > Tolerances::hermitian) {
    throw ValidationError("Hermitian operator: matrix is not Hermitian");
  }
}

AntiunitaryRep kramers_rep(SpinQuantum s) {
  const int m = s.dim();
  CMatrix t = CMatrix::Zero(m, m);
  // Column k holds M = S - k, so S - M = k and -M sits at index m - 1 - k.
  for (int k = 0; k < m; ++k) {
    t(m - 1 - k, k) = (k % 2 == 0) ? 1.0 : -1.0;
  }
  return AntiunitaryRep(std::move(t), s.parity());
}

AntiunitaryRep random_equivalent_rep(const AntiunitaryRep &k, std::uint64_t seed) {
  Rng rng(seed);
  const CMatrix u = rng.unitary(k.dim());
  // K' = U K U^dagger acts as U T conj(U^dagger) conj(v) = (U T U^T) conj(v).
  return AntiunitaryRep(u * k.t_mat() * u.transpose(), k.parity());
}

CVector apply_k(const AntiunitaryRep &k, const CVector &v) {
  require_dim(k, v, "apply_k");
  return k.apply(v);
}

double is_tr_antisymmetric(const AntiunitaryRep &k, const HermitianOp &op) {
  if (op.matrix().rows() != k.dim()) {
    throw DimensionError("is_tr_antisymmetric: operator and representation dimensions differ");
  }
  return max_abs(k.transform(op.matrix()) + op.matrix());
}

HermitianOp random_tr_odd_hermitian(const AntiunitaryRep &k, std::uint64_t seed) {
  Rng rng(seed);
  const CMatrix a = rng.hermitian(k.dim());
  CMatrix h = (a - k.transform(a)) * 0.5;
  h = (h + h.adjoint()) * 0.5;
  return HermitianOp(std::move(h));
}

std::vector<KramersPair> kramers_pair_basis(const std::vector<CVector> &vs, const AntiunitaryRep &k) {
  if (k.parity() != -1) {
    throw StructuralError("kramers_pair_basis: Kramers pairs require K^2 = -1");
  }
  if (vs.size() % 2 != 0) {
    throw StructuralError("kramers_pair_basis: odd-dimensional space cannot carry Kramers pairs");
  }
  for (const auto &v : vs) {
    require_dim(k, v, "kramers_pair_basis");
  }

  const double threshold = Tolerances::nonzero_remainder * max_norm(vs);
  const std::vector<CVector> span = input_span(vs, threshold, "kramers_pair_basis");
  std::vector<KramersPair> pairs;
  std::vector<CVector> accumulated;
  std::size_t next = 0;
  while (accumulated.size() < vs.size()) {
    CVector remainder;
    bool found = false;
    while (next < vs.size()) {
      remainder = project_out(vs[next++], accumulated);
      if (remainder.norm() >= threshold && remainder.norm() > 0.0) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw RankError("kramers_pair_basis: input vectors exhausted after " + std::to_string(accumulated.size()) +
                      " of " + std::to_string(vs.size()) + " basis vectors");
    }
    const CVector v = remainder / remainder.norm();
    CVector v_bar = k.apply(v);
    accumulated.push_back(v);
    accumulated.push_back(v_bar);
    pairs.push_back({v, std::move(v_bar)});
  }
  require_span_closed(span, accumulated, "kramers_pair_basis");
  return pairs;
}

std::vector<CVector> nonmagnetic_basis(const std::vector<CVector> &vs, const AntiunitaryRep &k) {
  if (k.parity() != 1) {
    throw StructuralError("nonmagnetic_basis: K^2 = -1 admits no nonzero fixed vectors");
  }
  for (const auto &v : vs) {
    require_dim(k, v, "nonmagnetic_basis");
  }
  if (gram_residual(vs) > Tolerances::normalized_input) {
    throw ValidationError("nonmagnetic_basis: input vectors are not orthonormal");
  }

  const double threshold = Tolerances::nonzero_remainder * max_norm(vs);
  const std::vector<CVector> span = input_span(vs, threshold, "nonmagnetic_basis");
  std::vector<CVector> out;
  std::size_t next = 0;
  while (out.size() < vs.size()) {
    CVector remainder;
    bool found = false;
    while (next < vs.size()) {
      remainder = project_out(vs[next++], out);
      if (remainder.norm() >= threshold && remainder.norm() > 0.0) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw RankError("nonmagnetic_basis: input vectors exhausted after " + std::to_string(out.size()) + " of " +
                      std::to_string(vs.size()) + " basis vectors");
    }
    const CVector v = remainder / remainder.norm();
    const CVector v_bar = k.apply(v);
    const Complex overlap = v_bar.dot(v); // <Kv|v>
    Complex c;
    if (std::abs(overlap) < Tolerances::overlap_switch) {
      c = 1.0 / std::sqrt(2.0);
    } else {
      // Normalization needs Re(c^2 <Kv|v>) = |c|^2 |<Kv|v>|, i.e. 2 alpha = -arg<Kv|v>.
      const double r = 1.0 / std::sqrt(2.0 * (1.0 + std::abs(overlap)));
      const double alpha = -0.5 * std::arg(overlap);
      c = std::polar(r, alpha);
    }
    CVector w = c * v + std::conj(c) * v_bar;
    w /= w.norm();
    out.push_back(std::move(w));
  }
  require_span_closed(span, out, "nonmagnetic_basis");
  return out;
}

NonKramersPair non_kramers_pair(const CVector &v1, const CVector &v2, const AntiunitaryRep &k) {
  require_dim(k, v1, "non_kramers_pair");
  require_dim(k, v2, "non_kramers_pair");
  if (max_abs(k.apply(v1) - v1) > Tolerances::fixed_point || max_abs(k.apply(v2) - v2) > Tolerances::fixed_point) {
    throw ValidationError("non_kramers_pair: inputs are not invariant under time reversal");
  }
  if (gram_residual({v1, v2}) > Tolerances::normalized_input) {
    throw ValidationError("non_kramers_pair: inputs are not orthonormal");
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return {(v1 + kI * v2) * inv_sqrt2, (v1 - kI * v2) * inv_sqrt2};
}

double TheoremReport::worst() const {
  double w = std::max({norm_equality, basis_orthonormality, fixed_point});
  for (const auto &opt : {kramers_overlap, kramers_sign_flip, nonmagnetic_expectation, nonkramers_offdiagonal}) {
    if (opt) {
      w = std::max(w, *opt);
    }
  }
  return w;
}

TheoremReport verify_theorems(const AntiunitaryRep &k, const HermitianOp &op, int trials, std::uint64_t seed) {
  if (op.matrix().rows() != k.dim()) {
    throw DimensionError("verify_theorems: operator and representation dimensions differ");
  }
  if (is_tr_antisymmetric(k, op) > Tolerances::antisymmetric) {
    throw ValidationError("verify_theorems: operator is not time-reversal odd");
  }
  if (trials < 0) {
    throw ValidationError("verify_theorems: trial count must be non-negative");
  }

  const CMatrix &o = op.matrix();
  auto expectation = [&](const CVector &a, const CVector &b) { return a.dot(o * b); };

  TheoremReport report;
  report.trials = trials;
  report.parity = k.parity();
  if (k.parity() == -1) {
    report.kramers_overlap = 0.0;
    report.kramers_sign_flip = 0.0;
  } else {
    report.nonmagnetic_expectation = 0.0;
    if (k.dim() >= 2) {
      report.nonkramers_offdiagonal = 0.0;
    }
  }

  const Eigen::Index m = k.dim();
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));
    CVector v(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      v(i) = rng.complex_normal();
    }
    const CVector kv = k.apply(v);
    report.norm_equality = std::max(report.norm_equality, std::abs(kv.norm() - v.norm()));

    const std::vector<CVector> frame = columns(rng.unitary(m));
    if (k.parity() == -1) {
      const CVector vn = v / v.norm();
      const CVector kvn = k.apply(vn);
      *report.kramers_overlap = std::max(*report.kramers_overlap, std::abs(vn.dot(kvn)));

      const auto pairs = kramers_pair_basis(frame, k);
      std::vector<CVector> flat;
      for (const auto &p : pairs) {
        flat.push_back(p.v);
        flat.push_back(p.v_bar);
        const double flip = std::abs(expectation(p.v_bar, p.v_bar) + expectation(p.v, p.v));
        *report.kramers_sign_flip = std::max(*report.kramers_sign_flip, flip);
        report.fixed_point = std::max(report.fixed_point, max_abs(k.apply(p.v) - p.v_bar));
      }
      report.basis_orthonormality = std::max(report.basis_orthonormality, gram_residual(flat));
    } else {
      const auto basis = nonmagnetic_basis(frame, k);
      report.basis_orthonormality = std::max(report.basis_orthonormality, gram_residual(basis));
      for (const auto &w : basis) {
        report.nonmagnetic_expectation = std::max(*report.nonmagnetic_expectation, std::abs(expectation(w, w)));
        report.fixed_point = std::max(report.fixed_point, max_abs(k.apply(w) - w));
      }
      for (std::size_t i = 0; i + 1 < basis.size(); i += 2) {
        const auto pair = non_kramers_pair(basis[i], basis[i + 1], k);
        *report.nonkramers_offdiagonal =
            std::max(*report.nonkramers_offdiagonal, std::abs(expectation(pair.phi, pair.phi_bar)));
        report.fixed_point = std::max(report.fixed_point, max_abs(k.apply(pair.phi) - pair.phi_bar));
        report.basis_orthonormality =
            std::max(report.basis_orthonormality, gram_residual({pair.phi, pair.phi_bar}));
      }
    }
  }
  return report;
}

} // namespace spinham
