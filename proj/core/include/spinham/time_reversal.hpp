#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spinham/spin_algebra.hpp"
#include "spinham/types.hpp"

namespace spinham {

/// Finite-dimensional antiunitary operator K v = T conj(v).
///
/// Invariants (checked on construction, 1e-12): T unitary and
/// T conj(T) = parity * I, i.e. K^2 = parity.
class AntiunitaryRep {
public:
  AntiunitaryRep(CMatrix t_mat, int parity);

  const CMatrix &t_mat() const noexcept { return t_; }
  int parity() const noexcept { return parity_; }
  Eigen::Index dim() const noexcept { return t_.rows(); }

  /// T conj(v)
  CVector apply(const CVector &v) const;

  /// K A K^-1 = T conj(A) T^dagger
  CMatrix transform(const CMatrix &a) const;

private:
  CMatrix t_;
  int parity_;
};

/// Hermitian operator, validated on construction (1e-10).
class HermitianOp {
public:
  explicit HermitianOp(CMatrix h);

  const CMatrix &matrix() const noexcept { return h_; }

private:
  CMatrix h_;
};

/// K|S,M> = (-1)^(S-M) |S,-M> in the M-descending basis; parity (-1)^(2S).
AntiunitaryRep kramers_rep(SpinQuantum s);

/// An equivalent representation U T U^T for a random unitary U (same parity).
AntiunitaryRep random_equivalent_rep(const AntiunitaryRep &k, std::uint64_t seed);

/// T conj(v). Throws DimensionError on size mismatch.
CVector apply_k(const AntiunitaryRep &k, const CVector &v);

/// max |T conj(H) T^dagger + H|; zero for a time-reversal-odd operator.
double is_tr_antisymmetric(const AntiunitaryRep &k, const HermitianOp &op);

/// (A - K A K^-1)/2 for a seeded random Hermitian A.
HermitianOp random_tr_odd_hermitian(const AntiunitaryRep &k, std::uint64_t seed);

struct KramersPair {
  CVector v;
  CVector v_bar; ///< apply_k(v)
};

/// Orthonormal Kramers-paired basis {v_i, K v_i} of span(vs).
///
/// Builds one pair at a time by projecting the next input vector against the
/// pairs found so far. Requires parity -1 and an even number of linearly
/// independent vectors whose span is closed under K.
///
/// Throws StructuralError (parity or odd count or span not K-closed) and
/// RankError (input vectors exhausted before the basis is complete).
std::vector<KramersPair> kramers_pair_basis(const std::vector<CVector> &vs, const AntiunitaryRep &k);

/// Orthonormal basis of span(vs) made of fixed points K w = w.
///
/// Each w is c v + conj(c) K v with c = r e^{i alpha} chosen to normalize w.
/// Requires parity +1 and orthonormal vs spanning a K-closed space.
std::vector<CVector> nonmagnetic_basis(const std::vector<CVector> &vs, const AntiunitaryRep &k);

struct NonKramersPair {
  CVector phi;     ///< (v1 + i v2)/sqrt(2)
  CVector phi_bar; ///< (v1 - i v2)/sqrt(2) = K phi
};

/// Throws ValidationError unless K v_i = v_i and <v_i|v_j> = delta_ij (1e-10).
NonKramersPair non_kramers_pair(const CVector &v1, const CVector &v2, const AntiunitaryRep &k);

/// Largest residuals of the time-reversal theorems over seeded random states.
/// Entries that do not apply to the representation's parity are empty.
struct TheoremReport {
  int trials = 0;
  int parity = 0;
  double norm_equality = 0.0;                         ///< | |Kv| - |v| |
  std::optional<double> kramers_overlap;              ///< |<v|Kv>|, parity -1
  std::optional<double> kramers_sign_flip;            ///< |<Kv|O|Kv> + <v|O|v>|, parity -1
  std::optional<double> nonmagnetic_expectation;      ///< |<w|O|w>|, parity +1
  std::optional<double> nonkramers_offdiagonal;       ///< |<phi|O|phi_bar>|, parity +1
  double basis_orthonormality = 0.0;                  ///< max |Gram - I| of constructed bases
  double fixed_point = 0.0;                           ///< max |K w - w| or |K phi - phi_bar|

  /// Largest of every applicable residual.
  double worst() const;
};

/// Throws ValidationError if op is not time-reversal odd within 1e-10.
TheoremReport verify_theorems(const AntiunitaryRep &k, const HermitianOp &op, int trials, std::uint64_t seed);

} // namespace spinham
