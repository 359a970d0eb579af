#include <gtest/gtest.h>

#include "spinham/errors.hpp"
#include "spinham/linalg.hpp"
#include "spinham/random.hpp"
#include "spinham/time_reversal.hpp"

using namespace spinham;

namespace {

CVector basis(int m, int k) {
  CVector v = CVector::Zero(m);
  v(k) = 1.0;
  return v;
}

double gram(const std::vector<CVector> &vs) {
  double worst = 0.0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = 0; j < vs.size(); ++j) {
      worst = std::max(worst, std::abs(vs[i].dot(vs[j]) - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

CMatrix projector(const std::vector<CVector> &vs) {
  CMatrix p = CMatrix::Zero(vs.front().size(), vs.front().size());
  for (const auto &v : vs) {
    p += v * v.adjoint();
  }
  return p;
}

std::vector<CVector> orthonormal_columns(Rng &rng, int m, int n) {
  const CMatrix u = rng.unitary(m);
  std::vector<CVector> out;
  for (int j = 0; j < n; ++j) {
    out.emplace_back(u.col(j));
  }
  return out;
}

} // namespace

TEST(KramersRep, DoubletMatrix) {
  const AntiunitaryRep k = kramers_rep(SpinQuantum(1));
  CMatrix t(2, 2);
  t << 0, -1, 1, 0;
  EXPECT_EQ(k.t_mat(), t);
  EXPECT_EQ(k.parity(), -1);
  EXPECT_EQ(kramers_rep(SpinQuantum(2)).parity(), 1);
}

TEST(KramersRep, SquareIsParity) {
  for (int ts = 1; ts <= 15; ++ts) {
    const AntiunitaryRep k = kramers_rep(SpinQuantum(ts));
    const CMatrix sq = k.t_mat() * k.t_mat().conjugate();
    EXPECT_LE(max_abs(sq - double(k.parity()) * CMatrix::Identity(k.dim(), k.dim())), 1e-13);
  }
}

TEST(KramersRep, DoubletActionOnBasis) {
  const AntiunitaryRep k = kramers_rep(SpinQuantum(1));
  EXPECT_EQ(apply_k(k, basis(2, 0)), basis(2, 1));
  EXPECT_EQ(apply_k(k, basis(2, 1)), CVector(-basis(2, 0)));
  Rng rng(1);
  const CVector v = rng.unit_cvector(2);
  EXPECT_LE(max_abs(apply_k(k, apply_k(k, v)) + v), 1e-15);
  EXPECT_LE(max_abs(apply_k(k, kI * v) + kI * apply_k(k, v)), 1e-15);
  EXPECT_THROW(apply_k(k, CVector::Zero(3)), DimensionError);
}

TEST(KramersRep, Antilinearity) {
  Rng rng(2);
  const AntiunitaryRep k = kramers_rep(SpinQuantum(4));
  const CVector v = rng.unit_cvector(5);
  const CVector w = rng.unit_cvector(5);
  const Complex a(0.3, -1.2), b(-0.7, 0.4);
  EXPECT_LE(max_abs(apply_k(k, a * v + b * w) - (std::conj(a) * apply_k(k, v) + std::conj(b) * apply_k(k, w))), 1e-15);
}

TEST(AntiunitaryRep, RejectsInvalid) {
  CMatrix t = CMatrix::Identity(2, 2);
  EXPECT_THROW(AntiunitaryRep(t, -1), ValidationError);
  EXPECT_THROW(AntiunitaryRep(2.0 * t, 1), ValidationError);
  EXPECT_THROW(AntiunitaryRep(t, 0), ValidationError);
  EXPECT_NO_THROW(AntiunitaryRep(t, 1));
}

TEST(TrAntisymmetry, SpinComponentsAreOdd) {
  for (int ts = 1; ts <= 8; ++ts) {
    const SpinMatrices sm = spin_matrices(SpinQuantum(ts));
    const AntiunitaryRep k = kramers_rep(sm.s);
    for (int u = 0; u < 3; ++u) {
      EXPECT_LE(is_tr_antisymmetric(k, HermitianOp(sm[u])), 1e-13);
    }
    EXPECT_NEAR(is_tr_antisymmetric(k, HermitianOp(CMatrix::Identity(sm.s.dim(), sm.s.dim()))), 2.0, 1e-15);
  }
}

TEST(RandomTrOdd, DeterministicAndOdd) {
  const AntiunitaryRep k = random_equivalent_rep(kramers_rep(SpinQuantum(3)), 5);
  const HermitianOp a = random_tr_odd_hermitian(k, 77);
  const HermitianOp b = random_tr_odd_hermitian(k, 77);
  EXPECT_EQ(a.matrix(), b.matrix());
  EXPECT_LE(is_tr_antisymmetric(k, a), 1e-12);
  EXPECT_LE(hermiticity_residual(a.matrix()), 1e-12);
}

TEST(RandomTrOdd, DoubletLiesInSpinSpan) {
  const SpinMatrices sm = spin_matrices(SpinQuantum(1));
  const HermitianOp h = random_tr_odd_hermitian(kramers_rep(sm.s), 4);
  CMatrix fit = CMatrix::Zero(2, 2);
  for (int u = 0; u < 3; ++u) {
    fit += sm[u] * (std::real((h.matrix() * sm[u]).trace()) / 0.5);
  }
  EXPECT_LE(max_abs(fit - h.matrix()), 1e-14);
}

TEST(KramersPairBasis, DoubletBasisVectors) {
  const AntiunitaryRep k = kramers_rep(SpinQuantum(1));
  const auto pairs = kramers_pair_basis({basis(2, 0), basis(2, 1)}, k);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].v, basis(2, 0));
  EXPECT_EQ(pairs[0].v_bar, basis(2, 1));
}

TEST(KramersPairBasis, RandomSubspace) {
  Rng rng(6);
  const AntiunitaryRep k = random_equivalent_rep(kramers_rep(SpinQuantum(5)), 8);
  // A K-closed 4-dimensional subspace: two random vectors and their partners,
  // handed in as a random orthonormal basis of that span.
  const CVector a = rng.unit_cvector(6);
  CVector b = rng.unit_cvector(6);
  std::vector<CVector> span{a, k.apply(a), b, k.apply(b)};
  const auto ref = kramers_pair_basis(span, k);
  std::vector<CVector> flat_ref;
  for (const auto &p : ref) {
    flat_ref.push_back(p.v);
    flat_ref.push_back(p.v_bar);
  }
  const CMatrix mix = rng.unitary(4);
  std::vector<CVector> mixed;
  for (int j = 0; j < 4; ++j) {
    CVector v = CVector::Zero(6);
    for (int i = 0; i < 4; ++i) {
      v += mix(i, j) * flat_ref[static_cast<std::size_t>(i)];
    }
    mixed.push_back(v);
  }
  const auto pairs = kramers_pair_basis(mixed, k);
  ASSERT_EQ(pairs.size(), 2u);
  std::vector<CVector> flat;
  for (const auto &p : pairs) {
    flat.push_back(p.v);
    flat.push_back(p.v_bar);
    EXPECT_LE(max_abs(k.apply(p.v) - p.v_bar), 1e-14);
  }
  EXPECT_LE(gram(flat), 1e-10);
  EXPECT_LE(max_abs(projector(flat) - projector(flat_ref)), 1e-10);
}

TEST(KramersPairBasis, Errors) {
  const AntiunitaryRep odd = kramers_rep(SpinQuantum(3));
  EXPECT_THROW(kramers_pair_basis({basis(4, 0)}, odd), StructuralError);
  EXPECT_THROW(kramers_pair_basis({basis(4, 0), basis(4, 1)}, odd), StructuralError);
  EXPECT_THROW(kramers_pair_basis({basis(4, 0), basis(4, 0)}, odd), RankError);
  const AntiunitaryRep even = kramers_rep(SpinQuantum(2));
  EXPECT_THROW(kramers_pair_basis({basis(3, 0), basis(3, 1)}, even), StructuralError);
}

TEST(NonmagneticBasis, PlainConjugation) {
  const AntiunitaryRep k(CMatrix::Identity(3, 3), 1);
  CVector v(3);
  v << 0.6, 0.8, 0.0;
  const auto w = nonmagnetic_basis({v}, k);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_LE(std::abs(std::abs(w[0].dot(v)) - 1.0), 1e-15);

  const CVector iv = kI * v;
  const auto w2 = nonmagnetic_basis({iv}, k);
  EXPECT_LE(std::abs(std::abs(w2[0].dot(v)) - 1.0), 1e-15);
  EXPECT_LE(max_abs(w2[0] - w2[0].conjugate()), 1e-15);
}

TEST(NonmagneticBasis, EveryPhaseOfTheOverlap) {
  // Sweeps arg <Kv|v> over the full circle, including the half-plane where
  // the overlap has a negative imaginary part.
  const AntiunitaryRep k(CMatrix::Identity(2, 2), 1);
  for (int step = 0; step < 24; ++step) {
    const double phi = 2.0 * kPi * step / 24.0;
    CVector v(2);
    v << 0.8, 0.6;
    v *= std::exp(kI * phi);
    const auto w = nonmagnetic_basis({v}, k);
    EXPECT_LE(max_abs(k.apply(w[0]) - w[0]), 1e-12) << "phi = " << phi;
    EXPECT_NEAR(w[0].norm(), 1.0, 1e-12);
  }
}

TEST(NonmagneticBasis, RandomPairInEvenRep) {
  Rng rng(9);
  const AntiunitaryRep k = random_equivalent_rep(kramers_rep(SpinQuantum(4)), 10);
  const auto frame = orthonormal_columns(rng, 5, 5);
  const auto w = nonmagnetic_basis(frame, k);
  ASSERT_EQ(w.size(), 5u);
  EXPECT_LE(gram(w), 1e-10);
  for (const auto &x : w) {
    EXPECT_LE(max_abs(k.apply(x) - x), 1e-10);
  }
  EXPECT_THROW(nonmagnetic_basis(frame, kramers_rep(SpinQuantum(1))), StructuralError);
}

TEST(NonKramersPair, ConstructionAndChecks) {
  const AntiunitaryRep k(CMatrix::Identity(2, 2), 1);
  const NonKramersPair p = non_kramers_pair(basis(2, 0), basis(2, 1), k);
  CVector phi(2);
  phi << 1.0 / std::sqrt(2.0), Complex(0, 1.0 / std::sqrt(2.0));
  EXPECT_LE(max_abs(p.phi - phi), 1e-15);
  EXPECT_NEAR(p.phi.norm(), 1.0, 1e-15);
  EXPECT_LE(max_abs(k.apply(p.phi) - p.phi_bar), 1e-12);
  EXPECT_THROW(non_kramers_pair(CVector(kI * basis(2, 0)), basis(2, 1), k), ValidationError);
  EXPECT_THROW(non_kramers_pair(basis(2, 0), basis(2, 0), k), ValidationError);
}

TEST(VerifyTheorems, OddParity) {
  for (int ts : {1, 3, 5}) {
    const AntiunitaryRep k = random_equivalent_rep(kramers_rep(SpinQuantum(ts)), 3);
    const TheoremReport r = verify_theorems(k, random_tr_odd_hermitian(k, 4), 50, 5);
    EXPECT_LE(*r.kramers_overlap, 1e-12);
    EXPECT_LE(*r.kramers_sign_flip, 1e-10);
    EXPECT_FALSE(r.nonmagnetic_expectation);
    EXPECT_LE(r.worst(), 1e-10);
  }
}

TEST(VerifyTheorems, EvenParity) {
  for (int ts : {2, 4, 6}) {
    const AntiunitaryRep k = random_equivalent_rep(kramers_rep(SpinQuantum(ts)), 3);
    const TheoremReport r = verify_theorems(k, random_tr_odd_hermitian(k, 4), 50, 5);
    EXPECT_LE(*r.nonmagnetic_expectation, 1e-12);
    EXPECT_LE(*r.nonkramers_offdiagonal, 1e-10);
    EXPECT_FALSE(r.kramers_overlap);
    EXPECT_LE(r.worst(), 1e-10);
  }
}

TEST(VerifyTheorems, SzPartnerExpectation) {
  const SpinMatrices sm = spin_matrices(SpinQuantum(1));
  const AntiunitaryRep k = kramers_rep(sm.s);
  const CVector v = basis(2, 0);
  const CVector vb = k.apply(v);
  EXPECT_NEAR(std::real(vb.dot(sm.sz * vb)), -0.5, 0.0);
  EXPECT_NEAR(std::real(v.dot(sm.sz * v)), 0.5, 0.0);
}

TEST(VerifyTheorems, RejectsEvenOperator) {
  const AntiunitaryRep k = kramers_rep(SpinQuantum(1));
  EXPECT_THROW(verify_theorems(k, HermitianOp(CMatrix::Identity(2, 2)), 1, 0), ValidationError);
}
