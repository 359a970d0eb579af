#include "spinham/modelgen.hpp"

#include <cmath>

#include "spinham/errors.hpp"
#include "spinham/linalg.hpp"

namespace spinham {

void FixtureSpec::validate() const {
  if (det_sign != 0 && det_sign != 1 && det_sign != -1) {
    throw ValidationError("fixture spec: det_sign must be -1, 0 or +1");
  }
  if (singular_rows < 0 || singular_rows > 2) {
    throw ValidationError("fixture spec: singular_rows must be 0, 1 or 2");
  }
  const auto [lo, hi] = sv_range;
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi || lo < 0.0) {
    throw ValidationError("fixture spec: sv_range must satisfy 0 <= min <= max");
  }
  if (lo <= 0.0 && singular_rows == 0) {
    throw ValidationError("fixture spec: sv_range minimum must be positive for a nonsingular g");
  }
}

AxisAngle random_axis_angle(Rng &rng) {
  const Vec3 axis = rng.unit_vector();
  const double theta = rng.uniform(0.0, kPi);
  return AxisAngle(theta, axis);
}

Mat3 random_rotation(Rng &rng) { return so3_rotation(random_axis_angle(rng)); }

GMatrixSmall random_g(const FixtureSpec &spec) {
  spec.validate();
  Rng rng(spec.seed);
  const Mat3 o1 = random_rotation(rng);
  const Mat3 o2 = random_rotation(rng);
  Vec3 sigma;
  for (int k = 0; k < 3; ++k) {
    sigma(k) = rng.uniform(spec.sv_range.first, spec.sv_range.second);
  }
  for (int k = 0; k < spec.singular_rows; ++k) {
    sigma(2 - k) = 0.0;
  }
  int sign = spec.det_sign;
  if (sign == 0) {
    sign = (rng.next() >> 63) ? -1 : 1;
  }
  if (sign < 0) {
    sigma(0) = -sigma(0);
  }
  return GMatrixSmall(o1 * sigma.asDiagonal() * o2);
}

Scrambled apply_scramble(const ZeemanTriple &zt, const SpinMatrices &sm, const Mat3 &o, const AxisAngle &aa) {
  if (zt.spin() != sm.s) {
    throw DimensionError("scramble: Zeeman triple and spin matrices have different multiplicities");
  }
  if (orthogonality_residual(o) > Tolerances::orthogonal_input) {
    throw ValidationError("scramble: real-space matrix is not orthogonal");
  }
  const CMatrix u = su_rotation(sm, aa);
  const int m = sm.s.dim();
  std::array<CMatrix, 3> h;
  for (int a = 0; a < 3; ++a) {
    CMatrix rotated = CMatrix::Zero(m, m);
    for (int q = 0; q < 3; ++q) {
      rotated += o(q, a) * zt[q];
    }
    CMatrix t = u.adjoint() * rotated * u;
    h[static_cast<std::size_t>(a)] = 0.5 * (t + t.adjoint());
  }
  return Scrambled{ZeemanTriple(sm.s, std::move(h)), o, aa, u};
}

Scrambled scramble(const ZeemanTriple &zt, const SpinMatrices &sm, std::uint64_t seed) {
  Rng rng(seed);
  const Mat3 o = random_rotation(rng);
  const AxisAngle aa = random_axis_angle(rng);
  return apply_scramble(zt, sm, o, aa);
}

} // namespace spinham
