#pragma once

#include <cstdint>
#include <utility>

#include "spinham/gtensor.hpp"
#include "spinham/random.hpp"
#include "spinham/spin_algebra.hpp"
#include "spinham/types.hpp"

namespace spinham {

/// Parameters of a synthetic g-tensor. Equal specs give bit-identical output.
struct FixtureSpec {
  std::uint64_t seed = 0;
  SpinQuantum s{1};
  int det_sign = 0;      ///< +1, -1, or 0 for unconstrained
  int singular_rows = 0; ///< number of exactly zero singular values, 0..2
  std::pair<double, double> sv_range{0.5, 3.0};

  /// Throws ValidationError for an inconsistent spec.
  void validate() const;
};

struct Scrambled {
  ZeemanTriple zt;
  Mat3 o_r;  ///< h'_u = sum_q (o_r)_qu h_q
  AxisAngle aa;
  CMatrix u; ///< h'' = u^dagger h' u with u = exp(-i theta S.n)
};

/// Proper rotation with axis uniform on the sphere and theta uniform on [0, pi].
AxisAngle random_axis_angle(Rng &rng);
Mat3 random_rotation(Rng &rng);

/// g = O1 diag(sigma) O2 with sigma uniform in sv_range. singular_rows zeroes
/// the trailing sigmas; det_sign -1 negates the first.
GMatrixSmall random_g(const FixtureSpec &spec);

/// Applies a known real rotation and fictitious-spin basis change.
Scrambled apply_scramble(const ZeemanTriple &zt, const SpinMatrices &sm, const Mat3 &o, const AxisAngle &aa);

/// apply_scramble with a rotation and basis change drawn from the seed.
Scrambled scramble(const ZeemanTriple &zt, const SpinMatrices &sm, std::uint64_t seed);

} // namespace spinham
