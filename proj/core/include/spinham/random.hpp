#pragma once

#include <cstdint>

#include "spinham/types.hpp"

namespace spinham {

/// One step of SplitMix64; used for seeding and for deriving stream seeds.
std::uint64_t splitmix64(std::uint64_t &state) noexcept;

/// Seed for an independent sub-stream, e.g. one per trial.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// xoshiro256** generator, state filled from the seed by SplitMix64.
///
/// Fixture generation relies only on this class (no <random> distributions,
/// whose output is implementation-defined), so the same seed reproduces the
/// same bits on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) noexcept;

  std::uint64_t next() noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept;

  /// Standard normal by the Box-Muller transform (one draw per call).
  double normal() noexcept;
  Complex complex_normal() noexcept;

  /// Gaussian-normalized direction, uniform on the unit sphere.
  Vec3 unit_vector() noexcept;

  /// Normalized complex Gaussian vector.
  CVector unit_cvector(Eigen::Index n) noexcept;

  /// Random Hermitian matrix (X + X^dagger)/2 with Gaussian X.
  CMatrix hermitian(Eigen::Index n) noexcept;

  /// Random unitary from the QR factorization of a complex Gaussian matrix.
  CMatrix unitary(Eigen::Index n);

private:
  std::uint64_t s_[4];
};

} // namespace spinham
