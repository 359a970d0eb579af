#include "spinham/random.hpp"

#include <cmath>

namespace spinham {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

} // namespace

std::uint64_t splitmix64(std::uint64_t &state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t state = seed ^ (stream * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
  return splitmix64(state);
}

Rng::Rng(std::uint64_t seed) noexcept {
  std::uint64_t state = seed;
  for (auto &word : s_) {
    word = splitmix64(state);
  }
}

std::uint64_t Rng::next() noexcept {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

double Rng::normal() noexcept {
  const double u1 = 1.0 - uniform(); // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

Complex Rng::complex_normal() noexcept {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

Vec3 Rng::unit_vector() noexcept {
  for (;;) {
    Vec3 v;
    v(0) = normal();
    v(1) = normal();
    v(2) = normal();
    const double n = v.norm();
    if (n > 1e-8) {
      return v / n;
    }
  }
}

CVector Rng::unit_cvector(Eigen::Index n) noexcept {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = complex_normal();
  }
  return v / v.norm();
}

CMatrix Rng::hermitian(Eigen::Index n) noexcept {
  CMatrix x(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      x(i, j) = complex_normal();
    }
  }
  return (x + x.adjoint()) * 0.5;
}

CMatrix Rng::unitary(Eigen::Index n) {
  CMatrix x(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      x(i, j) = complex_normal();
    }
  }
  Eigen::HouseholderQR<CMatrix> qr(x);
  return qr.householderQ() * CMatrix::Identity(n, n);
}

} // namespace spinham
