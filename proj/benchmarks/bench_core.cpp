#include <benchmark/benchmark.h>

#include "spinham/spinham.hpp"

using namespace spinham;

namespace {

constexpr double kC = kSpeedOfLight;

GMatrixSmall fixture_g(int two_s, std::uint64_t seed) {
  FixtureSpec spec;
  spec.seed = seed;
  spec.s = SpinQuantum(two_s);
  return random_g(spec);
}

void BM_HermitianEigen(benchmark::State &state) {
  Rng rng(1);
  const CMatrix h = rng.hermitian(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hermitian_eigen(h));
  }
}
BENCHMARK(BM_HermitianEigen)->DenseRange(2, 16, 2);

void BM_SuRotation(benchmark::State &state) {
  const SpinMatrices sm = spin_matrices(SpinQuantum(static_cast<int>(state.range(0))));
  const AxisAngle aa(1.3, Vec3(1, -2, 0.5).normalized());
  for (auto _ : state) {
    benchmark::DoNotOptimize(su_rotation(sm, aa));
  }
}
BENCHMARK(BM_SuRotation)->Arg(1)->Arg(3)->Arg(7)->Arg(15);

void BM_PrincipalAxes(benchmark::State &state) {
  const GMatrixSmall g = fixture_g(1, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(principal_axes(g));
  }
}
BENCHMARK(BM_PrincipalAxes);

void BM_ClosedFormSplittings(benchmark::State &state) {
  const int two_s = static_cast<int>(state.range(0));
  const SpinMatrices sm = spin_matrices(SpinQuantum(two_s));
  const GMatrixSmall g = fixture_g(two_s, 12);
  const Vec3 field(0.3, -1.1, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(splittings_closed_form(g, field, sm, kC));
  }
}
BENCHMARK(BM_ClosedFormSplittings)->Arg(1)->Arg(3)->Arg(7)->Arg(15);

void BM_AltDiagonalize(benchmark::State &state) {
  const int two_s = static_cast<int>(state.range(0));
  const SpinMatrices sm = spin_matrices(SpinQuantum(two_s));
  const GMatrixSmall g = fixture_g(two_s, 13);
  const PrincipalDecomposition pd = principal_axes(g);
  const ZeemanTriple zt = build_zeeman(GMatrixSmall(pd.o_r.transpose() * g.matrix()), sm, kC);
  for (auto _ : state) {
    benchmark::DoNotOptimize(alt_diagonalize(zt, sm, kC));
  }
}
BENCHMARK(BM_AltDiagonalize)->Arg(1)->Arg(2)->Arg(3)->Arg(7)->Arg(15);

void BM_ExtractGeneral(benchmark::State &state) {
  const int two_s = static_cast<int>(state.range(0));
  const SpinMatrices sm = spin_matrices(SpinQuantum(two_s));
  const ZeemanTriple zt = scramble(build_zeeman(fixture_g(two_s, 14), sm, kC), sm, 15).zt;
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_g_general(zt, sm, kC));
  }
}
BENCHMARK(BM_ExtractGeneral)->Arg(1)->Arg(7)->Arg(15);

} // namespace

BENCHMARK_MAIN();
