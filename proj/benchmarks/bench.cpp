#include <benchmark/benchmark.h>

#include <memory>

#include "symred/dynamics.hpp"
#include "symred/maxwell_field.hpp"
#include "symred/poisson.hpp"
#include "symred/potentials.hpp"

using namespace symred;

namespace {

BracketSpec extended_so3() {
  auto pot = std::make_shared<const GaugePotential>(random_trig_potential(StructureConstants::so3(), 1));
  auto field = std::make_shared<const CurvatureField>(CurvatureField::from_potential(pot));
  return BracketSpec::extended_ym(field, pot);
}

const PhasePoint kPoint(Vec3(0.1, 0.2, -0.3), Vec3(0.4, -0.1, 0.2), Vec3(0.3, 0.2, 0.1),
                        Vec3(0.5, -0.4, 0.3));

}  // namespace

static void BM_BivectorExtendedSo3(benchmark::State& state) {
  const auto spec = extended_so3();
  for (auto _ : state) benchmark::DoNotOptimize(bivector(spec, kPoint));
}
BENCHMARK(BM_BivectorExtendedSo3);

static void BM_MaxJacobiatorExtendedSo3(benchmark::State& state) {
  const auto spec = extended_so3();
  for (auto _ : state) benchmark::DoNotOptimize(max_jacobiator(spec, kPoint));
}
BENCHMARK(BM_MaxJacobiatorExtendedSo3)->Unit(benchmark::kMicrosecond);

static void BM_ParticleRk4(benchmark::State& state) {
  auto pot = std::make_shared<const GaugePotential>(uniform_b_potential(1.0, DomainBox{Vec3::Constant(-3), Vec3::Constant(3)}));
  const auto spec = BracketSpec::magnetic(std::make_shared<const CurvatureField>(CurvatureField::from_potential(pot)));
  const PhasePoint x0(Vec3::Zero(), Vec3(1, 0, 0));
  for (auto _ : state) benchmark::DoNotOptimize(integrate(spec, HamiltonianSpec::free(), x0, 1.0, 1e-3));
}
BENCHMARK(BM_ParticleRk4)->Unit(benchmark::kMillisecond);

static void BM_MaxwellSteps(benchmark::State& state) {
  const GridSpec grid{static_cast<int>(state.range(0)), 6.283185307179586};
  const FieldState s = random_solenoidal_state(grid, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve(s, 0.1, 0.01, MaxwellStructure::helicity, {.diagnostic_stride = 10}));
  }
  state.SetItemsProcessed(state.iterations() * 10);
}
BENCHMARK(BM_MaxwellSteps)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_InverseCurl(benchmark::State& state) {
  const GridSpec grid{32, 6.283185307179586};
  const FieldState s = random_solenoidal_state(grid, 3);
  for (auto _ : state) benchmark::DoNotOptimize(inverse_curl(s.b));
}
BENCHMARK(BM_InverseCurl)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
