#include <benchmark/benchmark.h>

#include "harmonic_groups/group.hpp"
#include "harmonic_groups/measure.hpp"
#include "harmonic_groups/straightening.hpp"
#include "harmonic_groups/subgroup.hpp"
#include "harmonic_groups/walks.hpp"

namespace {

using namespace hg;

void BM_HeisenbergBall(benchmark::State& state) {
  const auto gens = Group::heisenberg3().default_generators();
  const int r = static_cast<int>(state.range(0));
  std::size_t n = 0;
  for (auto _ : state) {
    n = enumerate_ball(gens, r).size();
    benchmark::DoNotOptimize(n);
  }
  state.counters["elements"] = static_cast<double>(n);
  state.SetItemsProcessed(static_cast<std::int64_t>(n) * state.iterations());
}
BENCHMARK(BM_HeisenbergBall)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_HittingMeasureDihedral(benchmark::State& state) {
  const Group d = Group::dihedral_infinite();
  const FiniteMeasure mu(d, {{Element{1, 0}, Rational(1, 3)}, {Element{-1, 0}, Rational(1, 3)},
                             {Element{0, 1}, Rational(1, 3)}});
  const auto core = MarkedSubgroup::rotation_core(d);
  const auto n = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const auto m = hitting_measure(core, WalkConfig{mu, kDefaultMaxSteps, ++seed, n});
    benchmark::DoNotOptimize(m.total);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(n) * state.iterations());
}
BENCHMARK(BM_HittingMeasureDihedral)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_DefectSweepBall(benchmark::State& state) {
  const QiMapExpr psi(Group::free_abelian(2), {Shear{1, 0, ShearKind::kSqrtFloor}});
  DefectProbe probe;
  probe.radius = static_cast<int>(state.range(0));
  std::uint64_t pairs = 0;
  for (auto _ : state) {
    const auto rep = abelian_defect(psi, probe);
    pairs = rep.pairs_evaluated;
    benchmark::DoNotOptimize(rep.max_defect);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(pairs) * state.iterations());
}
BENCHMARK(BM_DefectSweepBall)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_DefectSweepAxis(benchmark::State& state) {
  const QiMapExpr psi(Group::free_abelian(2), {Shear{1, 0, ShearKind::kSqrtFloor}});
  DefectProbe probe;
  probe.shape = ProbeShape::kAxisSegment;
  probe.radius = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(abelian_defect(psi, probe).max_defect);
}
BENCHMARK(BM_DefectSweepAxis)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
