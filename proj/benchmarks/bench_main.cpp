#include <benchmark/benchmark.h>

#include "flg/analysis.hpp"
#include "flg/classes.hpp"
#include "flg/client_eq.hpp"
#include "flg/instances.hpp"
#include "flg/spe.hpp"

using namespace flg;

namespace {

Instance random_instance(int n, int k, std::uint64_t seed, bool unit = true) {
  RandomSpec spec;
  spec.vertices = n;
  spec.k = k;
  spec.seed = seed;
  spec.unit_weights = unit;
  return make_random(spec);
}

Placement first_placement(const Instance& inst) {
  Placement s;
  for (int f = 0; f < inst.k; ++f) s.at.push_back(inst.allowed[f][0]);
  return s;
}

void BM_ScalarField(benchmark::State& state) {
  Scalar phi = Scalar::golden_ratio();
  Scalar x(3, 7);
  for (auto _ : state) {
    Scalar y = (x + phi) * (x - phi) / (phi + Scalar(1));
    benchmark::DoNotOptimize(y.sign());
  }
}
BENCHMARK(BM_ScalarField);

void BM_ClassSet(benchmark::State& state) {
  Instance inst = random_instance(static_cast<int>(state.range(0)), 4, 99);
  Placement s = first_placement(inst);
  for (auto _ : state) benchmark::DoNotOptimize(class_set(inst, s));
}
BENCHMARK(BM_ClassSet)->Arg(8)->Arg(12)->Arg(16);

void BM_RoundedProfile(benchmark::State& state) {
  Instance inst = random_instance(static_cast<int>(state.range(0)), 4, 7);
  Placement s = first_placement(inst);
  ClassSet cs = class_set(inst, s);
  for (auto _ : state)
    benchmark::DoNotOptimize(rounded_profile(inst, s, cs));
}
BENCHMARK(BM_RoundedProfile)->Arg(8)->Arg(16);

void BM_FavoringProfile(benchmark::State& state) {
  Instance inst = random_instance(static_cast<int>(state.range(0)), 4, 21);
  Placement s = first_placement(inst);
  std::vector<int> pi{2, 0, 3, 1};
  for (auto _ : state)
    benchmark::DoNotOptimize(favoring_profile(inst, s, pi));
}
BENCHMARK(BM_FavoringProfile)->Arg(8)->Arg(16);

void BM_EnumerateEquilibria(benchmark::State& state) {
  Instance inst = make_fig5_left();
  Placement s{{1, 1}};
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_equilibria(inst, s, EnumGuard{}));
}
BENCHMARK(BM_EnumerateEquilibria);

void BM_FindSpe(benchmark::State& state) {
  Instance inst = random_instance(8, static_cast<int>(state.range(0)), 13);
  for (auto _ : state) benchmark::DoNotOptimize(find_spe(inst));
}
BENCHMARK(BM_FindSpe)->Arg(2)->Arg(3);

void BM_SpeExistsPath(benchmark::State& state) {
  Instance inst = make_fig5_left();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        spe_exists(inst, Alpha::exact(), SpeExistsGuard{}));
}
BENCHMARK(BM_SpeExistsPath);

void BM_SpeExistsGadget(benchmark::State& state) {
  Instance inst = make_fig5_right(Scalar(1, 100));
  Alpha alpha(Scalar::golden_ratio() - Scalar(1, 10));
  for (auto _ : state)
    benchmark::DoNotOptimize(spe_exists(inst, alpha, SpeExistsGuard{}));
}
BENCHMARK(BM_SpeExistsGadget);

void BM_ReduceSat(benchmark::State& state) {
  CnfFormula formula;
  formula.variables = 4;
  for (int j = 0; j < 8; ++j)
    formula.clauses.push_back({(j % 4) + 1, -((j % 3) + 1)});
  for (auto _ : state)
    benchmark::DoNotOptimize(reduce_sat(formula, Scalar(5, 4), Scalar(1, 100)));
}
BENCHMARK(BM_ReduceSat);

}  // namespace

BENCHMARK_MAIN();
