#include <benchmark/benchmark.h>

#include <random>

#include "maxspread/triality.hpp"
#include "maxspread/verify.hpp"

using namespace maxspread;

namespace {

void BM_FieldMul(benchmark::State& state) {
  auto t = FieldTower::create(2, static_cast<std::uint32_t>(state.range(0)));
  std::mt19937 rng(1);
  std::vector<Elem> xs(1024);
  for (auto& x : xs) x = rng() % t->size();
  for (auto _ : state) {
    Elem acc = 1;
    for (Elem x : xs) acc = t->mul(acc, x ? x : 1);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(xs.size()));
}
BENCHMARK(BM_FieldMul)->Arg(4)->Arg(12)->Arg(15);

void BM_SubspaceSpan(benchmark::State& state) {
  auto F = Field::create(FieldTower::create(3, 1), 1);
  std::mt19937 rng(2);
  std::vector<Vec> rows(8, Vec(16));
  for (auto& r : rows)
    for (auto& x : r) x = rng() % 3;
  for (auto _ : state) benchmark::DoNotOptimize(Subspace::span(F, 16, rows));
}
BENCHMARK(BM_SubspaceSpan);

void BM_EnumerateSp6(benchmark::State& state) {
  auto F = Field::create(FieldTower::create(3, 1), 1);
  auto V = FormedSpace::standard_symplectic(F, 3);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_maximal(*V, Flavor::Symplectic).size());
}
BENCHMARK(BM_EnumerateSp6)->Unit(benchmark::kMillisecond);

void BM_MaximalSpreadSp8(benchmark::State& state) {
  const auto fam = std::get<SubspaceFamily>(build_family("thm3.1", {{"q", 2}, {"m", 2}}));
  for (auto _ : state) benchmark::DoNotOptimize(check_maximal_spread(fam, Flavor::Symplectic).verdict);
}
BENCHMARK(BM_MaximalSpreadSp8)->Unit(benchmark::kMillisecond);

void BM_MaximalOvoidQ8(benchmark::State& state) {
  const auto fam = std::get<PointFamily>(build_family("thm7.10", {{"q", 8}}));
  for (auto _ : state) benchmark::DoNotOptimize(check_maximal_ovoid(fam, Flavor::Orthogonal).verdict);
}
BENCHMARK(BM_MaximalOvoidQ8)->Unit(benchmark::kMillisecond);

void BM_TrialityImages(benchmark::State& state) {
  auto V = FormedSpace::standard_hyperbolic(Field::create(FieldTower::create(2, 2), 2), 4);
  Triality T(V);
  const auto& pts = V->singular_points();
  for (auto _ : state) benchmark::DoNotOptimize(T.images(pts).size());
}
BENCHMARK(BM_TrialityImages)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
