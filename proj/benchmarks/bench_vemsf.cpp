#include <benchmark/benchmark.h>

#include "vemsf/studies.hpp"

namespace {

const vemsf::MaterialMatrix kMaterial = vemsf::material_matrix(1.0, 0.3, vemsf::PlaneMode::plane_stress);

void BM_SbcRule(benchmark::State& state) {
  const auto g = vemsf::element_geometry(vemsf::regular_polygon(8, 1.0), 0);
  const int degree = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(vemsf::sbc_polygon_rule(g, degree));
}
BENCHMARK(BM_SbcRule)->Arg(4)->Arg(10)->Arg(20);

void BM_BuildElement(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const int sides = static_cast<int>(state.range(1));
  const auto g = vemsf::element_geometry(vemsf::regular_polygon(sides, 1.0), 0);
  for (auto _ : state) benchmark::DoNotOptimize(vemsf::build_element(g, k, kMaterial));
}
BENCHMARK(BM_BuildElement)->Args({2, 4})->Args({2, 8})->Args({3, 6})->Args({3, 10});

void BM_SolveManufactured(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto mesh = vemsf::study_mesh(vemsf::ConvergenceStudy::manufactured1, static_cast<int>(state.range(1)), k, 1);
  const auto bench = vemsf::manufactured1();
  for (auto _ : state) benchmark::DoNotOptimize(vemsf::solve_benchmark(bench, mesh, k));
  state.counters["cells"] = static_cast<double>(mesh.num_cells());
}
BENCHMARK(BM_SolveManufactured)->Args({2, 256})->Args({3, 256})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
