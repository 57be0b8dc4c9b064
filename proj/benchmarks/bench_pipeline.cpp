#include "ribbonpatch/examples.hpp"
#include "ribbonpatch/mesh_generators.hpp"
#include "ribbonpatch/patch.hpp"

#include <benchmark/benchmark.h>

using namespace ribbonpatch;

namespace {

PatchProblem vertex_blend_problem(int resolution) {
  auto input = examples::vertex_blend(resolution);
  auto assignment = assign_sides_from_corners(input.mesh, input.ribbons.loops);
  return prepare_problem(input.mesh, std::move(assignment), input.ribbons.sides);
}

void BM_Factorize(benchmark::State &state) {
  TriMesh mesh = generators::unit_square(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    BiharmonicSystem system(mesh);
    benchmark::DoNotOptimize(&system);
  }
  state.counters["vertices"] = mesh.vertex_count();
}
BENCHMARK(BM_Factorize)->Arg(32)->Arg(64)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Parameterize(benchmark::State &state) {
  PatchProblem problem = vertex_blend_problem(static_cast<int>(state.range(0)));
  SideLayout layout(problem.mesh);
  for (auto _ : state) {
    HarmonicSolver solver(problem.mesh);
    for (int side = 0; side < layout.side_count(); ++side)
      benchmark::DoNotOptimize(side_parameterization(problem.mesh, layout, side, {}, &solver));
  }
  state.counters["vertices"] = problem.mesh.vertex_count();
}
BENCHMARK(BM_Parameterize)->Arg(20)->Arg(45)->Unit(benchmark::kMillisecond);

void BM_FullPipeline(benchmark::State &state) {
  PatchProblem problem = vertex_blend_problem(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    PatchBuilder builder(problem);
    benchmark::DoNotOptimize(builder.build());
  }
  state.counters["vertices"] = problem.mesh.vertex_count();
}
BENCHMARK(BM_FullPipeline)->Arg(20)->Arg(45)->Arg(63)->Unit(benchmark::kMillisecond);

void BM_SolveOnly(benchmark::State &state) {
  PatchBuilder builder(vertex_blend_problem(static_cast<int>(state.range(0))));
  BoundaryConditions bc = builder.boundary_conditions();
  for (auto _ : state)
    benchmark::DoNotOptimize(builder.system().solve(bc));
}
BENCHMARK(BM_SolveOnly)->Arg(45)->Arg(63)->Unit(benchmark::kMillisecond);

void BM_BlendFields(benchmark::State &state) {
  PatchBuilder builder(vertex_blend_problem(static_cast<int>(state.range(0))));
  auto ids = builder.control_points();
  for (auto _ : state)
    benchmark::DoNotOptimize(builder.blend_fields(ids));
  state.counters["fields"] = static_cast<double>(ids.size());
}
BENCHMARK(BM_BlendFields)->Arg(20)->Arg(45)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
