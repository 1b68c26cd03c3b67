#include <benchmark/benchmark.h>

#include "sptkit/cg.hpp"
#include "sptkit/group.hpp"
#include "sptkit/itebd.hpp"
#include "sptkit/mbqc.hpp"
#include "sptkit/mps.hpp"
#include "sptkit/rng.hpp"

using namespace sptkit;

namespace {

MpsBuildSpec a4_spec(std::uint64_t seed) {
  MpsBuildSpec s;
  s.group = "A4";
  s.phys_irreps = {"3"};
  s.virtual_spec = {{"2~_(0)", 2}, {"2~_(2)", 2}, {"2~_(1)", 2}};
  s.random_seed = seed;
  return s;
}

void BM_BuiltinGroup(benchmark::State& state) {
  const auto names = builtin_group_names();
  const auto& name = names[static_cast<size_t>(state.range(0))];
  for (auto _ : state) benchmark::DoNotOptimize(builtin_group(name));
  state.SetLabel(name);
}
BENCHMARK(BM_BuiltinGroup)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_ComputeCgS4(benchmark::State& state) {
  const auto g = builtin_group("S4");
  for (auto _ : state) benchmark::DoNotOptimize(compute_cg(g.table, g.irrep("3_(1)"), g.irrep("4~"), g.irreps, 0));
}
BENCHMARK(BM_ComputeCgS4)->Unit(benchmark::kMillisecond);

void BM_BuildMpsA4(benchmark::State& state) {
  const auto g = builtin_group("A4");
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(build_mps(g, a4_spec(seed++)));
}
BENCHMARK(BM_BuildMpsA4)->Unit(benchmark::kMillisecond);

void BM_MeasureSite(benchmark::State& state) {
  const auto g = builtin_group("A4");
  const auto mps = build_mps(g, a4_spec(1));
  CounterRng rng(2);
  const auto frame = make_frame(mps, rng.haar_state(mps.split->junk_dim), rng.haar_state(2));
  const auto basis = aklt_xyz_basis();
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(measure_site(mps, frame, basis, Sampled{seed++}));
}
BENCHMARK(BM_MeasureSite);

void BM_ItebdSweeps(benchmark::State& state) {
  const auto h = offset_bond_hamiltonian(0.5, -1.0);
  ItebdOptions opt;
  opt.chi = static_cast<int>(state.range(0));
  opt.schedule = {{0.05, 50}};
  opt.min_steps = 50;
  opt.drift_tolerance = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(itebd_ground_state(h, opt));
  state.SetItemsProcessed(state.iterations() * 50);
}
BENCHMARK(BM_ItebdSweeps)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
