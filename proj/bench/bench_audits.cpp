// Serial reference against the OpenMP kernels on the heavier audit grids.

#include <benchmark/benchmark.h>

#include "copolar/audits.hpp"

using namespace copolar;

namespace {

Scenario scenario(const std::string& family, Exec exec) {
  Scenario s;
  s.family.family = family;
  s.family.n = 3;
  s.family.delta = 0.1;
  s.exec = exec;
  return s;
}

void run(benchmark::State& state, const std::string& family, const std::string& audit) {
  const Scenario s = scenario(family, state.range(0) == 0 ? Exec::serial : Exec::openmp);
  const PseudoCone k = scenario_family(s);
  for (auto _ : state) {
    AuditOutcome o = run_audit(s, k, audit);
    benchmark::DoNotOptimize(o);
  }
  state.SetLabel(state.range(0) == 0 ? "serial" : "openmp");
}

void BM_Involution(benchmark::State& state) { run(state, "calabi", "involution"); }
void BM_Legendre(benchmark::State& state) { run(state, "hyperbola", "eq2_1n"); }
void BM_Tensors(benchmark::State& state) { run(state, "perturbed_hyperbola", "eq5_2"); }
void BM_Equivariance(benchmark::State& state) { run(state, "hyperbola", "equivariance"); }

}  // namespace

BENCHMARK(BM_Involution)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Legendre)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Tensors)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Equivariance)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
