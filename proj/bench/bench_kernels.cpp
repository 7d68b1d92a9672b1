#include <benchmark/benchmark.h>

#include <complex>

#include "qpbeam/field_oracle.hpp"
#include "qpbeam/matrix_oracle.hpp"

namespace {

using namespace qpbeam;

const BeamParams kBeam = BeamParams::from_wavelength(1e-6, 1e-5);

BeamState bench_state() {
  const ModeSpace space(6);
  const double r = 1.0 / std::sqrt(3.0);
  return six_mode_state(space, Polarization::circular(1), r, cplx(0.0, r), cplx(r * 0.6, r * 0.8));
}

void BM_DensityReference(benchmark::State& st) {
  const BeamState s = bench_state();
  GridSpec g;
  g.n = int(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(integrate_densities_reference(s, kBeam, g));
}

void BM_DensityKernel(benchmark::State& st, Execution exec) {
  const BeamState s = bench_state();
  GridSpec g;
  g.n = int(st.range(0));
  g.execution = exec;
  for (auto _ : st) benchmark::DoNotOptimize(integrate_densities(s, kBeam, g));
}

void BM_MatrixOracle(benchmark::State& st, Execution exec) {
  const ModeSpace space(int(st.range(0)));
  OracleOptions o;
  o.execution = exec;
  for (auto _ : st)
    benchmark::DoNotOptimize(oracle_matrix_elements(space, kBeam, OracleFamily::both, o));
}

}  // namespace

BENCHMARK(BM_DensityReference)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_DensityKernel, serial, Execution::serial)
    ->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_DensityKernel, parallel, Execution::parallel)
    ->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_MatrixOracle, serial, Execution::serial)
    ->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_MatrixOracle, parallel, Execution::parallel)
    ->Arg(6)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
