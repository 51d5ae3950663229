#include <benchmark/benchmark.h>

#include "ctspec/parallel.hpp"
#include "ctspec/reference.hpp"
#include "ctspec/spectra.hpp"

using namespace ctspec;

namespace {

const Holonomy kTwist{0.3, 0.1, 0.45};

void BM_BlockSpectrumParallel(benchmark::State& st) {
  const DerhamComplex cx(make_grid(static_cast<int>(st.range(0)), kTwist));
  for (auto _ : st) benchmark::DoNotOptimize(derham_spectrum(cx, 0.5, 1, false, true));
  st.counters["threads"] = current_jobs();
}

void BM_BlockSpectrumSerial(benchmark::State& st) {
  const DerhamComplex cx(make_grid(static_cast<int>(st.range(0)), kTwist));
  for (auto _ : st) benchmark::DoNotOptimize(derham_spectrum(cx, 0.5, 1, false, false));
}

void BM_FullGridReference(benchmark::State& st) {
  const Grid g = make_grid(static_cast<int>(st.range(0)), kTwist);
  for (auto _ : st) benchmark::DoNotOptimize(reference::laplacian_spectrum_full(g, 0.5, 1));
}

void BM_RuminSpectraParallel(benchmark::State& st) {
  const DerhamComplex cx(make_grid(static_cast<int>(st.range(0)), kTwist));
  for (auto _ : st) benchmark::DoNotOptimize(rumin_spectra(cx, true));
}

void BM_RuminSpectraSerial(benchmark::State& st) {
  const DerhamComplex cx(make_grid(static_cast<int>(st.range(0)), kTwist));
  for (auto _ : st) benchmark::DoNotOptimize(rumin_spectra(cx, false));
}

}  // namespace

BENCHMARK(BM_BlockSpectrumParallel)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlockSpectrumSerial)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FullGridReference)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RuminSpectraParallel)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RuminSpectraSerial)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
