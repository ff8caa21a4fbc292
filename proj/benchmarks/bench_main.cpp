#include <benchmark/benchmark.h>

#include "qtau/qtau.hpp"

using namespace qtau;

namespace {

const MonodromyInput& standard() {
  static const MonodromyInput m = MonodromyInput::from_s(0.4, 0.17, 1.3, 0.8);
  return m;
}

void BM_Series(benchmark::State& s) {
  SeriesCutoff c;
  c.max_boxes = int(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(tau_widom_series(standard(), 0.05, c));
}
BENCHMARK(BM_Series)->Arg(6)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_SeriesEvalOnly(benchmark::State& s) {
  const QBase q(0.4);
  TauSeries A(-2, Sector::zero, standard().S2(), standard().u(), q, {});
  for (auto _ : s) benchmark::DoNotOptimize(A.eval(0.05));
}
BENCHMARK(BM_SeriesEvalOnly);

void BM_Fredholm(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(det_fredholm(standard(), 0.05, 2, int(s.range(0))));
}
BENCHMARK(BM_Fredholm)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Widom(benchmark::State& s) {
  WidomOptions o;
  o.modes = int(s.range(0));
  o.samples = int(s.range(1));
  for (auto _ : s) benchmark::DoNotOptimize(widom_fft_det(standard(), 0.05, o));
}
BENCHMARK(BM_Widom)->Args({24, 256})->Args({48, 512})->Unit(benchmark::kMillisecond);

void BM_MayaEnumeration(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(enumerate_maya2(int(s.range(0))));
}
BENCHMARK(BM_MayaEnumeration)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_Keystone(benchmark::State& s) {
  auto all = enumerate_maya2(5);
  for (auto _ : s) {
    double w = 0.0;
    for (const auto& M : all) w = std::max(w, term_vs_nekrasov(standard(), 0.05, M));
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_Keystone)->Unit(benchmark::kMillisecond);

void BM_CharacterIdentity(benchmark::State& s) {
  const int n = int(s.range(0));
  for (auto _ : s) {
    long bad = 0;
    for (int a = 0; a <= n; ++a)
      for (const auto& Yp : partitions_of(a))
        for (const auto& Ym : partitions_of(n - a))
          if (!(char_nek(Yp, Ym) == char_ny(Yp, Ym))) ++bad;
    benchmark::DoNotOptimize(bad);
  }
}
BENCHMARK(BM_CharacterIdentity)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
