#include <benchmark/benchmark.h>

#include <numbers>

#include "tnorder/expint.hpp"
#include "tnorder/oscillator.hpp"
#include "tnorder/projector.hpp"
#include "tnorder/quadrature.hpp"
#include "tnorder/tn.hpp"

using namespace tnorder;
using std::numbers::pi;

namespace {

LinearOperator paper_momentum() {
  return heisenberg_momentum(FrequencySchedule::half_frequency_switch(1.0)).as_linear();
}

void BM_ExpIntegralSeries(benchmark::State& state) {
  const cplx z(0.3, 1.1);
  for (auto _ : state) benchmark::DoNotOptimize(exp_integral(z));
}
BENCHMARK(BM_ExpIntegralSeries);

void BM_ExpIntegralContinuedFraction(benchmark::State& state) {
  const cplx z(0.0, 25.0);
  for (auto _ : state) benchmark::DoNotOptimize(exp_integral(z));
}
BENCHMARK(BM_ExpIntegralContinuedFraction);

void BM_FreqPartEvaluate(benchmark::State& state) {
  const auto p = heisenberg_momentum(FrequencySchedule::half_frequency_switch(1.0));
  const auto img = freq_part(p.coeff_p, ProjectorSign::positive);
  for (auto _ : state) benchmark::DoNotOptimize(img(3.0));
}
BENCHMARK(BM_FreqPartEvaluate);

void BM_CauchyPv(benchmark::State& state) {
  const auto p = heisenberg_momentum(FrequencySchedule::half_frequency_switch(1.0));
  QuadratureControls c;
  c.window_multiplier = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cauchy_pv(p.coeff_p, 3.0, -kInf, kInf, c));
}
BENCHMARK(BM_CauchyPv)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_TnExactSemianalytic(benchmark::State& state) {
  const auto p = paper_momentum();
  for (auto _ : state) benchmark::DoNotOptimize(tn_pair_exact(p, p, 3 * pi, 3 * pi));
}
BENCHMARK(BM_TnExactSemianalytic)->Unit(benchmark::kMicrosecond);

void BM_TnExactQuadrature(benchmark::State& state) {
  const auto p = paper_momentum();
  for (auto _ : state)
    benchmark::DoNotOptimize(tn_pair_exact(p, p, 3 * pi, 3 * pi, Evaluation::quadrature));
}
BENCHMARK(BM_TnExactQuadrature)->Unit(benchmark::kMillisecond);

void BM_TnKk(benchmark::State& state) {
  const auto p = paper_momentum();
  for (auto _ : state) benchmark::DoNotOptimize(tn_pair_kk(p, p, 3 * pi, 3 * pi));
}
BENCHMARK(BM_TnKk)->Unit(benchmark::kMicrosecond);

void BM_TnDirect(benchmark::State& state) {
  const auto p = paper_momentum();
  for (auto _ : state) benchmark::DoNotOptimize(tn_pair_exact_direct(p, p, 7.0, 5.5));
}
BENCHMARK(BM_TnDirect)->Unit(benchmark::kMillisecond)->Iterations(2);

void BM_WickFourPoint(benchmark::State& state) {
  const auto p = paper_momentum();
  std::vector<LinearOperator> ops(4, p);
  const double t[4] = {2.0, 5.0, 7.5, 9.0};
  for (auto _ : state) benchmark::DoNotOptimize(tn_multi_exact(ops, t));
}
BENCHMARK(BM_WickFourPoint)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
