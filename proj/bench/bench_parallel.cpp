#include <benchmark/benchmark.h>

#include <memory>

#include "confball/models.hpp"
#include "confball/procedure.hpp"
#include "confball/radii.hpp"
#include "confball/sim.hpp"

namespace cb = confball;

namespace {

cb::Exec exec_of(const benchmark::State& state) { return state.range(0) ? cb::Exec::parallel : cb::Exec::serial; }

void BM_Supremum(benchmark::State& state) {
  const cb::Exec exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(cb::objective_supremum(33, 967, 0.2, 0.00625, 1.0, exec));
}
BENCHMARK(BM_Supremum)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_IntervalRadius(benchmark::State& state) {
  const cb::Exec exec = exec_of(state);
  const cb::RadiusInputs in{17, 983, 0.2, 0.0125, cb::VarianceSpec::interval(1.0, 0.05)};
  for (auto _ : state) benchmark::DoNotOptimize(cb::rho_sq_interval(in, false, exec));
}
BENCHMARK(BM_IntervalRadius)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_RadiusTable(benchmark::State& state) {
  const cb::Exec exec = exec_of(state);
  auto family = std::make_shared<const cb::ModelFamily>(cb::fourier_family(1000, 8, 0.1));
  for (auto _ : state) benchmark::DoNotOptimize(cb::ConfidenceProcedure(family, 0.2, cb::VarianceSpec::known(1.0), exec));
}
BENCHMARK(BM_RadiusTable)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_Coverage(benchmark::State& state) {
  const cb::Exec exec = exec_of(state);
  auto family = std::make_shared<const cb::ModelFamily>(cb::fourier_family(1000, 8, 0.1));
  const cb::ConfidenceProcedure proc(family, 0.2, cb::VarianceSpec::known(1.0));
  const Eigen::VectorXd f = cb::test_function(cb::TestFunction::F2, 1000);
  for (auto _ : state) benchmark::DoNotOptimize(cb::coverage_mc(f, proc, 200, 1, 1.0, exec));
}
BENCHMARK(BM_Coverage)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
