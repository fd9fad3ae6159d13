#include <benchmark/benchmark.h>

#include <string>

#include "sawlab/decomposition.hpp"
#include "sawlab/grammar.hpp"
#include "sawlab/oracle.hpp"
#include "sawlab/series.hpp"
#include "sawlab/system.hpp"

using namespace sawlab;

namespace {

ConeTypeSystem system_named(const std::string& name) {
  return load_system(std::string(SAWLAB_CORPUS_DIR) + "/" + name + ".json");
}

void census(benchmark::State& state, const std::string& name, Execution exec) {
  const int n = static_cast<int>(state.range(0));
  const FiniteGraph ball = extract_ball(system_named(name), n);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_saws(ball, n, false, exec).counts);
}

void kleene(benchmark::State& state, const std::string& name, Execution exec) {
  const PolynomialSystem sys = weighted_system(build_config_cfg(system_named(name)));
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_truncated(sys, order, {}, exec).sweeps);
}

void newton(benchmark::State& state, const std::string& name) {
  const PolynomialSystem sys = weighted_system(build_config_cfg(system_named(name)));
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_newton(sys, order).sweeps);
}

}  // namespace

BENCHMARK_CAPTURE(census, ladder_serial, "ladder", Execution::Serial)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(census, ladder_parallel, "ladder", Execution::Parallel)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(census, prisms_serial, "paper-example", Execution::Serial)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(census, prisms_parallel, "paper-example", Execution::Parallel)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(kleene, prisms_serial, "paper-example", Execution::Serial)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(kleene, prisms_parallel, "paper-example", Execution::Parallel)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(kleene, ladder_serial, "ladder", Execution::Serial)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(kleene, ladder_parallel, "ladder", Execution::Parallel)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(newton, prisms, "paper-example")->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(newton, ladder, "ladder")->Arg(40)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
