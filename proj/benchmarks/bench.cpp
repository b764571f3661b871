#include <benchmark/benchmark.h>

#include "lratt/corpus.hpp"
#include "lratt/surface.hpp"
#include "lratt/reactive.hpp"

using namespace lratt;

namespace {

const std::filesystem::path kCorpus = LRATT_CORPUS_DIR;

TermPtr entry(const char* file, const char* decl) {
  LoadedProgram lp = loadCorpusProgram(kCorpus / file);
  return inlineDecl(lp.program, Name(decl));
}

void BM_TypecheckCorpus(benchmark::State& state) {
  std::vector<std::string> sources;
  for (const auto& e : std::filesystem::directory_iterator(kCorpus))
    if (e.path().extension() == ".lratt") sources.push_back(readFile(e.path()));
  for (auto _ : state)
    for (const auto& s : sources) benchmark::DoNotOptimize(checkProgram(loadProgram(s)));
}
BENCHMARK(BM_TypecheckCorpus)->Unit(benchmark::kMillisecond);

void BM_StreamSteps(benchmark::State& state, const char* file, const char* decl) {
  TermPtr t = entry(file, decl);
  auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(runStream(t, n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK_CAPTURE(BM_StreamSteps, nats, "nats.lratt", "nats")->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(BM_StreamSteps, alternating, "altstr.lratt", "alternating")->Arg(1000);

void BM_SchedulerSteps(benchmark::State& state) {
  TermPtr t = entry("scheduler.lratt", "sched");
  auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(runFair(t, n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SchedulerSteps)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_ReactiveSums(benchmark::State& state) {
  TermPtr t = entry("sums.lratt", "main");
  auto inputs = sampleInputs(ty::nat(), static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(runReactive(t, Driver::Stream, inputs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ReactiveSums)->Arg(1000);

void BM_TimerUntil(benchmark::State& state) {
  TermPtr timer = entry("timer.lratt", "timer");
  TermPtr t = tm::box(tm::app(tm::unbox(timer), tm::numeral(static_cast<std::uint64_t>(state.range(0)))));
  for (auto _ : state) benchmark::DoNotOptimize(runUntil(t, 100000));
}
BENCHMARK(BM_TimerUntil)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
