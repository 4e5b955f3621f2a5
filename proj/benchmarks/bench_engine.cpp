#include <benchmark/benchmark.h>

#include "cellgames/constructions.hpp"
#include "cellgames/decide.hpp"
#include "cellgames/engine.hpp"
#include "cellgames/formula.hpp"
#include "cellgames/game.hpp"

namespace {

using namespace cellgames;

static void BM_RelationBuildGn3(benchmark::State& state) {
  games::FiniteCellularGame game = games::build_game(games::GameSpec::gn(3));
  for (auto _ : state) {
    auto rel = engine::TransferRelation::build(game);
    benchmark::DoNotOptimize(rel.contains(0, 0, 0));
  }
}
BENCHMARK(BM_RelationBuildGn3)->Unit(benchmark::kMillisecond);

static void BM_FullAnalysisGn3(benchmark::State& state) {
  games::FiniteCellularGame game = games::build_game(games::GameSpec::gn(3));
  for (auto _ : state) {
    engine::Analysis a(game);
    benchmark::DoNotOptimize(a.realizable().size());
  }
}
BENCHMARK(BM_FullAnalysisGn3)->Unit(benchmark::kMillisecond);

static void BM_InterchangeGn3(benchmark::State& state) {
  engine::Analysis a(games::build_game(games::GameSpec::gn(3)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(a.interchangeable(0, state.range(0)));
  }
}
BENCHMARK(BM_InterchangeGn3)->Arg(3)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_Decide(benchmark::State& state) {
  // valid formula: every one of the 2^k assignments gets evaluated
  std::string text;
  for (int i = 1; i <= state.range(0); ++i) {
    if (i > 1) text += " & ";
    text += "0||" + std::to_string(i);
  }
  text = "(" + text + ") -> 0||1";
  logic::FormulaPtr f = logic::parse_formula(text);
  for (auto _ : state) {
    benchmark::DoNotOptimize(logic::decide(f).valid);
  }
}
BENCHMARK(BM_Decide)->Arg(8)->Arg(14)->Unit(benchmark::kMicrosecond);

static void BM_GnWitness(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto f = constructions::f_profile(n);
  auto g = constructions::g_profile(n);
  for (auto _ : state) {
    auto e = constructions::gn_witness(n, f, g, 0, 2 * n + 1);
    benchmark::DoNotOptimize(e.mid.size());
  }
}
BENCHMARK(BM_GnWitness)->Arg(3)->Arg(8)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
