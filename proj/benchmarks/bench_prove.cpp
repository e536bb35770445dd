#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "lck/corpus.hpp"
#include "lck/engine.hpp"
#include "lck/model.hpp"
#include "lck/parser.hpp"

namespace {

using namespace lck;

const ObservationStructure& desk_two_cards() {
  static const ObservationStructure structure = ObservationStructure::from_json_text(R"({
    "agents": ["a", "b"],
    "observations": {"a": ["oa"], "b": ["ob1", "ob2"]},
    "results": ["0", "1"],
    "compose": "max"
  })");
  return structure;
}

Sequent goal(const std::string& text) {
  Sequent seq;
  seq.add_succedent({"s", parse_formula(text, desk_two_cards())});
  return seq;
}

void BM_ProveDistribution(benchmark::State& state) {
  const Sequent seq = goal("K{a} (p -> q) -> K{a} p -> K{a} q");
  for (auto _ : state) benchmark::DoNotOptimize(prove(seq, desk_two_cards()).provable);
}
BENCHMARK(BM_ProveDistribution);

void BM_ProveObservationLaw(benchmark::State& state) {
  const Sequent seq = goal("obs{a,b}(oa,ob1)^0 | obs{a,b}(oa,ob1)^1");
  for (auto _ : state) benchmark::DoNotOptimize(prove(seq, desk_two_cards()).provable);
}
BENCHMARK(BM_ProveObservationLaw);

void BM_ProveNonTheorem(benchmark::State& state) {
  const Sequent seq = goal("p -> K{a} p");
  for (auto _ : state) benchmark::DoNotOptimize(prove(seq, desk_two_cards()).provable);
}
BENCHMARK(BM_ProveNonTheorem);

void BM_ProveNestedKnowledge(benchmark::State& state) {
  const Sequent seq = goal("K{a} K{b} p -> K{a} K{b} p & K{a} K{b} p");
  for (auto _ : state) benchmark::DoNotOptimize(prove(seq, desk_two_cards()).provable);
}
BENCHMARK(BM_ProveNestedKnowledge);

void BM_ProveCorpus(benchmark::State& state) {
  const auto entries = hilbert_corpus(desk_two_cards());
  for (auto _ : state) {
    std::size_t proved = 0;
    for (const auto& entry : entries) {
      Sequent seq;
      seq.add_succedent({"s", entry.formula});
      if (prove(seq, desk_two_cards()).provable) ++proved;
    }
    benchmark::DoNotOptimize(proved);
  }
}
BENCHMARK(BM_ProveCorpus)->Unit(benchmark::kMillisecond);

void BM_OracleValidity(benchmark::State& state) {
  const FormulaPtr f =
      parse_formula("K{a} (p -> q) -> K{a} p -> K{a} q", desk_two_cards());
  const std::vector<std::string> atoms{"p", "q"};
  for (auto _ : state)
    benchmark::DoNotOptimize(check_validity(f, desk_two_cards(), atoms));
}
BENCHMARK(BM_OracleValidity)->Unit(benchmark::kMillisecond);

void BM_EnumerateModels(benchmark::State& state) {
  const std::vector<std::string> atoms{"p"};
  for (auto _ : state) {
    ModelEnumerator models(desk_two_cards(), atoms);
    std::uint64_t n = 0;
    while (models.next()) ++n;
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_EnumerateModels);

}  // namespace

BENCHMARK_MAIN();
