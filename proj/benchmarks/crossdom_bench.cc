#include <functional>
#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "crossdom/divergence.h"
#include "crossdom/features.h"
#include "crossdom/penman.h"
#include "crossdom/smatch.h"
#include "crossdom/submetrics.h"
#include "crossdom/triples.h"

namespace crossdom {
namespace {

constexpr const char* kConcepts[] = {"want-01", "go-02", "boy", "girl",
                                     "city", "person", "say-01", "thing"};
constexpr const char* kRoles[] = {"ARG0", "ARG1", "ARG2", "mod", "location"};

// Random tree in PENMAN text with exactly `size` variables and a few
// reentrant :ARG1 edges.
std::string RandomPenman(std::mt19937_64& rng, int size) {
  std::uniform_int_distribution<int> pick_concept(0, std::size(kConcepts) - 1);
  std::uniform_int_distribution<int> pick_role(0, std::size(kRoles) - 1);
  std::bernoulli_distribution reentrant(0.2);
  std::vector<std::vector<int>> children(size);
  for (int v = 1; v < size; ++v) {
    children[std::uniform_int_distribution<int>(0, v - 1)(rng)].push_back(v);
  }
  std::string text;
  std::function<void(int)> node = [&](int v) {
    text += "(v" + std::to_string(v) + " / " + kConcepts[pick_concept(rng)];
    for (int child : children[v]) {
      text += " :";
      text += kRoles[pick_role(rng)];
      text += ' ';
      node(child);
    }
    if (v > 1 && reentrant(rng)) text += " :ARG1 v" + std::to_string(v / 2);
    text += ')';
  };
  node(0);
  return text;
}

void BM_ParseGraph(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const std::string text = RandomPenman(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ParseGraph(text));
  state.SetBytesProcessed(state.iterations() * text.size());
}
BENCHMARK(BM_ParseGraph)->Arg(8)->Arg(32)->Arg(128);

void BM_SmatchHillClimbing(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const int size = static_cast<int>(state.range(0));
  const TripleSet pred = ToTriples(ParseGraph(RandomPenman(rng, size)));
  const TripleSet gold = ToTriples(ParseGraph(RandomPenman(rng, size)));
  for (auto _ : state) benchmark::DoNotOptimize(SmatchScore(pred, gold));
}
BENCHMARK(BM_SmatchHillClimbing)->Arg(8)->Arg(20)->Arg(50);

void BM_SmatchExact(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const int size = static_cast<int>(state.range(0));
  const TripleSet pred = ToTriples(ParseGraph(RandomPenman(rng, size)));
  const TripleSet gold = ToTriples(ParseGraph(RandomPenman(rng, size)));
  for (auto _ : state) benchmark::DoNotOptimize(SmatchExact(pred, gold));
}
BENCHMARK(BM_SmatchExact)->Arg(4)->Arg(6);

void BM_FineGrainedCorpus(benchmark::State& state) {
  std::mt19937_64 rng(4);
  Corpus pred;
  Corpus gold;
  for (int i = 0; i < 100; ++i) {
    pred.entries.push_back({.graph = ParseGraph(RandomPenman(rng, 12))});
    gold.entries.push_back({.graph = ParseGraph(RandomPenman(rng, 12))});
  }
  CorpusScoreOptions options;
  options.threads = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(FineGrained(pred, gold, kAllSubMetrics, options));
  }
}
BENCHMARK(BM_FineGrainedCorpus)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_JsDivergence(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> word(0, static_cast<int>(state.range(0)));
  FeatureDistribution p(FeatureKind::kUnigram);
  FeatureDistribution q(FeatureKind::kUnigram);
  for (int i = 0; i < 20 * state.range(0); ++i) {
    p.Add("w" + std::to_string(word(rng)));
    q.Add("w" + std::to_string(word(rng) / 2));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(Js(p, q));
    benchmark::DoNotOptimize(OovRate(p, q));
  }
}
BENCHMARK(BM_JsDivergence)->Arg(1000)->Arg(50000);

}  // namespace
}  // namespace crossdom

BENCHMARK_MAIN();
