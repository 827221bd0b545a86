#include <benchmark/benchmark.h>

#include <random>

#include "strata/enumerate.hpp"
#include "strata/sweep.hpp"

using namespace strata;

namespace {

const std::vector<Level> kLevels{Level::fin(0), Level::fin(1), Level::fin(2), Level::fin(3), Level::omega()};

const std::vector<Term>& exhaustive() {
  static const auto ts = enumerate_terms(6, {"x", "y"});
  return ts;
}

const std::vector<Term>& random_terms() {
  static const auto ts = [] {
    std::mt19937_64 rng(1);
    std::vector<Term> out;
    for (int i = 0; i < 500; ++i) out.push_back(random_term(rng));
    return out;
  }();
  return ts;
}

template <bool Par>
void BM_grammar(benchmark::State& st) {
  for (auto _ : st) {
    auto r = Par ? parallel::grammar_agreement(exhaustive(), Calculus::CbV, kLevels)
                 : serial::grammar_agreement(exhaustive(), Calculus::CbV, kLevels);
    benchmark::DoNotOptimize(r.checked);
  }
}

template <bool Par>
void BM_diamond(benchmark::State& st) {
  for (auto _ : st) {
    auto r = Par ? parallel::diamond(exhaustive(), Calculus::CbN) : serial::diamond(exhaustive(), Calculus::CbN);
    benchmark::DoNotOptimize(r.peaks);
  }
}

template <bool Par>
void BM_axioms(benchmark::State& st) {
  for (auto _ : st) {
    Oracle o(Calculus::CbV, 2000);  // fresh memo per iteration
    auto r = Par ? parallel::axiom_campaign(random_terms(), o, 1) : serial::axiom_campaign(random_terms(), o, 1);
    benchmark::DoNotOptimize(r.terms);
  }
}

}  // namespace

BENCHMARK(BM_grammar<false>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_grammar<true>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_diamond<false>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_diamond<true>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_axioms<false>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_axioms<true>)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
