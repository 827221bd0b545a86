#pragma once

#include <random>
#include <vector>

#include "strata/enumerate.hpp"
#include "strata/term.hpp"

namespace testing_support {

inline strata::Term P(std::string_view s) { return strata::parse(s); }

inline std::vector<strata::Term> random_corpus(std::uint64_t seed, std::size_t n, std::size_t max_size = 10) {
  std::mt19937_64 rng(seed);
  strata::RandomTermConfig cfg;
  cfg.max_size = max_size;
  std::vector<strata::Term> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(strata::random_term(rng, cfg));
  return out;
}

// Random partial term: replaces random subterms of t by ⊥.
inline strata::Term random_coarsening(const strata::Term& t, std::mt19937_64& rng, double rate = 0.2) {
  using strata::Kind;
  using strata::Term;
  if (std::bernoulli_distribution(rate)(rng)) return Term::bot();
  switch (t.kind()) {
    case Kind::Abs: return Term::abs(t.name(), random_coarsening(t.body(), rng, rate));
    case Kind::App: {
      Term f = random_coarsening(t.fun(), rng, rate);
      return Term::app(f, random_coarsening(t.arg(), rng, rate));
    }
    case Kind::Es: {
      Term b = random_coarsening(t.body(), rng, rate);
      return Term::es(b, t.name(), random_coarsening(t.arg(), rng, rate));
    }
    default: return t;
  }
}

}  // namespace testing_support
