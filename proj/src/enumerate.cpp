#include "strata/enumerate.hpp"

namespace strata {

std::vector<Term> enumerate_terms(std::size_t max_size, const std::vector<std::string>& names) {
  // by_size[n] holds every term of size exactly n.
  std::vector<std::vector<Term>> by_size(max_size + 1);
  if (max_size >= 1)
    for (const auto& x : names) by_size[1].push_back(Term::var(x));
  for (std::size_t n = 2; n <= max_size; ++n) {
    auto& out = by_size[n];
    for (const auto& x : names)
      for (const auto& b : by_size[n - 1]) out.push_back(Term::abs(x, b));
    for (std::size_t a = 1; a + 1 < n; ++a) {
      const std::size_t b = n - 1 - a;
      for (const auto& f : by_size[a])
        for (const auto& g : by_size[b]) out.push_back(Term::app(f, g));
    }
    for (std::size_t a = 1; a + 1 < n; ++a) {
      const std::size_t b = n - 1 - a;
      for (const auto& x : names)
        for (const auto& body : by_size[a])
          for (const auto& arg : by_size[b]) out.push_back(Term::es(body, x, arg));
    }
  }
  std::vector<Term> all;
  for (auto& v : by_size) all.insert(all.end(), v.begin(), v.end());
  return all;
}

namespace {

const std::vector<Term>& combinators() {
  static const std::vector<Term> cs = {
      terms::id(),
      terms::delta(),
      terms::omega(),
      parse("\\x.\\y.x"),
      parse("\\y.\\x.x"),
      parse("\\x.(\\x.x x) (\\x.x x)"),
  };
  return cs;
}

class Gen {
 public:
  Gen(std::mt19937_64& rng, const RandomTermConfig& cfg) : rng_(rng), cfg_(cfg) {}

  Term term(std::size_t budget) {
    if (budget <= 1 || coin(0.12)) return leaf();
    if (budget >= 3 && coin(cfg_.es_rate)) {
      auto [a, b] = split(budget - 1);
      return Term::es(term(a), name(), term(b));
    }
    if (coin(0.4)) return Term::abs(name(), term(budget - 1));
    if (budget < 3) return leaf();
    auto [a, b] = split(budget - 1);
    return Term::app(term(a), term(b));
  }

  Term leaf() {
    if (coin(cfg_.combinator_rate)) {
      const auto& cs = combinators();
      return cs[pick(cs.size())];
    }
    return Term::var(name());
  }

 private:
  bool coin(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p; }
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  const std::string& name() { return cfg_.names[pick(cfg_.names.size())]; }
  std::pair<std::size_t, std::size_t> split(std::size_t n) {
    std::size_t a = 1 + pick(n - 1);
    return {a, n - a};
  }

  std::mt19937_64& rng_;
  const RandomTermConfig& cfg_;
};

}  // namespace

Term random_term(std::mt19937_64& rng, const RandomTermConfig& cfg) {
  Gen g(rng, cfg);
  const std::size_t budget = 1 + std::uniform_int_distribution<std::size_t>(0, cfg.max_size - 1)(rng);
  return g.term(budget);
}

Term random_refinement(const Term& partial, std::mt19937_64& rng, const RandomTermConfig& cfg) {
  if (!partial.contains_bot()) return partial;
  switch (partial.kind()) {
    case Kind::Bot: return random_term(rng, cfg);
    case Kind::Var: return partial;
    case Kind::Abs: return Term::abs(partial.name(), random_refinement(partial.body(), rng, cfg));
    case Kind::App: {
      Term f = random_refinement(partial.fun(), rng, cfg);
      return Term::app(std::move(f), random_refinement(partial.arg(), rng, cfg));
    }
    case Kind::Es: {
      Term b = random_refinement(partial.body(), rng, cfg);
      return Term::es(std::move(b), partial.name(), random_refinement(partial.arg(), rng, cfg));
    }
  }
  return partial;
}

}  // namespace strata
