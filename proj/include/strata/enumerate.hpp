#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "strata/term.hpp"

namespace strata {

// Every ⊥-free term with at most max_size constructors whose variables and
// binders are drawn from names.
std::vector<Term> enumerate_terms(std::size_t max_size, const std::vector<std::string>& names);

struct RandomTermConfig {
  std::size_t max_size = 10;
  std::vector<std::string> names{"x", "y", "z"};
  // Probability of dropping a closed combinator (Id, Δ, Ω, ...) as a leaf.
  double combinator_rate = 0.25;
  double es_rate = 0.2;
};

Term random_term(std::mt19937_64& rng, const RandomTermConfig& cfg = {});

// Replace each ⊥ by a random term.
Term random_refinement(const Term& partial, std::mt19937_64& rng, const RandomTermConfig& cfg = {});

}  // namespace strata
