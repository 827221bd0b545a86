#pragma once

#include <string>

#include "strata/term.hpp"

namespace strata {

enum class NfClass : std::uint8_t { No, Ne, Vr, NotNf };
std::string to_string(NfClass c);

// Grammar membership for S_k-normal forms; the most specific class wins
// (Vr before Ne before No). Throws std::invalid_argument on partial terms.
NfClass classify_nf(const Term& t, Calculus c, Level k);

// Partial S_k-normal forms: no ⊥ at depth <= k.
bool is_bno(const Term& t, Calculus c, Level k);

// Stratified equality up to level k (alpha-aware).
bool strat_eq(const Term& t, const Term& u, Calculus c, Level k);

}  // namespace strata
