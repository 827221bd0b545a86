#pragma once

// Corpus sweeps. Each kernel exists twice: `serial` is the reference,
// `parallel` distributes items over OpenMP threads and merges results in
// item order, so both return identical values.

#include <optional>
#include <vector>

#include "strata/genericity.hpp"
#include "strata/normal_forms.hpp"
#include "strata/reduction.hpp"

namespace strata {

struct GrammarDiscrepancy {
  Term term;
  Level level;
  NfClass nf_class;
  std::size_t redexes;
};

struct GrammarSweep {
  std::size_t checked = 0;  // (term, level) pairs
  std::vector<GrammarDiscrepancy> discrepancies;
};

struct DiamondFailure {
  Term term;
  Step left;
  Step right;
};

struct DiamondSweep {
  std::size_t peaks = 0;  // unordered pairs of distinct one-step reducts
  std::vector<DiamondFailure> failures;
};

// Reducts reachable in zero or one level-0 step join.
bool joins_in_one_step(const Term& a, const Term& b, Calculus c);

#define STRATA_SWEEP_KERNELS                                                                                     \
  GrammarSweep grammar_agreement(const std::vector<Term>& terms, Calculus c, const std::vector<Level>& levels);  \
  DiamondSweep diamond(const std::vector<Term>& terms, Calculus c);                                              \
  AxiomReport axiom_campaign(const std::vector<Term>& terms, const Oracle& o, std::uint64_t seed);               \
  std::vector<Meaning> statuses(const std::vector<Term>& terms, const Oracle& o);                                \
  /* Index of the first context whose plugged statuses are decided and differ. */                                \
  std::optional<std::size_t> first_distinguishing(const std::vector<Context>& contexts, const Term& t,          \
                                                  const Term& u, const Oracle& o);

namespace serial {
STRATA_SWEEP_KERNELS
}
namespace parallel {
STRATA_SWEEP_KERNELS
}

#undef STRATA_SWEEP_KERNELS

}  // namespace strata
