#include "strata/sweep.hpp"

#include <exception>
#include <unordered_set>

namespace strata {

namespace {

template <bool Par, class R, class F>
std::vector<R> map_items(std::size_t n, F&& f) {
  std::vector<R> out(n);
  if constexpr (Par) {
    std::exception_ptr err;
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      try {
        out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(strata_sweep_error)
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
  }
  return out;
}

std::unordered_set<std::string> reducts_or_self(const Term& t, Calculus c) {
  std::unordered_set<std::string> keys{canonical_key(t)};
  for (const auto& occ : find_redexes(t, c, Level::fin(0))) keys.insert(canonical_key(apply_step(t, occ)));
  return keys;
}

template <bool Par>
GrammarSweep grammar_agreement_impl(const std::vector<Term>& terms, Calculus c, const std::vector<Level>& levels) {
  auto per = map_items<Par, std::vector<GrammarDiscrepancy>>(terms.size(), [&](std::size_t i) {
    std::vector<GrammarDiscrepancy> bad;
    for (Level k : levels) {
      const NfClass cls = classify_nf(terms[i], c, k);
      const std::size_t n = find_redexes(terms[i], c, k).size();
      if ((cls != NfClass::NotNf) != (n == 0)) bad.push_back({terms[i], k, cls, n});
    }
    return bad;
  });
  GrammarSweep r;
  r.checked = terms.size() * levels.size();
  for (auto& v : per) r.discrepancies.insert(r.discrepancies.end(), v.begin(), v.end());
  return r;
}

struct DiamondItem {
  std::size_t peaks = 0;
  std::vector<DiamondFailure> failures;
};

template <bool Par>
DiamondSweep diamond_impl(const std::vector<Term>& terms, Calculus c) {
  auto per = map_items<Par, DiamondItem>(terms.size(), [&](std::size_t i) {
    DiamondItem it;
    const Term& t = terms[i];
    std::vector<Step> steps;
    for (const auto& occ : find_redexes(t, c, Level::fin(0))) steps.push_back(make_step(t, occ, c));
    for (std::size_t a = 0; a < steps.size(); ++a)
      for (std::size_t b = a + 1; b < steps.size(); ++b) {
        if (alpha_eq(steps[a].after, steps[b].after)) continue;
        ++it.peaks;
        if (!joins_in_one_step(steps[a].after, steps[b].after, c)) it.failures.push_back({t, steps[a], steps[b]});
      }
    return it;
  });
  DiamondSweep r;
  for (auto& it : per) {
    r.peaks += it.peaks;
    r.failures.insert(r.failures.end(), it.failures.begin(), it.failures.end());
  }
  return r;
}

template <bool Par>
AxiomReport axiom_campaign_impl(const std::vector<Term>& terms, const Oracle& o, std::uint64_t seed) {
  auto per = map_items<Par, AxiomReport>(
      terms.size(), [&](std::size_t i) { return check_axioms_on(terms[i], o, seed * 1000003u + i); });
  AxiomReport r;
  r.calculus = o.calculus();
  for (const auto& x : per) r.merge(x);
  return r;
}

template <bool Par>
std::vector<Meaning> statuses_impl(const std::vector<Term>& terms, const Oracle& o) {
  return map_items<Par, Meaning>(terms.size(), [&](std::size_t i) { return o.classify(terms[i]); });
}

template <bool Par>
std::optional<std::size_t> first_distinguishing_impl(const std::vector<Context>& contexts, const Term& t,
                                                     const Term& u, const Oracle& o) {
  auto hits = map_items<Par, char>(contexts.size(), [&](std::size_t i) -> char {
    const Meaning a = o.classify(contexts[i].plug(t));
    if (a == Meaning::Unknown) return 0;
    const Meaning b = o.classify(contexts[i].plug(u));
    return b != Meaning::Unknown && a != b;
  });
  for (std::size_t i = 0; i < hits.size(); ++i)
    if (hits[i]) return i;
  return std::nullopt;
}

}  // namespace

bool joins_in_one_step(const Term& a, const Term& b, Calculus c) {
  auto ka = reducts_or_self(a, c);
  for (const auto& k : reducts_or_self(b, c))
    if (ka.count(k)) return true;
  return false;
}

#define STRATA_DEFINE_KERNELS(NS, PAR)                                                                         \
  namespace NS {                                                                                               \
  GrammarSweep grammar_agreement(const std::vector<Term>& terms, Calculus c, const std::vector<Level>& levels) { \
    return grammar_agreement_impl<PAR>(terms, c, levels);                                                      \
  }                                                                                                            \
  DiamondSweep diamond(const std::vector<Term>& terms, Calculus c) { return diamond_impl<PAR>(terms, c); }     \
  AxiomReport axiom_campaign(const std::vector<Term>& terms, const Oracle& o, std::uint64_t seed) {            \
    return axiom_campaign_impl<PAR>(terms, o, seed);                                                           \
  }                                                                                                            \
  std::vector<Meaning> statuses(const std::vector<Term>& terms, const Oracle& o) {                             \
    return statuses_impl<PAR>(terms, o);                                                                       \
  }                                                                                                            \
  std::optional<std::size_t> first_distinguishing(const std::vector<Context>& contexts, const Term& t,        \
                                                  const Term& u, const Oracle& o) {                            \
    return first_distinguishing_impl<PAR>(contexts, t, u, o);                                                  \
  }                                                                                                            \
  }

STRATA_DEFINE_KERNELS(serial, false)
STRATA_DEFINE_KERNELS(parallel, true)

#undef STRATA_DEFINE_KERNELS

}  // namespace strata
