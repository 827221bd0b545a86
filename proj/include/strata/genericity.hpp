#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "strata/approximation.hpp"
#include "strata/normal_forms.hpp"

namespace strata {

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// {x, Id, Δ, λx.Ω, y z}
std::vector<Term> default_probes();

struct SurfaceReport {
  Context context;
  Term hole_term;
  Meaning plugged_status = Meaning::Unknown;
  std::vector<Term> probes;
  std::vector<Meaning> probe_status;
  // True when C<t> is meaningful, i.e. the claim is not vacuous.
  bool hypothesis = false;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

SurfaceReport surface_genericity_check(const Context& c, const Term& t, const std::vector<Term>& probes,
                                       const Oracle& o);

struct ProbeOutcome {
  Term probe;
  Term plugged;
  bool approximant_below = false;  // A(C<t>) ⊑ C<u>
  std::vector<Step> lifted;        // exactly i steps
  std::optional<Term> normal_form;
  NfClass nf_class = NfClass::NotNf;
  bool eq_hole_nf = false;  // ≡_k with the lifted normal form of C<t>
};

struct GenericityReport {
  Context context;
  Term hole_term;
  Calculus calculus = Calculus::CbV;
  Level level = Level::omega();
  Term approximant;               // A(C<t>)
  Trace trace;                    // default-strategy normalisation of C<t>
  std::vector<Step> partial_steps;  // a ->^i ŝ
  Term skeleton;                  // ŝ
  bool skeleton_bno = false;
  std::vector<Step> lifted;       // C<t> ->^i t'
  std::optional<Term> normal_form;  // t'
  NfClass nf_class = NfClass::NotNf;
  bool nf_eq_skeleton = false;
  std::vector<ProbeOutcome> probes;
  std::vector<std::string> failures;

  std::size_t steps() const { return partial_steps.size(); }
  bool ok() const { return failures.empty(); }
};

GenericityReport stratified_genericity_check(const Context& c, const Term& t, const std::vector<Term>& probes,
                                             Level k, const Oracle& o);

// Assumption campaigns ---------------------------------------------------------

enum class Axiom : std::uint8_t {
  DynamicApproximation = 1,
  DynamicLift = 2,
  NormalFormObservability = 3,
  StableObservables = 4,
};
std::string to_string(Axiom a);

struct AxiomFailure {
  Axiom axiom;
  nlohmann::json certificate;
  std::string message;
};

struct AxiomTally {
  std::size_t instances = 0;
  std::size_t passes = 0;
  std::vector<AxiomFailure> failures;
};

struct AxiomReport {
  Calculus calculus = Calculus::CbV;
  std::size_t terms = 0;
  std::size_t skipped = 0;  // undetermined terms
  AxiomTally tally[4];

  const AxiomTally& of(Axiom a) const { return tally[static_cast<int>(a) - 1]; }
  AxiomTally& of(Axiom a) { return tally[static_cast<int>(a) - 1]; }
  std::size_t failures() const;
  bool ok() const { return failures() == 0; }
  void merge(const AxiomReport& o);
};

// All instances of the four assumptions rooted at one term. Refinements are
// drawn from a generator seeded with seed.
AxiomReport check_axioms_on(const Term& t, const Oracle& o, std::uint64_t seed);
// Re-run the single instance described by a certificate; true when the
// violation reproduces.
bool replay_certificate(const nlohmann::json& certificate, std::size_t fuel = default_fuel());

AxiomReport axiom_suite(Calculus c, const std::vector<Term>& corpus, std::size_t fuel = default_fuel(),
                        std::uint64_t seed = 1);

nlohmann::json to_json(const GenericityReport& r);
nlohmann::json to_json(const SurfaceReport& r);
nlohmann::json to_json(const AxiomReport& r);

}  // namespace strata
