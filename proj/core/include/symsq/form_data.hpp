#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symsq/dirichlet.hpp"
#include "symsq/residue_field.hpp"

// Residual eigenform data and the analysis context.  Everything here is
// user-supplied desk data: a label, weight, level, nebentypus, a residue
// field, a table of reduced Hecke eigenvalues, and assertions the tool
// records but cannot verify.

namespace symsq {

struct FormAssertions {
  bool ordinary_at_P = false;
  bool a_p_equals_zero = false;
  bool residual_irreducible = false;
  bool not_CM = false;
  bool inv_hypothesis = false;
  bool torsion_hypothesis = false;
};

class NewformResidualData {
 public:
  NewformResidualData(std::string label, int weight, std::int64_t level,
                      std::int64_t neben_conductor, CharacterSpec neben_spec, std::int64_t p,
                      ResidueField field, std::map<std::int64_t, FieldElement> eigenvalues,
                      FormAssertions assertions);

  // Parses a form document (UTF-8 JSON, // comments allowed).
  static NewformResidualData load(const std::string& json_text);
  static NewformResidualData load_file(const std::string& path);

  const std::string& label() const { return label_; }
  int weight() const { return weight_; }
  std::int64_t level() const { return level_; }
  std::int64_t neben_conductor() const { return neben_conductor_; }
  const CharacterSpec& neben_spec() const { return neben_spec_; }
  const ResidualCharacter& nebentypus() const { return neben_; }
  std::int64_t p() const { return p_; }
  const ResidueField& field() const { return field_; }
  const std::map<std::int64_t, FieldElement>& eigenvalues() const { return eigenvalues_; }
  std::optional<FieldElement> eigenvalue(std::int64_t ell) const;
  const FormAssertions& assertions() const { return assertions_; }

 private:
  std::string label_;
  int weight_;
  std::int64_t level_;
  std::int64_t neben_conductor_;
  CharacterSpec neben_spec_;
  std::int64_t p_;
  ResidueField field_;
  ResidualCharacter neben_;
  std::map<std::int64_t, FieldElement> eigenvalues_;
  FormAssertions assertions_;
};

enum class Mode { ordinary, signed_mode };

std::string mode_name(Mode mode);

struct ContextAssertions {
  std::optional<bool> mu_invariants_vanish;
  std::optional<bool> psi_satisfies_torsion_hypothesis;
};

// Raw context document: the twist character, the mode, an optional explicit
// prime set and assertion flags.  Materialized against a form's field.
struct ContextDocument {
  CharacterSpec psi = CharacterSpec::trivial();
  Mode mode = Mode::ordinary;
  std::optional<std::set<std::int64_t>> sigma0;
  ContextAssertions assertions;

  static ContextDocument load(const std::string& json_text);
  static ContextDocument load_file(const std::string& path);
};

class AnalysisContext {
 public:
  AnalysisContext(const ContextDocument& doc, const ResidueField& field);

  const CharacterSpec& psi_spec() const { return psi_spec_; }
  const ResidualCharacter& psi() const { return psi_; }
  Mode mode() const { return mode_; }
  const std::optional<std::set<std::int64_t>>& explicit_sigma0() const { return sigma0_; }
  const ContextAssertions& assertions() const { return assertions_; }

  // Evenness of the twist character: characteristic-zero value when the spec
  // carries roots of unity, declared parity or the residual value otherwise.
  bool psi_is_even() const;

 private:
  CharacterSpec psi_spec_;
  ResidualCharacter psi_;
  Mode mode_;
  std::optional<std::set<std::int64_t>> sigma0_;
  ContextAssertions assertions_;
};

// floor(k/12 * [SL_2(Z) : Gamma_0(lcm(N1, N2))]), exact integer arithmetic.
std::int64_t sturm_bound(int weight, std::int64_t level1, std::int64_t level2);

// The default prime set: primes dividing the levels or the twist conductor,
// excluding p.  With enforce_superset, an explicit override must contain it.
std::set<std::int64_t> resolve_sigma0(const AnalysisContext& ctx,
                                      const std::vector<const NewformResidualData*>& forms,
                                      bool enforce_superset);

enum class CongruenceStatus { certified, consistent, refuted };

std::string congruence_status_name(CongruenceStatus s);

struct PrimeComparison {
  std::int64_t ell = 0;
  bool matched = false;
  std::vector<std::int64_t> value1;  // coordinates
  std::vector<std::int64_t> value2;
};

// Primes dividing exactly one level: reported separately, never a refutation.
struct MixedLevelPrime {
  std::int64_t ell = 0;
  std::optional<std::vector<std::int64_t>> value1;
  std::optional<std::vector<std::int64_t>> value2;
};

struct CongruenceReport {
  std::int64_t bound = 0;
  CongruenceStatus status = CongruenceStatus::consistent;
  std::vector<PrimeComparison> compared;     // both supplied, both levels or neither
  std::vector<std::int64_t> missing;         // comparable primes <= bound lacking a value
  std::vector<MixedLevelPrime> mixed_level;  // primes dividing exactly one level
};

// Eigenvalue agreement up to the Sturm bound.  Symmetric and reflexive;
// requires matching weight, p and field.
CongruenceReport check_residual_congruence(const NewformResidualData& f1,
                                           const NewformResidualData& f2);

enum class LevelShape { steinberg, principal_series, unsupported };

std::string level_shape_name(LevelShape s);

struct LevelPrimeCheck {
  std::int64_t ell = 0;
  bool eigenvalue_nonzero = false;
  LevelShape shape = LevelShape::unsupported;
};

struct HypothesisChecklist {
  std::vector<LevelPrimeCheck> level_primes;
  bool hyp_holds = false;  // every a_ell nonzero and every shape supported
  bool psi_even = false;
  FormAssertions assertions;  // echoed, never verified
  ContextAssertions context_assertions;
};

// (Hyp) plus level-shape classification per prime dividing N, twist parity,
// and the user assertions echoed.  Throws when an eigenvalue at a level
// prime is missing.
HypothesisChecklist check_hypotheses(const NewformResidualData& f, const AnalysisContext& ctx);

}  // namespace symsq
