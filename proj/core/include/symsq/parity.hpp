#ifndef SYMSQ_PARITY_HPP
#define SYMSQ_PARITY_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symsq/form_data.hpp"
#include "symsq/local_factor.hpp"

namespace symsq {

// Number of primes of the cyclotomic Z_p-extension lying over ell:
// p^m with m = v_p(ell^{p-1} - 1) - 1.  Always a power of p.
std::int64_t splitting_number(std::int64_t p, std::int64_t ell);

struct PrimeReport {
  std::int64_t ell = 0;
  LevelClass classification = LevelClass::good;
  MultiplicityResult result;
  std::int64_t s = 1;      // splitting number
  std::int64_t delta = 0;  // s * d
  bool in_S = false;       // d odd
};

// One report per prime of sigma0; errors from compute_d propagate.
std::vector<PrimeReport> build_prime_reports(const NewformResidualData& f,
                                             const ResidualCharacter& psi,
                                             const std::set<std::int64_t>& sigma0);

// Primes whose multiplicity is odd.
std::set<std::int64_t> s_set(const std::vector<PrimeReport>& reports);

// Sum of the delta contributions; congruent to |s_set| mod 2.
std::int64_t imprimitive_correction(const std::vector<PrimeReport>& reports);

enum class Verdict { consistent, inconsistent, conditional };
std::string verdict_name(Verdict v);

struct ForcedParity {
  int side = 0;    // 1 or 2: whose lambda-parity is forced
  int parity = 0;  // 0 even, 1 odd
};

struct ParityLedger {
  std::string label_1, label_2;
  Mode mode = Mode::ordinary;
  CongruenceReport congruence;
  HypothesisChecklist hyp_1, hyp_2;
  std::set<std::int64_t> sigma0;
  std::vector<PrimeReport> reports_1, reports_2;
  std::set<std::int64_t> S_1, S_2;
  std::int64_t correction_1 = 0, correction_2 = 0;
  std::optional<std::int64_t> lambda_1, lambda_2;
  ContextAssertions mu_assertions;
  std::string theorem_relation;
  Verdict verdict = Verdict::conditional;
  std::optional<ForcedParity> forced;
  std::vector<std::string> warnings;
};

// Runs the congruence and hypothesis gates, builds both sides over the
// resolved sigma0, and renders the parity verdict.  The verdict is
// conditional unless both lambdas are supplied and mu-vanishing is asserted.
ParityLedger compare_pair(const NewformResidualData& f1, const NewformResidualData& f2,
                          const AnalysisContext& ctx, std::optional<std::int64_t> lambda1,
                          std::optional<std::int64_t> lambda2);

}  // namespace symsq

#endif  // SYMSQ_PARITY_HPP
