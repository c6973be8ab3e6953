#include "symsq/parity.hpp"

#include <algorithm>

#include "symsq/error.hpp"
#include "symsq/num_util.hpp"

namespace symsq {

std::int64_t splitting_number(std::int64_t p, std::int64_t ell) {
  if (p < 3 || !num::is_prime(p)) fail("splitting number: p must be an odd prime");
  if (ell < 2 || !num::is_prime(ell)) fail("splitting number: ell must be prime");
  if (ell == p) fail("splitting number: undefined at ell = p");
  // v = v_p(ell^{p-1} - 1), by raising the modulus until the power leaves 1.
  int v = 0;
  std::int64_t mod = 1;
  const std::int64_t cap = std::int64_t(1) << 62;
  while (true) {
    if (mod > cap / p) fail("splitting number: valuation exceeds the supported range");
    mod *= p;
    if (num::powmod(num::mod_nonneg(ell, mod), p - 1, mod) != 1) break;
    ++v;
  }
  if (v < 1) fail("internal: v_p(ell^(p-1) - 1) must be positive");
  return num::checked_pow(p, v - 1);
}

std::vector<PrimeReport> build_prime_reports(const NewformResidualData& f,
                                             const ResidualCharacter& psi,
                                             const std::set<std::int64_t>& sigma0) {
  std::vector<PrimeReport> out;
  out.reserve(sigma0.size());
  for (std::int64_t ell : sigma0) {
    PrimeReport r;
    r.ell = ell;
    r.classification = classify_prime(f, ell);
    r.result = compute_d(f, psi, ell);
    r.s = splitting_number(f.p(), ell);
    r.delta = r.s * r.result.d;
    r.in_S = (r.result.d % 2 == 1);
    if (r.delta % 2 != r.result.d % 2)
      fail("internal: the splitting number at " + std::to_string(ell) + " is even");
    out.push_back(std::move(r));
  }
  return out;
}

std::set<std::int64_t> s_set(const std::vector<PrimeReport>& reports) {
  std::set<std::int64_t> s;
  for (const auto& r : reports)
    if (r.in_S) s.insert(r.ell);
  return s;
}

std::int64_t imprimitive_correction(const std::vector<PrimeReport>& reports) {
  std::int64_t sum = 0;
  for (const auto& r : reports) sum += r.delta;
  return sum;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::consistent:
      return "consistent";
    case Verdict::inconsistent:
      return "inconsistent";
    case Verdict::conditional:
      return "conditional";
  }
  return "?";
}

namespace {

void require_hypotheses(const NewformResidualData& f, const HypothesisChecklist& hyp) {
  if (hyp.hyp_holds) return;
  for (const auto& c : hyp.level_primes) {
    if (!c.eigenvalue_nonzero)
      fail("form " + f.label() + ": eigenvalue at level prime " + std::to_string(c.ell) +
           " reduces to zero, violating the level-prime nonvanishing hypothesis");
    if (c.shape == LevelShape::unsupported)
      fail("form " + f.label() + ": level prime " + std::to_string(c.ell) +
           " matches no supported reduction type");
  }
  fail("form " + f.label() + ": hypothesis failure");
}

}  // namespace

ParityLedger compare_pair(const NewformResidualData& f1, const NewformResidualData& f2,
                          const AnalysisContext& ctx, std::optional<std::int64_t> lambda1,
                          std::optional<std::int64_t> lambda2) {
  if (lambda1 && *lambda1 < 0) fail("lambda values must be nonnegative");
  if (lambda2 && *lambda2 < 0) fail("lambda values must be nonnegative");

  ParityLedger led;
  led.label_1 = f1.label();
  led.label_2 = f2.label();
  led.mode = ctx.mode();
  led.lambda_1 = lambda1;
  led.lambda_2 = lambda2;
  led.mu_assertions = ctx.assertions();

  led.congruence = check_residual_congruence(f1, f2);
  if (led.congruence.status == CongruenceStatus::refuted) {
    for (const auto& c : led.congruence.compared)
      if (!c.matched)
        fail("the eigenvalue tables refute the residual congruence at prime " +
             std::to_string(c.ell));
    fail("the eigenvalue tables refute the residual congruence");
  }

  led.hyp_1 = check_hypotheses(f1, ctx);
  led.hyp_2 = check_hypotheses(f2, ctx);
  require_hypotheses(f1, led.hyp_1);
  require_hypotheses(f2, led.hyp_2);

  if (!ctx.psi_is_even()) fail("the twist character must be even");

  if (ctx.mode() == Mode::ordinary) {
    if (!f1.assertions().ordinary_at_P || !f2.assertions().ordinary_at_P)
      fail("ordinary mode requires ordinary_at_P asserted for both forms");
  } else {
    if (!f1.assertions().a_p_equals_zero || !f2.assertions().a_p_equals_zero)
      fail("signed mode requires a_p_equals_zero asserted for both forms");
  }

  if (f1.nebentypus() != f2.nebentypus())
    led.warnings.push_back(
        "the residual nebentypus characters differ; residually congruent forms must agree");

  led.sigma0 = resolve_sigma0(ctx, {&f1, &f2}, /*enforce_superset=*/true);
  led.reports_1 = build_prime_reports(f1, ctx.psi(), led.sigma0);
  led.reports_2 = build_prime_reports(f2, ctx.psi(), led.sigma0);
  led.S_1 = s_set(led.reports_1);
  led.S_2 = s_set(led.reports_2);
  led.correction_1 = imprimitive_correction(led.reports_1);
  led.correction_2 = imprimitive_correction(led.reports_2);
  if ((std::int64_t)led.S_1.size() % 2 != led.correction_1 % 2 ||
      (std::int64_t)led.S_2.size() % 2 != led.correction_2 % 2)
    fail("internal: |S| and the imprimitive correction disagree mod 2");

  led.theorem_relation = "lambda_1 + |S_1| == lambda_2 + |S_2| (mod 2)";

  bool mu_ok = led.mu_assertions.mu_invariants_vanish.value_or(false);
  if (!mu_ok)
    led.warnings.push_back(
        "mu-invariant vanishing is not asserted; the parity relation is conditional on it");
  if (led.mode == Mode::signed_mode &&
      !led.mu_assertions.psi_satisfies_torsion_hypothesis.value_or(false))
    led.warnings.push_back(
        "signed mode: the torsion hypothesis on the twist character is not asserted");

  if (lambda1 && lambda2 && mu_ok) {
    bool ok = ((*lambda1 + (std::int64_t)led.S_1.size()) % 2) ==
              ((*lambda2 + (std::int64_t)led.S_2.size()) % 2);
    led.verdict = ok ? Verdict::consistent : Verdict::inconsistent;
  } else {
    led.verdict = Verdict::conditional;
  }
  if (lambda1 && !lambda2) {
    led.forced = ForcedParity{2, (int)((*lambda1 + (std::int64_t)led.S_1.size() +
                                        (std::int64_t)led.S_2.size()) %
                                       2)};
  } else if (lambda2 && !lambda1) {
    led.forced = ForcedParity{1, (int)((*lambda2 + (std::int64_t)led.S_2.size() +
                                        (std::int64_t)led.S_1.size()) %
                                       2)};
  }
  return led;
}

}  // namespace symsq
