#ifndef SYMSQ_LOCAL_FACTOR_HPP
#define SYMSQ_LOCAL_FACTOR_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symsq/dirichlet.hpp"
#include "symsq/form_data.hpp"
#include "symsq/residue_field.hpp"

namespace symsq {

// Polynomials over a residue field, constant term first.  Factors built here
// always have constant term 1 and a nonzero leading coefficient.
using Poly = std::vector<FieldElement>;

int poly_degree(const Poly& p);
Poly poly_mul(const Poly& a, const Poly& b);
FieldElement poly_eval(const Poly& p, const FieldElement& x);

// Largest e >= 0 with (X - r)^e dividing p, by repeated synthetic division.
int root_multiplicity(const Poly& p, const FieldElement& r);

// Same quantity recomputed independently: expand (X - r)^e and long-divide,
// taking the largest e with zero remainder.  Slower; used as a cross-check.
int root_multiplicity_by_division(const Poly& p, const FieldElement& r);

enum class LevelClass { good, steinberg, principal_series, unsupported };
std::string level_class_name(LevelClass c);

// good: ell does not divide the level.  steinberg: ell exactly divides the
// level and not the nebentypus conductor.  principal_series: ell divides both
// to the same positive order.  Everything else is unsupported.
LevelClass classify_prime(const NewformResidualData& f, std::int64_t ell);

enum class CaseTag {
  good_unramified,
  good_psi_ramified,
  steinberg_unramified,
  steinberg_psi_ramified,
  ps_case1,
  ps_case2,
  ps_case3i,
  ps_case3ii,
};
std::string case_tag_name(CaseTag tag);

struct GoodFactorParts {
  Poly g;  // 1 - eps*psi*l^{k-1} X
  Poly h;  // 1 - (psi*a^2 - 2*psi*eps*l^{k-1}) X + psi^2*eps^2*l^{2k-2} X^2
};

// Scalar kernel for a prime of good reduction with psi unramified there.
// a, eps_val, psi_val are a_ell and the character values at ell; ltilde is
// the image of ell in the field.
GoodFactorParts good_factor_parts(const FieldElement& a, const FieldElement& eps_val,
                                  const FieldElement& psi_val, const FieldElement& ltilde,
                                  int weight);

struct GoodConditions {
  bool case_Ii = false;   // eps*psi*l^{k-2} = 1, i.e. g has the root l^{-1}
  bool case_IIi = false;  // h(l^{-1}) = 0
  bool case_IIii = false; // psi^{-2} eps^{-2} l^{4-2k} != 1 (the root of h is simple)
  bool case_I = false;    // case_Ii and not case_IIi
  bool case_II = false;   // case_IIi and case_IIii and not case_Ii
  bool case_III = false;  // case_IIi and case_Ii and not case_IIii
  bool d_odd = false;
  int d_exact = 0;        // [case_Ii] + [case_IIi] * (1 + [!case_IIii])
};

GoodConditions good_case_conditions(const FieldElement& a, const FieldElement& eps_val,
                                    const FieldElement& psi_val, const FieldElement& ltilde,
                                    int weight);

// Scalar kernel for a prime of multiplicative reduction: factor
// 1 - a^2 psi(l) X, with the root at l^{-1} iff a^2 psi(l) = l.
Poly steinberg_factor_poly(const FieldElement& a, const FieldElement& psi_val);
bool steinberg_criterion(const FieldElement& a, const FieldElement& psi_val,
                         const FieldElement& ltilde);

struct Case3iiKernel {
  Poly factor;        // (1 - a^{-2} l^{2k-2} e2 X)(1 - a^2 psi(l) X)
  bool cond_casejii;  // a^2 psi(l) = l
  bool cond_casejiii; // a^{-2} l^{2k-3} e2 = 1
};

// Scalar kernel for the split principal-series case with psi unramified and
// the squared inertia character trivial; e2 is the prime-to-ell value of
// eps^2 psi at ell.
Case3iiKernel ps_case3ii_kernel(const FieldElement& a, const FieldElement& e2,
                                const FieldElement& psi_val, const FieldElement& ltilde,
                                int weight);

struct LocalFactor {
  std::int64_t ell = 0;
  Poly coeffs;  // constant term first, always 1; degree <= 3
  CaseTag tag = CaseTag::good_unramified;
  std::optional<GoodFactorParts> sub_factors;  // good_unramified only
};

// Enforces: constant term 1, degree <= 3, and the degree each tag admits
// (3 good_unramified; 0 *_psi_ramified; 1 steinberg_unramified, ps_case1,
// ps_case3i; {0,1} ps_case2; 2 ps_case3ii).
void check_local_factor(const LocalFactor& factor);

LocalFactor local_factor_good(const NewformResidualData& f, const ResidualCharacter& psi,
                              std::int64_t ell);
LocalFactor local_factor_steinberg(const NewformResidualData& f, const ResidualCharacter& psi,
                                   std::int64_t ell);
LocalFactor local_factor_principal(const NewformResidualData& f, const ResidualCharacter& psi,
                                   std::int64_t ell);

struct MultiplicityResult {
  int d = 0;
  std::set<std::string> triggered_conditions;
  int oracle_d = 0;
  LocalFactor factor;
};

// Classifies ell, builds the local factor, computes d as the multiplicity of
// the root l^{-1}, cross-checks it against the independent division oracle
// and against the exact value the triggered case conditions pin down.
MultiplicityResult compute_d(const NewformResidualData& f, const ResidualCharacter& psi,
                             std::int64_t ell);

}  // namespace symsq

#endif  // SYMSQ_LOCAL_FACTOR_HPP
