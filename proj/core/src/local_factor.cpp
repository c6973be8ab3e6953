#include "symsq/local_factor.hpp"

#include <utility>

#include "symsq/error.hpp"
#include "symsq/num_util.hpp"

namespace symsq {

namespace {

Poly linear_factor(const FieldElement& c) {
  // 1 - c X
  return Poly{c.field().one(), -c};
}

bool poly_is_zero(const Poly& p) { return poly_degree(p) < 0; }

// Schoolbook division: a = q * b + r with deg r < deg b.
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
  int db = poly_degree(b);
  if (db < 0) fail("polynomial division by zero");
  const ResidueField& F = b[0].field();
  Poly rem = a;
  int da = poly_degree(rem);
  if (da < db) return {Poly{F.zero()}, std::move(rem)};
  Poly quot(static_cast<std::size_t>(da - db + 1), F.zero());
  FieldElement lead_inv = b[static_cast<std::size_t>(db)].inverse();
  for (int i = da; i >= db; --i) {
    if (rem[static_cast<std::size_t>(i)].is_zero()) continue;
    FieldElement c = rem[static_cast<std::size_t>(i)] * lead_inv;
    quot[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) {
      std::size_t idx = static_cast<std::size_t>(i - db + j);
      rem[idx] = rem[idx] - c * b[static_cast<std::size_t>(j)];
    }
  }
  return {std::move(quot), std::move(rem)};
}

void require_constant_one(const Poly& p) {
  if (p.empty() || !p.front().is_one())
    fail("local factor: constant term must be 1");
}

}  // namespace

int poly_degree(const Poly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (!p[static_cast<std::size_t>(i)].is_zero()) return i;
  return -1;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) fail("polynomial product of an empty polynomial");
  const ResidueField& F = a[0].field();
  Poly out(a.size() + b.size() - 1, F.zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
  return out;
}

FieldElement poly_eval(const Poly& p, const FieldElement& x) {
  if (p.empty()) fail("evaluation of an empty polynomial");
  FieldElement acc = p.back();
  for (int i = static_cast<int>(p.size()) - 2; i >= 0; --i)
    acc = acc * x + p[static_cast<std::size_t>(i)];
  return acc;
}

int root_multiplicity(const Poly& p, const FieldElement& r) {
  require_constant_one(p);
  Poly cur = p;
  int e = 0;
  while (poly_degree(cur) >= 1 && poly_eval(cur, r).is_zero()) {
    // Synthetic division by (X - r); the remainder is cur(r) = 0.
    int n = poly_degree(cur);
    Poly q(static_cast<std::size_t>(n), r.field().zero());
    FieldElement carry = cur[static_cast<std::size_t>(n)];
    for (int i = n - 1; i >= 0; --i) {
      q[static_cast<std::size_t>(i)] = carry;
      carry = cur[static_cast<std::size_t>(i)] + r * carry;
    }
    cur = std::move(q);
    ++e;
  }
  return e;
}

int root_multiplicity_by_division(const Poly& p, const FieldElement& r) {
  require_constant_one(p);
  const ResidueField& F = r.field();
  Poly power{F.one()};
  Poly xminus{-r, F.one()};
  int best = 0;
  for (int e = 1; e <= poly_degree(p); ++e) {
    power = poly_mul(power, xminus);
    auto [quot, rem] = poly_divmod(p, power);
    (void)quot;
    if (!poly_is_zero(rem)) break;
    best = e;
  }
  return best;
}

std::string level_class_name(LevelClass c) {
  switch (c) {
    case LevelClass::good:
      return "GOOD";
    case LevelClass::steinberg:
      return "STEINBERG";
    case LevelClass::principal_series:
      return "PRINCIPAL_SERIES";
    case LevelClass::unsupported:
      return "UNSUPPORTED";
  }
  return "?";
}

std::string case_tag_name(CaseTag tag) {
  switch (tag) {
    case CaseTag::good_unramified:
      return "GOOD_UNRAMIFIED";
    case CaseTag::good_psi_ramified:
      return "GOOD_PSI_RAMIFIED";
    case CaseTag::steinberg_unramified:
      return "STEINBERG_UNRAMIFIED";
    case CaseTag::steinberg_psi_ramified:
      return "STEINBERG_PSI_RAMIFIED";
    case CaseTag::ps_case1:
      return "PS_CASE1";
    case CaseTag::ps_case2:
      return "PS_CASE2";
    case CaseTag::ps_case3i:
      return "PS_CASE3I";
    case CaseTag::ps_case3ii:
      return "PS_CASE3II";
  }
  return "?";
}

LevelClass classify_prime(const NewformResidualData& f, std::int64_t ell) {
  if (ell < 2 || !num::is_prime(ell))
    fail("local prime " + std::to_string(ell) + " is not prime");
  if (ell == f.p())
    fail("local prime must differ from p = " + std::to_string(f.p()));
  if (f.level() % ell != 0) return LevelClass::good;
  int vn = num::valuation(f.level(), ell);
  int vm = num::valuation(f.neben_conductor(), ell);
  if (vn == 1 && vm == 0) return LevelClass::steinberg;
  if (vn == vm) return LevelClass::principal_series;
  return LevelClass::unsupported;
}

GoodFactorParts good_factor_parts(const FieldElement& a, const FieldElement& eps_val,
                                  const FieldElement& psi_val, const FieldElement& ltilde,
                                  int weight) {
  if (weight < 2) fail("weight must be >= 2");
  if (eps_val.is_zero() || psi_val.is_zero() || ltilde.is_zero())
    fail("character values and the prime image must be units");
  const ResidueField& F = a.field();
  FieldElement epl = eps_val * psi_val * ltilde.pow(weight - 1);  // eps psi l^{k-1}
  FieldElement two = F.from_integer(2);
  GoodFactorParts parts;
  parts.g = linear_factor(epl);
  FieldElement mid = psi_val * a * a - two * epl;
  parts.h = Poly{F.one(), -mid, epl * epl};
  return parts;
}

GoodConditions good_case_conditions(const FieldElement& a, const FieldElement& eps_val,
                                    const FieldElement& psi_val, const FieldElement& ltilde,
                                    int weight) {
  GoodFactorParts parts = good_factor_parts(a, eps_val, psi_val, ltilde, weight);
  FieldElement root_val = eps_val * psi_val * ltilde.pow(weight - 2);  // g(l^{-1}) = 1 - this
  GoodConditions c;
  c.case_Ii = root_val.is_one();
  c.case_IIi = poly_eval(parts.h, ltilde.inverse()).is_zero();
  c.case_IIii = !(root_val * root_val).is_one();
  c.case_I = c.case_Ii && !c.case_IIi;
  c.case_II = c.case_IIi && c.case_IIii && !c.case_Ii;
  c.case_III = c.case_IIi && c.case_Ii && !c.case_IIii;
  // The root of g contributes [case_Ii]; the root of h, when present, is
  // double exactly when the product of the two h-roots is l^{-2}, i.e. when
  // case_IIii fails.
  c.d_exact = (c.case_Ii ? 1 : 0) + (c.case_IIi ? (c.case_IIii ? 1 : 2) : 0);
  c.d_odd = c.case_I || c.case_II || c.case_III;
  return c;
}

Poly steinberg_factor_poly(const FieldElement& a, const FieldElement& psi_val) {
  return linear_factor(a * a * psi_val);
}

bool steinberg_criterion(const FieldElement& a, const FieldElement& psi_val,
                         const FieldElement& ltilde) {
  return a * a * psi_val == ltilde;
}

Case3iiKernel ps_case3ii_kernel(const FieldElement& a, const FieldElement& e2,
                                const FieldElement& psi_val, const FieldElement& ltilde,
                                int weight) {
  if (weight < 2) fail("weight must be >= 2");
  if (a.is_zero()) fail("split principal series needs a nonzero eigenvalue");
  FieldElement c1 = a.pow(-2) * ltilde.pow(2 * weight - 2) * e2;
  FieldElement c2 = a * a * psi_val;
  Case3iiKernel k{poly_mul(linear_factor(c1), linear_factor(c2)),
                  c2 == ltilde,
                  (a.pow(-2) * ltilde.pow(2 * weight - 3) * e2).is_one()};
  return k;
}

void check_local_factor(const LocalFactor& factor) {
  require_constant_one(factor.coeffs);
  int deg = poly_degree(factor.coeffs);
  if (deg > 3) fail("local factor: degree exceeds 3");
  bool ok = false;
  switch (factor.tag) {
    case CaseTag::good_unramified:
      ok = (deg == 3);
      break;
    case CaseTag::good_psi_ramified:
    case CaseTag::steinberg_psi_ramified:
      ok = (deg == 0);
      break;
    case CaseTag::steinberg_unramified:
    case CaseTag::ps_case1:
    case CaseTag::ps_case3i:
      ok = (deg == 1);
      break;
    case CaseTag::ps_case2:
      ok = (deg == 0 || deg == 1);
      break;
    case CaseTag::ps_case3ii:
      ok = (deg == 2);
      break;
  }
  if (!ok)
    fail("local factor: degree " + std::to_string(deg) + " is impossible for " +
         case_tag_name(factor.tag));
  if (factor.tag == CaseTag::good_unramified && !factor.sub_factors)
    fail("local factor: missing sub-factors");
}

namespace {

void require_same_field(const NewformResidualData& f, const ResidualCharacter& psi) {
  if (psi.field() != f.field())
    fail("twist character and form data live in different residue fields");
}

FieldElement level_prime_eigenvalue(const NewformResidualData& f, std::int64_t ell) {
  auto a = f.eigenvalue(ell);
  if (!a) fail("missing eigenvalue at level prime " + std::to_string(ell));
  if (a->is_zero())
    fail("a_" + std::to_string(ell) +
         " = 0 at a level prime; the supported reduction types require it nonzero");
  return *a;
}

}  // namespace

LocalFactor local_factor_good(const NewformResidualData& f, const ResidualCharacter& psi,
                              std::int64_t ell) {
  require_same_field(f, psi);
  if (classify_prime(f, ell) != LevelClass::good)
    fail("prime " + std::to_string(ell) + " divides the level; not a good prime");
  const ResidueField& F = f.field();
  LocalFactor out;
  out.ell = ell;
  if (psi.is_ramified_at(ell)) {
    out.coeffs = Poly{F.one()};
    out.tag = CaseTag::good_psi_ramified;
    check_local_factor(out);
    return out;
  }
  auto a = f.eigenvalue(ell);
  if (!a) fail("missing eigenvalue at " + std::to_string(ell));
  GoodFactorParts parts =
      good_factor_parts(*a, f.nebentypus().prime_to_ell_eval(ell), psi.prime_to_ell_eval(ell),
                        F.from_integer(ell), f.weight());
  out.coeffs = poly_mul(parts.g, parts.h);
  out.tag = CaseTag::good_unramified;
  out.sub_factors = parts;
  check_local_factor(out);
  return out;
}

LocalFactor local_factor_steinberg(const NewformResidualData& f, const ResidualCharacter& psi,
                                   std::int64_t ell) {
  require_same_field(f, psi);
  if (classify_prime(f, ell) != LevelClass::steinberg)
    fail("prime " + std::to_string(ell) + " is not a multiplicative prime for the form");
  const ResidueField& F = f.field();
  LocalFactor out;
  out.ell = ell;
  if (psi.is_ramified_at(ell)) {
    out.coeffs = Poly{F.one()};
    out.tag = CaseTag::steinberg_psi_ramified;
    check_local_factor(out);
    return out;
  }
  FieldElement a = level_prime_eigenvalue(f, ell);
  out.coeffs = steinberg_factor_poly(a, psi.prime_to_ell_eval(ell));
  out.tag = CaseTag::steinberg_unramified;
  check_local_factor(out);
  return out;
}

LocalFactor local_factor_principal(const NewformResidualData& f, const ResidualCharacter& psi,
                                   std::int64_t ell) {
  require_same_field(f, psi);
  if (classify_prime(f, ell) != LevelClass::principal_series)
    fail("prime " + std::to_string(ell) + " is not a principal-series prime for the form");
  const ResidueField& F = f.field();
  const ResidualCharacter& eps = f.nebentypus();
  if (!eps.is_ramified_at(ell))
    fail("principal series at " + std::to_string(ell) +
         ": the residual nebentypus is unramified at " + std::to_string(ell) +
         ", contradicting the ramified inertia character chi_1 forced by this level type");
  FieldElement a = level_prime_eigenvalue(f, ell);
  bool r_psi = psi.is_ramified_at(ell);
  bool r1_psi = (eps * psi).is_ramified_at(ell);
  bool r2_psi = (eps * eps * psi).is_ramified_at(ell);
  FieldElement ltilde = F.from_integer(ell);

  LocalFactor out;
  out.ell = ell;
  if (!r1_psi) {
    FieldElement E = (eps * psi).prime_to_ell_eval(ell);
    out.coeffs = linear_factor(E * ltilde.pow(f.weight() - 1));
    out.tag = CaseTag::ps_case1;
  } else if (r2_psi) {
    out.tag = CaseTag::ps_case2;
    if (r_psi)
      out.coeffs = Poly{F.one()};
    else
      out.coeffs = steinberg_factor_poly(a, psi.prime_to_ell_eval(ell));
  } else if (r_psi) {
    FieldElement E2 = (eps * eps * psi).prime_to_ell_eval(ell);
    out.coeffs = linear_factor(a.pow(-2) * ltilde.pow(2 * f.weight() - 2) * E2);
    out.tag = CaseTag::ps_case3i;
  } else {
    FieldElement E2 = (eps * eps * psi).prime_to_ell_eval(ell);
    out.coeffs = ps_case3ii_kernel(a, E2, psi.prime_to_ell_eval(ell), ltilde, f.weight()).factor;
    out.tag = CaseTag::ps_case3ii;
  }
  check_local_factor(out);
  return out;
}

MultiplicityResult compute_d(const NewformResidualData& f, const ResidualCharacter& psi,
                             std::int64_t ell) {
  LevelClass cls = classify_prime(f, ell);
  const ResidueField& F = f.field();
  MultiplicityResult res;
  int predicted = 0;

  switch (cls) {
    case LevelClass::good: {
      res.factor = local_factor_good(f, psi, ell);
      if (res.factor.tag == CaseTag::good_unramified) {
        GoodConditions c = good_case_conditions(*f.eigenvalue(ell),
                                                f.nebentypus().prime_to_ell_eval(ell),
                                                psi.prime_to_ell_eval(ell),
                                                F.from_integer(ell), f.weight());
        if (c.case_Ii) res.triggered_conditions.insert("CaseIi");
        if (c.case_IIi) res.triggered_conditions.insert("IIi");
        if (c.case_IIii) res.triggered_conditions.insert("IIii");
        if (c.case_I) res.triggered_conditions.insert("CaseI");
        if (c.case_II) res.triggered_conditions.insert("CaseII");
        if (c.case_III) res.triggered_conditions.insert("CaseIII");
        predicted = c.d_exact;
      }
      break;
    }
    case LevelClass::steinberg: {
      res.factor = local_factor_steinberg(f, psi, ell);
      if (res.factor.tag == CaseTag::steinberg_unramified) {
        bool crit = steinberg_criterion(*f.eigenvalue(ell), psi.prime_to_ell_eval(ell),
                                        F.from_integer(ell));
        if (crit) res.triggered_conditions.insert("casejii");
        predicted = crit ? 1 : 0;
      }
      break;
    }
    case LevelClass::principal_series: {
      res.factor = local_factor_principal(f, psi, ell);
      const ResidualCharacter& eps = f.nebentypus();
      FieldElement a = *f.eigenvalue(ell);
      FieldElement ltilde = F.from_integer(ell);
      switch (res.factor.tag) {
        case CaseTag::ps_case1: {
          FieldElement E = (eps * psi).prime_to_ell_eval(ell);
          bool cond = (E * ltilde.pow(f.weight() - 2)).is_one();
          if (cond) res.triggered_conditions.insert("casej1");
          predicted = cond ? 1 : 0;
          break;
        }
        case CaseTag::ps_case2: {
          if (poly_degree(res.factor.coeffs) == 0) break;
          bool cond = steinberg_criterion(a, psi.prime_to_ell_eval(ell), ltilde);
          if (cond) res.triggered_conditions.insert("casejii");
          predicted = cond ? 1 : 0;
          break;
        }
        case CaseTag::ps_case3i: {
          FieldElement E2 = (eps * eps * psi).prime_to_ell_eval(ell);
          bool cond = (a.pow(-2) * ltilde.pow(2 * f.weight() - 3) * E2).is_one();
          if (cond) res.triggered_conditions.insert("casejiii");
          predicted = cond ? 1 : 0;
          break;
        }
        case CaseTag::ps_case3ii: {
          FieldElement E2 = (eps * eps * psi).prime_to_ell_eval(ell);
          Case3iiKernel kern =
              ps_case3ii_kernel(a, E2, psi.prime_to_ell_eval(ell), ltilde, f.weight());
          if (kern.cond_casejii) res.triggered_conditions.insert("casejii");
          if (kern.cond_casejiii) res.triggered_conditions.insert("casejiii");
          predicted = (kern.cond_casejii ? 1 : 0) + (kern.cond_casejiii ? 1 : 0);
          break;
        }
        default:
          fail("internal: impossible principal-series tag");
      }
      break;
    }
    case LevelClass::unsupported:
      fail("prime " + std::to_string(ell) + ": ord(level) = " +
           std::to_string(num::valuation(f.level(), ell)) + ", ord(nebentypus conductor) = " +
           std::to_string(num::valuation(f.neben_conductor(), ell)) +
           " match no supported reduction type");
  }

  FieldElement linv = F.from_integer(ell).inverse();
  res.d = root_multiplicity(res.factor.coeffs, linv);
  res.oracle_d = root_multiplicity_by_division(res.factor.coeffs, linv);
  if (res.d != res.oracle_d)
    fail("internal: synthetic division found multiplicity " + std::to_string(res.d) +
         " but long division found " + std::to_string(res.oracle_d));
  if (res.d != predicted)
    fail("internal: the case conditions predict multiplicity " + std::to_string(predicted) +
         " but the factor has multiplicity " + std::to_string(res.d));
  return res;
}

}  // namespace symsq
