#include "symsq/form_data.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "symsq/error.hpp"
#include "symsq/num_util.hpp"

namespace symsq {

using nlohmann::json;

namespace {

json parse_document(const std::string& text, const char* what) {
  try {
    return json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::exception& e) {
    fail(std::string(what) + ": parse error: " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const json& need(const json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end()) fail(std::string(what) + ": missing field '" + key + "'");
  return *it;
}

std::int64_t need_int(const json& j, const char* key, const char* what) {
  const json& v = need(j, key, what);
  if (!v.is_number_integer()) fail(std::string(what) + ": field '" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const char* what) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = std::any_of(known.begin(), known.end(),
                          [&](const char* k) { return it.key() == k; });
    if (!ok) fail(std::string(what) + ": unknown field '" + it.key() + "'");
  }
}

std::vector<std::int64_t> int_list(const json& v, const char* what) {
  if (!v.is_array()) fail(std::string(what) + ": expected an array of integers");
  std::vector<std::int64_t> out;
  for (const auto& x : v) {
    if (!x.is_number_integer()) fail(std::string(what) + ": expected an array of integers");
    out.push_back(x.get<std::int64_t>());
  }
  return out;
}

CharacterSpec parse_character_spec(const json& j, const char* what) {
  if (!j.is_object()) fail(std::string(what) + ": must be an object");
  reject_unknown_keys(j, {"modulus", "generators", "residual_images", "parity_declared"}, what);
  std::int64_t modulus = need_int(j, "modulus", what);
  const json& gens = need(j, "generators", what);
  if (!gens.is_array()) fail(std::string(what) + ": 'generators' must be an array");

  const json* residual = nullptr;
  if (j.contains("residual_images")) {
    residual = &j["residual_images"];
    if (!residual->is_array() || residual->size() != gens.size())
      fail(std::string(what) + ": 'residual_images' must be an array parallel to 'generators'");
  }

  std::vector<SpecEntry> entries;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const json& g = gens[i];
    if (!g.is_object()) fail(std::string(what) + ": generator entries must be objects");
    reject_unknown_keys(g, {"gen", "zeta_order", "zeta_exp"}, what);
    SpecEntry entry;
    entry.generator = need_int(g, "gen", what);
    bool has_zeta = g.contains("zeta_order") || g.contains("zeta_exp");
    if (has_zeta) {
      std::int64_t n = need_int(g, "zeta_order", what);
      std::int64_t e = g.contains("zeta_exp") ? need_int(g, "zeta_exp", what) : 1;
      if (n < 1) fail(std::string(what) + ": zeta_order must be >= 1");
      entry.image = RootOfUnity(n, e);
    }
    if (residual != nullptr && !(*residual)[i].is_null())
      entry.residual_image = int_list((*residual)[i], what);
    entries.push_back(std::move(entry));
  }

  std::optional<bool> parity;
  if (j.contains("parity_declared")) {
    if (!j["parity_declared"].is_boolean())
      fail(std::string(what) + ": 'parity_declared' must be a boolean (true = even)");
    parity = j["parity_declared"].get<bool>();
  }
  return CharacterSpec(modulus, std::move(entries), parity);
}

ResidueField parse_field(const json& j, const char* what) {
  if (!j.is_object()) fail(std::string(what) + ": 'field' must be an object");
  reject_unknown_keys(j, {"p", "degree", "defining_poly"}, what);
  std::int64_t p = need_int(j, "p", what);
  std::int64_t degree = need_int(j, "degree", what);
  if (degree < 1 || degree > 64) fail(std::string(what) + ": field degree out of range");
  std::optional<std::vector<std::int64_t>> poly;
  if (j.contains("defining_poly")) poly = int_list(j["defining_poly"], what);
  return ResidueField::make(p, static_cast<int>(degree), poly);
}

bool opt_flag(const json& j, const char* key, const char* what) {
  if (!j.contains(key)) return false;
  if (!j[key].is_boolean()) fail(std::string(what) + ": assertion '" + key + "' must be a boolean");
  return j[key].get<bool>();
}

}  // namespace

NewformResidualData::NewformResidualData(std::string label, int weight, std::int64_t level,
                                         std::int64_t neben_conductor, CharacterSpec neben_spec,
                                         std::int64_t p, ResidueField field,
                                         std::map<std::int64_t, FieldElement> eigenvalues,
                                         FormAssertions assertions)
    : label_(std::move(label)),
      weight_(weight),
      level_(level),
      neben_conductor_(neben_conductor),
      neben_spec_(std::move(neben_spec)),
      p_(p),
      field_(std::move(field)),
      neben_(ResidualCharacter::from_spec(neben_spec_, field_)),
      eigenvalues_(std::move(eigenvalues)),
      assertions_(assertions) {
  if (weight_ < 2) fail("form data: weight must be >= 2");
  if (weight_ % 2 != 0) fail("form data: weight must be even");
  if (level_ < 1) fail("form data: level must be >= 1");
  if (p_ != field_.characteristic()) fail("form data: 'prime' disagrees with the field characteristic");
  if (level_ % p_ == 0) fail("form data: p divides the level");
  if (neben_conductor_ < 1 || level_ % neben_conductor_ != 0)
    fail("form data: nebentypus conductor must divide the level");
  if (neben_conductor_ % neben_.conductor() != 0)
    fail("form data: residual nebentypus conductor " + std::to_string(neben_.conductor()) +
         " does not divide the declared conductor " + std::to_string(neben_conductor_));
  if (neben_spec_.conductor_known() && neben_spec_.conductor() != neben_conductor_)
    fail("form data: nebentypus spec has conductor " + std::to_string(neben_spec_.conductor()) +
         ", declared " + std::to_string(neben_conductor_));
  if (assertions_.ordinary_at_P == assertions_.a_p_equals_zero)
    fail("form data: exactly one of ordinary_at_P / a_p_equals_zero must be asserted");
  auto ap = eigenvalue(p_);
  if (ap) {
    if (assertions_.ordinary_at_P && ap->is_zero())
      fail("form data: ordinary_at_P asserted but a_p reduces to zero");
    if (assertions_.a_p_equals_zero && !ap->is_zero())
      fail("form data: a_p_equals_zero asserted but a_p is nonzero");
  }
  for (const auto& [ell, a] : eigenvalues_) {
    if (!num::is_prime(ell)) fail("form data: eigenvalue index " + std::to_string(ell) + " is not prime");
  }
}

std::optional<FieldElement> NewformResidualData::eigenvalue(std::int64_t ell) const {
  auto it = eigenvalues_.find(ell);
  if (it == eigenvalues_.end()) return std::nullopt;
  return it->second;
}

NewformResidualData NewformResidualData::load(const std::string& json_text) {
  const char* what = "form document";
  json j = parse_document(json_text, what);
  if (!j.is_object()) fail(std::string(what) + ": top level must be an object");
  reject_unknown_keys(j,
                      {"label", "weight", "level", "neben_conductor", "neben_char", "prime",
                       "field", "eigenvalues", "assertions"},
                      what);

  const json& label_j = need(j, "label", what);
  if (!label_j.is_string()) fail(std::string(what) + ": 'label' must be a string");
  std::int64_t weight = need_int(j, "weight", what);
  std::int64_t level = need_int(j, "level", what);
  std::int64_t neben_conductor = need_int(j, "neben_conductor", what);
  CharacterSpec neben = parse_character_spec(need(j, "neben_char", what), "form nebentypus");
  std::int64_t prime = need_int(j, "prime", what);
  ResidueField field = parse_field(need(j, "field", what), what);

  const json& eig = need(j, "eigenvalues", what);
  if (!eig.is_object()) fail(std::string(what) + ": 'eigenvalues' must be an object");
  std::map<std::int64_t, FieldElement> eigenvalues;
  for (auto it = eig.begin(); it != eig.end(); ++it) {
    std::int64_t ell = 0;
    try {
      std::size_t pos = 0;
      ell = std::stoll(it.key(), &pos);
      if (pos != it.key().size()) throw std::invalid_argument(it.key());
    } catch (...) {
      fail(std::string(what) + ": eigenvalue key '" + it.key() + "' is not an integer");
    }
    std::vector<std::int64_t> coords = int_list(it.value(), "eigenvalue");
    if (static_cast<int>(coords.size()) != field.degree())
      fail(std::string(what) + ": eigenvalue at " + it.key() +
           " has wrong coordinate length for the declared field");
    eigenvalues.emplace(ell, field.element(coords));
  }

  const json& as = need(j, "assertions", what);
  if (!as.is_object()) fail(std::string(what) + ": 'assertions' must be an object");
  reject_unknown_keys(as,
                      {"ordinary_at_P", "a_p_equals_zero", "residual_irreducible", "not_CM",
                       "inv_hypothesis", "torsion_hypothesis"},
                      what);
  FormAssertions assertions;
  assertions.ordinary_at_P = opt_flag(as, "ordinary_at_P", what);
  assertions.a_p_equals_zero = opt_flag(as, "a_p_equals_zero", what);
  assertions.residual_irreducible = opt_flag(as, "residual_irreducible", what);
  assertions.not_CM = opt_flag(as, "not_CM", what);
  assertions.inv_hypothesis = opt_flag(as, "inv_hypothesis", what);
  assertions.torsion_hypothesis = opt_flag(as, "torsion_hypothesis", what);

  if (weight < 2 || weight > 1000) fail(std::string(what) + ": weight out of range");
  return NewformResidualData(label_j.get<std::string>(), static_cast<int>(weight), level,
                             neben_conductor, std::move(neben), prime, std::move(field),
                             std::move(eigenvalues), assertions);
}

NewformResidualData NewformResidualData::load_file(const std::string& path) {
  return load(read_file(path));
}

std::string mode_name(Mode mode) { return mode == Mode::ordinary ? "ordinary" : "signed"; }

ContextDocument ContextDocument::load(const std::string& json_text) {
  const char* what = "context document";
  json j = parse_document(json_text, what);
  if (!j.is_object()) fail(std::string(what) + ": top level must be an object");
  reject_unknown_keys(j, {"psi", "mode", "sigma0", "assertions"}, what);

  ContextDocument doc;
  doc.psi = parse_character_spec(need(j, "psi", what), "context twist character");
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) fail(std::string(what) + ": 'mode' must be a string");
    std::string m = j["mode"].get<std::string>();
    if (m == "ordinary")
      doc.mode = Mode::ordinary;
    else if (m == "signed")
      doc.mode = Mode::signed_mode;
    else
      fail(std::string(what) + ": 'mode' must be \"ordinary\" or \"signed\"");
  }
  if (j.contains("sigma0")) {
    std::set<std::int64_t> s;
    for (std::int64_t v : int_list(j["sigma0"], what)) s.insert(v);
    doc.sigma0 = std::move(s);
  }
  if (j.contains("assertions")) {
    const json& as = j["assertions"];
    if (!as.is_object()) fail(std::string(what) + ": 'assertions' must be an object");
    reject_unknown_keys(as, {"mu_invariants_vanish", "psi_satisfies_torsion_hypothesis"}, what);
    if (as.contains("mu_invariants_vanish"))
      doc.assertions.mu_invariants_vanish = as["mu_invariants_vanish"].get<bool>();
    if (as.contains("psi_satisfies_torsion_hypothesis"))
      doc.assertions.psi_satisfies_torsion_hypothesis =
          as["psi_satisfies_torsion_hypothesis"].get<bool>();
  }
  return doc;
}

ContextDocument ContextDocument::load_file(const std::string& path) {
  return load(read_file(path));
}

AnalysisContext::AnalysisContext(const ContextDocument& doc, const ResidueField& field)
    : psi_spec_(doc.psi),
      psi_(ResidualCharacter::from_spec(doc.psi, field)),
      mode_(doc.mode),
      sigma0_(doc.sigma0),
      assertions_(doc.assertions) {
  if (sigma0_) {
    for (std::int64_t ell : *sigma0_) {
      if (!num::is_prime(ell)) fail("sigma0: entry " + std::to_string(ell) + " is not prime");
      if (ell == field.characteristic())
        fail("sigma0: must not contain p = " + std::to_string(ell));
    }
  }
}

bool AnalysisContext::psi_is_even() const {
  if (psi_spec_.conductor_known() || psi_spec_.parity_declared_even()) return psi_spec_.is_even();
  return psi_.is_even();
}

std::int64_t sturm_bound(int weight, std::int64_t level1, std::int64_t level2) {
  if (weight < 2) fail("sturm bound: weight must be >= 2");
  if (level1 < 1 || level2 < 1) fail("sturm bound: levels must be >= 1");
  std::int64_t L = num::lcm_checked(level1, level2);
  // [SL_2(Z) : Gamma_0(L)] = L * prod_{q | L} (1 + 1/q); divide first so every
  // intermediate stays integral.
  std::int64_t index = L;
  for (std::int64_t q : num::prime_divisors(L)) index = index / q * (q + 1);
  return static_cast<std::int64_t>(weight) * index / 12;
}

std::set<std::int64_t> resolve_sigma0(const AnalysisContext& ctx,
                                      const std::vector<const NewformResidualData*>& forms,
                                      bool enforce_superset) {
  std::set<std::int64_t> required;
  std::int64_t p = 0;
  for (const auto* f : forms) {
    p = f->p();
    for (std::int64_t q : num::prime_divisors(f->level())) required.insert(q);
  }
  for (std::int64_t q : ctx.psi_spec().ramified_support()) required.insert(q);
  required.erase(p);

  if (!ctx.explicit_sigma0()) return required;
  const auto& given = *ctx.explicit_sigma0();
  if (enforce_superset) {
    for (std::int64_t q : required) {
      if (!given.count(q))
        fail("sigma0: must contain every prime dividing the levels and the twist conductor; missing " +
             std::to_string(q));
    }
  }
  return given;
}

std::string congruence_status_name(CongruenceStatus s) {
  switch (s) {
    case CongruenceStatus::certified:
      return "certified";
    case CongruenceStatus::consistent:
      return "consistent";
    case CongruenceStatus::refuted:
      return "refuted";
  }
  return "?";
}

CongruenceReport check_residual_congruence(const NewformResidualData& f1,
                                           const NewformResidualData& f2) {
  if (f1.p() != f2.p()) fail("congruence check: the forms use different primes");
  if (f1.field() != f2.field()) fail("congruence check: the forms use different residue fields");
  if (f1.weight() != f2.weight())
    fail("congruence check: the forms must share a common weight");

  CongruenceReport report;
  report.bound = sturm_bound(f1.weight(), f1.level(), f2.level());
  bool refuted = false;
  for (std::int64_t ell : num::primes_up_to(report.bound)) {
    bool div1 = f1.level() % ell == 0;
    bool div2 = f2.level() % ell == 0;
    auto v1 = f1.eigenvalue(ell);
    auto v2 = f2.eigenvalue(ell);
    if (div1 != div2) {
      MixedLevelPrime m;
      m.ell = ell;
      if (v1) m.value1 = v1->coords();
      if (v2) m.value2 = v2->coords();
      report.mixed_level.push_back(std::move(m));
      continue;
    }
    if (!v1 || !v2) {
      report.missing.push_back(ell);
      continue;
    }
    PrimeComparison c;
    c.ell = ell;
    c.matched = (*v1 == *v2);
    c.value1 = v1->coords();
    c.value2 = v2->coords();
    if (!c.matched) refuted = true;
    report.compared.push_back(std::move(c));
  }
  if (refuted)
    report.status = CongruenceStatus::refuted;
  else if (report.missing.empty())
    report.status = CongruenceStatus::certified;
  else
    report.status = CongruenceStatus::consistent;
  return report;
}

std::string level_shape_name(LevelShape s) {
  switch (s) {
    case LevelShape::steinberg:
      return "steinberg";
    case LevelShape::principal_series:
      return "principal_series";
    case LevelShape::unsupported:
      return "unsupported";
  }
  return "?";
}

HypothesisChecklist check_hypotheses(const NewformResidualData& f, const AnalysisContext& ctx) {
  HypothesisChecklist out;
  out.assertions = f.assertions();
  out.context_assertions = ctx.assertions();
  out.psi_even = ctx.psi_is_even();
  out.hyp_holds = true;
  for (std::int64_t ell : num::prime_divisors(f.level())) {
    auto a = f.eigenvalue(ell);
    if (!a)
      fail("hypothesis check: missing eigenvalue at level prime " + std::to_string(ell));
    LevelPrimeCheck c;
    c.ell = ell;
    c.eigenvalue_nonzero = !a->is_zero();
    int vn = num::valuation(f.level(), ell);
    int vm = f.neben_conductor() % ell == 0 ? num::valuation(f.neben_conductor(), ell) : 0;
    if (vn == 1 && vm == 0)
      c.shape = LevelShape::steinberg;
    else if (vn == vm)
      c.shape = LevelShape::principal_series;
    else
      c.shape = LevelShape::unsupported;
    if (!c.eigenvalue_nonzero || c.shape == LevelShape::unsupported) out.hyp_holds = false;
    out.level_primes.push_back(c);
  }
  return out;
}

}  // namespace symsq
