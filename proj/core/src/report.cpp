#include "symsq/report.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include <json.hpp>

#include "symsq/error.hpp"
#include "symsq/num_util.hpp"

namespace symsq {

using nlohmann::json;

namespace {

json coords_json(const std::vector<std::int64_t>& coords) { return json(coords); }

json poly_json(const Poly& p) {
  json out = json::array();
  for (const auto& c : p) out.push_back(coords_json(c.coords()));
  return out;
}

json field_json(const ResidueField& F) {
  json j;
  j["p"] = F.characteristic();
  j["degree"] = F.degree();
  j["defining_poly"] = F.defining_poly();
  return j;
}

json form_assertions_json(const FormAssertions& a) {
  json j;
  j["ordinary_at_P"] = a.ordinary_at_P;
  j["a_p_equals_zero"] = a.a_p_equals_zero;
  j["residual_irreducible"] = a.residual_irreducible;
  j["not_CM"] = a.not_CM;
  j["inv_hypothesis"] = a.inv_hypothesis;
  j["torsion_hypothesis"] = a.torsion_hypothesis;
  return j;
}

json opt_bool_json(const std::optional<bool>& v) {
  return v.has_value() ? json(*v) : json(nullptr);
}

json context_assertions_json(const ContextAssertions& a) {
  json j;
  j["mu_invariants_vanish"] = opt_bool_json(a.mu_invariants_vanish);
  j["psi_satisfies_torsion_hypothesis"] = opt_bool_json(a.psi_satisfies_torsion_hypothesis);
  return j;
}

json hyp_json(const HypothesisChecklist& h) {
  json j;
  j["holds"] = h.hyp_holds;
  j["psi_even"] = h.psi_even;
  json primes = json::array();
  for (const auto& c : h.level_primes) {
    json row;
    row["ell"] = c.ell;
    row["eigenvalue_nonzero"] = c.eigenvalue_nonzero;
    row["shape"] = level_shape_name(c.shape);
    primes.push_back(row);
  }
  j["level_primes"] = primes;
  return j;
}

json prime_report_json(const PrimeReport& r) {
  json j;
  j["ell"] = r.ell;
  j["class"] = level_class_name(r.classification);
  j["case"] = case_tag_name(r.result.factor.tag);
  j["factor"] = poly_json(r.result.factor.coeffs);
  if (r.result.factor.sub_factors) {
    json sub;
    sub["g"] = poly_json(r.result.factor.sub_factors->g);
    sub["h"] = poly_json(r.result.factor.sub_factors->h);
    j["sub_factors"] = sub;
  }
  j["d"] = r.result.d;
  j["oracle_d"] = r.result.oracle_d;
  j["conditions"] = json(std::vector<std::string>(r.result.triggered_conditions.begin(),
                                                  r.result.triggered_conditions.end()));
  j["s"] = r.s;
  j["delta"] = r.delta;
  j["in_S"] = r.in_S;
  return j;
}

json prime_reports_json(const std::vector<PrimeReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(prime_report_json(r));
  return arr;
}

json int_set_json(const std::set<std::int64_t>& s) {
  return json(std::vector<std::int64_t>(s.begin(), s.end()));
}

json psi_json(const AnalysisContext& ctx) {
  json j;
  j["conductor"] = ctx.psi().conductor();
  j["even"] = ctx.psi_is_even();
  return j;
}

std::string parity_word(std::int64_t n) { return n % 2 == 0 ? "even" : "odd"; }

json congruence_json(const CongruenceReport& rep) {
  json j;
  j["bound"] = rep.bound;
  j["status"] = congruence_status_name(rep.status);
  json compared = json::array();
  for (const auto& c : rep.compared) {
    json row;
    row["ell"] = c.ell;
    row["matched"] = c.matched;
    row["value_1"] = coords_json(c.value1);
    row["value_2"] = coords_json(c.value2);
    compared.push_back(row);
  }
  j["compared"] = compared;
  j["missing"] = json(rep.missing);
  json mixed = json::array();
  for (const auto& m : rep.mixed_level) {
    json row;
    row["ell"] = m.ell;
    row["value_1"] = m.value1 ? coords_json(*m.value1) : json(nullptr);
    row["value_2"] = m.value2 ? coords_json(*m.value2) : json(nullptr);
    mixed.push_back(row);
  }
  j["mixed_level"] = mixed;
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

AnalysisResult analyze_form(const NewformResidualData& f, const AnalysisContext& ctx) {
  AnalysisResult res;
  res.sigma0 = resolve_sigma0(ctx, {&f}, /*enforce_superset=*/false);
  res.hyp = check_hypotheses(f, ctx);
  res.reports = build_prime_reports(f, ctx.psi(), res.sigma0);
  res.S = s_set(res.reports);
  res.correction = imprimitive_correction(res.reports);
  return res;
}

SturmReport sturm_report(const NewformResidualData& f1, const NewformResidualData& f2) {
  if (f1.weight() != f2.weight()) fail("sturm: the forms must share a common weight");
  SturmReport rep;
  rep.bound = sturm_bound(f1.weight(), f1.level(), f2.level());
  for (std::int64_t ell : num::primes_up_to(rep.bound)) {
    if (f1.eigenvalue(ell) && f2.eigenvalue(ell))
      rep.covered.push_back(ell);
    else
      rep.missing.push_back(ell);
  }
  return rep;
}

std::string analysis_document(const NewformResidualData& f, const AnalysisContext& ctx,
                              const AnalysisResult& res) {
  json j;
  j["report"] = "analysis";
  json meta;
  meta["label"] = f.label();
  meta["weight"] = f.weight();
  meta["level"] = f.level();
  meta["neben_conductor"] = f.neben_conductor();
  meta["p"] = f.p();
  meta["field"] = field_json(f.field());
  meta["mode"] = mode_name(ctx.mode());
  meta["psi"] = psi_json(ctx);
  meta["assertions"] = form_assertions_json(f.assertions());
  meta["context_assertions"] = context_assertions_json(ctx.assertions());
  j["meta"] = meta;
  j["hypotheses"] = hyp_json(res.hyp);
  j["sigma0"] = int_set_json(res.sigma0);
  j["primes"] = prime_reports_json(res.reports);
  j["S"] = int_set_json(res.S);
  j["correction"] = res.correction;
  j["correction_parity"] = parity_word(res.correction);
  return dump(j);
}

std::string ledger_document(const ParityLedger& led, const NewformResidualData& f1,
                            const NewformResidualData& f2, const AnalysisContext& ctx) {
  json j;
  j["report"] = "comparison";
  json meta;
  meta["label_1"] = f1.label();
  meta["label_2"] = f2.label();
  meta["weight"] = f1.weight();
  meta["p"] = f1.p();
  meta["field"] = field_json(f1.field());
  meta["mode"] = mode_name(led.mode);
  meta["lambda_label"] = led.mode == Mode::signed_mode ? "signed lambda" : "lambda";
  meta["psi"] = psi_json(ctx);
  meta["assertions_1"] = form_assertions_json(f1.assertions());
  meta["assertions_2"] = form_assertions_json(f2.assertions());
  meta["context_assertions"] = context_assertions_json(led.mu_assertions);
  j["meta"] = meta;
  j["congruence"] = congruence_json(led.congruence);
  j["hypotheses_1"] = hyp_json(led.hyp_1);
  j["hypotheses_2"] = hyp_json(led.hyp_2);
  j["sigma0"] = int_set_json(led.sigma0);
  j["primes_1"] = prime_reports_json(led.reports_1);
  j["primes_2"] = prime_reports_json(led.reports_2);
  j["S_1"] = int_set_json(led.S_1);
  j["S_2"] = int_set_json(led.S_2);
  json corr;
  corr["form_1"] = led.correction_1;
  corr["form_2"] = led.correction_2;
  j["corrections"] = corr;
  j["lambda_1"] = led.lambda_1 ? json(*led.lambda_1) : json(nullptr);
  j["lambda_2"] = led.lambda_2 ? json(*led.lambda_2) : json(nullptr);
  j["theorem_relation"] = led.theorem_relation;
  if (led.forced) {
    json forced;
    forced["side"] = led.forced->side;
    forced["parity"] = led.forced->parity == 0 ? "even" : "odd";
    j["forced"] = forced;
  } else {
    j["forced"] = nullptr;
  }
  j["verdict"] = verdict_name(led.verdict);
  j["warnings"] = json(led.warnings);
  return dump(j);
}

std::string sturm_document(const NewformResidualData& f1, const NewformResidualData& f2,
                           const SturmReport& rep) {
  json j;
  j["report"] = "sturm";
  j["label_1"] = f1.label();
  j["label_2"] = f2.label();
  j["weight"] = f1.weight();
  j["level_1"] = f1.level();
  j["level_2"] = f2.level();
  j["bound"] = rep.bound;
  j["covered"] = json(rep.covered);
  j["missing"] = json(rep.missing);
  return dump(j);
}

namespace {

std::string pad(const std::string& s, std::size_t w) {
  return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
}

std::string join_ints(const json& arr, const char* sep = ", ") {
  if (arr.empty()) return "(none)";
  std::string out;
  for (const auto& v : arr) {
    if (!out.empty()) out += sep;
    out += std::to_string(v.get<std::int64_t>());
  }
  return out;
}

std::string set_str(const json& arr) {
  std::string out = "{";
  bool first = true;
  for (const auto& v : arr) {
    if (!first) out += ", ";
    out += std::to_string(v.get<std::int64_t>());
    first = false;
  }
  return out + "}";
}

std::string join_strings(const json& arr, const char* sep = ",") {
  std::string out;
  for (const auto& v : arr) {
    if (!out.empty()) out += sep;
    out += v.get<std::string>();
  }
  return out.empty() ? "-" : out;
}

std::string field_desc(const json& fj) {
  std::int64_t p = fj["p"].get<std::int64_t>();
  int d = fj["degree"].get<int>();
  std::int64_t q = 1;
  for (int i = 0; i < d; ++i) q *= p;
  return "F_" + std::to_string(q);
}

std::string assertion_echo(const json& aj) {
  std::string on, off;
  for (auto it = aj.begin(); it != aj.end(); ++it) {
    std::string& dst = it.value().get<bool>() ? on : off;
    if (!dst.empty()) dst += ", ";
    dst += it.key();
  }
  std::string out = "asserted: " + (on.empty() ? "(none)" : on);
  if (!off.empty()) out += "; not asserted: " + off;
  return out;
}

std::string context_assertion_echo(const json& aj) {
  std::string out;
  for (auto it = aj.begin(); it != aj.end(); ++it) {
    if (!out.empty()) out += ", ";
    out += it.key() + "=";
    if (it.value().is_null())
      out += "unset";
    else
      out += it.value().get<bool>() ? "yes" : "no";
  }
  return out;
}

void render_prime_table(std::ostringstream& out, const json& primes, const std::string& indent) {
  std::vector<std::array<std::string, 8>> rows;
  rows.push_back({"ell", "class", "case", "d", "s", "delta", "in_S", "conditions"});
  for (const auto& pj : primes) {
    rows.push_back({std::to_string(pj["ell"].get<std::int64_t>()),
                    pj["class"].get<std::string>(), pj["case"].get<std::string>(),
                    std::to_string(pj["d"].get<int>()), std::to_string(pj["s"].get<std::int64_t>()),
                    std::to_string(pj["delta"].get<std::int64_t>()),
                    pj["in_S"].get<bool>() ? "yes" : "no", join_strings(pj["conditions"])});
  }
  std::array<std::size_t, 8> widths{};
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << indent;
    for (std::size_t i = 0; i < rows[r].size(); ++i) {
      out << pad(rows[r][i], widths[i]);
      if (i + 1 < rows[r].size()) out << "  ";
    }
    out << "\n";
    if (primes.empty() && r == 0) out << indent << "(no primes)\n";
  }
}

void render_hypotheses(std::ostringstream& out, const json& hj, const std::string& indent) {
  out << indent << "level primes: " << (hj["holds"].get<bool>() ? "PASS" : "FAIL") << "\n";
  for (const auto& c : hj["level_primes"]) {
    out << indent << "  " << c["ell"].get<std::int64_t>() << ": shape "
        << c["shape"].get<std::string>() << ", eigenvalue "
        << (c["eigenvalue_nonzero"].get<bool>() ? "nonzero" : "ZERO") << "\n";
  }
  out << indent << "twist parity: " << (hj["psi_even"].get<bool>() ? "even" : "odd") << "\n";
}

std::string render_analysis(const json& j) {
  std::ostringstream out;
  const json& meta = j["meta"];
  out << "analysis of " << meta["label"].get<std::string>() << "\n";
  out << "  weight " << meta["weight"].get<int>() << ", level " << meta["level"].get<std::int64_t>()
      << ", nebentypus conductor " << meta["neben_conductor"].get<std::int64_t>() << ", p "
      << meta["p"].get<std::int64_t>() << ", field " << field_desc(meta["field"]) << "\n";
  out << "  mode " << meta["mode"].get<std::string>() << "; twist conductor "
      << meta["psi"]["conductor"].get<std::int64_t>() << " ("
      << (meta["psi"]["even"].get<bool>() ? "even" : "odd") << ")\n";
  out << "hypotheses\n";
  render_hypotheses(out, j["hypotheses"], "  ");
  out << "  " << assertion_echo(meta["assertions"]) << "\n";
  out << "  context: " << context_assertion_echo(meta["context_assertions"]) << "\n";
  out << "sigma0 " << set_str(j["sigma0"]) << "\n";
  render_prime_table(out, j["primes"], "  ");
  out << "S " << set_str(j["S"]) << "\n";
  out << "correction " << j["correction"].get<std::int64_t>() << " ("
      << j["correction_parity"].get<std::string>() << ")\n";
  return out.str();
}

std::string render_comparison(const json& j) {
  std::ostringstream out;
  const json& meta = j["meta"];
  std::string l1 = meta["label_1"].get<std::string>();
  std::string l2 = meta["label_2"].get<std::string>();
  std::string lambda_label = meta["lambda_label"].get<std::string>();
  out << "comparison " << l1 << " vs " << l2 << "\n";
  out << "  weight " << meta["weight"].get<int>() << ", p " << meta["p"].get<std::int64_t>()
      << ", field " << field_desc(meta["field"]) << ", mode " << meta["mode"].get<std::string>()
      << "\n";
  out << "  twist conductor " << meta["psi"]["conductor"].get<std::int64_t>() << " ("
      << (meta["psi"]["even"].get<bool>() ? "even" : "odd") << ")\n";
  out << "  context: " << context_assertion_echo(meta["context_assertions"]) << "\n";
  const json& cg = j["congruence"];
  out << "congruence: " << cg["status"].get<std::string>() << " (sturm bound "
      << cg["bound"].get<std::int64_t>() << ")\n";
  std::string compared;
  for (const auto& c : cg["compared"]) {
    if (!compared.empty()) compared += ", ";
    compared += std::to_string(c["ell"].get<std::int64_t>());
    if (!c["matched"].get<bool>()) compared += "(MISMATCH)";
  }
  out << "  compared: " << (compared.empty() ? "(none)" : compared) << "\n";
  out << "  missing: " << join_ints(cg["missing"]) << "\n";
  std::string mixed;
  for (const auto& m : cg["mixed_level"]) {
    if (!mixed.empty()) mixed += ", ";
    mixed += std::to_string(m["ell"].get<std::int64_t>());
  }
  out << "  mixed-level: " << (mixed.empty() ? "(none)" : mixed) << "\n";
  out << "hypotheses " << l1 << "\n";
  render_hypotheses(out, j["hypotheses_1"], "  ");
  out << "  " << assertion_echo(meta["assertions_1"]) << "\n";
  out << "hypotheses " << l2 << "\n";
  render_hypotheses(out, j["hypotheses_2"], "  ");
  out << "  " << assertion_echo(meta["assertions_2"]) << "\n";
  out << "sigma0 " << set_str(j["sigma0"]) << "\n";
  out << "form " << l1 << "\n";
  render_prime_table(out, j["primes_1"], "  ");
  out << "  S_1 " << set_str(j["S_1"]) << "; correction_1 "
      << j["corrections"]["form_1"].get<std::int64_t>() << "\n";
  out << "form " << l2 << "\n";
  render_prime_table(out, j["primes_2"], "  ");
  out << "  S_2 " << set_str(j["S_2"]) << "; correction_2 "
      << j["corrections"]["form_2"].get<std::int64_t>() << "\n";
  out << "relation: " << j["theorem_relation"].get<std::string>() << "\n";
  auto lam = [&](const char* key) {
    return j[key].is_null() ? std::string("unset") : std::to_string(j[key].get<std::int64_t>());
  };
  out << lambda_label << "_1 = " << lam("lambda_1") << "; " << lambda_label << "_2 = "
      << lam("lambda_2") << "\n";
  if (!j["forced"].is_null())
    out << "forced: " << lambda_label << "_" << j["forced"]["side"].get<int>() << " parity "
        << j["forced"]["parity"].get<std::string>() << "\n";
  out << "verdict: " << j["verdict"].get<std::string>() << "\n";
  if (!j["warnings"].empty()) {
    out << "warnings\n";
    for (const auto& w : j["warnings"]) out << "  - " << w.get<std::string>() << "\n";
  }
  return out.str();
}

std::string render_sturm(const json& j) {
  std::ostringstream out;
  out << "sturm bound for " << j["label_1"].get<std::string>() << " vs "
      << j["label_2"].get<std::string>() << ": " << j["bound"].get<std::int64_t>() << "\n";
  out << "  covered: " << join_ints(j["covered"]) << "\n";
  out << "  missing: " << join_ints(j["missing"]) << "\n";
  return out.str();
}

}  // namespace

std::string render_table(const std::string& document_json) {
  json j;
  try {
    j = json::parse(document_json);
  } catch (const json::exception& e) {
    fail(std::string("table renderer: invalid document: ") + e.what());
  }
  if (!j.is_object() || !j.contains("report"))
    fail("table renderer: missing 'report' field");
  std::string kind = j["report"].get<std::string>();
  if (kind == "analysis") return render_analysis(j);
  if (kind == "comparison") return render_comparison(j);
  if (kind == "sturm") return render_sturm(j);
  fail("table renderer: unknown report kind '" + kind + "'");
}

std::string form_template() {
  return R"JSON({
  // free-form identifier used in reports
  "label": "11a-mod5",
  // even weight >= 2
  "weight": 2,
  // level; must be coprime to the working prime
  "level": 11,
  // conductor of the nebentypus; must divide the level
  "neben_conductor": 1,
  // nebentypus by generator images; modulus 1 is the trivial character.
  // Each generator entry is {gen, zeta_order, zeta_exp} with gen a global
  // unit congruent to 1 modulo the other prime-power components; q odd uses
  // a primitive root, q^e = 4 the class of -1, q^e = 2^e (e >= 3) the
  // classes of -1 and 5.  An optional parallel "residual_images" array of
  // field-coordinate vectors overrides the root-of-unity reduction.
  "neben_char": {
    "modulus": 1,
    "generators": []
  },
  // the working odd prime p (must not divide the level)
  "prime": 5,
  // residue field F_{p^degree}; "defining_poly" (monic, constant term first)
  // is optional and defaults to the lexicographically first irreducible
  "field": { "p": 5, "degree": 1 },
  // Hecke eigenvalues mod P, keyed by prime, as coordinate vectors
  "eigenvalues": {
    "2": [3],
    "3": [4],
    "5": [1],
    "7": [3],
    "11": [1],
    "13": [4]
  },
  // facts the tool cannot verify; echoed into every report.
  // Exactly one of ordinary_at_P / a_p_equals_zero must be true.
  "assertions": {
    "ordinary_at_P": true,
    "a_p_equals_zero": false,
    "residual_irreducible": true,
    "not_CM": true,
    "inv_hypothesis": true,
    "torsion_hypothesis": true
  }
})JSON";
}

std::string context_template() {
  return R"JSON({
  // the twist character psi (same generator format as the nebentypus);
  // comparisons require psi even
  "psi": {
    "modulus": 12,
    "generators": [
      { "gen": 7, "zeta_order": 2, "zeta_exp": 1 },
      { "gen": 5, "zeta_order": 2, "zeta_exp": 1 }
    ]
  },
  // "ordinary" (default) or "signed"
  "mode": "ordinary",
  // optional; defaults to the primes dividing the levels and the twist
  // conductor, excluding p.  Comparisons require it to contain that set.
  "sigma0": [2, 3, 11],
  // facts the tool cannot verify
  "assertions": {
    "mu_invariants_vanish": true,
    "psi_satisfies_torsion_hypothesis": true
  }
})JSON";
}

}  // namespace symsq
