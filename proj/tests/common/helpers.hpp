#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "symsq/form_data.hpp"

namespace testutil {

inline std::string data_path(const std::string& name) {
  return std::string(SYMSQ_DATA_DIR) + "/" + name;
}

// Degree-1 form over F_p with trivial nebentypus; eigenvalues are integers
// reduced into the field.  Callers must include a consistent a_p.
inline symsq::NewformResidualData make_form(std::string label, int weight, std::int64_t level,
                                            std::int64_t p,
                                            const std::map<std::int64_t, std::int64_t>& evs,
                                            bool ordinary = true) {
  auto field = symsq::ResidueField::make(p, 1);
  std::map<std::int64_t, symsq::FieldElement> table;
  for (const auto& [ell, v] : evs) table.emplace(ell, field.from_integer(v));
  symsq::FormAssertions as;
  as.ordinary_at_P = ordinary;
  as.a_p_equals_zero = !ordinary;
  as.residual_irreducible = true;
  as.not_CM = true;
  as.inv_hypothesis = true;
  as.torsion_hypothesis = true;
  return symsq::NewformResidualData(std::move(label), weight, level, 1,
                                    symsq::CharacterSpec::trivial(), p, field, std::move(table),
                                    as);
}

inline symsq::AnalysisContext make_ctx(
    const symsq::ResidueField& field, symsq::CharacterSpec psi = symsq::CharacterSpec::trivial(),
    symsq::Mode mode = symsq::Mode::ordinary,
    std::optional<std::set<std::int64_t>> sigma0 = std::nullopt, std::optional<bool> mu = true,
    std::optional<bool> torsion = true) {
  symsq::ContextDocument doc;
  doc.psi = std::move(psi);
  doc.mode = mode;
  doc.sigma0 = std::move(sigma0);
  doc.assertions.mu_invariants_vanish = mu;
  doc.assertions.psi_satisfies_torsion_hypothesis = torsion;
  return symsq::AnalysisContext(doc, field);
}

}  // namespace testutil
