#ifndef SYMSQ_REPORT_HPP
#define SYMSQ_REPORT_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "symsq/form_data.hpp"
#include "symsq/parity.hpp"

namespace symsq {

struct AnalysisResult {
  std::set<std::int64_t> sigma0;
  HypothesisChecklist hyp;
  std::vector<PrimeReport> reports;
  std::set<std::int64_t> S;
  std::int64_t correction = 0;
};

// Per-prime invariants of a single form over the resolved sigma0 (the
// explicit one if given, otherwise the primes dividing the level and the
// twist conductor, without p).
AnalysisResult analyze_form(const NewformResidualData& f, const AnalysisContext& ctx);

struct SturmReport {
  std::int64_t bound = 0;
  std::vector<std::int64_t> covered;  // primes <= bound supplied by both forms
  std::vector<std::int64_t> missing;  // primes <= bound absent from at least one
};

SturmReport sturm_report(const NewformResidualData& f1, const NewformResidualData& f2);

// Machine-readable JSON documents.  These are the source of truth; the table
// renderer below is a pure projection of the document text.
std::string analysis_document(const NewformResidualData& f, const AnalysisContext& ctx,
                              const AnalysisResult& res);
std::string ledger_document(const ParityLedger& led, const NewformResidualData& f1,
                            const NewformResidualData& f2, const AnalysisContext& ctx);
std::string sturm_document(const NewformResidualData& f1, const NewformResidualData& f2,
                           const SturmReport& rep);

// Renders any of the documents above as fixed-width text.
std::string render_table(const std::string& document_json);

// Commented input templates; each parses as a valid document.
std::string form_template();
std::string context_template();

}  // namespace symsq

#endif  // SYMSQ_REPORT_HPP
