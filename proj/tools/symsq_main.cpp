#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "symsq/error.hpp"
#include "symsq/form_data.hpp"
#include "symsq/num_util.hpp"
#include "symsq/parity.hpp"
#include "symsq/report.hpp"

namespace {

std::set<std::int64_t> parse_sigma0(const std::string& text) {
  std::set<std::int64_t> out;
  std::string cur;
  auto flush = [&]() {
    if (cur.empty()) return;
    std::size_t pos = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(cur, &pos);
    } catch (...) {
      pos = 0;
    }
    if (pos != cur.size()) symsq::fail("sigma0: '" + cur + "' is not an integer");
    out.insert(v);
    cur.clear();
  };
  for (char c : text) {
    if (c == ',')
      flush();
    else if (!std::isspace(static_cast<unsigned char>(c)))
      cur.push_back(c);
  }
  flush();
  return out;
}

void emit(const std::string& document, const std::string& format, const std::string& out_path) {
  std::string text = format == "document" ? document : symsq::render_table(document);
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) symsq::fail("cannot write to " + out_path);
  out << text;
}

symsq::AnalysisContext make_context(const std::string& psi_path, const std::string& sigma0_arg,
                                    const symsq::ResidueField& field) {
  symsq::ContextDocument doc = symsq::ContextDocument::load_file(psi_path);
  if (!sigma0_arg.empty()) doc.sigma0 = parse_sigma0(sigma0_arg);
  return symsq::AnalysisContext(doc, field);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact residual local invariants of twisted symmetric squares"};
  app.require_subcommand(1);

  std::string form_path, form1_path, form2_path, psi_path, sigma0_arg, out_path;
  std::string format = "table";
  std::optional<std::int64_t> lambda1, lambda2;
  std::string schema_kind = "form";

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"table", "document"}))
        ->capture_default_str();
    cmd->add_option("--out", out_path, "Write the output to a file instead of stdout");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "Per-prime invariants of one form");
  analyze->add_option("--form", form_path, "Form document")->required();
  analyze->add_option("--psi", psi_path, "Context document (twist, mode, sigma0)")->required();
  analyze->add_option("--sigma0", sigma0_arg, "Comma-separated primes overriding the context");
  add_format(analyze);

  CLI::App* compare = app.add_subcommand("compare", "Parity ledger for a congruent pair");
  compare->add_option("--form1", form1_path, "First form document")->required();
  compare->add_option("--form2", form2_path, "Second form document")->required();
  compare->add_option("--psi", psi_path, "Context document (twist, mode, sigma0)")->required();
  compare->add_option("--sigma0", sigma0_arg, "Comma-separated primes overriding the context");
  compare->add_option("--lambda1", lambda1, "Known lambda-invariant of the first form");
  compare->add_option("--lambda2", lambda2, "Known lambda-invariant of the second form");
  add_format(compare);

  CLI::App* sturm = app.add_subcommand("sturm", "Congruence bound and eigenvalue coverage");
  sturm->add_option("--form1", form1_path, "First form document")->required();
  sturm->add_option("--form2", form2_path, "Second form document")->required();
  add_format(sturm);

  CLI::App* schema = app.add_subcommand("schema", "Print a commented input template");
  schema->add_option("--kind", schema_kind, "Which template to print")
      ->check(CLI::IsMember({"form", "context"}))
      ->capture_default_str();
  schema->add_option("--out", out_path, "Write the output to a file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(analyze)) {
      symsq::NewformResidualData f = symsq::NewformResidualData::load_file(form_path);
      symsq::AnalysisContext ctx = make_context(psi_path, sigma0_arg, f.field());
      symsq::AnalysisResult res = symsq::analyze_form(f, ctx);
      emit(symsq::analysis_document(f, ctx, res), format, out_path);
      return 0;
    }
    if (app.got_subcommand(compare)) {
      symsq::NewformResidualData f1 = symsq::NewformResidualData::load_file(form1_path);
      symsq::NewformResidualData f2 = symsq::NewformResidualData::load_file(form2_path);
      symsq::AnalysisContext ctx = make_context(psi_path, sigma0_arg, f1.field());
      symsq::ParityLedger led = symsq::compare_pair(f1, f2, ctx, lambda1, lambda2);
      emit(symsq::ledger_document(led, f1, f2, ctx), format, out_path);
      return led.verdict == symsq::Verdict::inconsistent ? 2 : 0;
    }
    if (app.got_subcommand(sturm)) {
      symsq::NewformResidualData f1 = symsq::NewformResidualData::load_file(form1_path);
      symsq::NewformResidualData f2 = symsq::NewformResidualData::load_file(form2_path);
      symsq::SturmReport rep = symsq::sturm_report(f1, f2);
      emit(symsq::sturm_document(f1, f2, rep), format, out_path);
      return 0;
    }
    if (app.got_subcommand(schema)) {
      std::string text =
          schema_kind == "context" ? symsq::context_template() : symsq::form_template();
      text += "\n";
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) symsq::fail("cannot write to " + out_path);
        out << text;
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
