#include <doctest.h>

#include <cstdint>
#include <string>

#include "../common/helpers.hpp"
#include "symsq/error.hpp"
#include "symsq/num_util.hpp"
#include "symsq/parity.hpp"

using namespace symsq;
using testutil::data_path;
using testutil::make_ctx;
using testutil::make_form;

namespace {

SpecEntry ent(std::int64_t g, RootOfUnity z) {
  SpecEntry s;
  s.generator = g;
  s.image = z;
  return s;
}

bool has_warning(const ParityLedger& led, const std::string& fragment) {
  for (const auto& w : led.warnings)
    if (w.find(fragment) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("splitting numbers") {
  CHECK(splitting_number(5, 2) == 1);
  CHECK(splitting_number(5, 3) == 1);
  CHECK(splitting_number(5, 7) == 5);
  CHECK(splitting_number(5, 11) == 1);
  CHECK(splitting_number(3, 5) == 1);
  CHECK(splitting_number(3, 17) == 3);
  CHECK(splitting_number(7, 2) == 1);
  CHECK_THROWS_AS(splitting_number(5, 5), Error);
  CHECK_THROWS_AS(splitting_number(4, 3), Error);
  CHECK_THROWS_AS(splitting_number(5, 4), Error);
  CHECK_THROWS_AS(splitting_number(2, 3), Error);
}

TEST_CASE("splitting numbers are powers of p") {
  for (std::int64_t p : {3, 5, 7}) {
    for (std::int64_t ell : num::primes_up_to(1000)) {
      if (ell == p) continue;
      std::int64_t s = splitting_number(p, ell);
      CHECK(s >= 1);
      while (s % p == 0) s /= p;
      CHECK(s == 1);
    }
  }
}

TEST_CASE("prime reports for the level-11 form") {
  auto f = NewformResidualData::load_file(data_path("form_11a_mod5.json"));
  auto ctx = make_ctx(f.field());
  auto reports = build_prime_reports(f, ctx.psi(), {2, 3, 11});
  REQUIRE(reports.size() == 3);
  for (const auto& r : reports) {
    CHECK(r.delta == r.s * r.result.d);
    CHECK(r.in_S == (r.result.d % 2 == 1));
    CHECK(r.result.d == r.result.oracle_d);
  }
  CHECK(reports[0].ell == 2);
  CHECK(reports[0].classification == LevelClass::good);
  CHECK(reports[0].result.d == 1);
  CHECK(reports[1].ell == 3);
  CHECK(reports[1].result.d == 1);
  CHECK(reports[2].ell == 11);
  CHECK(reports[2].classification == LevelClass::steinberg);
  CHECK(reports[2].result.d == 1);

  CHECK(s_set(reports) == std::set<std::int64_t>{2, 3, 11});
  CHECK(imprimitive_correction(reports) == 3);
}

TEST_CASE("comparison ledger for the congruent pair") {
  auto f1 = NewformResidualData::load_file(data_path("form_11a_mod5.json"));
  auto f2 = NewformResidualData::load_file(data_path("form_33_mod5.json"));
  auto ctx = make_ctx(f1.field());

  auto led = compare_pair(f1, f2, ctx, 2, 1);
  CHECK(led.label_1 == "11a");
  CHECK(led.label_2 == "33synth");
  CHECK(led.congruence.status == CongruenceStatus::certified);
  CHECK(led.hyp_1.hyp_holds);
  CHECK(led.hyp_2.hyp_holds);
  CHECK(led.sigma0 == std::set<std::int64_t>{3, 11});
  CHECK(led.S_1 == std::set<std::int64_t>{3, 11});
  CHECK(led.S_2 == std::set<std::int64_t>{11});
  CHECK(led.correction_1 == 2);
  CHECK(led.correction_2 == 1);
  CHECK(led.theorem_relation == "lambda_1 + |S_1| == lambda_2 + |S_2| (mod 2)");
  CHECK(led.verdict == Verdict::consistent);
  CHECK(led.warnings.empty());
  CHECK_FALSE(led.forced.has_value());

  auto bad = compare_pair(f1, f2, ctx, 0, 0);
  CHECK(bad.verdict == Verdict::inconsistent);

  auto sym = compare_pair(f2, f1, ctx, 1, 2);
  CHECK(sym.verdict == Verdict::consistent);
  CHECK(sym.S_1 == led.S_2);
  CHECK(sym.S_2 == led.S_1);

  auto forced = compare_pair(f1, f2, ctx, 2, std::nullopt);
  CHECK(forced.verdict == Verdict::conditional);
  REQUIRE(forced.forced.has_value());
  CHECK(forced.forced->side == 2);
  CHECK(forced.forced->parity == 1);

  auto forced1 = compare_pair(f1, f2, ctx, std::nullopt, 1);
  REQUIRE(forced1.forced.has_value());
  CHECK(forced1.forced->side == 1);
  CHECK(forced1.forced->parity == 0);

  auto open = compare_pair(f1, f2, ctx, std::nullopt, std::nullopt);
  CHECK(open.verdict == Verdict::conditional);
  CHECK_FALSE(open.forced.has_value());
}

TEST_CASE("reflexive comparison is consistent") {
  auto f = NewformResidualData::load_file(data_path("form_11a_mod5.json"));
  auto ctx = make_ctx(f.field());
  for (std::int64_t lambda : {0, 1, 3}) {
    auto led = compare_pair(f, f, ctx, lambda, lambda);
    CHECK(led.verdict == Verdict::consistent);
    CHECK(led.S_1 == led.S_2);
  }
}

TEST_CASE("missing mu assertion keeps the verdict conditional") {
  auto f = NewformResidualData::load_file(data_path("form_11a_mod5.json"));
  auto ctx = make_ctx(f.field(), CharacterSpec::trivial(), Mode::ordinary, std::nullopt,
                      std::nullopt, true);
  auto led = compare_pair(f, f, ctx, 0, 0);
  CHECK(led.verdict == Verdict::conditional);
  CHECK(has_warning(led, "mu-invariant vanishing is not asserted"));

  auto asserted_false = make_ctx(f.field(), CharacterSpec::trivial(), Mode::ordinary,
                                 std::nullopt, false, true);
  auto led2 = compare_pair(f, f, asserted_false, 0, 0);
  CHECK(led2.verdict == Verdict::conditional);
}

TEST_CASE("signed mode") {
  auto f = NewformResidualData::load_file(data_path("form_nonord21_mod5.json"));
  auto ctx = make_ctx(f.field(), CharacterSpec::trivial(), Mode::signed_mode);
  auto led = compare_pair(f, f, ctx, 0, 0);
  CHECK(led.mode == Mode::signed_mode);
  CHECK(led.verdict == Verdict::consistent);
  CHECK(led.S_1.empty());
  CHECK(led.correction_1 == 0);
  CHECK(led.warnings.empty());

  auto no_torsion = make_ctx(f.field(), CharacterSpec::trivial(), Mode::signed_mode,
                             std::nullopt, true, std::nullopt);
  auto led2 = compare_pair(f, f, no_torsion, 0, 0);
  CHECK(has_warning(led2, "torsion hypothesis"));

  // Mode / ordinarity consistency.
  auto ordinary_ctx = make_ctx(f.field());
  CHECK_THROWS_AS(compare_pair(f, f, ordinary_ctx, 0, 0), Error);
  auto f11 = NewformResidualData::load_file(data_path("form_11a_mod5.json"));
  CHECK_THROWS_AS(compare_pair(f11, f11, ctx, 0, 0), Error);
}

TEST_CASE("comparison gates") {
  auto f1 = NewformResidualData::load_file(data_path("form_11a_mod5.json"));
  auto f2 = NewformResidualData::load_file(data_path("form_33_mod5.json"));
  auto bad2 = NewformResidualData::load_file(data_path("form_11a_bad2_mod5.json"));
  auto field = f1.field();
  auto ctx = make_ctx(field);

  // Refuted congruence names the witness prime.
  try {
    compare_pair(f1, bad2, ctx, 0, 0);
    FAIL_CHECK("expected a refutation error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("refute") != std::string::npos);
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }

  // Negative lambda.
  CHECK_THROWS_AS(compare_pair(f1, f2, ctx, -1, 0), Error);

  // Odd twist character.
  auto odd = make_ctx(field, CharacterSpec(3, {ent(2, RootOfUnity(2, 1))}));
  try {
    compare_pair(f1, f1, odd, 0, 0);
    FAIL_CHECK("expected the parity gate");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("must be even") != std::string::npos);
  }

  // Explicit sigma0 must contain the level and twist primes.
  auto narrow = make_ctx(field, CharacterSpec::trivial(), Mode::ordinary,
                         std::set<std::int64_t>{11});
  CHECK_THROWS_AS(compare_pair(f1, f2, narrow, 0, 0), Error);

  // Vanishing eigenvalue at a level prime.
  auto z11 = make_form("z11", 2, 11, 5, {{2, 3}, {5, 1}, {11, 0}});
  try {
    compare_pair(z11, z11, ctx, 0, 0);
    FAIL_CHECK("expected the nonvanishing gate");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("violating the level-prime nonvanishing hypothesis") !=
          std::string::npos);
  }

  // Unsupported level shape.
  auto u9 = make_form("u9", 2, 9, 5, {{3, 1}, {5, 1}});
  try {
    compare_pair(u9, u9, ctx, 0, 0);
    FAIL_CHECK("expected the shape gate");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("matches no supported reduction type") != std::string::npos);
  }
}

TEST_CASE("nebentypus mismatch warning") {
  auto f1 = NewformResidualData::load_file(data_path("form_11a_mod5.json"));
  auto field = f1.field();
  FormAssertions as = f1.assertions();
  NewformResidualData f2("11aq", 2, 11, 11, CharacterSpec(11, {ent(2, RootOfUnity(2, 1))}), 5,
                         field, f1.eigenvalues(), as);
  auto ctx = make_ctx(field);
  auto led = compare_pair(f1, f2, ctx, 0, 1);
  CHECK(has_warning(led, "nebentypus"));
  CHECK(led.S_1 == std::set<std::int64_t>{11});
  CHECK(led.S_2.empty());
  REQUIRE(led.reports_2.size() == 1);
  CHECK(led.reports_2[0].result.factor.tag == CaseTag::ps_case3ii);
  CHECK(led.reports_2[0].result.d == 2);
  CHECK(led.verdict == Verdict::consistent);
}

TEST_CASE("twist ramified across sigma0 in a comparison") {
  auto f1 = NewformResidualData::load_file(data_path("form_11a_mod5.json"));
  auto f2 = NewformResidualData::load_file(data_path("form_33_mod5.json"));
  auto doc = ContextDocument::load_file(data_path("ctx_quad12.json"));
  AnalysisContext ctx(doc, f1.field());
  auto led = compare_pair(f1, f2, ctx, 0, 0);
  CHECK(led.sigma0 == std::set<std::int64_t>{2, 3, 11});
  CHECK(led.S_1 == std::set<std::int64_t>{11});
  CHECK(led.S_2 == std::set<std::int64_t>{11});
  CHECK(led.verdict == Verdict::consistent);
  for (const auto& r : led.reports_1)
    if (r.ell != 11) CHECK(r.result.d == 0);
}
