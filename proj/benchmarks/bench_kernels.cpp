#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "symsq/dirichlet.hpp"
#include "symsq/local_factor.hpp"
#include "symsq/parity.hpp"
#include "symsq/residue_field.hpp"

using namespace symsq;

static void BM_FieldMultiply(benchmark::State& state) {
  auto field = ResidueField::make(5, 2);
  std::vector<FieldElement> units;
  auto g = field.generator();
  auto x = field.one();
  for (int i = 0; i < 24; ++i) {
    x = x * g;
    units.push_back(x);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(units[i % units.size()] * units[(i + 7) % units.size()]);
    ++i;
  }
}
BENCHMARK(BM_FieldMultiply);

static void BM_FieldInverse(benchmark::State& state) {
  auto field = ResidueField::make(5, 2);
  auto g = field.generator();
  auto x = g;
  for (auto _ : state) {
    benchmark::DoNotOptimize(x.inverse());
    x = x * g;
  }
}
BENCHMARK(BM_FieldInverse);

static void BM_GoodCaseKernel(benchmark::State& state) {
  auto field = ResidueField::make(7, 1);
  auto ltilde = field.from_integer(2);
  for (auto _ : state) {
    for (std::int64_t a = 0; a < 7; ++a) {
      for (std::int64_t e = 1; e < 7; ++e) {
        auto parts = good_factor_parts(field.from_integer(a), field.from_integer(e), field.one(),
                                       ltilde, 2);
        benchmark::DoNotOptimize(root_multiplicity(poly_mul(parts.g, parts.h), ltilde.inverse()));
      }
    }
  }
}
BENCHMARK(BM_GoodCaseKernel);

static void BM_SplittingNumber(benchmark::State& state) {
  std::int64_t ell = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(splitting_number(5, ell));
    ell = ell == 3 ? 7 : 3;
  }
}
BENCHMARK(BM_SplittingNumber);

static void BM_CharacterEval(benchmark::State& state) {
  auto field = ResidueField::make(5, 1);
  SpecEntry e1, e2;
  e1.generator = 7;
  e1.image = RootOfUnity(2, 1);
  e2.generator = 5;
  e2.image = RootOfUnity(2, 1);
  auto chi = ResidualCharacter::from_spec(CharacterSpec(12, {e1, e2}), field);
  std::int64_t a = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(chi.eval(a));
    a += 2;
    while (a % 2 == 0 || a % 3 == 0) ++a;
  }
}
BENCHMARK(BM_CharacterEval);

BENCHMARK_MAIN();
