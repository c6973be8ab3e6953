#include <doctest.h>

#include <cstdint>
#include <numeric>
#include <vector>

#include "symsq/dirichlet.hpp"
#include "symsq/error.hpp"
#include "symsq/num_util.hpp"
#include "symsq/residue_field.hpp"

using namespace symsq;
using coords = std::vector<std::int64_t>;

namespace {

SpecEntry ent(std::int64_t g, RootOfUnity z) {
  SpecEntry s;
  s.generator = g;
  s.image = z;
  return s;
}

SpecEntry rent(std::int64_t g, coords img) {
  SpecEntry s;
  s.generator = g;
  s.residual_image = std::move(img);
  return s;
}

// x = r (mod q), 1 (mod m/q), for coprime q, m/q.
std::int64_t crt_lift(std::int64_t r, std::int64_t q, std::int64_t m) {
  std::int64_t rest = m / q;
  if (rest == 1) return num::mod_nonneg(r, m);
  // x = r + q*t with q*t = 1 - r (mod rest)
  std::int64_t t = num::mulmod(num::invmod(q % rest, rest), num::mod_nonneg(1 - r, rest), rest);
  return num::mod_nonneg(r + q * t, m);
}

}  // namespace

TEST_CASE("trivial character") {
  auto F5 = ResidueField::make(5, 1);
  auto chi = ResidualCharacter::trivial(F5);
  CHECK(chi.conductor() == 1);
  CHECK(chi.is_trivial());
  CHECK(chi.eval(7).is_one());
  CHECK(chi.is_even());
  CHECK(chi.ramified_primes().empty());
  CHECK(chi.prime_to_ell_eval(3).is_one());
  CHECK(ResidualCharacter::from_spec(CharacterSpec::trivial(), F5) == chi);
}

TEST_CASE("quadratic character mod 8") {
  auto F5 = ResidueField::make(5, 1);
  CharacterSpec spec(8, {ent(7, RootOfUnity::one()), ent(5, RootOfUnity(2, 1))});
  CHECK(spec.is_even());
  CHECK(spec.conductor() == 8);
  CHECK(spec.conductor_known());
  CHECK(spec.ramified_support() == std::set<std::int64_t>{2});

  auto chi = ResidualCharacter::from_spec(spec, F5);
  CHECK(chi.conductor() == 8);
  CHECK(chi.is_even());
  CHECK(chi.eval(1).is_one());
  CHECK(chi.eval(3).coords() == coords{4});
  CHECK(chi.eval(5).coords() == coords{4});
  CHECK(chi.eval(7).is_one());
  CHECK(chi.eval(11) == chi.eval(3));
  CHECK_THROWS_AS(chi.eval(2), Error);
  CHECK((chi * chi).is_trivial());
  CHECK(chi.prime_to_ell_eval(2).is_one());
}

TEST_CASE("conductor minimization") {
  auto F5 = ResidueField::make(5, 1);
  // Quadratic character presented mod 9 has conductor 3.
  CharacterSpec spec9(9, {ent(2, RootOfUnity(2, 1))});
  CHECK(spec9.conductor() == 3);
  auto chi = ResidualCharacter::from_spec(spec9, F5);
  CHECK(chi.conductor() == 3);
  CHECK(chi.eval(2).coords() == coords{4});
  CHECK(chi.eval(5) == chi.eval(2));
  CHECK_FALSE(chi.is_even());
  auto direct = ResidualCharacter::from_spec(CharacterSpec(3, {ent(2, RootOfUnity(2, 1))}), F5);
  CHECK(chi == direct);

  // Cubic character presented mod 27 has conductor 9 (it is nontrivial on
  // 1 + 3Z but trivial on 1 + 9Z).
  auto F7 = ResidueField::make(7, 1);
  auto c27 = ResidualCharacter::from_spec(CharacterSpec(27, {ent(2, RootOfUnity(3, 1))}), F7);
  auto c9 = ResidualCharacter::from_spec(CharacterSpec(9, {ent(2, RootOfUnity(3, 1))}), F7);
  CHECK(c27.conductor() == 9);
  CHECK(c27 == c9);
}

TEST_CASE("p-power order reduces away") {
  auto F5 = ResidueField::make(5, 1);
  CharacterSpec spec(11, {ent(2, RootOfUnity(5, 1))});
  CHECK(spec.conductor() == 11);
  auto chi = ResidualCharacter::from_spec(spec, F5);
  CHECK(chi.conductor() == 1);
  CHECK(chi.is_trivial());

  auto chi25 = ResidualCharacter::from_spec(CharacterSpec(25, {ent(2, RootOfUnity(5, 1))}), F5);
  CHECK(chi25.is_trivial());
  CHECK_THROWS_AS(ResidualCharacter::from_spec(CharacterSpec(25, {ent(2, RootOfUnity(4, 1))}), F5),
                  Error);
}

TEST_CASE("products and local components") {
  auto F7 = ResidueField::make(7, 1);
  auto chi4 = ResidualCharacter::from_spec(CharacterSpec(4, {ent(3, RootOfUnity(2, 1))}), F7);
  auto chi9 = ResidualCharacter::from_spec(CharacterSpec(9, {ent(2, RootOfUnity(3, 1))}), F7);
  CharacterSpec spec36(36, {ent(19, RootOfUnity(2, 1)), ent(29, RootOfUnity(3, 1))});
  auto chi36 = ResidualCharacter::from_spec(spec36, F7);

  CHECK(chi36 == chi4 * chi9);
  CHECK(chi36.conductor() == 36);
  CHECK(chi36.local_component(2) == chi4);
  CHECK(chi36.local_component(3) == chi9);
  CHECK(chi36.local_component(5).is_trivial());
  CHECK(chi36.ramified_primes() == std::vector<std::int64_t>{2, 3});
  CHECK(chi36.is_ramified_at(2));
  CHECK_FALSE(chi36.is_ramified_at(5));
  CHECK_FALSE(spec36.is_even());
  CHECK_FALSE(chi36.is_even());
  CHECK(chi36.prime_to_ell_eval(3) == chi4.eval(3));
  CHECK(chi36.prime_to_ell_eval(2) == chi9.eval(2));

  for (std::int64_t a = 1; a < 36; ++a) {
    if (std::gcd(a, std::int64_t{36}) != 1) continue;
    CHECK(chi36.eval(a) == chi4.eval(a) * chi9.eval(a));
  }

  CHECK((chi4 * chi4).is_trivial());
  CHECK((chi36 * chi36) == chi9 * chi9);  // the 2-part squares away
}

TEST_CASE("component reconstruction is exhaustive for moduli up to 200") {
  auto F7 = ResidueField::make(7, 1);
  for (std::int64_t m = 1; m <= 200; ++m) {
    if (m % 7 == 0) continue;  // keep the pattern away from p
    std::vector<SpecEntry> entries;
    for (const auto& pp : (m == 1 ? std::vector<num::PrimePower>{} : num::factorize(m))) {
      std::int64_t q = num::checked_pow(pp.p, pp.e);
      if (pp.p == 2) {
        if (pp.e == 1) continue;
        entries.push_back(ent(crt_lift(q - 1, q, m), RootOfUnity(2, 1)));
        if (pp.e >= 3) entries.push_back(ent(crt_lift(5, q, m), RootOfUnity(2, 1)));
      } else {
        entries.push_back(
            ent(crt_lift(canonical_primitive_root(pp.p, pp.e), q, m), RootOfUnity(2, 1)));
      }
    }
    CharacterSpec spec(m, std::move(entries));
    auto chi = ResidualCharacter::from_spec(spec, F7);
    auto divisors = num::prime_divisors(m);
    for (std::int64_t a = 1; a <= m; ++a) {
      if (m > 1 && std::gcd(a, m) != 1) continue;
      auto expect = F7.one();
      for (std::int64_t q : divisors) expect = expect * chi.local_component(q).eval(a);
      REQUIRE(chi.eval(a) == expect);
    }
    if (m <= 60) {
      for (std::int64_t a = 1; a <= m; ++a) {
        if (m > 1 && std::gcd(a, m) != 1) continue;
        for (std::int64_t b = a; b <= m; ++b) {
          if (m > 1 && std::gcd(b, m) != 1) continue;
          REQUIRE(chi.eval(num::mod_nonneg(a * b, m) + (m == 1 ? 1 : 0)) ==
                  chi.eval(a) * chi.eval(b));
        }
      }
    }
  }
}

TEST_CASE("squares ramify only where the base does") {
  auto F7 = ResidueField::make(7, 1);
  CharacterSpec spec36(36, {ent(19, RootOfUnity(2, 1)), ent(29, RootOfUnity(3, 1))});
  auto chi = ResidualCharacter::from_spec(spec36, F7);
  auto sq = chi * chi;
  for (std::int64_t q : sq.ramified_primes()) CHECK(chi.is_ramified_at(q));
}

TEST_CASE("residual images and declared parity") {
  auto F5 = ResidueField::make(5, 1);
  CharacterSpec spec(3, {rent(2, {4})});
  CHECK_FALSE(spec.conductor_known());
  CHECK_THROWS_AS(spec.is_even(), Error);
  CHECK(spec.ramified_support() == std::set<std::int64_t>{3});

  CharacterSpec declared(3, {rent(2, {4})}, false);
  CHECK_FALSE(declared.is_even());

  auto chi = ResidualCharacter::from_spec(spec, F5);
  CHECK(chi.conductor() == 3);
  CHECK(chi.eval(2).coords() == coords{4});
  CHECK_FALSE(chi.is_even());

  // Declared parity contradicting the computed value at -1 is rejected.
  CharacterSpec bad(8, {ent(7, RootOfUnity::one()), ent(5, RootOfUnity(2, 1))}, false);
  CHECK_THROWS_AS(bad.is_even(), Error);

  // Residual image checks: units only, order compatibility, agreement with a
  // supplied root of unity.
  CHECK_THROWS_AS(ResidualCharacter::from_spec(CharacterSpec(3, {rent(2, {0})}), F5), Error);
  CHECK_THROWS_AS(ResidualCharacter::from_spec(CharacterSpec(3, {rent(2, {2})}), F5), Error);
  SpecEntry both = ent(2, RootOfUnity(2, 1));
  both.residual_image = coords{3};
  CHECK_THROWS_AS(ResidualCharacter::from_spec(CharacterSpec(3, {both}), F5), Error);
  SpecEntry ok = ent(2, RootOfUnity(2, 1));
  ok.residual_image = coords{4};
  CHECK(ResidualCharacter::from_spec(CharacterSpec(3, {ok}), F5).eval(2).coords() == coords{4});
}

TEST_CASE("spec structural validation") {
  auto z2 = RootOfUnity(2, 1);
  CHECK_THROWS_AS(CharacterSpec(9, {ent(3, z2)}), Error);             // not a unit
  CHECK_THROWS_AS(CharacterSpec(9, {ent(1, z2)}), Error);             // trivial generator
  CHECK_THROWS_AS(CharacterSpec(7, {ent(2, z2)}), Error);             // not a primitive root
  CHECK_THROWS_AS(CharacterSpec(9, {ent(2, z2), ent(5, z2)}), Error); // two generators
  CHECK_THROWS_AS(CharacterSpec(7, {ent(3, RootOfUnity(4, 1))}), Error);  // 4 does not divide 6
  CHECK_THROWS_AS(CharacterSpec(8, {ent(7, z2)}), Error);             // missing the class of 5
  CHECK_THROWS_AS(CharacterSpec(12, {ent(11, z2)}), Error);           // supported at 4 and 3
  CHECK_THROWS_AS(CharacterSpec(4, {ent(2, z2)}), Error);             // 2 is not a unit mod 4
  CHECK_THROWS_AS(CharacterSpec(0, {}), Error);
  SpecEntry empty;
  empty.generator = 2;
  CHECK_THROWS_AS(CharacterSpec(3, {empty}), Error);  // no image at all
  CHECK_THROWS_AS(CharacterSpec(45, {}), Error);      // every factor needs its generator
  // Trivial images on a full generator set give the trivial character.
  auto one = RootOfUnity::one();
  CharacterSpec triv45(45, {ent(11, one), ent(37, one)});  // 11 = 2 mod 9, 37 = 2 mod 5
  auto F5 = ResidueField::make(5, 1);
  CHECK(ResidualCharacter::from_spec(triv45, F5).is_trivial());
}

TEST_CASE("canonical primitive roots and discrete logs") {
  CHECK(canonical_primitive_root(3, 1) == 2);
  CHECK(canonical_primitive_root(3, 2) == 2);
  CHECK(canonical_primitive_root(5, 1) == 2);
  CHECK(canonical_primitive_root(5, 2) == 2);
  CHECK(canonical_primitive_root(7, 1) == 3);
  CHECK(canonical_primitive_root(11, 1) == 2);
  CHECK(canonical_primitive_root(23, 1) == 5);
  CHECK(unit_dlog(2, 8, 11, 10) == 3);
  CHECK(unit_dlog(2, 1, 11, 10) == 0);
  CHECK(unit_dlog(3, 5, 7, 6) == 5);
}
