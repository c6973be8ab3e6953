#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symsq/residue_field.hpp"

// Dirichlet characters given by generator/image data and their reductions to
// the residue field.  A spec lists, per prime power q^e || m, the image of a
// fixed cyclic generator: one primitive root for odd q, the class of -1 for
// q^e = 4, and the classes of -1 and 5 for q = 2, e >= 3.  Residual characters
// are always stored at their exact conductor with images on canonical
// generators, so equality is structural.

namespace symsq {

struct SpecEntry {
  std::int64_t generator = 0;
  // Characteristic-zero image; reduced into the field at construction.
  std::optional<RootOfUnity> image;
  // Direct residual image (coordinate list), bypassing reduction.
  std::optional<std::vector<std::int64_t>> residual_image;
};

class CharacterSpec {
 public:
  CharacterSpec(std::int64_t modulus, std::vector<SpecEntry> entries,
                std::optional<bool> parity_declared_even = std::nullopt);
  static CharacterSpec trivial() { return CharacterSpec(1, {}); }

  std::int64_t modulus() const { return modulus_; }
  const std::vector<SpecEntry>& entries() const { return entries_; }
  std::optional<bool> parity_declared_even() const { return parity_declared_even_; }

  // Evenness computed in characteristic zero as the value at -1; possible
  // only when every entry carries a root-of-unity image (a declared parity is
  // cross-checked against the computation, or used as fallback).
  bool is_even() const;

  // Primes where the characteristic-zero character may be ramified.  Exact
  // when all images are roots of unity; otherwise the modulus support is the
  // conservative answer.
  std::set<std::int64_t> ramified_support() const;

  // Exact characteristic-zero conductor; requires root-of-unity images.
  std::int64_t conductor() const;
  bool conductor_known() const;

 private:
  std::int64_t modulus_;
  std::vector<SpecEntry> entries_;
  std::optional<bool> parity_declared_even_;
};

class ResidualCharacter {
 public:
  static ResidualCharacter from_spec(const CharacterSpec& spec, const ResidueField& field);
  static ResidualCharacter trivial(const ResidueField& field);

  const ResidueField& field() const { return field_; }
  std::int64_t conductor() const { return conductor_; }
  bool is_trivial() const { return conductor_ == 1; }
  std::vector<std::int64_t> ramified_primes() const;
  bool is_ramified_at(std::int64_t q) const;

  // Value at a; requires gcd(a, conductor) == 1.
  FieldElement eval(std::int64_t a) const;
  // Product of the local components away from ell, evaluated at ell.
  FieldElement prime_to_ell_eval(std::int64_t ell) const;
  // The component at q as a standalone character (trivial when q is unramified).
  ResidualCharacter local_component(std::int64_t q) const;
  // Value at -1; agrees with characteristic-zero evenness since p is odd.
  bool is_even() const;

  ResidualCharacter operator*(const ResidualCharacter& rhs) const;

  bool operator==(const ResidualCharacter& rhs) const;
  bool operator!=(const ResidualCharacter& rhs) const { return !(*this == rhs); }

  std::string describe() const;

 private:
  // Local character modulo q^e stored at exact conductor.
  // odd q : images = { value at the canonical primitive root }
  // q = 2 : e == 2: images = { value at -1 };  e >= 3: { value at -1, value at 5 }
  struct Component {
    std::int64_t q = 0;
    int e = 0;
    std::int64_t modulus = 0;  // q^e
    std::vector<FieldElement> images;
  };

  ResidualCharacter(ResidueField field, std::map<std::int64_t, Component> comps);
  static std::optional<Component> minimize(const ResidueField& field, const Component& raw);
  FieldElement component_eval(const Component& c, std::int64_t a) const;

  ResidueField field_;
  std::int64_t conductor_;
  std::map<std::int64_t, Component> comps_;
};

// Canonical primitive root modulo q^e (odd q): the smallest one.
std::int64_t canonical_primitive_root(std::int64_t q, int e);

// Discrete log of a in (ZZ/q^e)^x to the base g (a primitive root).
std::int64_t unit_dlog(std::int64_t g, std::int64_t a, std::int64_t modulus, std::int64_t group_order);

}  // namespace symsq
