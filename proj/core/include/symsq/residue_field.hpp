#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

// Exact arithmetic in 𝔽_{p^d} (p odd) together with an abstract-root-of-unity
// type and its reduction modulo the maximal ideal.  Elements are coordinate
// vectors with respect to the power basis of a monic irreducible defining
// polynomial; everything is canonical so equality is structural.

namespace symsq {

class FieldElement;

class ResidueField {
 public:
  // p: odd prime.  degree >= 1.  defining_poly: monic, constant coefficient
  // first, length degree + 1; irreducibility is verified (degree-1 input is
  // accepted as is).  When omitted, the lexicographically first monic
  // irreducible polynomial of the requested degree is generated.
  static ResidueField make(std::int64_t p, int degree,
                           std::optional<std::vector<std::int64_t>> defining_poly = std::nullopt);

  std::int64_t characteristic() const;
  int degree() const;
  const std::vector<std::int64_t>& defining_poly() const;
  std::int64_t order() const;             // p^d
  std::int64_t unit_group_order() const;  // p^d - 1

  FieldElement zero() const;
  FieldElement one() const;
  // Fixed generator of the unit group: the lexicographically smallest
  // coordinate vector of full multiplicative order.
  FieldElement generator() const;

  // Coordinates must already lie in [0, p); length must equal the degree.
  FieldElement element(const std::vector<std::int64_t>& coords) const;
  // Image of an integer under ZZ -> 𝔽_p ⊆ 𝔽_{p^d}.
  FieldElement from_integer(std::int64_t n) const;

  bool operator==(const ResidueField& other) const;  // structural
  bool operator!=(const ResidueField& other) const { return !(*this == other); }

  std::string describe() const;  // "F_25 = F_5[t]/(...)"

  struct Impl;  // defined in the implementation file; opaque to users

 private:
  std::shared_ptr<const Impl> impl_;
  friend class FieldElement;
  explicit ResidueField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

class FieldElement {
 public:
  FieldElement() = delete;

  const ResidueField& field() const { return field_; }
  const std::vector<std::int64_t>& coords() const { return coords_; }
  bool is_zero() const;
  bool is_one() const;

  FieldElement operator+(const FieldElement& rhs) const;
  FieldElement operator-(const FieldElement& rhs) const;
  FieldElement operator*(const FieldElement& rhs) const;
  FieldElement operator-() const;
  FieldElement inverse() const;  // error on zero
  // Negative exponents invert (error on zero base); 0^0 = 1.
  FieldElement pow(std::int64_t e) const;

  // Order in the unit group; error on zero.
  std::int64_t multiplicative_order() const;

  // Structural equality; mismatched fields are a contract violation.
  bool operator==(const FieldElement& rhs) const;
  bool operator!=(const FieldElement& rhs) const { return !(*this == rhs); }

  std::string str() const;  // compact: "3" or "[1,2]"

 private:
  friend class ResidueField;
  FieldElement(ResidueField field, std::vector<std::int64_t> coords);
  ResidueField field_;
  std::vector<std::int64_t> coords_;
};

// ζ_n^j held abstractly, stored gcd-reduced: exponent and order are divided
// by gcd(j, n) at construction, so the stored order is the element's order.
class RootOfUnity {
 public:
  RootOfUnity(std::int64_t order, std::int64_t exponent);
  static RootOfUnity one() { return RootOfUnity(1, 0); }

  std::int64_t order() const { return n_; }
  std::int64_t exponent() const { return j_; }
  bool is_one() const { return n_ == 1; }

  RootOfUnity operator*(const RootOfUnity& rhs) const;
  RootOfUnity pow(std::int64_t e) const;

  bool operator==(const RootOfUnity& rhs) const { return n_ == rhs.n_ && j_ == rhs.j_; }
  bool operator!=(const RootOfUnity& rhs) const { return !(*this == rhs); }

 private:
  std::int64_t n_;
  std::int64_t j_;
};

// Image of ζ_n^j in the residue field.  Writing n = p^s n' with p ∤ n', the
// p-power part dies (X^{p^s} - 1 = (X - 1)^{p^s} in characteristic p) and the
// prime-to-p part lands on the compatible system ζ_{n'} := g^((p^d - 1)/n')
// built on the fixed generator g.  Under the splitting ζ_n = ζ_{p^s}^v ζ_{n'}^u
// with u = (p^s)^{-1} mod n', the image is g^(j u (p^d - 1)/n').
// Requires n' | p^d - 1.
FieldElement reduce_root_of_unity(const RootOfUnity& zeta, const ResidueField& field);

}  // namespace symsq
