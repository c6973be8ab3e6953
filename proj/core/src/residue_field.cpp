#include "symsq/residue_field.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "symsq/error.hpp"
#include "symsq/num_util.hpp"

namespace symsq {

using num::mod_nonneg;

namespace {

// Dense 𝔽_p[X] helpers used only during field construction, coefficients
// ascending, no trailing zeros.
using IPoly = std::vector<std::int64_t>;

void itrim(IPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

IPoly imul_mod(const IPoly& a, const IPoly& b, const IPoly& f, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::int64_t> prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = mod_nonneg(prod[i + j] + a[i] * b[j], p);
  // f is monic of degree d; reduce X^m for m >= d.
  const std::size_t d = f.size() - 1;
  for (std::size_t m = prod.size(); m-- > d;) {
    std::int64_t c = prod[m];
    if (c == 0) continue;
    prod[m] = 0;
    for (std::size_t j = 0; j < d; ++j)
      prod[m - d + j] = mod_nonneg(prod[m - d + j] - c * f[j], p);
  }
  prod.resize(d);
  itrim(prod);
  return prod;
}

IPoly ipow_mod(IPoly base, std::int64_t e, const IPoly& f, std::int64_t p) {
  IPoly r{1};
  while (e > 0) {
    if (e & 1) r = imul_mod(r, base, f, p);
    base = imul_mod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

IPoly ipoly_gcd(IPoly a, IPoly b, std::int64_t p) {
  itrim(a);
  itrim(b);
  while (!b.empty()) {
    // a mod b with b made monic; the monic top cancels, so each pass shrinks r.
    std::int64_t lead_inv = num::invmod(b.back(), p);
    IPoly bm(b);
    for (auto& c : bm) c = mod_nonneg(c * lead_inv, p);
    IPoly r(a);
    itrim(r);
    while (!r.empty() && r.size() >= bm.size()) {
      std::int64_t c = r.back();
      std::size_t shift = r.size() - bm.size();
      for (std::size_t j = 0; j < bm.size(); ++j)
        r[shift + j] = mod_nonneg(r[shift + j] - c * bm[j], p);
      itrim(r);
    }
    a = b;
    b = r;
  }
  return a;
}

bool is_irreducible(const IPoly& f, std::int64_t p) {
  const std::size_t d = f.size() - 1;
  if (d == 1) return true;
  if (d <= 3) {
    // Degrees 2 and 3 are irreducible exactly when they have no root.
    for (std::int64_t x = 0; x < p; ++x) {
      std::int64_t v = 0;
      for (std::size_t i = f.size(); i-- > 0;) v = mod_nonneg(v * x + f[i], p);
      if (v == 0) return false;
    }
    return true;
  }
  // f (degree d) is irreducible iff it shares no factor with X^{p^i} - X for
  // i <= d/2.  X^{p^{i+1}} = (X^{p^i})^p inside 𝔽_p[X]/(f).
  IPoly xp{0, 1};
  for (std::size_t i = 1; i <= d / 2; ++i) {
    xp = ipow_mod(xp, p, f, p);
    IPoly diff(xp);
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = mod_nonneg(diff[1] - 1, p);
    itrim(diff);
    IPoly g = ipoly_gcd(f, diff, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace

struct ResidueField::Impl {
  std::int64_t p = 0;
  int d = 0;
  std::vector<std::int64_t> poly;  // length d + 1, monic, constant first
  std::int64_t q = 0;              // p^d
  std::vector<num::PrimePower> unit_order_factors;
  std::vector<std::int64_t> generator_coords;
};

namespace {

std::vector<std::int64_t> mul_coords(const std::vector<std::int64_t>& a,
                                     const std::vector<std::int64_t>& b,
                                     const ResidueField::Impl& F);

bool coords_are_one(const std::vector<std::int64_t>& c) {
  if (c.empty() || c[0] != 1) return false;
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i] != 0) return false;
  return true;
}

std::vector<std::int64_t> pow_coords(std::vector<std::int64_t> base, std::int64_t e,
                                     const ResidueField::Impl& F) {
  std::vector<std::int64_t> r(static_cast<std::size_t>(F.d), 0);
  r[0] = 1;
  while (e > 0) {
    if (e & 1) r = mul_coords(r, base, F);
    base = mul_coords(base, base, F);
    e >>= 1;
  }
  return r;
}

std::vector<std::int64_t> mul_coords(const std::vector<std::int64_t>& a,
                                     const std::vector<std::int64_t>& b,
                                     const ResidueField::Impl& F) {
  const int d = F.d;
  const std::int64_t p = F.p;
  std::vector<std::int64_t> prod(static_cast<std::size_t>(2 * d - 1), 0);
  for (int i = 0; i < d; ++i) {
    if (a[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; j < d; ++j)
      prod[static_cast<std::size_t>(i + j)] =
          mod_nonneg(prod[static_cast<std::size_t>(i + j)] +
                         a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)],
                     p);
  }
  for (int m = 2 * d - 2; m >= d; --m) {
    std::int64_t c = prod[static_cast<std::size_t>(m)];
    if (c == 0) continue;
    prod[static_cast<std::size_t>(m)] = 0;
    for (int j = 0; j < d; ++j)
      prod[static_cast<std::size_t>(m - d + j)] =
          mod_nonneg(prod[static_cast<std::size_t>(m - d + j)] - c * F.poly[static_cast<std::size_t>(j)], p);
  }
  prod.resize(static_cast<std::size_t>(d));
  return prod;
}

bool has_full_order(const std::vector<std::int64_t>& c, const ResidueField::Impl& F) {
  for (const auto& pp : F.unit_order_factors) {
    auto t = pow_coords(c, (F.q - 1) / pp.p, F);
    if (coords_are_one(t)) return false;
  }
  return true;
}

}  // namespace

ResidueField ResidueField::make(std::int64_t p, int degree,
                                std::optional<std::vector<std::int64_t>> defining_poly) {
  if (p < 3) fail("residue field: characteristic must be an odd prime >= 3");
  if (p % 2 == 0) fail("residue field: characteristic must be odd");
  if (!num::is_prime(p)) fail("residue field: characteristic must be prime");
  if (degree < 1) fail("residue field: degree must be >= 1");

  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->d = degree;
  impl->q = num::checked_pow(p, degree);
  if (impl->q > (std::int64_t{1} << 40))
    fail("residue field: p^d too large for exact desk-scale arithmetic");

  if (defining_poly) {
    auto& f = *defining_poly;
    if (static_cast<int>(f.size()) != degree + 1)
      fail("residue field: defining polynomial must have length degree + 1");
    for (auto& c : f) {
      if (c < 0 || c >= p) fail("residue field: defining polynomial coefficients must lie in [0, p)");
    }
    if (f.back() != 1) fail("residue field: defining polynomial must be monic");
    if (degree >= 2 && !is_irreducible(f, p))
      fail("residue field: defining polynomial is reducible");
    impl->poly = f;
  } else if (degree == 1) {
    impl->poly = {0, 1};
  } else {
    // Lexicographically first monic irreducible of the requested degree.
    std::vector<std::int64_t> c(static_cast<std::size_t>(degree), 0);
    bool found = false;
    while (true) {
      IPoly f(c);
      f.push_back(1);
      if (is_irreducible(f, p)) {
        impl->poly = f;
        found = true;
        break;
      }
      int i = degree - 1;
      while (i >= 0 && c[static_cast<std::size_t>(i)] == p - 1) {
        c[static_cast<std::size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
      ++c[static_cast<std::size_t>(i)];
    }
    if (!found) fail("residue field: no irreducible polynomial found");  // unreachable
  }

  impl->unit_order_factors = num::factorize(impl->q - 1);

  // Generator: first coordinate vector in lexicographic order with full order.
  {
    std::vector<std::int64_t> c(static_cast<std::size_t>(degree), 0);
    bool found = false;
    while (true) {
      bool zero = std::all_of(c.begin(), c.end(), [](std::int64_t x) { return x == 0; });
      if (!zero && has_full_order(c, *impl)) {
        impl->generator_coords = c;
        found = true;
        break;
      }
      int i = degree - 1;
      while (i >= 0 && c[static_cast<std::size_t>(i)] == p - 1) {
        c[static_cast<std::size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
      ++c[static_cast<std::size_t>(i)];
    }
    if (!found) fail("residue field: unit group generator not found");  // unreachable
  }

  return ResidueField(std::move(impl));
}

std::int64_t ResidueField::characteristic() const { return impl_->p; }
int ResidueField::degree() const { return impl_->d; }
const std::vector<std::int64_t>& ResidueField::defining_poly() const { return impl_->poly; }
std::int64_t ResidueField::order() const { return impl_->q; }
std::int64_t ResidueField::unit_group_order() const { return impl_->q - 1; }

FieldElement ResidueField::zero() const {
  return FieldElement(*this, std::vector<std::int64_t>(static_cast<std::size_t>(impl_->d), 0));
}

FieldElement ResidueField::one() const { return from_integer(1); }

FieldElement ResidueField::generator() const { return FieldElement(*this, impl_->generator_coords); }

FieldElement ResidueField::element(const std::vector<std::int64_t>& coords) const {
  if (static_cast<int>(coords.size()) != impl_->d)
    fail("field element: coordinate vector has wrong length");
  for (auto c : coords)
    if (c < 0 || c >= impl_->p) fail("field element: coordinates must lie in [0, p)");
  return FieldElement(*this, coords);
}

FieldElement ResidueField::from_integer(std::int64_t n) const {
  std::vector<std::int64_t> c(static_cast<std::size_t>(impl_->d), 0);
  c[0] = mod_nonneg(n, impl_->p);
  return FieldElement(*this, std::move(c));
}

bool ResidueField::operator==(const ResidueField& other) const {
  if (impl_ == other.impl_) return true;
  return impl_->p == other.impl_->p && impl_->d == other.impl_->d && impl_->poly == other.impl_->poly;
}

std::string ResidueField::describe() const {
  std::ostringstream os;
  os << "F_" << impl_->q;
  if (impl_->d > 1) {
    os << " = F_" << impl_->p << "[t]/(";
    bool first = true;
    for (int i = impl_->d; i >= 0; --i) {
      std::int64_t c = impl_->poly[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      if (!first) os << "+";
      first = false;
      if (i == 0 || c != 1) os << c;
      if (i >= 1) os << (c != 1 ? "*t" : "t");
      if (i >= 2) os << "^" << i;
    }
    os << ")";
  }
  return os.str();
}

FieldElement::FieldElement(ResidueField field, std::vector<std::int64_t> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {}

namespace {
void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (a.field() != b.field()) fail("field element: operands live in different fields");
}
}  // namespace

bool FieldElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](std::int64_t c) { return c == 0; });
}

bool FieldElement::is_one() const { return coords_are_one(coords_); }

FieldElement FieldElement::operator+(const FieldElement& rhs) const {
  require_same_field(*this, rhs);
  std::vector<std::int64_t> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = mod_nonneg(coords_[i] + rhs.coords_[i], field_.impl_->p);
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator-(const FieldElement& rhs) const { return *this + (-rhs); }

FieldElement FieldElement::operator-() const {
  std::vector<std::int64_t> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod_nonneg(-coords_[i], field_.impl_->p);
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator*(const FieldElement& rhs) const {
  require_same_field(*this, rhs);
  return FieldElement(field_, mul_coords(coords_, rhs.coords_, *field_.impl_));
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) fail("field element: inversion of zero");
  return pow(field_.impl_->q - 2);
}

FieldElement FieldElement::pow(std::int64_t e) const {
  if (is_zero()) {
    if (e < 0) fail("field element: negative power of zero");
    return e == 0 ? field_.one() : *this;
  }
  std::int64_t m = field_.impl_->q - 1;
  std::int64_t r = mod_nonneg(e, m);
  return FieldElement(field_, pow_coords(coords_, r, *field_.impl_));
}

std::int64_t FieldElement::multiplicative_order() const {
  if (is_zero()) fail("field element: order of zero is undefined");
  std::int64_t ord = field_.impl_->q - 1;
  for (const auto& pp : field_.impl_->unit_order_factors) {
    for (int i = 0; i < pp.e; ++i) {
      if (pow(ord / pp.p).is_one())
        ord /= pp.p;
      else
        break;
    }
  }
  return ord;
}

bool FieldElement::operator==(const FieldElement& rhs) const {
  require_same_field(*this, rhs);
  return coords_ == rhs.coords_;
}

std::string FieldElement::str() const {
  if (coords_.size() == 1) return std::to_string(coords_[0]);
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ",";
    os << coords_[i];
  }
  os << "]";
  return os.str();
}

RootOfUnity::RootOfUnity(std::int64_t order, std::int64_t exponent) {
  if (order < 1) fail("root of unity: order must be >= 1");
  std::int64_t j = mod_nonneg(exponent, order);
  if (j == 0) {
    n_ = 1;
    j_ = 0;
    return;
  }
  std::int64_t g = std::gcd(j, order);
  n_ = order / g;
  j_ = j / g;
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& rhs) const {
  std::int64_t l = num::lcm_checked(n_, rhs.n_);
  // ζ_a^i ζ_b^j = ζ_l^(i l/a + j l/b) in the compatible system ζ_m = ζ_l^(l/m).
  std::int64_t e = mod_nonneg(num::mulmod(j_, l / n_, l) + num::mulmod(rhs.j_, l / rhs.n_, l), l);
  return RootOfUnity(l, e);
}

RootOfUnity RootOfUnity::pow(std::int64_t e) const {
  return RootOfUnity(n_, num::mulmod(j_, mod_nonneg(e, n_), n_));
}

FieldElement reduce_root_of_unity(const RootOfUnity& zeta, const ResidueField& field) {
  const std::int64_t p = field.characteristic();
  std::int64_t n = zeta.order();
  std::int64_t ps = 1;
  while (n % p == 0) {
    n /= p;
    ps *= p;
  }
  const std::int64_t n_prime = n;
  if (n_prime == 1) return field.one();
  if (field.unit_group_order() % n_prime != 0)
    fail("root of unity reduction: order " + std::to_string(n_prime) +
         " does not divide p^d - 1 = " + std::to_string(field.unit_group_order()) +
         " (declare a larger residue degree)");
  const std::int64_t u = num::invmod(ps % n_prime, n_prime);
  const std::int64_t e = num::mulmod(zeta.exponent() % n_prime, u, n_prime);
  return field.generator().pow(e * (field.unit_group_order() / n_prime));
}

}  // namespace symsq
