#include "symsq/dirichlet.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "symsq/error.hpp"
#include "symsq/num_util.hpp"

namespace symsq {

using num::mod_nonneg;

namespace {

constexpr std::int64_t kModulusLimit = 1000000;

std::int64_t euler_phi_prime_power(std::int64_t q, int e) {
  return num::checked_pow(q, e - 1) * (q - 1);
}

std::int64_t unit_order(std::int64_t a, std::int64_t modulus, std::int64_t group_order) {
  std::int64_t ord = group_order;
  for (const auto& pp : num::factorize(group_order)) {
    for (int i = 0; i < pp.e; ++i) {
      if (num::powmod(a, ord / pp.p, modulus) == 1)
        ord /= pp.p;
      else
        break;
    }
  }
  return ord;
}

// One prime-power block of a character spec after structural validation.
struct LocalSpec {
  std::int64_t q = 0;
  int e = 0;
  std::int64_t modulus = 0;
  // odd q, q^e = 4: one entry.  q = 2, e >= 3: entry for -1 first, then 5.
  std::vector<const SpecEntry*> entries;
  std::vector<std::int64_t> entry_orders;  // order of each generator
};

std::vector<LocalSpec> group_spec(std::int64_t m, const std::vector<SpecEntry>& entries) {
  if (m < 1) fail("character spec: modulus must be >= 1");
  if (m > kModulusLimit) fail("character spec: modulus too large for desk-scale evaluation");

  std::vector<LocalSpec> locals;
  for (const auto& pp : (m == 1 ? std::vector<num::PrimePower>{} : num::factorize(m))) {
    LocalSpec ls;
    ls.q = pp.p;
    ls.e = pp.e;
    ls.modulus = num::checked_pow(pp.p, pp.e);
    locals.push_back(ls);
  }

  for (const auto& entry : entries) {
    std::int64_t g = mod_nonneg(entry.generator, m);
    if (m == 1 || std::gcd(g, m) != 1)
      fail("character spec: generator " + std::to_string(entry.generator) +
           " is not a unit modulo " + std::to_string(m));
    if (!entry.image && !entry.residual_image)
      fail("character spec: generator " + std::to_string(entry.generator) +
           " carries neither a root-of-unity image nor a residual image");
    LocalSpec* support = nullptr;
    for (auto& ls : locals) {
      if (mod_nonneg(g, ls.modulus) != 1) {
        if (support != nullptr)
          fail("character spec: generator " + std::to_string(entry.generator) +
               " is supported at more than one prime power; supply one generator per cyclic factor");
        support = &ls;
      }
    }
    if (support == nullptr)
      fail("character spec: generator " + std::to_string(entry.generator) + " is trivial modulo " +
           std::to_string(m));
    support->entries.push_back(&entry);
  }

  for (auto& ls : locals) {
    std::int64_t phi = euler_phi_prime_power(ls.q, ls.e);
    if (ls.q != 2) {
      if (ls.entries.size() != 1)
        fail("character spec: expected exactly one generator for the cyclic factor modulo " +
             std::to_string(ls.modulus) + " (a primitive root); the listed generators do not generate");
      std::int64_t g = mod_nonneg(ls.entries[0]->generator, ls.modulus);
      if (unit_order(g, ls.modulus, phi) != phi)
        fail("character spec: generator " + std::to_string(ls.entries[0]->generator) +
             " is not a primitive root modulo " + std::to_string(ls.modulus));
      ls.entry_orders = {phi};
    } else if (ls.e == 1) {
      if (!ls.entries.empty())
        fail("character spec: (Z/2)^x is trivial and admits no generator");
    } else if (ls.e == 2) {
      if (ls.entries.size() != 1 || mod_nonneg(ls.entries[0]->generator, 4) != 3)
        fail("character spec: the factor modulo 4 needs exactly the generator -1 (class of 3)");
      ls.entry_orders = {2};
    } else {
      if (ls.entries.size() != 2)
        fail("character spec: the factor modulo " + std::to_string(ls.modulus) +
             " needs exactly the generators -1 and 5");
      auto is_m1 = [&](const SpecEntry* s) {
        return mod_nonneg(s->generator, ls.modulus) == ls.modulus - 1;
      };
      auto is_5 = [&](const SpecEntry* s) { return mod_nonneg(s->generator, ls.modulus) == 5; };
      const SpecEntry* m1 = nullptr;
      const SpecEntry* five = nullptr;
      for (const auto* s : ls.entries) {
        if (is_m1(s))
          m1 = s;
        else if (is_5(s))
          five = s;
      }
      if (m1 == nullptr || five == nullptr)
        fail("character spec: the factor modulo " + std::to_string(ls.modulus) +
             " needs exactly the generators -1 and 5");
      ls.entries = {m1, five};
      ls.entry_orders = {2, ls.modulus / 4};
    }
    for (std::size_t i = 0; i < ls.entries.size(); ++i) {
      const auto& img = ls.entries[i]->image;
      if (img && ls.entry_orders[i] % img->order() != 0)
        fail("character spec: image order " + std::to_string(img->order()) +
             " does not divide the order of generator " + std::to_string(ls.entries[i]->generator));
    }
  }
  return locals;
}

}  // namespace

CharacterSpec::CharacterSpec(std::int64_t modulus, std::vector<SpecEntry> entries,
                             std::optional<bool> parity_declared_even)
    : modulus_(modulus), entries_(std::move(entries)), parity_declared_even_(parity_declared_even) {
  group_spec(modulus_, entries_);  // eager structural validation
}

bool CharacterSpec::is_even() const {
  bool computable = std::all_of(entries_.begin(), entries_.end(),
                                [](const SpecEntry& s) { return s.image.has_value(); });
  if (!computable) {
    if (parity_declared_even_) return *parity_declared_even_;
    fail("character spec: parity is undetermined (residual images without declared parity)");
  }
  auto locals = group_spec(modulus_, entries_);
  // Value at -1: each cyclic factor contributes image(g)^(ord(g)/2); for
  // q = 2, e >= 3 the contribution is the image of -1 itself.
  bool even = true;
  for (const auto& ls : locals) {
    RootOfUnity contrib = RootOfUnity::one();
    if (ls.q != 2 || ls.e == 2) {
      if (!ls.entries.empty()) contrib = ls.entries[0]->image->pow(ls.entry_orders[0] / 2);
    } else if (ls.e >= 3) {
      contrib = *ls.entries[0]->image;
    }
    if (contrib.order() > 2) fail("character spec: value at -1 is not a sign");  // unreachable
    if (contrib.order() == 2) even = !even;
  }
  if (parity_declared_even_ && *parity_declared_even_ != even)
    fail("character spec: declared parity contradicts the computed value at -1");
  return even;
}

std::set<std::int64_t> CharacterSpec::ramified_support() const {
  std::set<std::int64_t> out;
  auto locals = group_spec(modulus_, entries_);
  for (const auto& ls : locals) {
    bool nontrivial = false;
    for (const auto* s : ls.entries) {
      if (s->image && s->image->is_one() && !s->residual_image) continue;
      nontrivial = true;  // residual images count conservatively
    }
    if (nontrivial) out.insert(ls.q);
  }
  return out;
}

bool CharacterSpec::conductor_known() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const SpecEntry& s) { return s.image.has_value(); });
}

std::int64_t CharacterSpec::conductor() const {
  if (!conductor_known())
    fail("character spec: conductor requires root-of-unity images for every generator");
  auto locals = group_spec(modulus_, entries_);
  std::int64_t cond = 1;
  for (const auto& ls : locals) {
    if (ls.q != 2) {
      std::int64_t n = ls.entries.empty() ? 1 : ls.entries[0]->image->order();
      if (n > 1) cond *= num::checked_pow(ls.q, num::valuation(n, ls.q) + 1);
    } else if (ls.e == 2) {
      if (!ls.entries.empty() && ls.entries[0]->image->order() == 2) cond *= 4;
    } else if (ls.e >= 3) {
      std::int64_t n5 = ls.entries[1]->image->order();
      std::int64_t nm1 = ls.entries[0]->image->order();
      if (n5 > 1)
        cond *= num::checked_pow(2, num::valuation(n5, 2) + 2);
      else if (nm1 == 2)
        cond *= 4;
    }
  }
  return cond;
}

std::int64_t canonical_primitive_root(std::int64_t q, int e) {
  std::int64_t modulus = num::checked_pow(q, e);
  std::int64_t phi = euler_phi_prime_power(q, e);
  for (std::int64_t g = 2; g < modulus; ++g) {
    if (g % q == 0) continue;
    if (unit_order(g, modulus, phi) == phi) return g;
  }
  fail("no primitive root modulo " + std::to_string(modulus));  // unreachable for odd q
}

std::int64_t unit_dlog(std::int64_t g, std::int64_t a, std::int64_t modulus,
                       std::int64_t group_order) {
  std::int64_t target = mod_nonneg(a, modulus);
  std::int64_t acc = 1 % modulus;
  for (std::int64_t t = 0; t < group_order; ++t) {
    if (acc == target) return t;
    acc = num::mulmod(acc, g, modulus);
  }
  fail("discrete log: target is not a power of the base");
}

ResidualCharacter::ResidualCharacter(ResidueField field, std::map<std::int64_t, Component> comps)
    : field_(std::move(field)), conductor_(1), comps_(std::move(comps)) {
  for (const auto& [q, c] : comps_) conductor_ *= c.modulus;
}

ResidualCharacter ResidualCharacter::trivial(const ResidueField& field) {
  return ResidualCharacter(field, {});
}

FieldElement ResidualCharacter::component_eval(const Component& c, std::int64_t a) const {
  std::int64_t target = mod_nonneg(a, c.modulus);
  if (std::gcd(target, c.modulus) != 1)
    fail("character evaluation: argument shares a factor with the conductor");
  if (c.q != 2) {
    std::int64_t g = canonical_primitive_root(c.q, c.e);
    std::int64_t t = unit_dlog(g, target, c.modulus, euler_phi_prime_power(c.q, c.e));
    return c.images[0].pow(t);
  }
  if (c.e == 2) return target == 1 ? field_.one() : c.images[0];
  // a = (-1)^s 5^t modulo 2^e.
  std::int64_t val5 = 1;
  for (std::int64_t t = 0; t < c.modulus / 4; ++t) {
    if (val5 == target) return c.images[1].pow(t);
    if (c.modulus - val5 == target) return c.images[0] * c.images[1].pow(t);
    val5 = num::mulmod(val5, 5, c.modulus);
  }
  fail("character evaluation: 2-adic decomposition failed");  // unreachable
}

std::optional<ResidualCharacter::Component> ResidualCharacter::minimize(const ResidueField& field,
                                                                        const Component& raw) {
  ResidualCharacter probe(field, {});  // for component_eval only
  auto eval_raw = [&](std::int64_t a) { return probe.component_eval(raw, a); };

  if (raw.q != 2) {
    std::int64_t n = raw.images[0].is_zero() ? 0 : raw.images[0].multiplicative_order();
    if (n <= 1) return std::nullopt;
    int e_min = num::valuation(n, raw.q) + 1;
    if (e_min == raw.e) return raw;
    Component c;
    c.q = raw.q;
    c.e = e_min;
    c.modulus = num::checked_pow(raw.q, e_min);
    c.images = {eval_raw(canonical_primitive_root(raw.q, e_min))};
    return c;
  }
  std::int64_t nm1 = raw.images[0].multiplicative_order();
  std::int64_t n5 = raw.e >= 3 ? raw.images[1].multiplicative_order() : 1;
  if (n5 == 1 && nm1 == 1) return std::nullopt;
  int e_min = n5 > 1 ? num::valuation(n5, 2) + 2 : 2;
  if (e_min == raw.e) return raw;
  Component c;
  c.q = 2;
  c.e = e_min;
  c.modulus = num::checked_pow(2, e_min);
  if (e_min == 2)
    c.images = {eval_raw(3)};
  else
    c.images = {eval_raw(c.modulus - 1), eval_raw(5)};
  return c;
}

ResidualCharacter ResidualCharacter::from_spec(const CharacterSpec& spec,
                                               const ResidueField& field) {
  auto locals = group_spec(spec.modulus(), spec.entries());
  const std::int64_t p = field.characteristic();
  std::map<std::int64_t, Component> comps;

  for (const auto& ls : locals) {
    if (ls.entries.empty()) continue;

    std::vector<FieldElement> raw_images;
    for (std::size_t i = 0; i < ls.entries.size(); ++i) {
      const SpecEntry& s = *ls.entries[i];
      std::optional<FieldElement> elt;
      if (s.image) elt = reduce_root_of_unity(*s.image, field);
      if (s.residual_image) {
        FieldElement direct = field.element(*s.residual_image);
        if (direct.is_zero()) fail("character spec: residual image must be a unit");
        if (elt && direct != *elt)
          fail("character spec: residual image disagrees with the reduced root of unity for generator " +
               std::to_string(s.generator));
        elt = direct;
        std::int64_t n = direct.multiplicative_order();
        std::int64_t gen_ord = ls.entry_orders[i];
        // The prime-to-p part of the generator order must absorb the image
        // order (p-power torsion has already died in the residue field).
        while (gen_ord % p == 0) gen_ord /= p;
        if (gen_ord % n != 0)
          fail("character spec: residual image order " + std::to_string(n) +
               " is incompatible with generator " + std::to_string(s.generator));
      }
      raw_images.push_back(*elt);
    }

    if (ls.q == p) {
      for (const auto& img : raw_images)
        if (!img.is_one())
          fail("character spec: the component at p = " + std::to_string(p) +
               " must have p-power order (it reduces away); its image survives reduction");
      continue;
    }

    Component raw;
    raw.q = ls.q;
    raw.e = ls.e;
    raw.modulus = ls.modulus;
    if (ls.q != 2) {
      std::int64_t g_user = mod_nonneg(ls.entries[0]->generator, ls.modulus);
      std::int64_t g_can = canonical_primitive_root(ls.q, ls.e);
      FieldElement img = raw_images[0];
      if (g_user != g_can) {
        std::int64_t k = unit_dlog(g_user, g_can, ls.modulus, euler_phi_prime_power(ls.q, ls.e));
        img = img.pow(k);
      }
      raw.images = {img};
    } else {
      raw.images = raw_images;  // already the canonical generators (-1[, 5])
    }
    auto minimized = minimize(field, raw);
    if (minimized) comps.emplace(ls.q, *minimized);
  }
  return ResidualCharacter(field, std::move(comps));
}

std::vector<std::int64_t> ResidualCharacter::ramified_primes() const {
  std::vector<std::int64_t> out;
  for (const auto& [q, c] : comps_) out.push_back(q);
  return out;
}

bool ResidualCharacter::is_ramified_at(std::int64_t q) const { return comps_.count(q) > 0; }

FieldElement ResidualCharacter::eval(std::int64_t a) const {
  if (conductor_ > 1 && std::gcd(mod_nonneg(a, conductor_), conductor_) != 1)
    fail("character evaluation: argument " + std::to_string(a) +
         " is not coprime to the conductor " + std::to_string(conductor_));
  FieldElement v = field_.one();
  for (const auto& [q, c] : comps_) v = v * component_eval(c, a);
  return v;
}

FieldElement ResidualCharacter::prime_to_ell_eval(std::int64_t ell) const {
  FieldElement v = field_.one();
  for (const auto& [q, c] : comps_) {
    if (q == ell) continue;
    v = v * component_eval(c, ell);
  }
  return v;
}

ResidualCharacter ResidualCharacter::local_component(std::int64_t q) const {
  auto it = comps_.find(q);
  if (it == comps_.end()) return trivial(field_);
  return ResidualCharacter(field_, {{q, it->second}});
}

bool ResidualCharacter::is_even() const {
  if (conductor_ == 1) return true;
  return eval(conductor_ - 1).is_one();
}

ResidualCharacter ResidualCharacter::operator*(const ResidualCharacter& rhs) const {
  if (field_ != rhs.field_) fail("character product: fields differ");
  std::set<std::int64_t> primes;
  for (const auto& [q, c] : comps_) primes.insert(q);
  for (const auto& [q, c] : rhs.comps_) primes.insert(q);

  std::map<std::int64_t, Component> out;
  for (std::int64_t q : primes) {
    auto it1 = comps_.find(q);
    auto it2 = rhs.comps_.find(q);
    if (it2 == rhs.comps_.end()) {
      out.emplace(q, it1->second);
      continue;
    }
    if (it1 == comps_.end()) {
      out.emplace(q, it2->second);
      continue;
    }
    const Component& c1 = it1->second;
    const Component& c2 = it2->second;
    Component raw;
    raw.q = q;
    raw.e = std::max(c1.e, c2.e);
    raw.modulus = num::checked_pow(q, raw.e);
    if (q != 2) {
      std::int64_t g = canonical_primitive_root(q, raw.e);
      raw.images = {component_eval(c1, g) * component_eval(c2, g)};
    } else if (raw.e == 2) {
      raw.images = {component_eval(c1, 3) * component_eval(c2, 3)};
    } else {
      raw.images = {component_eval(c1, raw.modulus - 1) * component_eval(c2, raw.modulus - 1),
                    component_eval(c1, 5) * component_eval(c2, 5)};
    }
    auto minimized = minimize(field_, raw);
    if (minimized) out.emplace(q, *minimized);
  }
  return ResidualCharacter(field_, std::move(out));
}

bool ResidualCharacter::operator==(const ResidualCharacter& rhs) const {
  if (field_ != rhs.field_ || conductor_ != rhs.conductor_ || comps_.size() != rhs.comps_.size())
    return false;
  for (const auto& [q, c] : comps_) {
    auto it = rhs.comps_.find(q);
    if (it == rhs.comps_.end() || it->second.e != c.e) return false;
    if (it->second.images.size() != c.images.size()) return false;
    for (std::size_t i = 0; i < c.images.size(); ++i)
      if (it->second.images[i] != c.images[i]) return false;
  }
  return true;
}

std::string ResidualCharacter::describe() const {
  std::ostringstream os;
  os << "conductor " << conductor_;
  if (!comps_.empty()) {
    os << " (";
    bool first = true;
    for (const auto& [q, c] : comps_) {
      if (!first) os << ", ";
      first = false;
      os << q << "^" << c.e;
    }
    os << ")";
  }
  return os.str();
}

}  // namespace symsq
