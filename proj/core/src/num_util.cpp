#include "symsq/num_util.hpp"

#include <algorithm>
#include <numeric>

#include "symsq/error.hpp"

namespace symsq::num {

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

std::int64_t powmod(std::int64_t base, std::int64_t exp, std::int64_t m) {
  if (m <= 0) fail("powmod: modulus must be positive");
  if (exp < 0) fail("powmod: negative exponent");
  std::int64_t r = 1 % m;
  std::int64_t b = mod_nonneg(base, m);
  while (exp > 0) {
    if (exp & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    exp >>= 1;
  }
  return r;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::int64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These witnesses decide primality for every n < 3.3 * 10^24.
  for (std::int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::int64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t invmod(std::int64_t a, std::int64_t m) {
  if (m <= 0) fail("invmod: modulus must be positive");
  std::int64_t r0 = m, r1 = mod_nonneg(a, m);
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 != 1) fail("invmod: argument not invertible");
  return mod_nonneg(t0, m);
}

namespace {

std::int64_t pollard_rho(std::int64_t n) {
  if (n % 2 == 0) return 2;
  for (std::int64_t c = 1;; ++c) {
    std::int64_t x = 2, y = 2, d = 1;
    while (d == 1) {
      x = mod_nonneg(mulmod(x, x, n) + c, n);
      y = mod_nonneg(mulmod(y, y, n) + c, n);
      y = mod_nonneg(mulmod(y, y, n) + c, n);
      d = std::gcd(std::abs(x - y), n);
    }
    if (d != n) return d;
  }
}

void factor_rec(std::int64_t n, std::vector<std::int64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  std::int64_t d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::vector<PrimePower> factorize(std::int64_t n) {
  if (n <= 0) fail("factorize: argument must be positive");
  std::vector<std::int64_t> primes;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  factor_rec(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<PrimePower> out;
  for (std::size_t i = 0; i < primes.size();) {
    std::size_t j = i;
    while (j < primes.size() && primes[j] == primes[i]) ++j;
    out.push_back({primes[i], static_cast<int>(j - i)});
    i = j;
  }
  return out;
}

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (const auto& pp : factorize(n)) out.push_back(pp.p);
  return out;
}

int valuation(std::int64_t n, std::int64_t p) {
  if (n == 0) fail("valuation: n must be nonzero");
  if (p < 2) fail("valuation: p must be >= 2");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

std::int64_t checked_pow(std::int64_t p, int e) {
  if (p < 1 || e < 0) fail("checked_pow: bad arguments");
  constexpr std::int64_t kLimit = std::int64_t{1} << 62;
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > kLimit / p) fail("checked_pow: result exceeds 2^62");
    r *= p;
  }
  return r;
}

std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
  std::vector<std::int64_t> out;
  if (bound < 2) return out;
  std::vector<bool> sieve(static_cast<std::size_t>(bound) + 1, true);
  for (std::int64_t i = 2; i <= bound; ++i) {
    if (!sieve[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= bound; j += i) sieve[static_cast<std::size_t>(j)] = false;
  }
  return out;
}

std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
  if (a <= 0 || b <= 0) fail("lcm_checked: arguments must be positive");
  std::int64_t g = std::gcd(a, b);
  __int128 l = static_cast<__int128>(a / g) * b;
  if (l > (static_cast<__int128>(1) << 62)) fail("lcm_checked: result exceeds 2^62");
  return static_cast<std::int64_t>(l);
}

}  // namespace symsq::num
