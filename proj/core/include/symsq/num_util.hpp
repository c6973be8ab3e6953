#pragma once

#include <cstdint>
#include <vector>

// Exact 64-bit number theory helpers.  All routines are deterministic and
// overflow-checked; sizes are desk scale (arguments bounded well below 2^62).

namespace symsq::num {

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t powmod(std::int64_t base, std::int64_t exp, std::int64_t m);

// Deterministic Miller-Rabin, valid for all inputs < 2^63.
bool is_prime(std::int64_t n);

// Inverse of a modulo m; requires gcd(a, m) == 1.
std::int64_t invmod(std::int64_t a, std::int64_t m);

struct PrimePower {
  std::int64_t p;
  int e;
};

// Full factorization (Pollard rho + trial division), primes ascending.
std::vector<PrimePower> factorize(std::int64_t n);

// Distinct prime divisors, ascending.
std::vector<std::int64_t> prime_divisors(std::int64_t n);

// Largest e with p^e | n (n != 0).
int valuation(std::int64_t n, std::int64_t p);

// p^e with an overflow check; throws Error when the result exceeds 2^62.
std::int64_t checked_pow(std::int64_t p, int e);

// Primes <= bound, ascending (simple sieve).
std::vector<std::int64_t> primes_up_to(std::int64_t bound);

std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t lcm_checked(std::int64_t a, std::int64_t b);

inline std::int64_t mod_nonneg(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace symsq::num
