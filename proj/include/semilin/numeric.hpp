#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace semilin {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

inline mpz_class binomial(const mpz_class& n, unsigned long k) {
  if (n >= 0 && n < (long)k) return 0;
  mpz_class r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

inline mpz_class factorial(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline mpz_class pow_z(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

// n = u * base^k with base prime and u = 1; returns the prime, or 0 if n is
// not a prime power.
inline unsigned long prime_power_base(unsigned long q) {
  if (q < 2) return 0;
  for (unsigned long p = 2; p * p <= q; ++p) {
    if (q % p) continue;
    unsigned long m = q;
    while (m % p == 0) m /= p;
    return m == 1 ? p : 0;
  }
  return q;  // q itself prime
}

inline bool is_prime_ul(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Deterministic splitmix-style generator so seeded suites reproduce across
// platforms regardless of the stdlib's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

  // uniform in [lo, hi] inclusive
  long range(long lo, long hi) {
    return lo + (long)below((std::uint64_t)(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

}  // namespace semilin
