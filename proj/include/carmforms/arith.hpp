#pragma once

// Exact integer arithmetic on arbitrary-precision naturals: radix expansion,
// digit sums, order of divisibility, primality, factorization, divisor
// enumeration and modular inverses.  Everything here is deterministic and
// free of floating point; hot paths dispatch to 64-bit code internally.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "carmforms/error.hpp"

namespace carmforms {

// The universal value type.  Operations taking a Natural reject negatives.
using Natural = mpz_class;

bool fits_u64(const Natural& m);
std::uint64_t to_u64(const Natural& m);
Natural isqrt(const Natural& m);

// Base-g expansion of m, least-significant digit first.  digits(0, g) is
// the empty list; the most significant digit is never zero.  Requires g >= 2.
std::vector<Natural> digits(const Natural& m, const Natural& base);

// s_g(m), the sum of the base-g digits of m.  s_1(m) = 0 by convention;
// base 0 is rejected.
Natural digit_sum(const Natural& m, const Natural& base);
std::uint64_t digit_sum_u64(std::uint64_t m, std::uint64_t base);

// ord_g(m) = max { n >= 0 : g^n | m }.  Requires m >= 1 and g >= 2.
unsigned ord_base(const Natural& m, const Natural& base);
unsigned ord_base_u64(std::uint64_t m, std::uint64_t base);

// Primality.  Deterministic and exact for all m < 2^64 (fixed strong
// pseudoprime witness set).  For larger m the answer is a strong
// pseudoprime + strong Lucas verdict reinforced by 64 further rounds on
// deterministically derived bases; the composite-accepted-as-prime
// probability is below 2^-128.  0 and 1 are not prime.
bool is_prime(const Natural& m);
bool is_prime_u64(std::uint64_t n);

// Strong BPSW-style path used above 2^64; exposed so tests can cross-check
// it against the deterministic 64-bit verdict on shared inputs.
bool is_probable_prime_large(const Natural& m);

struct PrimeFactorization {
  struct Entry {
    Natural prime;
    unsigned exponent = 1;
  };

  std::vector<Entry> entries;  // primes strictly increasing
  Natural value;               // product of prime^exponent

  bool squarefree() const;
  std::size_t n_distinct() const { return entries.size(); }
};

// Complete certified factorization of 1 <= m < 2^64: trial division by
// small primes, then Brent-cycle rho with recursive splitting.  Larger
// values must be supplied pre-factored via verified_factorization.
PrimeFactorization factorize(const Natural& m);
PrimeFactorization factorize_u64(std::uint64_t m);

// Canonicalizes caller-supplied factors (sorts, merges duplicates) and
// verifies them: every prime passes is_prime and the product equals value.
PrimeFactorization verified_factorization(const Natural& value,
                                          std::vector<PrimeFactorization::Entry> entries);

// All divisors of the factored value, ascending, including 1 and the value.
std::vector<Natural> divisors(const PrimeFactorization& f);

// The unique x in [1, n-1] with a*x = 1 (mod n).  Requires gcd(a, n) = 1.
Natural mod_inverse(const Natural& a, const Natural& n);

// Sieve utilities shared by the counting code paths.
std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t limit);
PrimeFactorization factorize_with_spf(std::uint32_t m, const std::vector<std::uint32_t>& spf);
std::vector<std::uint32_t> primes_below(std::uint32_t limit);

}  // namespace carmforms
