#include "carmforms/arith.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>

namespace carmforms {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 n) { return static_cast<u64>(u128(a) * b % n); }

u64 powmod(u64 base, u64 exp, u64 n) {
  u64 result = 1;
  base %= n;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, n);
    base = mulmod(base, base, n);
    exp >>= 1;
  }
  return result;
}

bool mr_composite(u64 n, u64 a, u64 d, int s) {
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int r = 1; r < s; ++r) {
    x = mulmod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

const std::vector<std::uint32_t>& trial_primes() {
  static const std::vector<std::uint32_t> primes = primes_below(4096);
  return primes;
}

// Brent's cycle variant of Pollard rho; n must be odd, composite and free
// of factors below the trial-division bound.  The polynomial increment is
// swept deterministically so results are reproducible.
u64 brent_rho(u64 n) {
  for (u64 c = 1;; ++c) {
    auto step = [&](u64 v) {
      v = mulmod(v, v, n);
      return v >= n - c ? v - (n - c) : v + c;
    };
    u64 x = 2, y = 2, d = 1, q = 1, ys = 0;
    const u64 batch = 128;
    for (u64 r = 1; d == 1; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = step(y);
      for (u64 k = 0; k < r && d == 1; k += batch) {
        ys = y;
        for (u64 i = 0; i < std::min(batch, r - k); ++i) {
          y = step(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        d = std::gcd(q, n);
      }
    }
    if (d == n) {
      // The batched gcd collapsed; retry the last block one step at a time.
      d = 1;
      while (d == 1) {
        ys = step(ys);
        d = std::gcd(x > ys ? x - ys : ys - x, n);
      }
    }
    if (d != n) return d;
  }
}

void factor_recursive(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  u64 d = brent_rho(n);
  factor_recursive(d, out);
  factor_recursive(n / d, out);
}

void check_nonnegative(const Natural& m, const char* what) {
  if (sgn(m) < 0) raise(errc::invalid_input, std::string(what) + ": negative value");
}

// Strong Lucas probable-prime test with Selfridge's parameter choice.
// n must be odd, > 2, with no tiny prime factors and not a perfect square.
bool strong_lucas_prp(const Natural& n) {
  long d_abs = 5;
  int sign = 1;
  long D;
  while (true) {
    D = sign * d_abs;
    mpz_class Dz(D);
    int j = mpz_jacobi(Dz.get_mpz_t(), n.get_mpz_t());
    if (j == 0) return false;  // shares a factor with D < n
    if (j == -1) break;
    d_abs += 2;
    sign = -sign;
  }
  // P = 1, Q = (1 - D) / 4
  mpz_class Q = (1 - mpz_class(D)) / 4;
  mpz_class d = n + 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;

  auto norm = [&](mpz_class& x) {
    x %= n;
    if (sgn(x) < 0) x += n;
  };
  auto halve = [&](mpz_class& x) {  // x in [0, n)
    if (mpz_odd_p(x.get_mpz_t())) x += n;
    x >>= 1;
  };

  // Left-to-right binary chain computing (U_d, V_d, Q^d) mod n.
  mpz_class U = 1, V = 1, Qk = Q;
  norm(Qk);
  long bits = long(mpz_sizeinbase(d.get_mpz_t(), 2));
  for (long i = bits - 2; i >= 0; --i) {
    // (U, V) <- (U*V, V^2 - 2 Q^k); k doubles
    U = U * V;
    norm(U);
    V = V * V - 2 * Qk;
    norm(V);
    Qk = Qk * Qk;
    norm(Qk);
    if (mpz_tstbit(d.get_mpz_t(), i)) {
      // (U, V) <- ((U + V)/2, (D*U + V)/2); k increments (P = 1)
      mpz_class U2 = U + V;
      norm(U2);
      halve(U2);
      mpz_class V2 = mpz_class(D) * U + V;
      norm(V2);
      halve(V2);
      U = U2;
      V = V2;
      Qk = Qk * Q;
      norm(Qk);
    }
  }
  if (U == 0 || V == 0) return true;
  for (unsigned long r = 1; r < s; ++r) {
    V = V * V - 2 * Qk;
    norm(V);
    if (V == 0) return true;
    Qk = Qk * Qk;
    norm(Qk);
  }
  return false;
}

bool mr_round_mpz(const Natural& n, const Natural& base, const Natural& d, unsigned long s) {
  // Returns true when the round is consistent with n prime.
  Natural x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool fits_u64(const Natural& m) {
  return sgn(m) >= 0 && mpz_sizeinbase(m.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const Natural& m) {
  if (!fits_u64(m)) raise(errc::out_of_range, "value does not fit in 64 bits");
  u64 lo = mpz_getlimbn(m.get_mpz_t(), 0);
  return mpz_size(m.get_mpz_t()) == 0 ? 0 : lo;
}

Natural isqrt(const Natural& m) {
  check_nonnegative(m, "isqrt");
  Natural r;
  mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::vector<Natural> digits(const Natural& m, const Natural& base) {
  check_nonnegative(m, "digits");
  if (base < 2) raise(errc::invalid_base, "digits: base must be >= 2");
  std::vector<Natural> out;
  Natural q = m, r;
  while (q != 0) {
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t(), base.get_mpz_t());
    out.push_back(r);
  }
  return out;
}

Natural digit_sum(const Natural& m, const Natural& base) {
  check_nonnegative(m, "digit_sum");
  if (base == 0) raise(errc::invalid_base, "digit_sum: base 0 is undefined");
  if (base == 1) return 0;  // s_1(m) := 0
  if (fits_u64(m) && fits_u64(base)) return Natural(digit_sum_u64(to_u64(m), to_u64(base)));
  Natural sum = 0, q = m, r;
  while (q != 0) {
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t(), base.get_mpz_t());
    sum += r;
  }
  return sum;
}

std::uint64_t digit_sum_u64(std::uint64_t m, std::uint64_t base) {
  u64 sum = 0;
  while (m) {
    sum += m % base;
    m /= base;
  }
  return sum;
}

unsigned ord_base(const Natural& m, const Natural& base) {
  if (m == 0) raise(errc::undefined_order, "ord_base: undefined for m = 0");
  check_nonnegative(m, "ord_base");
  if (base < 2) raise(errc::invalid_base, "ord_base: base must be >= 2");
  unsigned n = 0;
  Natural q = m;
  while (mpz_divisible_p(q.get_mpz_t(), base.get_mpz_t())) {
    mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), base.get_mpz_t());
    ++n;
  }
  return n;
}

unsigned ord_base_u64(std::uint64_t m, std::uint64_t base) {
  unsigned n = 0;
  while (m % base == 0) {
    m /= base;
    ++n;
  }
  return n;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;
  int s = 0;
  u64 d = n - 1;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for the full 64-bit range.
  for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    if (a % n == 0) continue;
    if (mr_composite(n, a % n, d, s)) return false;
  }
  return true;
}

bool is_probable_prime_large(const Natural& m) {
  if (m < 2) return false;
  for (std::uint32_t p : trial_primes()) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) return m == p;
  }
  if (mpz_perfect_square_p(m.get_mpz_t())) return false;
  Natural d = m - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;
  if (!mr_round_mpz(m, 2, d, s)) return false;
  if (!strong_lucas_prp(m)) return false;
  // 64 further strong pseudoprime rounds; the bases come from a generator
  // seeded by the input, so repeated calls agree.
  std::mt19937_64 gen(0x9e3779b97f4a7c15ull ^ mpz_getlimbn(m.get_mpz_t(), 0));
  for (int round = 0; round < 64; ++round) {
    Natural base = Natural(gen()) % (m - 3) + 2;
    if (!mr_round_mpz(m, base, d, s)) return false;
  }
  return true;
}

bool is_prime(const Natural& m) {
  if (sgn(m) < 0) return false;
  if (fits_u64(m)) return is_prime_u64(to_u64(m));
  return is_probable_prime_large(m);
}

bool PrimeFactorization::squarefree() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const Entry& e) { return e.exponent == 1; });
}

PrimeFactorization factorize_u64(std::uint64_t m) {
  if (m == 0) raise(errc::invalid_input, "factorize: m must be >= 1");
  PrimeFactorization f;
  f.value = Natural(m);
  u64 n = m;
  for (std::uint32_t p : trial_primes()) {
    if (u64(p) * p > n) break;
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      f.entries.push_back({Natural(p), e});
    }
  }
  if (n > 1) {
    std::vector<u64> rest;
    factor_recursive(n, rest);
    std::sort(rest.begin(), rest.end());
    for (std::size_t i = 0; i < rest.size();) {
      std::size_t j = i;
      while (j < rest.size() && rest[j] == rest[i]) ++j;
      f.entries.push_back({Natural(rest[i]), unsigned(j - i)});
      i = j;
    }
  }
  std::sort(f.entries.begin(), f.entries.end(),
            [](const auto& a, const auto& b) { return a.prime < b.prime; });
  return f;
}

PrimeFactorization factorize(const Natural& m) {
  if (m == 0) raise(errc::invalid_input, "factorize: m must be >= 1");
  check_nonnegative(m, "factorize");
  if (!fits_u64(m))
    raise(errc::out_of_range,
          "factorize: value exceeds 2^64; supply the factorization explicitly");
  return factorize_u64(to_u64(m));
}

PrimeFactorization verified_factorization(const Natural& value,
                                          std::vector<PrimeFactorization::Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.prime < b.prime; });
  PrimeFactorization f;
  f.value = value;
  for (std::size_t i = 0; i < entries.size();) {
    unsigned e = 0;
    std::size_t j = i;
    for (; j < entries.size() && entries[j].prime == entries[i].prime; ++j) e += entries[j].exponent;
    if (e == 0) raise(errc::invalid_input, "factorization: zero exponent");
    f.entries.push_back({entries[i].prime, e});
    i = j;
  }
  Natural product = 1;
  for (const auto& entry : f.entries) {
    if (!is_prime(entry.prime))
      raise(errc::invalid_input,
            "factorization: " + entry.prime.get_str() + " is not prime");
    Natural pe;
    mpz_pow_ui(pe.get_mpz_t(), entry.prime.get_mpz_t(), entry.exponent);
    product *= pe;
  }
  if (product != value)
    raise(errc::invalid_input, "factorization: product " + product.get_str() +
                                   " does not equal " + value.get_str());
  return f;
}

std::vector<Natural> divisors(const PrimeFactorization& f) {
  std::vector<Natural> out{1};
  for (const auto& entry : f.entries) {
    std::size_t n = out.size();
    Natural pe = 1;
    for (unsigned e = 1; e <= entry.exponent; ++e) {
      pe *= entry.prime;
      for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * pe);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Natural mod_inverse(const Natural& a, const Natural& n) {
  if (n < 2) raise(errc::invalid_input, "mod_inverse: modulus must be >= 2");
  check_nonnegative(a, "mod_inverse");
  Natural x;
  if (mpz_invert(x.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t()) == 0)
    raise(errc::not_invertible,
          "mod_inverse: " + a.get_str() + " is not invertible mod " + n.get_str());
  return x;
}

std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t limit) {
  std::vector<std::uint32_t> spf(limit, 0);
  for (std::uint64_t i = 2; i < limit; ++i) {
    if (spf[i] == 0) {
      for (std::uint64_t j = i; j < limit; j += i) {
        if (spf[j] == 0) spf[j] = std::uint32_t(i);
      }
    }
  }
  return spf;
}

PrimeFactorization factorize_with_spf(std::uint32_t m, const std::vector<std::uint32_t>& spf) {
  if (m == 0 || m >= spf.size()) raise(errc::out_of_range, "factorize_with_spf: out of range");
  PrimeFactorization f;
  f.value = Natural(std::uint64_t(m));
  std::uint32_t n = m;
  while (n > 1) {
    std::uint32_t p = spf[n];
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.entries.push_back({Natural(std::uint64_t(p)), e});
  }
  return f;
}

std::vector<std::uint32_t> primes_below(std::uint32_t limit) {
  std::vector<bool> composite(limit, false);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i < limit; ++i) {
    if (!composite[i]) {
      primes.push_back(std::uint32_t(i));
      for (std::uint64_t j = i * i; j < limit; j += i) composite[j] = true;
    }
  }
  return primes;
}

}  // namespace carmforms
