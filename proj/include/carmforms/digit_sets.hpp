#pragma once

// s-decompositions and the digit-sum membership predicates.
//
// A number m has an s-decomposition when m = prod g_v^{e_v} over strictly
// increasing bases g_v >= 2 such that s_{g_v}(m) >= g_v for every base
// (strict: equality).  SDG / SD collect the numbers admitting such a
// decomposition, SLG / SL only require one witness divisor, and the
// starred variants ask the prime factorization itself to qualify.  H is
// the squarefree analogue of SDG*.

#include <cstdint>
#include <optional>
#include <vector>

#include "carmforms/arith.hpp"

namespace carmforms {

enum class DecompMode { at_least, strict };

struct SDecomposition {
  struct Factor {
    Natural base;
    unsigned exponent = 1;
  };
  std::vector<Factor> factors;
  DecompMode mode = DecompMode::at_least;

  Natural product() const;
};

inline constexpr std::size_t unlimited_results = std::size_t(-1);

// All decompositions of the factored value, ordered lexicographically by
// the flattened sequence (g1, e1, g2, e2, ...).  Empty result means none
// exists.  The Natural overload factorizes internally (m < 2^64).
std::vector<SDecomposition> s_decompositions(const PrimeFactorization& f, DecompMode mode,
                                             std::size_t max_results = unlimited_results);
std::vector<SDecomposition> s_decompositions(const Natural& m, DecompMode mode,
                                             std::size_t max_results = unlimited_results);

bool in_sdg(const PrimeFactorization& f);
bool in_sdg(const Natural& m);
bool in_sd(const PrimeFactorization& f);
bool in_sd(const Natural& m);

struct DivisorWitness {
  bool member = false;
  std::optional<Natural> witness;  // smallest qualifying divisor
};

DivisorWitness in_slg(const PrimeFactorization& f);
DivisorWitness in_slg(const Natural& m);
DivisorWitness in_sl(const PrimeFactorization& f);
DivisorWitness in_sl(const Natural& m);

// Prime-factorization variants: every prime p | m satisfies s_p(m) >= p
// (star of SDG) resp. s_p(m) = p (star of SD).
bool in_sdg_star(const PrimeFactorization& f);
bool in_sd_star(const PrimeFactorization& f);

// m squarefree with s_p(m) >= p for every prime factor.
bool in_h(const PrimeFactorization& f);

// Membership snapshot used by the classify command.
struct SetMembershipRecord {
  Natural m;
  bool sdg = false, sd = false, slg = false, sl = false;
  bool sdg_star = false, sd_star = false, h = false;
  std::optional<Natural> witness;                 // smallest SL/SLG witness
  std::optional<SDecomposition> decomposition;    // first strict, else first at-least
};

SetMembershipRecord classify_sets(const PrimeFactorization& f);

// D_n = prod of primes p <= n with s_p(n) >= p; the denominator of the
// constant-free Bernoulli polynomial B_n(x) - B_n.
Natural bernoulli_denominator(const Natural& n);

struct SetCounts {
  std::uint64_t limit = 0;
  std::uint64_t sdg = 0, sd = 0;            // S(x), S'(x)
  std::uint64_t sdg_star = 0, sd_star = 0;  // S*(x), S*'(x)
  std::uint64_t slg = 0, sl = 0;            // Sbar(x), Sbar'(x)
};

// Membership flags for every m < limit, built with a divisor sieve.
class SetSieve {
 public:
  static constexpr std::uint64_t default_max_limit = 1'000'000;

  explicit SetSieve(std::uint64_t limit, unsigned threads = 0,
                    std::uint64_t max_limit = default_max_limit);

  std::uint64_t limit() const { return limit_; }
  bool sdg(std::uint64_t m) const { return flags_[m] & kSDG; }
  bool sd(std::uint64_t m) const { return flags_[m] & kSD; }
  bool sdg_star(std::uint64_t m) const { return flags_[m] & kSDGStar; }
  bool sd_star(std::uint64_t m) const { return flags_[m] & kSDStar; }
  bool slg(std::uint64_t m) const { return flags_[m] & kSLG; }
  bool sl(std::uint64_t m) const { return flags_[m] & kSL; }

  // Exact counts of members strictly below x (x <= limit).
  SetCounts counts_below(std::uint64_t x) const;

 private:
  static constexpr std::uint8_t kSDG = 1, kSD = 2, kSDGStar = 4, kSDStar = 8, kSLG = 16,
                                kSL = 32;
  std::uint64_t limit_;
  std::vector<std::uint8_t> flags_;
};

SetCounts count_sets(std::uint64_t limit, unsigned threads = 0,
                     std::uint64_t max_limit = SetSieve::default_max_limit);

}  // namespace carmforms
