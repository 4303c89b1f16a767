#pragma once

// Carmichael-number predicates and a segmented enumerator.
//
// Korselt's criterion: a composite m is a Carmichael number iff m is
// squarefree and p - 1 | m - 1 for every prime p | m.  The digit-sum
// characterization replaces the divisibility by s_p(m) >= p together with
// s_p(m) = 1 (mod p-1).  A Carmichael number is primary when s_p(m) = p
// for every prime factor, exceptional when s_p(m) != p for every one.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "carmforms/arith.hpp"

namespace carmforms {

// True iff the factored value is squarefree and p - 1 | m - 1 for every
// prime factor.  Primes pass vacuously; compositeness is the caller's
// concern (see is_carmichael).
bool korselt(const PrimeFactorization& f);

bool is_carmichael(const PrimeFactorization& f);
bool is_carmichael(const Natural& m);

// s_p(m) = p for every prime factor of squarefree m.
bool is_primary_carmichael(const PrimeFactorization& f);
bool is_primary_carmichael(const Natural& m);

// The digit-sum characterization of Carmichael numbers: m squarefree and
// every prime factor p has s_p(m) >= p and s_p(m) = 1 (mod p-1).
bool digit_characterization(const PrimeFactorization& f);

// Carmichael with s_p(m) != p for every prime factor.
bool is_exceptional(const PrimeFactorization& f);
bool is_exceptional(const Natural& m);

// s_p(m) - p per prime factor, in factor order; all entries are >= 0 for
// Carmichael inputs and the first exceptional examples all show p - 1.
std::vector<Natural> digit_sum_excesses(const PrimeFactorization& f);

// Every prime factor satisfies p^2 * den <= num * m with alpha^2 =
// num/den = 17/33 in general and 66337/132673 for primary numbers.
// Exact integer comparison; equality is attained (561 resp. 8801128801).
bool prime_bound_check(const PrimeFactorization& f, bool primary);

enum class CarmichaelFilter { all, primary, exceptional };

struct CarmichaelRecord {
  Natural m;
  PrimeFactorization factorization;
  int n_factors = 0;
  bool primary = false;
  bool exceptional = false;
};

struct EnumerateOptions {
  std::uint64_t limit = 0;
  CarmichaelFilter filter = CarmichaelFilter::all;
  std::optional<int> n_factors;
  unsigned threads = 0;                           // 0: hardware concurrency
  std::uint64_t segment_size = std::uint64_t(1) << 22;  // integers per segment
  std::uint64_t max_limit = 1'000'000'000;
};

// All Carmichael numbers < limit matching the filter, ascending, with full
// factorizations.  Segments are sieved concurrently and merged in order.
std::vector<CarmichaelRecord> enumerate_carmichael(const EnumerateOptions& opts);
void for_each_carmichael(const EnumerateOptions& opts,
                         const std::function<void(const CarmichaelRecord&)>& emit);

struct DistributionRow {
  Natural x;
  std::uint64_t c = 0;   // C(x)
  std::uint64_t cp = 0;  // C'(x)
  std::uint64_t cs = 0;  // C#(x)
  static constexpr int max_n = 15;
  std::array<std::uint64_t, max_n + 1> c_n{}, cp_n{}, cs_n{};  // indexed by factor count
};

// One row per limit, all counters exact.  Ratio columns are rendered by
// the table formatter from exact fractions.
std::vector<DistributionRow> distribution_table(const std::vector<std::uint64_t>& limits,
                                                EnumerateOptions opts);

}  // namespace carmforms
