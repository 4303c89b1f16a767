#include "carmforms/carmichael.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace carmforms {

namespace {

using u64 = std::uint64_t;

bool all_primes(const PrimeFactorization& f,
                const std::function<bool(const Natural&, const Natural&)>& pred) {
  const Natural& m = f.value;
  return std::all_of(f.entries.begin(), f.entries.end(),
                     [&](const auto& e) { return pred(m, e.prime); });
}

}  // namespace

bool korselt(const PrimeFactorization& f) {
  if (f.value < 2 || !f.squarefree()) return false;
  const Natural m1 = f.value - 1;
  return std::all_of(f.entries.begin(), f.entries.end(), [&](const auto& e) {
    return mpz_divisible_p(m1.get_mpz_t(), Natural(e.prime - 1).get_mpz_t());
  });
}

bool is_carmichael(const PrimeFactorization& f) {
  return f.n_distinct() >= 2 && korselt(f);
}

bool is_carmichael(const Natural& m) {
  if (m < 2) return false;
  return is_carmichael(factorize(m));
}

bool is_primary_carmichael(const PrimeFactorization& f) {
  if (f.value < 2 || !f.squarefree()) return false;
  return all_primes(f, [](const Natural& m, const Natural& p) { return digit_sum(m, p) == p; });
}

bool is_primary_carmichael(const Natural& m) {
  if (m < 2) return false;
  return is_primary_carmichael(factorize(m));
}

bool digit_characterization(const PrimeFactorization& f) {
  if (f.value < 2 || !f.squarefree()) return false;
  return all_primes(f, [](const Natural& m, const Natural& p) {
    Natural s = digit_sum(m, p);
    return s >= p && (s - 1) % (p - 1) == 0;
  });
}

bool is_exceptional(const PrimeFactorization& f) {
  if (!is_carmichael(f)) return false;
  return all_primes(f, [](const Natural& m, const Natural& p) { return digit_sum(m, p) != p; });
}

bool is_exceptional(const Natural& m) {
  if (m < 2) return false;
  return is_exceptional(factorize(m));
}

std::vector<Natural> digit_sum_excesses(const PrimeFactorization& f) {
  std::vector<Natural> out;
  out.reserve(f.entries.size());
  for (const auto& e : f.entries) out.push_back(digit_sum(f.value, e.prime) - e.prime);
  return out;
}

bool prime_bound_check(const PrimeFactorization& f, bool primary) {
  const long num = primary ? 66337 : 17;
  const long den = primary ? 132673 : 33;
  return std::all_of(f.entries.begin(), f.entries.end(), [&](const auto& e) {
    return e.prime * e.prime * den <= num * f.value;
  });
}

namespace {

bool matches(const CarmichaelRecord& rec, const EnumerateOptions& opts) {
  if (opts.n_factors && rec.n_factors != *opts.n_factors) return false;
  switch (opts.filter) {
    case CarmichaelFilter::all:
      return true;
    case CarmichaelFilter::primary:
      return rec.primary;
    case CarmichaelFilter::exceptional:
      return rec.exceptional;
  }
  return false;
}

CarmichaelRecord make_record(u64 m) {
  CarmichaelRecord rec;
  rec.m = Natural(m);
  rec.factorization = factorize_u64(m);
  rec.n_factors = int(rec.factorization.n_distinct());
  bool all_eq = true, none_eq = true;
  for (const auto& e : rec.factorization.entries) {
    u64 s = digit_sum_u64(m, to_u64(e.prime));
    if (Natural(s) == e.prime)
      none_eq = false;
    else
      all_eq = false;
  }
  rec.primary = all_eq;
  rec.exceptional = none_eq;
  return rec;
}

// Sieve one segment of odd numbers [lo, hi).  For every odd m the smallest
// prime factors <= sqrt(hi) are divided out while testing squarefreeness
// and Korselt's divisibility; what survives with >= 3 prime factors is a
// Carmichael number.
void sieve_segment(u64 lo, u64 hi, const std::vector<std::uint32_t>& base_primes,
                   std::vector<u64>& out) {
  const std::size_t n = std::size_t((hi - lo + 1) / 2);
  std::vector<u64> residual(n);
  std::vector<std::uint8_t> alive(n, 1);
  std::vector<std::uint8_t> nf(n, 0);
  for (std::size_t i = 0; i < n; ++i) residual[i] = lo + 2 * i;

  for (std::uint32_t p : base_primes) {
    if (p == 2) continue;  // only odd numbers are sieved
    u64 pp = u64(p) * p;
    if (pp >= hi) break;
    u64 start = (lo + p - 1) / p * p;
    if (start % 2 == 0) start += p;
    for (u64 m = start; m < hi; m += 2 * u64(p)) {
      std::size_t i = std::size_t((m - lo) / 2);
      if (!alive[i]) continue;
      u64& r = residual[i];
      r /= p;
      if (r % p == 0 || (m - 1) % (p - 1) != 0) {
        alive[i] = 0;
        continue;
      }
      ++nf[i];
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    u64 m = lo + 2 * i;
    u64 r = residual[i];
    if (r == m) continue;  // prime, untouched by the base primes
    if (r > 1) {
      if ((m - 1) % (r - 1) != 0) continue;
      ++nf[i];
    }
    if (nf[i] >= 3) out.push_back(m);
  }
}

}  // namespace

void for_each_carmichael(const EnumerateOptions& opts,
                         const std::function<void(const CarmichaelRecord&)>& emit) {
  if (opts.limit > opts.max_limit)
    raise(errc::resource_limit,
          "enumeration limit " + std::to_string(opts.limit) +
              " exceeds the configured maximum " + std::to_string(opts.max_limit));
  if (opts.segment_size < 64) raise(errc::invalid_input, "segment size too small");
  if (opts.limit <= 3) return;

  const u64 limit = opts.limit;
  const u64 segment = opts.segment_size + (opts.segment_size & 1);  // keep lo odd
  u64 root = 2;
  while (root * root < limit) ++root;
  const auto base_primes = primes_below(std::uint32_t(std::min<u64>(root + 1, 1ull << 32)));

  const u64 n_segments = (limit - 3 + segment - 1) / segment;
  unsigned n_threads = opts.threads ? opts.threads : std::thread::hardware_concurrency();
  n_threads = std::max(1u, std::min<unsigned>(n_threads, unsigned(std::min<u64>(n_segments, 64))));

  std::vector<std::vector<u64>> found(static_cast<std::size_t>(n_segments));
  std::atomic<u64> next{0};
  auto worker = [&]() {
    for (;;) {
      u64 s = next.fetch_add(1);
      if (s >= n_segments) return;
      u64 lo = 3 + s * segment;
      u64 hi = std::min<u64>(limit, lo + segment);
      sieve_segment(lo, hi, base_primes, found[std::size_t(s)]);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 0; i + 1 < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& segment : found) {
    for (u64 m : segment) {
      CarmichaelRecord rec = make_record(m);
      if (matches(rec, opts)) emit(rec);
    }
  }
}

std::vector<CarmichaelRecord> enumerate_carmichael(const EnumerateOptions& opts) {
  std::vector<CarmichaelRecord> out;
  for_each_carmichael(opts, [&](const CarmichaelRecord& rec) { out.push_back(rec); });
  return out;
}

std::vector<DistributionRow> distribution_table(const std::vector<std::uint64_t>& limits,
                                                EnumerateOptions opts) {
  std::vector<DistributionRow> rows;
  if (limits.empty()) return rows;
  opts.limit = *std::max_element(limits.begin(), limits.end());
  opts.filter = CarmichaelFilter::all;
  opts.n_factors.reset();
  auto records = enumerate_carmichael(opts);

  for (u64 x : limits) {
    DistributionRow row;
    row.x = Natural(x);
    for (const auto& rec : records) {
      if (rec.m >= Natural(x)) break;
      int n = std::min(rec.n_factors, DistributionRow::max_n);
      ++row.c;
      ++row.c_n[n];
      if (rec.primary) {
        ++row.cp;
        ++row.cp_n[n];
      }
      if (rec.exceptional) {
        ++row.cs;
        ++row.cs_n[n];
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace carmforms
