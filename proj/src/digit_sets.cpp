#include "carmforms/digit_sets.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace carmforms {

namespace {

using u64 = std::uint64_t;

struct Candidate {
  Natural base;
  bool strict = false;  // digit sum equals the base exactly
};

// Divisor bases that can appear in any s-decomposition of m: every base g
// satisfies g | m, g >= 2, g^2 <= m and the digit-sum condition; nothing
// larger can occur since g | m and s_g(m) >= g force g < sqrt(m).
std::vector<Candidate> candidate_bases(const PrimeFactorization& f) {
  const Natural& m = f.value;
  std::vector<Candidate> out;
  for (const Natural& g : divisors(f)) {
    if (g < 2 || g * g > m) continue;
    Natural s = digit_sum(m, g);
    if (s >= g) out.push_back({g, s == g});
  }
  return out;
}

bool dfs_list(const std::vector<Candidate>& cands, std::size_t idx, const Natural& remaining,
              DecompMode mode, std::vector<SDecomposition::Factor>& path,
              std::vector<SDecomposition>& out, std::size_t max_results) {
  if (remaining == 1) {
    out.push_back({path, mode});
    return out.size() >= max_results;
  }
  for (std::size_t i = idx; i < cands.size(); ++i) {
    const Natural& g = cands[i].base;
    if (g > remaining) break;
    if (mode == DecompMode::strict && !cands[i].strict) continue;
    if (!mpz_divisible_p(remaining.get_mpz_t(), g.get_mpz_t())) continue;
    Natural q = remaining / g;
    for (unsigned e = 1;; ++e) {
      path.push_back({g, e});
      bool done = dfs_list(cands, i + 1, q, mode, path, out, max_results);
      path.pop_back();
      if (done) return true;
      if (!mpz_divisible_p(q.get_mpz_t(), g.get_mpz_t())) break;
      q /= g;
    }
  }
  return false;
}

bool dfs_exists_u64(const std::vector<std::pair<std::uint32_t, bool>>& cands, std::size_t idx,
                    u64 remaining, bool strict) {
  if (remaining == 1) return true;
  for (std::size_t i = idx; i < cands.size(); ++i) {
    u64 g = cands[i].first;
    if (g > remaining) break;
    if (strict && !cands[i].second) continue;
    if (remaining % g) continue;
    u64 q = remaining / g;
    while (true) {
      if (dfs_exists_u64(cands, i + 1, q, strict)) return true;
      if (q % g) break;
      q /= g;
    }
  }
  return false;
}

PrimeFactorization factorization_of(const Natural& m) {
  if (m < 2) raise(errc::invalid_input, "s-decomposition requires m >= 2");
  return factorize(m);
}

}  // namespace

Natural SDecomposition::product() const {
  Natural p = 1;
  for (const auto& factor : factors) {
    Natural pe;
    mpz_pow_ui(pe.get_mpz_t(), factor.base.get_mpz_t(), factor.exponent);
    p *= pe;
  }
  return p;
}

std::vector<SDecomposition> s_decompositions(const PrimeFactorization& f, DecompMode mode,
                                             std::size_t max_results) {
  std::vector<SDecomposition> out;
  if (f.value < 2 || max_results == 0) return out;
  auto cands = candidate_bases(f);
  std::vector<SDecomposition::Factor> path;
  dfs_list(cands, 0, f.value, mode, path, out, max_results);
  return out;
}

std::vector<SDecomposition> s_decompositions(const Natural& m, DecompMode mode,
                                             std::size_t max_results) {
  return s_decompositions(factorization_of(m), mode, max_results);
}

bool in_sdg(const PrimeFactorization& f) {
  return !s_decompositions(f, DecompMode::at_least, 1).empty();
}

bool in_sdg(const Natural& m) {
  if (m < 2) return false;
  return in_sdg(factorization_of(m));
}

bool in_sd(const PrimeFactorization& f) {
  return !s_decompositions(f, DecompMode::strict, 1).empty();
}

bool in_sd(const Natural& m) {
  if (m < 2) return false;
  return in_sd(factorization_of(m));
}

namespace {

DivisorWitness divisor_witness(const PrimeFactorization& f, bool strict) {
  for (const Natural& g : divisors(f)) {
    if (g < 2 || g * g > f.value) continue;
    Natural s = digit_sum(f.value, g);
    if (strict ? s == g : s >= g) return {true, g};
  }
  return {};
}

}  // namespace

DivisorWitness in_slg(const PrimeFactorization& f) { return divisor_witness(f, false); }

DivisorWitness in_slg(const Natural& m) {
  if (m < 2) return {};
  return in_slg(factorization_of(m));
}

DivisorWitness in_sl(const PrimeFactorization& f) { return divisor_witness(f, true); }

DivisorWitness in_sl(const Natural& m) {
  if (m < 2) return {};
  return in_sl(factorization_of(m));
}

bool in_sdg_star(const PrimeFactorization& f) {
  if (f.value < 2) return false;
  return std::all_of(f.entries.begin(), f.entries.end(), [&](const auto& e) {
    return digit_sum(f.value, e.prime) >= e.prime;
  });
}

bool in_sd_star(const PrimeFactorization& f) {
  if (f.value < 2) return false;
  return std::all_of(f.entries.begin(), f.entries.end(), [&](const auto& e) {
    return digit_sum(f.value, e.prime) == e.prime;
  });
}

bool in_h(const PrimeFactorization& f) { return f.squarefree() && in_sdg_star(f); }

SetMembershipRecord classify_sets(const PrimeFactorization& f) {
  SetMembershipRecord rec;
  rec.m = f.value;
  if (f.value < 2) return rec;
  rec.sdg_star = in_sdg_star(f);
  rec.sd_star = in_sd_star(f);
  rec.h = f.squarefree() && rec.sdg_star;
  auto sl = in_sl(f);
  rec.sl = sl.member;
  auto slg = in_slg(f);
  rec.slg = slg.member;
  rec.witness = sl.member ? sl.witness : slg.witness;
  auto strict = s_decompositions(f, DecompMode::strict, 1);
  rec.sd = !strict.empty();
  if (rec.sd) {
    rec.sdg = true;
    rec.decomposition = strict.front();
  } else {
    auto loose = s_decompositions(f, DecompMode::at_least, 1);
    rec.sdg = !loose.empty();
    if (rec.sdg) rec.decomposition = loose.front();
  }
  return rec;
}

Natural bernoulli_denominator(const Natural& n) {
  if (n < 1) raise(errc::invalid_input, "bernoulli_denominator: n must be >= 1");
  if (!fits_u64(n)) raise(errc::out_of_range, "bernoulli_denominator: n too large");
  u64 nn = to_u64(n);
  if (nn > 100'000'000) raise(errc::resource_limit, "bernoulli_denominator: n too large");
  Natural d = 1;
  // s_p(n) >= p is impossible for p > n, so primes up to n suffice.
  for (std::uint32_t p : primes_below(std::uint32_t(std::min<u64>(nn + 1, 1ull << 32)))) {
    if (digit_sum_u64(nn, p) >= p) d *= p;
  }
  return d;
}

SetSieve::SetSieve(std::uint64_t limit, unsigned threads, std::uint64_t max_limit)
    : limit_(limit) {
  if (limit > max_limit)
    raise(errc::resource_limit, "set sieve limit " + std::to_string(limit) +
                                    " exceeds the configured maximum " + std::to_string(max_limit));
  if (limit >= (1ull << 32)) raise(errc::resource_limit, "set sieve limit exceeds 2^32");
  flags_.assign(limit, 0);
  if (limit < 2) return;

  const auto spf = smallest_prime_factors(std::uint32_t(limit));
  const u64 block = 1 << 17;
  const u64 n_blocks = (limit + block - 1) / block;
  unsigned n_threads = threads ? threads : std::thread::hardware_concurrency();
  n_threads = std::max(1u, std::min<unsigned>(n_threads, unsigned(n_blocks)));

  std::atomic<u64> next_block{0};
  auto worker = [&]() {
    std::vector<std::vector<std::pair<std::uint32_t, bool>>> cand(block);
    for (;;) {
      u64 b = next_block.fetch_add(1);
      if (b >= n_blocks) return;
      u64 lo = b * block, hi = std::min(limit_, lo + block);
      for (u64 i = 0; i < hi - lo; ++i) cand[i].clear();
      for (u64 g = 2; g * g < hi; ++g) {
        u64 m0 = std::max(lo, g * g);
        m0 = (m0 + g - 1) / g * g;
        for (u64 m = m0; m < hi; m += g) {
          u64 s = digit_sum_u64(m, g);
          if (s < g) continue;
          cand[m - lo].push_back({std::uint32_t(g), s == g});
          flags_[m] |= kSLG;
          if (s == g) flags_[m] |= kSL;
        }
      }
      for (u64 m = std::max<u64>(lo, 2); m < hi; ++m) {
        const auto& c = cand[m - lo];
        if (!c.empty()) {
          if (dfs_exists_u64(c, 0, m, false)) flags_[m] |= kSDG;
          bool any_strict =
              std::any_of(c.begin(), c.end(), [](const auto& e) { return e.second; });
          if (any_strict && dfs_exists_u64(c, 0, m, true)) flags_[m] |= kSD;
        }
        bool all_ge = true, all_eq = true;
        for (std::uint32_t v = std::uint32_t(m); v > 1 && all_ge;) {
          std::uint32_t p = spf[v];
          u64 s = digit_sum_u64(m, p);
          if (s < p) all_ge = false;
          if (s != p) all_eq = false;
          while (v % p == 0) v /= p;
        }
        if (all_ge) {
          flags_[m] |= kSDGStar;
          if (all_eq) flags_[m] |= kSDStar;
        }
      }
    }
  };

  std::vector<std::thread> pool;
  for (unsigned i = 0; i + 1 < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

SetCounts SetSieve::counts_below(std::uint64_t x) const {
  if (x > limit_) raise(errc::out_of_range, "counts_below: x exceeds the sieve limit");
  SetCounts counts;
  counts.limit = x;
  for (u64 m = 2; m < x; ++m) {
    std::uint8_t f = flags_[m];
    counts.sdg += bool(f & kSDG);
    counts.sd += bool(f & kSD);
    counts.sdg_star += bool(f & kSDGStar);
    counts.sd_star += bool(f & kSDStar);
    counts.slg += bool(f & kSLG);
    counts.sl += bool(f & kSL);
  }
  return counts;
}

SetCounts count_sets(std::uint64_t limit, unsigned threads, std::uint64_t max_limit) {
  SetSieve sieve(limit, threads, max_limit);
  return sieve.counts_below(limit);
}

}  // namespace carmforms
