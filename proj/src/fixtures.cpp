#include "carmforms/fixtures.hpp"

#include <sstream>

#include "carmforms/carmichael.hpp"
#include "carmforms/digit_sets.hpp"
#include "carmforms/forms.hpp"
#include "carmforms/format.hpp"
#include "carmforms/polygonal.hpp"

namespace carmforms {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& s, int line) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  raise(errc::invalid_input, "fixture line " + std::to_string(line) + ": bad boolean '" + s + "'");
}

// One selftest check; the first failed expectation is recorded.
class Check {
 public:
  explicit Check(std::string name) { result_.name = std::move(name); }

  void expect(bool cond, const std::string& what) {
    if (!cond && pass_) {
      pass_ = false;
      result_.detail = what;
    }
  }

  CheckResult done() {
    result_.pass = pass_;
    return result_;
  }

 private:
  CheckResult result_;
  bool pass_ = true;
};

struct InversionRow {
  long m, r1, r2, r3;
  int tau;
  long t;
};

const InversionRow kPrimaryAtT0[] = {
    {2821, 1, 2, 5, 1, 0},      {29341, 1, 3, 5, 1, 0},     {46657, 1, 3, 8, 1, 0},
    {252601, 2, 3, 5, 1, 0},    {1193221, 1, 2, 21, 1, 0},  {1857241, 1, 6, 11, 2, 0},
    {5968873, 1, 3, 26, 2, 0},  {6868261, 1, 5, 18, 2, 0},  {7519441, 1, 6, 19, 2, 0},
    {10024561, 7, 27, 52, 1, 0}, {14469841, 4, 21, 29, 1, 0}, {15247621, 1, 3, 23, 1, 0},
    {15829633, 1, 13, 16, 2, 0}, {17236801, 5, 7, 18, 1, 0}, {17316001, 1, 3, 40, 2, 0},
    {29111881, 3, 4, 7, 1, 0},  {31405501, 1, 9, 10, 1, 0}, {34657141, 19, 42, 43, 1, 0},
    {35703361, 5, 23, 176, 1, 0}, {37964809, 2, 7, 17, 1, 0},
};

const InversionRow kNonPrimary[] = {
    {561, 1, 5, 8, 2, 0},       {1105, 1, 3, 4, 1, 0},     {2465, 1, 4, 7, 2, 0},
    {6601, 3, 11, 20, 1, 0},    {8911, 1, 3, 11, 2, 0},    {10585, 1, 7, 18, 2, 0},
    {15841, 1, 5, 12, 2, 0},    {52633, 1, 12, 17, 2, 0},  {115921, 1, 3, 20, 2, 0},
    {162401, 2, 5, 29, 1, 0},   {314821, 1, 5, 33, 2, 0},  {334153, 3, 7, 68, 1, 0},
    {410041, 5, 9, 17, 1, 0},   {530881, 1, 8, 35, 2, 0},  {1024651, 1, 11, 15, 2, 0},
    {1461241, 1, 2, 15, 2, 1},  {1615681, 1, 9, 16, 2, 0}, {1909001, 2, 5, 23, 1, 0},
    {2508013, 2, 3, 23, 1, 0},  {3057601, 1, 5, 8, 2, 1},
};

CheckResult check_set_prefixes() {
  Check check("published set prefixes");
  SetSieve sieve(5000);
  auto take = [&](auto member, std::size_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t m = 2; m < sieve.limit() && out.size() < n; ++m)
      if (member(m)) out.push_back(m);
    return out;
  };
  check.expect(take([&](std::uint64_t m) { return sieve.sdg(m); }, 14) ==
                   std::vector<std::uint64_t>{24, 45, 48, 72, 96, 120, 144, 189, 192, 216, 224,
                                              225, 231, 240},
               "SDG prefix mismatch");
  check.expect(take([&](std::uint64_t m) { return sieve.sd(m); }, 10) ==
                   std::vector<std::uint64_t>{45, 96, 225, 325, 405, 576, 637, 640, 891, 1225},
               "SD prefix mismatch");
  check.expect(take([&](std::uint64_t m) { return sieve.slg(m); }, 8) ==
                   std::vector<std::uint64_t>{6, 10, 12, 14, 15, 18, 20, 21},
               "SLG prefix mismatch");
  check.expect(take([&](std::uint64_t m) { return sieve.sl(m); }, 8) ==
                   std::vector<std::uint64_t>{6, 10, 12, 15, 18, 20, 21, 24},
               "SL prefix mismatch");
  check.expect(take([&](std::uint64_t m) { return sieve.sdg(m) && !sieve.sdg_star(m); }, 7) ==
                   std::vector<std::uint64_t>{280, 378, 640, 1134, 1280, 1408, 1430},
               "SDG minus SDG* prefix mismatch");
  check.expect(take([&](std::uint64_t m) { return sieve.sd(m) && !sieve.sd_star(m); }, 7) ==
                   std::vector<std::uint64_t>{96, 225, 576, 640, 1225, 1377, 1408},
               "SD minus SD* prefix mismatch");
  std::vector<std::uint64_t> h;
  for (std::uint64_t m = 2; m <= 1200 && h.size() < 4; ++m)
    if (in_h(factorize_u64(m))) h.push_back(m);
  check.expect(h == std::vector<std::uint64_t>{231, 561, 1001, 1045}, "H prefix mismatch");
  return check.done();
}

CheckResult check_param_tables() {
  Check check("form parameter tables");
  struct Row {
    Triple r;
    long sigma1, sigma2, sigma3, ell;
    int tau;
  };
  const Row rows[] = {
      {{1, 2, 3}, 6, 11, 6, 0, 1},      {{1, 2, 5}, 8, 17, 10, 6, 1},
      {{1, 3, 8}, 12, 35, 24, 12, 1},   {{2, 3, 5}, 10, 31, 30, 20, 1},
      {{1, 2, 7}, 10, 23, 14, 2, 2},    {{1, 3, 4}, 8, 19, 12, 4, 1},
      {{1, 3, 5}, 9, 23, 15, 12, 1},    {{2, 7, 13}, 22, 131, 182, 4, 1},
  };
  for (const auto& row : rows) {
    auto p = form_params(row.r);
    std::string tag = "(" + row.r.r1.get_str() + "," + row.r.r2.get_str() + "," +
                      row.r.r3.get_str() + ")";
    check.expect(p.sigma1 == row.sigma1 && p.sigma2 == row.sigma2 && p.sigma3 == row.sigma3 &&
                     p.ell == row.ell && p.tau == row.tau,
                 "parameter tuple mismatch for " + tag);
  }
  auto big = form_params({101, 199, 499});
  check.expect(big.sigma1 == 799 && big.sigma2 == 169799 && big.sigma3 == 10029401 &&
                   big.ell == 5521519 && big.tau == 1,
               "parameter tuple mismatch for (101,199,499)");
  check.expect(big.coeff_a(1) == Natural("1012969501") &&
                   big.coeff_b(1) == Natural("557673420") &&
                   big.coeff_a(2) == Natural("1995850799") &&
                   big.coeff_b(2) == Natural("1098782282") &&
                   big.coeff_a(3) == Natural("5004671099") &&
                   big.coeff_b(3) == Natural("2755237982"),
               "coefficient mismatch for (101,199,499)");
  return check.done();
}

CheckResult check_form_values() {
  Check check("form values at t = 0 and t = 1");

  auto deg = verify_strictness({1, 2, 3}, 0);
  check.expect(deg.value.m == 1 && deg.kind == StrictnessCase::degenerate,
               "U(0) for (1,2,3) should be the degenerate value 1");
  check.expect(*form_diagnostics({1, 2, 3}, 3, 0).vartheta == 2, "vartheta(1,2,3) != 2");

  auto v225 = verify_strictness({1, 2, 7}, 0);
  check.expect(v225.value.m == 225 &&
                   v225.value.factors == std::array<Natural, 3>{3, 5, 15} &&
                   !v225.decomposition_in_sdg,
               "U(0) for (1,2,7) should be 225 = 3*5*15 with no digit-sum decomposition");
  check.expect(*form_diagnostics({1, 2, 7}, 3, 0).vartheta == 2, "vartheta(1,2,7) != 2");
  check.expect(v225.value.m == v225.value.factors[2] * v225.value.factors[2],
               "vartheta = 2 should force a square");
  check.expect(in_sd(Natural(225)), "225 should still be in SD (as 5^2 * 9)");

  auto v13833 = verify_strictness({2, 7, 13}, 0);
  check.expect(v13833.value.m == 13833 &&
                   v13833.value.factors == std::array<Natural, 3>{9, 29, 53} &&
                   v13833.decomposition_in_sdg && !v13833.decomposition_in_sd,
               "U(0) for (2,7,13) should be 13833 = 9*29*53 in SDG minus SD");
  check.expect(*form_diagnostics({2, 7, 13}, 3, 0).vartheta == 6, "vartheta(2,7,13) != 6");

  auto v63393 = verify_strictness({1, 2, 7}, 1);
  check.expect(v63393.value.m == 63393 &&
                   v63393.value.factors == std::array<Natural, 3>{17, 33, 113} &&
                   v63393.decomposition_in_sdg && !v63393.decomposition_in_sd,
               "U(1) for (1,2,7) should be 63393 = 17*33*113 in SDG minus SD");
  check.expect(v63393.factor_digit_sums ==
                   std::array<Natural, 3>{33, 33, 113},
               "digit sums of 63393 should be (2g1-1, g2, g3)");

  auto v29341 = verify_strictness({1, 3, 5}, 0);
  check.expect(v29341.value.m == 29341 &&
                   v29341.value.factors == std::array<Natural, 3>{13, 37, 61} &&
                   v29341.decomposition_in_sd && is_primary_carmichael(Natural(29341)),
               "U(0) for (1,3,5) should be the primary value 29341 = 13*37*61");
  check.expect(*form_diagnostics({1, 3, 5}, 3, 0).vartheta == 9, "vartheta(1,3,5) != 9");

  auto v252601 = verify_strictness({2, 3, 5}, 0);
  check.expect(v252601.value.m == 252601 &&
                   v252601.value.factors == std::array<Natural, 3>{41, 61, 101} &&
                   v252601.decomposition_in_sd && is_primary_carmichael(Natural(252601)),
               "U(0) for (2,3,5) should be the primary value 252601 = 41*61*101");
  check.expect(*form_diagnostics({2, 3, 5}, 3, 0).vartheta == 26, "vartheta(2,3,5) != 26");

  auto m29 = primary_form_check({101, 199, 499}, 1);
  check.expect(m29.verdict == FormVerdict::cp3 &&
                   m29.value.m == Natural("37717531166520286365396946681"),
               "U(1) for (101,199,499) should be the 29-digit primary value");
  for (int i = 0; i < 3; ++i)
    check.expect(m29.factor_digit_sums[i] == m29.value.factors[i],
                 "digit sum should equal the prime factor of the 29-digit value");
  return check.done();
}

CheckResult check_inversion_rows(const char* name, const InversionRow* rows, std::size_t n,
                                 bool primary) {
  Check check(name);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rows[i];
    auto f = factorize(Natural(row.m));
    auto inv = invert_carmichael3(f);
    std::string tag = std::to_string(row.m);
    check.expect(inv.params.r.r1 == row.r1 && inv.params.r.r2 == row.r2 &&
                     inv.params.r.r3 == row.r3,
                 "triple mismatch for " + tag);
    check.expect(inv.params.tau == row.tau && inv.t == row.t,
                 "(tau, t) mismatch for " + tag);
    check.expect(is_primary_carmichael(f) == primary, "primality class mismatch for " + tag);
  }
  return check.done();
}

CheckResult check_polygonal() {
  Check check("polygonal identities");
  check.expect(polygonal_number(84, 7) == 1729 && polygonal_number(24, 13) == 1729 &&
                   polygonal_number(12, 19) == 1729,
               "1729 should be 84-, 24- and 12-gonal");
  check.expect(*polygonal_index(1729, 7).h == 84 && *polygonal_index(1729, 13).h == 24 &&
                   *polygonal_index(1729, 19).h == 12,
               "polygonal indices of 1729 mismatch");
  check.expect(form_polygonal_params({1, 2, 3}, 1, 1).h == 84,
               "form-derived index of 1729 at nu = 1 should be 84");

  Natural m("8801128801");
  check.expect(*polygonal_index(m, 66337).h == 6, "8801128801 should be hexagonal");
  auto w = form_polygonal_params({15, 61, 5528}, 0, 3);
  check.expect(w.h == 6 && w.g == 66337 && w.m == m,
               "(15,61,5528) at t = 0 should give the hexagonal witness");
  auto p = form_params({15, 61, 5528});
  check.expect(p.sigma1 == 5604 && p.sigma3 == 5058120 && p.ell == 12,
               "(15,61,5528) parameters mismatch");
  check.expect(2 * ((m / 66337) / 66337 + 2) == 6, "floor formula for h mismatch");
  return check.done();
}

CheckResult check_sharpness() {
  Check check("prime bound sharpness equalities");
  check.expect(Natural(17) * 17 * 33 == Natural(17) * 561,
               "17^2 * 33 should equal 17 * 561");
  check.expect(prime_bound_check(factorize(561), false), "bound should hold at 561");
  Natural m("8801128801");
  check.expect(Natural(66337) * 66337 * 132673 == Natural(66337) * m,
               "66337^2 * 132673 should equal 66337 * 8801128801");
  check.expect(prime_bound_check(factorize(m), true), "primary bound should hold at 8801128801");
  return check.done();
}

}  // namespace

std::vector<FixtureRecord> parse_fixtures(std::istream& in) {
  std::vector<FixtureRecord> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = strip(line);
    if (auto hash = body.find('#'); hash != std::string::npos) body = strip(body.substr(0, hash));
    if (body.empty()) continue;
    auto fields = split(body, ';');
    if (fields.size() != 3)
      raise(errc::invalid_input,
            "fixture line " + std::to_string(line_no) + ": expected 3 ';'-separated fields");

    FixtureRecord rec;
    rec.line = line_no;
    rec.value = parse_number(strip(fields[0]));
    for (const auto& tok : split(fields[1], ',')) {
      std::string t = strip(tok);
      if (t.empty()) continue;
      auto caret = t.find('^');
      PrimeFactorization::Entry e;
      if (caret == std::string::npos) {
        e.prime = parse_number(t);
        e.exponent = 1;
      } else {
        e.prime = parse_number(t.substr(0, caret));
        e.exponent = unsigned(std::stoul(t.substr(caret + 1)));
      }
      rec.factors.push_back(e);
    }
    for (const auto& tok : split(fields[2], ',')) {
      std::string t = strip(tok);
      if (t.empty()) continue;
      auto eq = t.find('=');
      if (eq == std::string::npos) {
        // continuation of the previous value (s_profile token lists)
        if (rec.expectations.empty())
          raise(errc::invalid_input, "fixture line " + std::to_string(line_no) + ": stray token");
        rec.expectations.back().second += "," + t;
      } else {
        rec.expectations.emplace_back(strip(t.substr(0, eq)), strip(t.substr(eq + 1)));
      }
    }
    out.push_back(rec);
  }
  return out;
}

CheckResult check_fixture(const FixtureRecord& rec) {
  Check check("fixture value " + rec.value.get_str());
  PrimeFactorization f;
  try {
    f = verified_factorization(rec.value, rec.factors);
  } catch (const error& e) {
    check.expect(false, e.what());
    return check.done();
  }
  for (const auto& [key, value] : rec.expectations) {
    if (key == "s_profile") {
      auto tokens = split(value, ',');
      if (tokens.size() != f.entries.size()) {
        check.expect(false, "s_profile arity mismatch");
        continue;
      }
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        Natural s = digit_sum(f.value, f.entries[i].prime);
        Natural want = tokens[i] == "p" ? f.entries[i].prime : 2 * f.entries[i].prime - 1;
        check.expect((tokens[i] == "p" || tokens[i] == "2p-1") && s == want,
                     "digit sum profile mismatch at prime " + f.entries[i].prime.get_str());
      }
      continue;
    }
    bool want = parse_bool(value, rec.line);
    bool got;
    if (key == "sdg") got = in_sdg(f);
    else if (key == "sd") got = in_sd(f);
    else if (key == "slg") got = in_slg(f).member;
    else if (key == "sl") got = in_sl(f).member;
    else if (key == "sdg_star") got = in_sdg_star(f);
    else if (key == "sd_star") got = in_sd_star(f);
    else if (key == "h") got = in_h(f);
    else if (key == "cn") got = is_carmichael(f);
    else if (key == "cp") got = is_primary_carmichael(f);
    else if (key == "cs") got = is_exceptional(f);
    else {
      check.expect(false, "unknown expectation key '" + key + "'");
      continue;
    }
    check.expect(got == want, key + " should be " + value);
  }
  return check.done();
}

std::vector<CheckResult> run_selftest(const std::string& fixtures_text) {
  std::vector<CheckResult> results;
  results.push_back(check_set_prefixes());
  results.push_back(check_param_tables());
  results.push_back(check_form_values());
  results.push_back(check_inversion_rows("primary values of the form at t = 0", kPrimaryAtT0,
                                         std::size(kPrimaryAtT0), true));
  results.push_back(check_inversion_rows("non-primary 3-factor Carmichael values", kNonPrimary,
                                         std::size(kNonPrimary), false));
  results.push_back(check_polygonal());
  results.push_back(check_sharpness());

  std::istringstream in(fixtures_text);
  for (const auto& rec : parse_fixtures(in)) results.push_back(check_fixture(rec));
  return results;
}

}  // namespace carmforms
