#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "carmforms/carmichael.hpp"
#include "carmforms/digit_sets.hpp"
#include "carmforms/forms.hpp"

using namespace carmforms;

namespace {

struct ParamsRow {
  Triple r;
  long sigma1, sigma2, sigma3, ell;
  int tau;
  std::array<long, 3> a, b;
};

// Chernick's published example forms plus the further examples, with their
// parameter tuples (sigma1, sigma2, sigma3, ell, tau) and coefficients.
const ParamsRow kParamsRows[] = {
    {{1, 2, 3}, 6, 11, 6, 0, 1, {6, 12, 18}, {1, 1, 1}},
    {{1, 2, 5}, 8, 17, 10, 6, 1, {10, 20, 50}, {7, 13, 31}},
    {{1, 3, 8}, 12, 35, 24, 12, 1, {24, 72, 192}, {13, 37, 97}},
    {{2, 3, 5}, 10, 31, 30, 20, 1, {60, 90, 150}, {41, 61, 101}},
    {{1, 2, 7}, 10, 23, 14, 2, 2, {14, 28, 98}, {3, 5, 15}},
    {{1, 3, 4}, 8, 19, 12, 4, 1, {12, 36, 48}, {5, 13, 17}},
    {{1, 3, 5}, 9, 23, 15, 12, 1, {15, 45, 75}, {13, 37, 61}},
    {{2, 7, 13}, 22, 131, 182, 4, 1, {364, 1274, 2366}, {9, 29, 53}},
};

Triple random_triple(std::mt19937_64& gen, long max_r3 = 50) {
  std::uniform_int_distribution<long> dist(1, max_r3);
  for (;;) {
    long a = dist(gen), b = dist(gen), c = dist(gen);
    if (a == b || b == c || a == c) continue;
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    if (std::gcd(a, b) != 1 || std::gcd(a, c) != 1 || std::gcd(b, c) != 1) continue;
    return Triple{a, b, c};
  }
}

}  // namespace

TEST_CASE("form_params: published parameter tuples and coefficients") {
  for (const auto& row : kParamsRows) {
    auto p = form_params(row.r);
    CHECK(p.sigma1 == row.sigma1);
    CHECK(p.sigma2 == row.sigma2);
    CHECK(p.sigma3 == row.sigma3);
    CHECK(p.ell == row.ell);
    CHECK(p.tau == row.tau);
    for (int nu = 1; nu <= 3; ++nu) {
      CHECK(p.coeff_a(nu) == row.a[nu - 1]);
      CHECK(p.coeff_b(nu) == row.b[nu - 1]);
    }
  }
}

TEST_CASE("form_params: the large prime triple") {
  auto p = form_params({101, 199, 499});
  CHECK(p.sigma1 == 799);
  CHECK(p.sigma2 == 169799);
  CHECK(p.sigma3 == 10029401);
  CHECK(p.ell == 5521519);
  CHECK(p.tau == 1);
  CHECK(p.coeff_a(1) == Natural("1012969501"));
  CHECK(p.coeff_b(1) == Natural("557673420"));
  CHECK(p.coeff_a(2) == Natural("1995850799"));
  CHECK(p.coeff_b(2) == Natural("1098782282"));
  CHECK(p.coeff_a(3) == Natural("5004671099"));
  CHECK(p.coeff_b(3) == Natural("2755237982"));
}

TEST_CASE("form_params: invalid triples are rejected") {
  CHECK_THROWS_AS(form_params({2, 2, 3}), error);
  CHECK_THROWS_AS(form_params({3, 2, 5}), error);
  CHECK_THROWS_AS(form_params({2, 4, 5}), error);  // not coprime
  CHECK_THROWS_AS(form_params({0, 1, 2}), error);
}

TEST_CASE("form_params: structural invariants on random triples") {
  std::mt19937_64 gen(101);
  for (int i = 0; i < 300; ++i) {
    auto r = random_triple(gen);
    auto p = form_params(r);
    CHECK(p.ell >= 0);
    CHECK(p.ell < p.sigma3);
    CHECK((p.sigma2 * p.ell + p.sigma1) % p.sigma3 == 0);
    CHECK((p.ell == 0) == (r.r1 == 1 && r.r2 == 2 && r.r3 == 3));
    if (mpz_odd_p(p.sigma3.get_mpz_t())) {
      CHECK(mpz_odd_p(p.sigma1.get_mpz_t()));
      CHECK(mpz_odd_p(p.sigma2.get_mpz_t()));
    } else {
      CHECK(mpz_even_p(p.ell.get_mpz_t()));
      CHECK(mpz_even_p(p.sigma1.get_mpz_t()));
      CHECK(mpz_odd_p(p.sigma2.get_mpz_t()));
    }
    CHECK(p.tau == ((r.r1 == 1 && p.ell < p.sigma3 - p.sigma1) ? 2 : 1));
  }
}

TEST_CASE("evaluate_form: published values") {
  auto v = evaluate_form({1, 2, 3}, 1);
  CHECK(v.m == 1729);
  CHECK(v.factors == std::array<Natural, 3>{7, 13, 19});
  CHECK(v.all_odd_prime);

  CHECK(evaluate_form({1, 2, 3}, 6).m == 294409);
  CHECK(evaluate_form({1, 2, 3}, 35).m == 56052361);

  auto v0 = evaluate_form({1, 2, 3}, 0);
  CHECK(v0.m == 1);
  CHECK(v0.factors == std::array<Natural, 3>{1, 1, 1});
  CHECK_FALSE(v0.all_odd_prime);

  auto v1 = evaluate_form({1, 2, 7}, 1);
  CHECK(v1.m == 63393);
  CHECK(v1.factors == std::array<Natural, 3>{17, 33, 113});
  CHECK_FALSE(v1.all_odd_prime);  // 33 = 3 * 11

  CHECK(evaluate_form({1, 2, 7}, 0).m == 225);
  CHECK(evaluate_form({2, 7, 13}, 0).m == 13833);
  CHECK(evaluate_form({1, 3, 5}, 0).m == 29341);
  CHECK(evaluate_form({2, 3, 5}, 0).m == 252601);

  CHECK_THROWS_AS(evaluate_form({1, 2, 3}, Natural(-1)), error);
}

TEST_CASE("evaluate_form: the 29-digit primary example") {
  auto v = evaluate_form({101, 199, 499}, 1);
  CHECK(v.m == Natural("37717531166520286365396946681"));
  CHECK(v.factors[0] == Natural("1570642921"));
  CHECK(v.factors[1] == Natural("3094633081"));
  CHECK(v.factors[2] == Natural("7759909081"));
  CHECK(v.all_odd_prime);
  for (const auto& p : v.factors) CHECK(digit_sum(v.m, p) == p);
}

TEST_CASE("verify_strictness: the four regimes") {
  auto above = verify_strictness({1, 2, 3}, 5);
  CHECK(above.kind == StrictnessCase::above_tau);
  CHECK(above.value.m == 172081);
  CHECK(above.value.factors == std::array<Natural, 3>{31, 61, 91});
  CHECK(above.decomposition_in_sd);
  CHECK(above.decomposition_in_sdg);
  CHECK(in_sd(Natural(172081)));

  auto t1 = verify_strictness({1, 2, 7}, 1);
  CHECK(t1.kind == StrictnessCase::t1_below_tau);
  CHECK(t1.factor_digit_sums == std::array<Natural, 3>{33, 33, 113});
  CHECK(t1.decomposition_in_sdg);
  CHECK_FALSE(t1.decomposition_in_sd);

  auto t0 = verify_strictness({2, 7, 13}, 0);
  CHECK(t0.kind == StrictnessCase::t0);
  CHECK(t0.value.m == 13833);
  CHECK(t0.decomposition_in_sdg);
  CHECK_FALSE(t0.decomposition_in_sd);

  // 225 = 3 * 5 * 15: the factor triple is not an s-decomposition, but the
  // value itself is in SD as 5^2 * 9
  auto t225 = verify_strictness({1, 2, 7}, 0);
  CHECK(t225.kind == StrictnessCase::t0);
  CHECK_FALSE(t225.decomposition_in_sdg);
  CHECK(in_sd(Natural(225)));

  CHECK(verify_strictness({1, 2, 3}, 0).kind == StrictnessCase::degenerate);
}

TEST_CASE("form_diagnostics: named eta and vartheta values") {
  CHECK(form_diagnostics({1, 2, 3}, 3, 0).eta == 2);
  CHECK(*form_diagnostics({1, 2, 7}, 3, 0).vartheta == 2);
  CHECK(*form_diagnostics({1, 3, 5}, 3, 0).vartheta == 9);
  CHECK(*form_diagnostics({2, 7, 13}, 3, 0).vartheta == 6);
  CHECK(*form_diagnostics({2, 3, 5}, 3, 0).vartheta == 26);
  CHECK_FALSE(form_diagnostics({1, 2, 7}, 1, 0).vartheta.has_value());
}

TEST_CASE("vartheta = 2 forces a square value with g3 = g1 g2") {
  auto v = evaluate_form({1, 2, 7}, 0);
  CHECK(v.m == 225);
  CHECK(v.m == v.factors[2] * v.factors[2]);
  CHECK(v.factors[2] == v.factors[0] * v.factors[1]);
  CHECK(digit_sum(v.m, v.factors[2]) < v.factors[2]);

  // vartheta > 2: strict digit sum at the top factor and m > g3^2
  auto w = evaluate_form({2, 7, 13}, 0);
  CHECK(*form_diagnostics({2, 7, 13}, 3, 0).vartheta > 2);
  CHECK(digit_sum(w.m, w.factors[2]) == w.factors[2]);
  CHECK(w.m > w.factors[2] * w.factors[2]);
}

TEST_CASE("form_diagnostics: integrality and bounds on random triples") {
  std::mt19937_64 gen(202);
  for (int i = 0; i < 200; ++i) {
    auto r = random_triple(gen);
    auto p = form_params(r);
    for (int j = 1; j <= 3; ++j) {
      const Natural& rj = j == 1 ? r.r1 : j == 2 ? r.r2 : r.r3;
      for (long t = 0; t <= 4; ++t) {
        auto d = form_diagnostics(r, j, t);  // raises if theta or eta non-integral
        CHECK(d.eta >= 2);
        if (rj >= 2) {
          CHECK(d.alpha.get_den() > 1);
          CHECK(d.beta.get_den() > 1);
          CHECK((rj * rj) % d.alpha.get_den() == 0);
          if (t >= 1) {
            Natural g = rj * (p.sigma3 * t + p.ell) + 1;
            mpz_class floor_alpha = d.alpha.get_num() / d.alpha.get_den();
            CHECK(d.theta > 1 + floor_alpha);
            CHECK(g > d.theta);
          }
        }
      }
    }
  }
}

TEST_CASE("congruence_checks: published examples") {
  auto rep = congruence_checks({1, 2, 5}, 0);
  CHECK(rep.value == 2821);
  CHECK(rep.all_hold);
  CHECK((rep.value - 1) % 60 == 0);  // sigma3 * ell = 60

  // odd sigma3: parity alternates with delta(t)
  auto odd0 = congruence_checks({1, 3, 5}, 0);  // ell = 12, t even: delta = 1
  CHECK(mpz_odd_p(odd0.value.get_mpz_t()));
  CHECK(odd0.all_hold);
  auto odd1 = congruence_checks({1, 3, 5}, 1);  // t odd: delta = 0, U even
  CHECK(mpz_even_p(odd1.value.get_mpz_t()));
  CHECK(odd1.all_hold);
}

TEST_CASE("congruence_checks: all example triples over t in [-50, 50]") {
  for (const auto& row : kParamsRows) {
    for (long t = -50; t <= 50; ++t) {
      auto rep = congruence_checks(row.r, t);
      CHECK(rep.all_hold);
    }
  }
  for (long t = -50; t <= 50; ++t) CHECK(congruence_checks({101, 199, 499}, t).all_hold);
}

TEST_CASE("invert_carmichael3: published rows") {
  auto check = [](long m, long r1, long r2, long r3, int tau, long t) {
    auto inv = invert_carmichael3(factorize(Natural(m)));
    CHECK(inv.params.r.r1 == r1);
    CHECK(inv.params.r.r2 == r2);
    CHECK(inv.params.r.r3 == r3);
    CHECK(inv.params.tau == tau);
    CHECK(inv.t == t);
  };
  check(1729, 1, 2, 3, 1, 1);
  check(29341, 1, 3, 5, 1, 0);
  check(6601, 3, 11, 20, 1, 0);
  check(561, 1, 5, 8, 2, 0);
  check(1461241, 1, 2, 15, 2, 1);
  check(3057601, 1, 5, 8, 2, 1);

  auto inv = invert_carmichael3(factorize(1729));
  CHECK(inv.u == 6);
  CHECK(mpz_even_p(inv.u.get_mpz_t()));

  CHECK_THROWS_AS(invert_carmichael3(factorize(105)), error);     // not Carmichael
  CHECK_THROWS_AS(invert_carmichael3(factorize(41041)), error);   // four factors
  CHECK_THROWS_AS(invert_carmichael3(factorize(172081)), error);  // four factors
}

TEST_CASE("invert_carmichael3: round-trip over all 3-factor Carmichael numbers < 1e6") {
  EnumerateOptions opts;
  opts.limit = 1000000;
  opts.n_factors = 3;
  for (const auto& rec : enumerate_carmichael(opts)) {
    auto inv = invert_carmichael3(rec.factorization);
    CHECK(evaluate_form(inv.params.r, inv.t).m == rec.m);
    CHECK(mpz_even_p(inv.u.get_mpz_t()));
    // non-primary forces t < tau; primary values may still occur at t = 0,
    // where membership in SD decides
    if (!rec.primary) CHECK(inv.t < inv.params.tau);
    if (inv.t >= inv.params.tau) CHECK(rec.primary);
    if (inv.t == 1 && inv.params.tau == 2) CHECK_FALSE(rec.primary);
    if (inv.t == 0) CHECK(rec.primary == in_sd(rec.factorization));
  }
}

TEST_CASE("primary_form_check") {
  auto a = primary_form_check({1, 2, 3}, 35);
  CHECK(a.verdict == FormVerdict::cp3);
  CHECK(a.value.m == 56052361);
  CHECK(a.value.factors == std::array<Natural, 3>{211, 421, 631});

  auto b = primary_form_check({101, 199, 499}, 1);
  CHECK(b.verdict == FormVerdict::cp3);
  CHECK(b.value.m == Natural("37717531166520286365396946681"));

  auto c = primary_form_check({1, 5, 8}, 0);
  CHECK(c.verdict == FormVerdict::cn3_not_cp3);
  CHECK(c.value.m == 561);

  auto d = primary_form_check({1, 2, 3}, 2);  // 13 * 25 * 37
  CHECK(d.verdict == FormVerdict::not_all_prime);
}

TEST_CASE("strictness property: random triples, t in [tau, tau + 20)") {
  std::mt19937_64 gen(303);
  for (int i = 0; i < 200; ++i) {
    auto r = random_triple(gen);
    auto p = form_params(r);
    for (long dt = 0; dt < 20; ++dt) {
      Natural t = Natural(p.tau) + dt;
      auto rep = verify_strictness(r, t);
      CHECK(rep.kind == StrictnessCase::above_tau);
      CHECK(rep.decomposition_in_sd);
      CHECK(rep.value.factors[0] < rep.value.factors[1]);
      CHECK(rep.value.factors[1] < rep.value.factors[2]);
      for (int nu = 0; nu < 3; ++nu) {
        CHECK(rep.factor_digit_sums[nu] == rep.value.factors[nu]);
        // the universal-form congruence U = 1 (mod g - 1)
        if (rep.value.factors[nu] > 1)
          CHECK((rep.value.m - 1) % (rep.value.factors[nu] - 1) == 0);
      }
    }
  }
}
