#include "carmforms/forms.hpp"

#include "carmforms/carmichael.hpp"

namespace carmforms {

namespace {

Natural gcd(const Natural& a, const Natural& b) {
  Natural g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

mpz_class mod_nonneg(const mpz_class& x, const mpz_class& n) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
  return r;
}

const Natural& component(const Triple& r, int nu) {
  switch (nu) {
    case 1: return r.r1;
    case 2: return r.r2;
    default: return r.r3;
  }
}

// floor of an exact rational
mpz_class floor_q(const mpq_class& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return f;
}

Natural integral_value(const mpq_class& q, const char* what) {
  if (q.get_den() != 1)
    raise(errc::internal_error, std::string(what) + " is not integral");
  return q.get_num();
}

}  // namespace

Natural FormParams::coeff_a(int nu) const { return component(r, nu) * sigma3; }

Natural FormParams::coeff_b(int nu) const { return component(r, nu) * ell + 1; }

FormParams form_params(const Triple& r) {
  if (r.r1 < 1 || !(r.r1 < r.r2 && r.r2 < r.r3))
    raise(errc::invalid_triple, "triple components must satisfy 1 <= r1 < r2 < r3");
  if (gcd(r.r1, r.r2) != 1 || gcd(r.r1, r.r3) != 1 || gcd(r.r2, r.r3) != 1)
    raise(errc::invalid_triple, "triple components must be pairwise coprime");

  FormParams p;
  p.r = r;
  p.sigma1 = r.r1 + r.r2 + r.r3;
  p.sigma2 = r.r1 * r.r2 + r.r1 * r.r3 + r.r2 * r.r3;
  p.sigma3 = r.r1 * r.r2 * r.r3;
  // ell = -sigma1 / sigma2 mod sigma3; sigma2 is invertible mod sigma3
  Natural inv = mod_inverse(p.sigma2 % p.sigma3, p.sigma3);
  p.ell = mod_nonneg(-p.sigma1 * inv, p.sigma3);
  p.tau = (r.r1 == 1 && p.ell < p.sigma3 - p.sigma1) ? 2 : 1;
  return p;
}

FormValue evaluate_form(const Triple& r, const Natural& t) {
  if (sgn(t) < 0) raise(errc::invalid_input, "evaluate_form: t must be >= 0");
  FormParams p = form_params(r);
  FormValue v;
  v.r = r;
  v.t = t;
  v.u = p.sigma3 * t + p.ell;
  v.m = 1;
  v.all_odd_prime = true;
  const Natural* rs[3] = {&r.r1, &r.r2, &r.r3};
  for (int i = 0; i < 3; ++i) {
    v.factors[i] = *rs[i] * v.u + 1;
    v.m *= v.factors[i];
    if (v.factors[i] <= 2 || mpz_even_p(v.factors[i].get_mpz_t()) || !is_prime(v.factors[i]))
      v.all_odd_prime = false;
  }
  return v;
}

StrictnessReport verify_strictness(const Triple& r, const Natural& t) {
  StrictnessReport rep;
  rep.params = form_params(r);
  rep.value = evaluate_form(r, t);
  if (rep.value.m == 1) {
    rep.kind = StrictnessCase::degenerate;  // r = (1,2,3), t = 0
    return rep;
  }
  if (t >= rep.params.tau)
    rep.kind = StrictnessCase::above_tau;
  else
    rep.kind = t == 1 ? StrictnessCase::t1_below_tau : StrictnessCase::t0;

  rep.decomposition_in_sdg = true;
  rep.decomposition_in_sd = true;
  for (int i = 0; i < 3; ++i) {
    const Natural& g = rep.value.factors[i];
    rep.factor_digit_sums[i] = digit_sum(rep.value.m, g);
    if (g < 2 || rep.factor_digit_sums[i] < g) rep.decomposition_in_sdg = false;
    if (g < 2 || rep.factor_digit_sums[i] != g) rep.decomposition_in_sd = false;
  }
  return rep;
}

FormDiagnostics form_diagnostics(const Triple& r, int j, const Natural& t) {
  if (j < 1 || j > 3) raise(errc::invalid_input, "form_diagnostics: j must be 1, 2 or 3");
  FormParams p = form_params(r);
  const Natural& rj = component(r, j);
  Natural rj2 = rj * rj, rj3 = rj2 * rj;

  FormDiagnostics d;
  d.j = j;
  d.alpha = mpq_class(p.sigma3) / mpq_class(rj3);
  d.alpha.canonicalize();
  d.beta = d.alpha - mpq_class(p.sigma1) / mpq_class(rj) + 1;
  d.beta.canonicalize();

  Natural g = rj * (p.sigma3 * t + p.ell) + 1;
  mpq_class frac_alpha = d.alpha - mpq_class(floor_q(d.alpha));
  mpq_class theta_q = frac_alpha * mpq_class(g) - d.beta;
  theta_q.canonicalize();
  d.theta = integral_value(theta_q, "theta");

  mpq_class eta_q = mpq_class(p.sigma1) / mpq_class(rj) +
                    mpq_class(p.ell * p.sigma3) / mpq_class(rj2);
  eta_q.canonicalize();
  d.eta = integral_value(eta_q, "eta");
  if (j == 3) d.vartheta = d.eta;
  return d;
}

CongruenceReport congruence_checks(const Triple& r, const mpz_class& t) {
  CongruenceReport rep;
  rep.params = form_params(r);
  rep.t = t;
  const FormParams& p = rep.params;

  mpz_class lambda = p.sigma3 * t + p.ell;
  rep.value = (r.r1 * lambda + 1) * (r.r2 * lambda + 1) * (r.r3 * lambda + 1);
  mpz_class um1 = rep.value - 1;

  auto add = [&](const std::string& label, bool holds) {
    rep.checks.push_back({label, holds});
    rep.all_hold = rep.all_hold && holds;
  };
  auto divides = [&](const mpz_class& n) { return n != 0 && um1 % n == 0; };

  if (p.ell == 0) {  // r = (1,2,3)
    add("U(t) = 1 (mod 2*sigma3^2)", divides(2 * p.sigma3 * p.sigma3));
    if (mod_nonneg(t, 3) != 2)
      add("U(t) = 1 (mod sigma3^3)", divides(p.sigma3 * p.sigma3 * p.sigma3));
    add("U(t) = 1 (mod 8)", divides(8));
    add("U(t) odd", mpz_odd_p(rep.value.get_mpz_t()));
    return rep;
  }

  add("U(t) = 1 (mod sigma3*gcd(sigma3,ell))", divides(p.sigma3 * gcd(p.sigma3, p.ell)));
  if (t == 0) add("U(0) = 1 (mod sigma3*ell)", divides(p.sigma3 * p.ell));
  if (t == 1) add("U(1) = 1 (mod sigma3*(sigma3+ell))", divides(p.sigma3 * (p.sigma3 + p.ell)));
  if (mpz_even_p(p.sigma3.get_mpz_t())) {
    add("U(t) = 1 (mod 4)", divides(4));
    add("U(t) odd", mpz_odd_p(rep.value.get_mpz_t()));
  } else {
    // parity alternates: U = delta(t) (mod 2), delta = 1 iff t = ell (mod 2)
    int delta = mod_nonneg(t, 2) == mod_nonneg(p.ell, 2) ? 1 : 0;
    add("U(t) = delta(t) (mod 2)",
        mod_nonneg(rep.value, 2) == delta);
    add("U(t) = 1 (mod 2^delta*sigma3*gcd(sigma3,ell))",
        divides(mpz_class(1 << delta) * p.sigma3 * gcd(p.sigma3, p.ell)));
  }
  return rep;
}

Inversion invert_carmichael3(const PrimeFactorization& f) {
  if (f.n_distinct() != 3 || !f.squarefree())
    raise(errc::invalid_input, "invert_carmichael3: need three distinct primes");
  for (const auto& e : f.entries)
    if (e.prime == 2) raise(errc::invalid_input, "invert_carmichael3: factors must be odd");
  if (!korselt(f))
    raise(errc::invalid_input, "invert_carmichael3: not a Carmichael number");

  const Natural p1 = f.entries[0].prime - 1;
  const Natural p2 = f.entries[1].prime - 1;
  const Natural p3 = f.entries[2].prime - 1;
  Inversion inv;
  inv.u = gcd(p1, gcd(p2, p3));
  Triple r{p1 / inv.u, p2 / inv.u, p3 / inv.u};
  inv.params = form_params(r);  // always valid for a 3-factor Carmichael number

  // u = sigma3 * t + ell with 0 <= ell < sigma3
  if (inv.u < inv.params.ell || (inv.u - inv.params.ell) % inv.params.sigma3 != 0)
    raise(errc::internal_error, "invert_carmichael3: u is not congruent to ell mod sigma3");
  inv.t = (inv.u - inv.params.ell) / inv.params.sigma3;

  FormValue check = evaluate_form(r, inv.t);
  if (check.m != f.value)
    raise(errc::internal_error, "invert_carmichael3: re-evaluation mismatch");
  return inv;
}

PrimaryFormCheck primary_form_check(const Triple& r, const Natural& t) {
  PrimaryFormCheck out;
  out.params = form_params(r);
  out.value = evaluate_form(r, t);
  for (int i = 0; i < 3; ++i)
    out.factor_digit_sums[i] = digit_sum(out.value.m, out.value.factors[i]);
  if (!out.value.all_odd_prime) {
    out.verdict = FormVerdict::not_all_prime;
    return out;
  }
  bool primary = true;
  for (int i = 0; i < 3; ++i)
    primary = primary && out.factor_digit_sums[i] == out.value.factors[i];
  out.verdict = primary ? FormVerdict::cp3 : FormVerdict::cn3_not_cp3;
  return out;
}

}  // namespace carmforms
