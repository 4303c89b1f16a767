#pragma once

// Universal forms with three factors.  For a strictly increasing, pairwise
// coprime triple r the form is
//
//   U_r(t) = prod_nu ( r_nu (sigma3 t + ell) + 1 )
//
// with sigma1, sigma2, sigma3 the elementary symmetric polynomials of r
// and ell the residue of -sigma1/sigma2 mod sigma3 in [0, sigma3).  Above
// the threshold tau in {1, 2} the three factors always form a strict
// s-decomposition of the value, so prime factors turn the value into a
// primary Carmichael number.  Every 3-factor Carmichael number arises this
// way for exactly one triple, which invert_carmichael3 recovers.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "carmforms/arith.hpp"

namespace carmforms {

struct Triple {
  Natural r1, r2, r3;
};

struct FormParams {
  Triple r;
  Natural sigma1, sigma2, sigma3;
  Natural ell;
  int tau = 1;  // 2 iff r1 = 1 and ell < sigma3 - sigma1

  // Coefficients of the nu-th linear factor a*t + b.
  Natural coeff_a(int nu) const;
  Natural coeff_b(int nu) const;
};

// Validates the triple (1 <= r1 < r2 < r3, pairwise coprime) and derives
// the parameters; rejects invalid triples with an invalid_triple error.
FormParams form_params(const Triple& r);

struct FormValue {
  Triple r;
  Natural t;
  Natural u;  // sigma3 * t + ell
  std::array<Natural, 3> factors;
  Natural m;
  bool all_odd_prime = false;
};

FormValue evaluate_form(const Triple& r, const Natural& t);  // t >= 0

enum class StrictnessCase { above_tau, t1_below_tau, t0, degenerate };

struct StrictnessReport {
  FormParams params;
  FormValue value;
  StrictnessCase kind = StrictnessCase::above_tau;
  std::array<Natural, 3> factor_digit_sums;  // s_{g_nu}(m)
  // whether g1 * g2 * g3 itself qualifies as an (at-least / strict)
  // s-decomposition of the value
  bool decomposition_in_sdg = false;
  bool decomposition_in_sd = false;
};

StrictnessReport verify_strictness(const Triple& r, const Natural& t);

struct FormDiagnostics {
  int j = 3;
  mpq_class alpha;  // sigma3 / r_j^3
  mpq_class beta;   // sigma3 / r_j^3 - sigma1 / r_j + 1
  mpz_class theta;  // {alpha} g_j - beta, integral for integral t
  Natural eta;      // sigma1 / r_j + ell sigma3 / r_j^2, integer >= 2
  std::optional<Natural> vartheta;  // = eta when j = 3
};

FormDiagnostics form_diagnostics(const Triple& r, int j, const Natural& t);

struct CongruenceCheck {
  std::string label;
  bool holds = false;
};

struct CongruenceReport {
  FormParams params;
  mpz_class t;
  mpz_class value;
  std::vector<CongruenceCheck> checks;
  bool all_hold = true;
};

// Verifies the congruence and parity laws of U_r(t) applicable to the
// given integer t (negative t allowed).
CongruenceReport congruence_checks(const Triple& r, const mpz_class& t);

struct Inversion {
  FormParams params;  // params.r is the recovered triple
  Natural u;          // gcd(p1 - 1, p2 - 1, p3 - 1), even
  Natural t;          // (u - ell) / sigma3
};

// Recovers the unique (r, t) with m = U_r(t) from a 3-factor Carmichael
// number.  Raises invalid_input when m is not one, internal_error when a
// guaranteed divisibility fails.
Inversion invert_carmichael3(const PrimeFactorization& f);

enum class FormVerdict { cp3, cn3_not_cp3, not_all_prime };

struct PrimaryFormCheck {
  FormVerdict verdict = FormVerdict::not_all_prime;
  FormParams params;
  FormValue value;
  std::array<Natural, 3> factor_digit_sums;
};

// Evaluates the form and classifies the value: a primary 3-factor
// Carmichael number, a non-primary one, or not a Carmichael number at all
// because some factor is not an odd prime.  The verdict is measured from
// the digit sums, not assumed from t.
PrimaryFormCheck primary_form_check(const Triple& r, const Natural& t);

}  // namespace carmforms
