#include "carmforms/polygonal.hpp"

namespace carmforms {

mpz_class polygonal_number(const Natural& h, const Natural& n) {
  if (h < 1 || n < 1) raise(errc::invalid_input, "polygonal_number: h, n must be >= 1");
  mpz_class v = n * n * (h - 2) - n * (h - 4);
  return v / 2;  // n^2(h-2) - n(h-4) is always even
}

PolygonalIndex polygonal_index(const Natural& m, const Natural& g) {
  if (m < 1) raise(errc::invalid_input, "polygonal_index: m must be >= 1");
  if (g < 2) raise(errc::invalid_input, "polygonal_index: g must be >= 2");
  PolygonalIndex out;
  if (g == 2) {  // G^m_2 = m for every m >= 1
    out.h = m;
    out.kind = PolygonalCase::base_two;
    return out;
  }
  if (m == g) {
    out.h = 2;
    out.kind = PolygonalCase::m_equals_g;
    return out;
  }
  if (!mpz_divisible_p(m.get_mpz_t(), g.get_mpz_t())) return out;
  Natural q = m / g - 1;
  Natural g1 = g - 1;
  if (!mpz_divisible_p(q.get_mpz_t(), g1.get_mpz_t())) return out;
  Natural h = 2 * (q / g1 + 1);
  if (polygonal_number(h, g) != m)
    raise(errc::internal_error, "polygonal_index: identity check failed");
  out.h = h;
  out.kind = PolygonalCase::divides;
  return out;
}

PolygonalWitness form_polygonal_params(const Triple& r, const Natural& t, int nu) {
  if (nu < 1 || nu > 3) raise(errc::invalid_input, "form_polygonal_params: nu must be 1, 2 or 3");
  if (sgn(t) < 0) raise(errc::invalid_input, "form_polygonal_params: t must be >= 0");
  FormParams p = form_params(r);
  const Natural& rv = nu == 1 ? r.r1 : nu == 2 ? r.r2 : r.r3;

  PolygonalWitness w;
  // c = sigma1/r_nu + ell sigma3/r_nu^2 is integral with the same argument
  // as the eta diagnostic; d = (sigma3/r_nu)^2 is integral since r_nu | sigma3.
  mpq_class c_q = mpq_class(p.sigma1) / mpq_class(rv) +
                  mpq_class(p.ell * p.sigma3) / mpq_class(rv * rv);
  c_q.canonicalize();
  if (c_q.get_den() != 1) raise(errc::internal_error, "form_polygonal_params: c not integral");
  w.c = c_q.get_num();
  Natural s3r = p.sigma3 / rv;
  w.d = s3r * s3r;
  w.h = 2 * (w.c + w.d * t);
  FormValue v = evaluate_form(r, t);
  w.m = v.m;
  w.g = v.factors[nu - 1];
  if (w.g >= 1 && polygonal_number(w.h, w.g) != w.m)
    raise(errc::internal_error, "form_polygonal_params: identity check failed");
  return w;
}

}  // namespace carmforms
