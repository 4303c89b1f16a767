#pragma once

// Polygonal numbers G^h_n = (n^2 (h-2) - n (h-4)) / 2 and the inverse
// index identity m = G^h_g with h = 2((m/g - 1)/(g - 1) + 1), which holds
// whenever that expression is integral.  Form values are polygonal in each
// of their three factors, with the index parameters derived from the form.

#include <optional>

#include "carmforms/forms.hpp"

namespace carmforms {

// G^h_n, exact; may be <= 0 for h = 1, n >= 3.
mpz_class polygonal_number(const Natural& h, const Natural& n);

enum class PolygonalCase {
  m_equals_g,     // m = g >= 2, h = 2
  base_two,       // g = 2, h = m (h may be odd)
  divides,        // g | m and g-1 | m/g - 1, h >= 4 even
  not_polygonal,  // the index expression is not a positive integer
};

struct PolygonalIndex {
  std::optional<Natural> h;
  PolygonalCase kind = PolygonalCase::not_polygonal;
};

// Smallest-form inverse: the h with G^h_g = m, when integral.  Absence is
// a verdict, not an error.
PolygonalIndex polygonal_index(const Natural& m, const Natural& g);

struct PolygonalWitness {
  Natural m;
  Natural g;
  Natural h;  // 2 (c + d t)
  Natural c;  // sigma1/r_nu + ell sigma3/r_nu^2, >= 2
  Natural d;  // (sigma3/r_nu)^2, >= 4
};

// U_r(t) = G^h_{g_nu} with h = 2(c + d t); the identity is verified
// exactly before returning.
PolygonalWitness form_polygonal_params(const Triple& r, const Natural& t, int nu);

}  // namespace carmforms
