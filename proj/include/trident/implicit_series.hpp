#pragma once

#include <vector>

#include "trident/forms.hpp"
#include "trident/patch_cover.hpp"

namespace trident {

// Local coordinates at a patch corner (a, b):
//   t1 = a + u, t2 = b + v, delta = F(t1,t2,1), w = delta - F(a,b,1),
//   w(u,v) = u F1 + v F2 + f(u,v) with f holding the degree >= 2 terms.
// MPoly slot convention: 0 = u, 1 = v, 2 = w (and 2 = delta in approximants).
struct LocalData {
  Rat a, b;
  Rat F1, F2;   // partials of F at (a, b, 1)
  MPoly f;      // terms of total degree >= 2, slots (u, v)
  MPoly w;      // u F1 + v F2 + f
  Rat delta0;   // F(a, b, 1)
};

// Throws ParameterRangeError when |F1(a,b,1)| < gradmin (certificate
// violated); callers with a t2-dominant gradient swap roles first.
LocalData local_data(const TernaryForm& F, const Rat& a, const Rat& b,
                     const Rat& gradmin);

// u = X_s(v, w) + u Y_s(u, v, w) exactly after substituting w = w(u,v);
// X_s has no constant term, Y_s has no terms of total degree < s.
struct ImplicitSeries {
  int s = 1;
  MPoly X;  // slots (v, w)
  MPoly Y;  // slots (u, v, w)
  Rat coeff_bound;
};

ImplicitSeries build_series(const LocalData& ld, int s);

// Truncated expansion of t1^e t2^f as a polynomial in (v, delta), slots
// (1, 2), with a certified bound on the dropped and approximation error over
// |v| <= side, |delta| <= delta_max.
struct Approximant {
  int e = 0, f = 0;
  MPoly G;  // slots (v = 1, delta = 2)
  Rat err;
};

std::vector<Approximant> approximants(const ImplicitSeries& series, const LocalData& ld,
                                      const Rat& side, const Rat& delta_max, int h,
                                      const Rat& drop_threshold);

// x1 <-> x2 swap of a form (for patches whose certificate lives on F2).
TernaryForm swap_x1x2(const TernaryForm& f);

}  // namespace trident
