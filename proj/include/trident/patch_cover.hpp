#pragma once

#include <vector>

#include "trident/forms.hpp"

namespace trident {

// Constants attached to a form for the near-curve cover:
//   lambda: certified positive lower bound for min over [-1,1]^2 of
//           max_i |dF/dx_i(t1,t2,1)|,
//   M0:     integer with M0 >= 3k/lambda, M0 >= sup bounds of |F1|,|F2|, and
//           F1, F2 varying by at most lambda/6 over any square of side 1/M0,
//   lipschitz: constant L with |F_i(p)-F_i(q)| <= L (|dp1|+|dp2|), i = 1,2.
struct PatchConstants {
  Rat lambda;
  long M0 = 0;
  Rat lipschitz;
};

// A grid square [a, a+side] x [b, b+side] in the (t1, t2) = (x1/x3, x2/x3)
// plane that may contain a point with |F(t1,t2,1)| <= side, together with a
// gradient certificate: |F_{grad_index}| >= lambda/6 with constant sign
// grad_sign over the whole square.
struct Patch {
  Rat a, b;
  Rat side;  // = 1/(M0*M)
  int grad_index = 1;
  int grad_sign = 1;
  long M = 0;
};

// Certified constants; subdivides [-1,1]^2 with exact interval bounds until
// every cell has a partial bounded away from 0.  Throws ParameterRangeError
// if the subdivision exceeds max_depth (signals a near-singular form).
PatchConstants compute_constants(const TernaryForm& f, int max_depth = 14);

// Every square of the (M0 M)^-1 grid on [-1,1]^2 whose interval value of
// F(t1,t2,1) meets [-(M0 M)^-1, (M0 M)^-1], in row-major order.  Each patch
// carries a valid gradient certificate.
std::vector<Patch> good_squares(const TernaryForm& f, const PatchConstants& c, long M);

}  // namespace trident
