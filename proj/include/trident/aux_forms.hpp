#pragma once

#include <optional>
#include <vector>

#include "trident/config.hpp"
#include "trident/forms.hpp"
#include "trident/implicit_series.hpp"
#include "trident/patch_cover.hpp"

namespace trident {

// Two parameter regimes sharing one contract:
//   quadratic: degree-2 auxiliary forms, M proportional to B^(9/10) N^(1/10);
//   balanced:  degree-floor((k-1)/2) forms, M proportional to B^(4/(h+3)).
enum class AuxMode { quadratic, balanced };

struct SolverParams {
  Int B, N;
  int k = 3, h = 2, H = 6, s = 15;
  long M = 1;
  AuxMode mode = AuxMode::quadratic;
  Rat c, c_prime;
};

// Validates the admissible range and the covering conditions
//   (c0)  M <= (B/2)^k / (N M0)
//   (c1)  N (B/2)^-k <= M^-(H-1)      [balanced]
//   (c3)  M^-3 >= N (B/2)^-k          [quadratic]
// Throws ParameterRangeError naming the violated condition.
SolverParams choose_parameters(const Int& B, const Int& N, int k, AuxMode mode,
                               const Config& cfg, long M0 = 1);

// Monomials v^e delta^f ordered by non-increasing size X_v^e X_delta^f
// (ties: larger e first).
struct MonomialOrder {
  Rat X_v, X_delta;
  std::vector<std::array<int, 2>> ordered;  // (e, f)
  std::vector<Rat> sizes;                   // matching sizes
  bool head_is_powers_of_v = false;         // first H are 1, v, ..., v^(H-1)
};
MonomialOrder order_monomials(const SolverParams& params, const PatchConstants& consts);

// Generalized Vandermonde determinant bound via elementary column
// operations.  Polynomials in n <= 3 variables (MPoly slots 0..n-1),
// degree <= D, with |x_j| <= sizes[j].
struct DetBound {
  std::vector<MPoly> reduced;     // g_1, ..., g_H
  std::vector<int> indices;       // strictly increasing ind(g_j), 1-based
  Rat bound;                      // C(H,D) (max height)^H prod sizes of first H monomials
  Rat constant;                   // the explicit C(H,D)
  bool zero = false;              // a column vanished: determinant is 0
};
DetBound reduce_columns(const std::vector<MPoly>& fs, const std::vector<Rat>& sizes,
                        int nvars, int D);

struct AuxForm {
  TernaryForm form;
  long patch_index = -1;
  enum class Provenance { nullspace, lattice } provenance = Provenance::nullspace;
  Int height;
  Rat sup;  // certified sup of |A(t1,t2,1)| over the patch box (lattice mode)
};

// Exact integer kernel of the point-monomial matrix.
struct NullspaceResult {
  enum class Status { ok, rank_full, zero_dimensional } status;
  std::optional<AuxForm> form;
  int rank = 0;
};
NullspaceResult fit_nullspace(const std::vector<IntegerTriple>& points, int h);

// Lattice-reduction search for an integer form of degree h that is certified
// small over the whole in-patch box: B^h * sup < 1 forces the form to vanish
// at every in-patch integer solution.  Soundness is by that certificate;
// failures surface as fallback.
struct LatticeFit {
  std::optional<AuxForm> form;
  std::vector<AuxForm> extra_forms;  // one per additional certified v-strip
  bool fallback = false;
  Rat sup;
};
LatticeFit fit_lattice(const Patch& patch, const std::vector<Approximant>& approx,
                       const SolverParams& params, const Rat& delta_max);

}  // namespace trident
