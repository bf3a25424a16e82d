#pragma once

#include <optional>
#include <vector>

#include "trident/aux_forms.hpp"
#include "trident/forms.hpp"
#include "trident/patch_cover.hpp"

namespace trident {

// A component of a degree-1 or degree-2 auxiliary curve after factorization
// over Q.  A quadratic that splits only over a quadratic extension pins its
// rational points to a single primitive direction (two linear conditions).
struct CurveComponent {
  enum class Kind { line, conic, conjugate_pair } kind;
  TernaryForm form;                     // defining form (degree 1 or 2)
  std::vector<TernaryForm> pair_lines;  // conjugate_pair: the two linear conditions
  IntegerTriple pair_point;             // conjugate_pair: primitive direction
  bool operator<(const CurveComponent& o) const {
    if (kind != o.kind) return kind < o.kind;
    return form < o.form;
  }
};

std::vector<CurveComponent> factor_aux(const TernaryForm& a);

// x = (lambda/nu) (f1(u,v), f2(u,v), f3(u,v)) over coprime u, v; the forms
// have no common factor and nu always divides the resolvent R.
struct Parameterization {
  std::array<BinaryForm, 3> f;
  int degree = 1;
  Int resolvent;           // nonzero; from a coprime pair (or combination)
  std::string place_note;  // set when parameterize() fails locally
};

// Line or irreducible conic.  For conics: searches rational points in layers
// up to height_bound with local-solvability residue certificates; nullopt
// means a certified local obstruction (place recorded by the caller via
// no_rational_point_place).
std::optional<Parameterization> parameterize(const CurveComponent& comp,
                                             const Int& height_bound);

// Same projection construction but from a given rational point of the conic.
std::optional<Parameterization> parameterize_with_point(const CurveComponent& comp,
                                                        const IntegerTriple& point);

// Certified local obstruction for a conic, when one of the checked places
// (real, 16, 9, p^2 for small p | det) rules out primitive solutions.
std::optional<std::string> no_rational_point_place(const TernaryForm& conic);

// Binary-form equation G(u,v) = rhs with classification.
struct BinaryFormEquation {
  BinaryForm G;
  Int rhs;
  enum class Kind { split_coprime, pell, thue, special_linear } kind;
};

// Classify by the factorization of G over Q.
BinaryFormEquation classify_binary(const BinaryForm& G, const Int& rhs);

// All integer solutions with |u| <= ub, |v| <= vb; every output is verified
// by substitution.
std::vector<std::pair<Int, Int>> solve_binary(const BinaryFormEquation& eq,
                                              const Int& ub, const Int& vb);

// Exact certificate that F(f1,f2,f3) = c * L^(d k) for a linear form L,
// with the unimodular change W making L([u,v] W) = v.
struct SpecialCertificate {
  CurveComponent component;
  Parameterization param;
  Int c;
  BinaryForm L;
  std::array<std::array<Int, 2>, 2> W;
};

std::optional<SpecialCertificate> detect_special(const CurveComponent& comp,
                                                 const Parameterization& param,
                                                 const TernaryForm& F);

// Options for solve_on_component.
struct ComponentSolveOptions {
  Int box;                       // max |x_i| <= box
  std::optional<Patch> patch;    // restricts x1/x3, x2/x3 (x3 > 0)
  std::optional<std::pair<Int, Int>> shell;  // lo < max|x_i| <= hi
  bool inequality = false;       // |F| <= N instead of F = N
  Int height_bound = Int(1000000);
};

// Integer solutions of F(x) = N (or |F| <= N) on the component within the
// box; every emitted triple satisfies the exact condition.
std::vector<IntegerTriple> solve_on_component(const CurveComponent& comp,
                                              const TernaryForm& F, const Int& N,
                                              const ComponentSolveOptions& opt);

// (u,v) range bound given per-coordinate bounds |f_i(u,v)| <= C[i]: from the
// cofactor identity R u^(2d-1) = A f_i + B f_j.
Int uv_range_bound(const Parameterization& param, const std::array<Rat, 3>& C);

}  // namespace trident
