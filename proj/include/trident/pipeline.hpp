#pragma once

#include <string>
#include <vector>

#include "trident/aux_forms.hpp"
#include "trident/config.hpp"
#include "trident/curve_solver.hpp"
#include "trident/forms.hpp"

namespace trident {

enum class SolveMethod { search, verify };
enum class ValueMode { equation, inequality };

struct Solution {
  IntegerTriple x;
  Int value;
  enum class Class { special, parametric, sporadic } clazz = Class::sporadic;
  int parametric_degree = 0;
  std::string provenance;
  bool operator<(const Solution& o) const { return x < o.x; }
};

// A verified one-parameter family of solutions (source of the parametric
// class): either the image of a special component, or a built-in polynomial
// identity family for diagonal cubics.
struct SolutionFamily {
  int degree = 1;
  bool builtin = false;
  SpecialCertificate cert;                 // when !builtin
  std::vector<std::vector<Int>> transform; // builtin: x = T phi(t) columns
  Int builtin_value;                       // builtin: F(family(t)) identically
};

struct SolveReport {
  std::vector<Solution> solutions;
  long n_special = 0, n_parametric = 0, n_sporadic = 0;
  long script_n = 0;      // solutions outside families of degree <= family_cap
  int family_cap = 1;
  long patch_count = 0;
  long aux_form_count = 0;
  long fallback_count = 0;
  bool degraded = false;
  double seconds = 0;
  std::vector<SolutionFamily> families;
};

// Exhaustive oracle: exact k-th-root solving over (x1, x2) pairs.
std::vector<Solution> brute_force(const TernaryForm& F, const Int& N, const Int& B,
                                  ValueMode mode, const Config& cfg);

SolveReport solve_all(const TernaryForm& F, const Int& N, const Int& B,
                      AuxMode aux_mode, SolveMethod method, ValueMode mode,
                      const Config& cfg);

Solution::Class classify(const IntegerTriple& x, const TernaryForm& F, const Int& N,
                         const std::vector<SolutionFamily>& families, int degree_cap,
                         int* out_degree = nullptr);

// Family membership irrespective of degree cap (used for script N counting).
bool in_family(const IntegerTriple& x, const SolutionFamily& fam, const TernaryForm& F,
               const Int& N);

// Built-in identity families for diagonal cubic forms.
std::vector<SolutionFamily> builtin_families(const TernaryForm& F, const Int& N);

struct BenchRow {
  Int B;
  long patches = 0;
  long aux_forms = 0;
  long fallbacks = 0;
  unsigned long solutions = 0;
  double seconds = 0;
  bool degraded = false;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  double aux_slope = 0;   // log-log slope of aux-form count vs B
  double patch_slope = 0;
  bool any_degraded = false;
};

BenchResult benchmark(const TernaryForm& F, const Int& N, const std::vector<Int>& Bs,
                      const Config& cfg);

}  // namespace trident
