#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>

#include "trident/interval.hpp"
#include "trident/mpoly.hpp"
#include "trident/numbers.hpp"

namespace trident {

struct IntegerTriple {
  Int x1, x2, x3;
  bool operator==(const IntegerTriple& o) const {
    return x1 == o.x1 && x2 == o.x2 && x3 == o.x3;
  }
  bool operator<(const IntegerTriple& o) const {
    if (x1 != o.x1) return x1 < o.x1;
    if (x2 != o.x2) return x2 < o.x2;
    return x3 < o.x3;
  }
  Int max_abs() const { return std::max(abs_int(x1), std::max(abs_int(x2), abs_int(x3))); }
  bool is_zero() const { return x1 == 0 && x2 == 0 && x3 == 0; }
};

// Homogeneous integer form in x1, x2, x3.  Sparse exponent-triple map; all
// stored triples sum to the degree, at least one coefficient nonzero.
class TernaryForm {
 public:
  using Exp = std::array<int, 3>;

  TernaryForm() : degree_(0) {}
  TernaryForm(int degree, std::map<Exp, Int> coeffs);

  int degree() const { return degree_; }
  const std::map<Exp, Int>& coeffs() const { return coeffs_; }
  Int coeff(const Exp& e) const {
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? Int(0) : it->second;
  }
  bool is_zero() const { return coeffs_.empty(); }

  Int eval(const IntegerTriple& x) const;
  Rat eval_rat(const Rat& x1, const Rat& x2, const Rat& x3) const;

  // Partial derivative as a form of degree k-1.
  TernaryForm partial(int var) const;

  // F(t1, t2, 1) over a rational box, exact interval enclosure.
  Interval interval_at(const Interval& t1, const Interval& t2) const;

  // Height: max |coefficient|.
  Int height() const;

  // Sum of |c| over coefficients; sup bound for |F(t1,t2,1)| on [-1,1]^2.
  Int abs_coeff_sum() const;

  TernaryForm operator*(const Int& s) const;
  TernaryForm operator+(const TernaryForm& o) const;  // degrees must match
  bool operator==(const TernaryForm& o) const {
    return degree_ == o.degree_ && coeffs_ == o.coeffs_;
  }
  bool operator<(const TernaryForm& o) const {
    if (degree_ != o.degree_) return degree_ < o.degree_;
    return coeffs_ < o.coeffs_;
  }

  // Apply a signed permutation / integer linear substitution x -> M y,
  // returning F(M y) (M given column-wise).
  TernaryForm substitute(const std::vector<std::vector<Int>>& columns) const;

  // Divide coefficients by content, make leading (lex-largest exponent)
  // coefficient positive.
  TernaryForm primitive() const;

  // As MPoly in slots (0,1,2) = (x1,x2,x3).
  MPoly to_mpoly() const;

  std::string str() const;

 private:
  int degree_;
  std::map<Exp, Int> coeffs_;
};

// Binary integer form in u, v.
class BinaryForm {
 public:
  using Exp = std::array<int, 2>;

  BinaryForm() : degree_(0) {}
  BinaryForm(int degree, std::map<Exp, Int> coeffs);

  int degree() const { return degree_; }
  const std::map<Exp, Int>& coeffs() const { return coeffs_; }
  Int coeff(int eu, int ev) const {
    auto it = coeffs_.find({eu, ev});
    return it == coeffs_.end() ? Int(0) : it->second;
  }
  bool is_zero() const { return coeffs_.empty(); }

  Int eval(const Int& u, const Int& v) const;
  Int height() const;

  BinaryForm operator+(const BinaryForm& o) const;
  BinaryForm operator*(const Int& s) const;
  bool operator==(const BinaryForm& o) const {
    return degree_ == o.degree_ && coeffs_ == o.coeffs_;
  }

  BinaryForm primitive() const;

  std::string str() const;

 private:
  int degree_;
  std::map<Exp, Int> coeffs_;
};

// ---- forms module operations ----

Int eval_form(const TernaryForm& f, const IntegerTriple& x);

// Partials of F evaluated at (t1, t2, 1), exact rationals.
std::array<Rat, 3> gradient(const TernaryForm& f, const Rat& t1, const Rat& t2);

// true iff the only common complex zero of the three partials is the origin.
// Exact: resultant elimination after a shear making the partials regular in
// x3, plus gcd of the elimination coefficients.
bool assert_nonsingular(const TernaryForm& f);

// Form text syntax: signed monomial sum over x1, x2, x3, e.g.
// "x1^3+x2^3-x3^3" or "2x1^2x2 - x3^3".
TernaryForm parse_ternary(const std::string& text);

// All exponent triples (a, b, c) with a+b+c = h, lexicographically
// descending: the column order used by the auxiliary-form machinery.
std::vector<TernaryForm::Exp> monomials_of_degree(int h);

}  // namespace trident
