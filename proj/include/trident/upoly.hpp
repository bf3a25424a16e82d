#pragma once

#include <vector>

#include "trident/numbers.hpp"

namespace trident {

// Dense univariate polynomial over Z, coefficient i is the x^i coefficient.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(const Int& c) {
    if (c != 0) c_.push_back(c);
  }
  explicit UPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UPoly x(unsigned pow = 1, const Int& c = Int(1)) {
    std::vector<Int> v(pow + 1, Int(0));
    v[pow] = c;
    return UPoly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const Int& lc() const { return c_.back(); }
  const std::vector<Int>& coeffs() const { return c_; }
  Int coeff(size_t i) const { return i < c_.size() ? c_[i] : Int(0); }

  UPoly operator-() const;
  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly operator*(const Int& s) const;
  bool operator==(const UPoly& o) const { return c_ == o.c_; }

  UPoly derivative() const;
  Int eval(const Int& x) const;
  Rat eval_rat(const Rat& x) const;

  Int content() const;          // gcd of coefficients (>= 0), 0 for zero poly
  UPoly primitive_part() const; // content removed, sign of lc kept
  Int max_abs_coeff() const;

  // Exact division; asserts divisibility.
  UPoly divide_exact(const UPoly& d) const;
  // Test divisibility over Z; quotient stored in q on success.
  bool try_divide(const UPoly& d, UPoly& q) const;

  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

 private:
  std::vector<Int> c_;
};

// gcd over Z (primitive, positive leading coefficient), subresultant PRS.
UPoly upoly_gcd(const UPoly& a, const UPoly& b);

// Resultant of a and b over Z.
Int upoly_resultant(const UPoly& a, const UPoly& b);

// Squarefree decomposition: returns list of (factor, multiplicity) with the
// factors squarefree and pairwise coprime, product (with multiplicities and
// the returned unit) equals the input.
struct SquarefreeDecomp {
  Int unit;  // content * sign
  std::vector<std::pair<UPoly, unsigned>> parts;
};
SquarefreeDecomp squarefree_decompose(const UPoly& f);

// Irreducible factorization over Z: f = unit * prod parts[i].first ^ second.
struct ZFactorization {
  Int unit;
  std::vector<std::pair<UPoly, unsigned>> parts;
};
ZFactorization factor_over_z(const UPoly& f);

// All integer roots of f (exact; via linear factors of the factorization).
std::vector<Int> integer_roots(const UPoly& f);

// All integer roots of f in [lo, hi], by Sturm-sequence isolation (no
// factorization; f nonzero).
std::vector<Int> integer_roots_in_range(const UPoly& f, const Int& lo, const Int& hi);

// All rational roots of f, exact.
std::vector<Rat> rational_roots(const UPoly& f);

}  // namespace trident
