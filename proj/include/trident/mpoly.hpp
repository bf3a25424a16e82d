#pragma once

#include <array>
#include <cassert>
#include <map>
#include <string>

#include "trident/numbers.hpp"

namespace trident {

// Sparse polynomial over Q in up to four variables.  The meaning of each
// variable slot is contextual (callers bind e.g. slot 0 = u, 1 = v, 2 = w).
struct Expo {
  std::array<uint16_t, 4> e{0, 0, 0, 0};

  unsigned total() const { return e[0] + e[1] + e[2] + e[3]; }
  bool operator<(const Expo& o) const { return e < o.e; }
  bool operator==(const Expo& o) const { return e == o.e; }
};

class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(const Rat& c) {
    if (c != 0) terms_[Expo{}] = c;
  }

  static MPoly var(int i, unsigned pow = 1) {
    MPoly p;
    Expo x;
    x.e[i] = static_cast<uint16_t>(pow);
    p.terms_[x] = 1;
    return p;
  }

  static MPoly term(const Rat& c, const Expo& x) {
    MPoly p;
    if (c != 0) p.terms_[x] = c;
    return p;
  }

  const std::map<Expo, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned total_degree() const {
    unsigned d = 0;
    for (auto& [x, c] : terms_) d = std::max(d, x.total());
    return d;
  }
  // Least total degree among terms; 0 for the zero polynomial.
  unsigned min_degree() const {
    unsigned d = ~0u;
    for (auto& [x, c] : terms_) d = std::min(d, x.total());
    return terms_.empty() ? 0 : d;
  }
  Rat coeff(const Expo& x) const {
    auto it = terms_.find(x);
    return it == terms_.end() ? Rat(0) : it->second;
  }
  Rat constant_term() const { return coeff(Expo{}); }
  size_t size() const { return terms_.size(); }

  void add_term(const Expo& x, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(x);
    if (it == terms_.end()) {
      terms_[x] = c;
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  MPoly operator-() const {
    MPoly r = *this;
    for (auto& [x, c] : r.terms_) c = -c;
    return r;
  }
  MPoly operator+(const MPoly& o) const {
    MPoly r = *this;
    for (auto& [x, c] : o.terms_) r.add_term(x, c);
    return r;
  }
  MPoly operator-(const MPoly& o) const {
    MPoly r = *this;
    for (auto& [x, c] : o.terms_) r.add_term(x, -c);
    return r;
  }
  MPoly operator*(const MPoly& o) const {
    MPoly r;
    for (auto& [x, c] : terms_)
      for (auto& [y, d] : o.terms_) {
        Expo z;
        for (int i = 0; i < 4; ++i) z.e[i] = x.e[i] + y.e[i];
        r.add_term(z, c * d);
      }
    return r;
  }
  MPoly operator*(const Rat& s) const {
    MPoly r;
    if (s == 0) return r;
    r = *this;
    for (auto& [x, c] : r.terms_) c *= s;
    return r;
  }
  bool operator==(const MPoly& o) const { return terms_ == o.terms_; }

  MPoly pow(unsigned n) const {
    MPoly r(Rat(1));
    MPoly b = *this;
    while (n) {
      if (n & 1) r = r * b;
      if (n >>= 1) b = b * b;
    }
    return r;
  }

  // Substitute variable i by the polynomial p.
  MPoly subst(int i, const MPoly& p) const;

  // Substitute variable i by a rational value.
  MPoly eval_var(int i, const Rat& val) const;

  // Full evaluation with all four variables bound.
  Rat eval(const std::array<Rat, 4>& vals) const;

  MPoly derivative(int i) const;

  // Exact division by variable i (every term must contain it).
  MPoly divide_by_var(int i) const;

  // Terms of exact total degree d.
  MPoly homogeneous_part(unsigned d) const;

  Rat max_abs_coeff() const {
    Rat m(0);
    for (auto& [x, c] : terms_) m = std::max(m, abs_rat(c));
    return m;
  }

  // Sum of |coeff| * prod sizes[i]^e[i]; a sup bound on |value| when
  // |var_i| <= sizes[i].
  Rat sup_bound(const std::array<Rat, 4>& sizes) const;

  std::string str(const std::array<const char*, 4>& names) const;

 private:
  std::map<Expo, Rat> terms_;
};

// Determinant of a square matrix of MPoly entries (minor expansion with
// memoization over column subsets; sizes up to ~14).
MPoly mpoly_det(const std::vector<std::vector<MPoly>>& m);

// Sylvester resultant of g and h with respect to the variable in slot `var`,
// using formal degrees dg and dh.
MPoly mpoly_resultant(const MPoly& g, const MPoly& h, int var, int dg, int dh);

}  // namespace trident
