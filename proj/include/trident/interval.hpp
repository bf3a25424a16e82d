#pragma once

#include "trident/numbers.hpp"

namespace trident {

// Closed rational interval [lo, hi]; exact arithmetic, no rounding.
struct Interval {
  Rat lo, hi;

  Interval() : lo(0), hi(0) {}
  Interval(const Rat& a, const Rat& b) : lo(a), hi(b) {}
  static Interval point(const Rat& a) { return Interval(a, a); }

  Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }
  Interval operator-(const Interval& o) const { return {lo - o.hi, hi - o.lo}; }
  Interval operator-() const { return {-hi, -lo}; }

  Interval operator*(const Interval& o) const {
    Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    return {std::min(std::min(a, b), std::min(c, d)),
            std::max(std::max(a, b), std::max(c, d))};
  }
  Interval operator*(const Rat& s) const {
    return s >= 0 ? Interval(lo * s, hi * s) : Interval(hi * s, lo * s);
  }

  Interval pow(unsigned n) const {
    if (n == 0) return point(Rat(1));
    if (n % 2 == 1 || lo >= 0) {
      Rat a = lo, b = hi;
      Rat pa(1), pb(1);
      for (unsigned i = 0; i < n; ++i) {
        pa *= a;
        pb *= b;
      }
      return {pa, pb};
    }
    if (hi <= 0) {
      Rat pa(1), pb(1);
      for (unsigned i = 0; i < n; ++i) {
        pa *= lo;
        pb *= hi;
      }
      return {pb, pa};
    }
    // straddles zero, even power
    Rat m = std::max(abs_rat(lo), abs_rat(hi));
    Rat pm(1);
    for (unsigned i = 0; i < n; ++i) pm *= m;
    return {Rat(0), pm};
  }

  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  bool meets(const Rat& a, const Rat& b) const { return hi >= a && lo <= b; }
  // Lower bound for |x| over the interval (0 if it straddles zero).
  Rat abs_lower() const {
    if (contains_zero()) return Rat(0);
    return lo > 0 ? lo : -hi;
  }
  Rat abs_upper() const { return std::max(abs_rat(lo), abs_rat(hi)); }
};

}  // namespace trident
