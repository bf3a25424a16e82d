#include "trident/upoly.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace trident {

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UPoly UPoly::operator+(const UPoly& o) const {
  std::vector<Int> v(std::max(c_.size(), o.c_.size()), Int(0));
  for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
  return UPoly(std::move(v));
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + (-o); }

UPoly UPoly::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return UPoly();
  std::vector<Int> v(c_.size() + o.c_.size() - 1, Int(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  return UPoly(std::move(v));
}

UPoly UPoly::operator*(const Int& s) const {
  if (s == 0) return UPoly();
  UPoly r = *this;
  for (auto& c : r.c_) c *= s;
  return r;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return UPoly();
  std::vector<Int> v(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Int((unsigned long)i);
  return UPoly(std::move(v));
}

Int UPoly::eval(const Int& x) const {
  Int r(0);
  for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

Rat UPoly::eval_rat(const Rat& x) const {
  Rat r(0);
  for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

Int UPoly::content() const {
  Int g(0);
  for (auto& c : c_) g = gcd_int(g, c);
  return g;
}

UPoly UPoly::primitive_part() const {
  if (is_zero()) return UPoly();
  Int g = content();
  UPoly r = *this;
  for (auto& c : r.c_) c /= g;
  return r;
}

Int UPoly::max_abs_coeff() const {
  Int m(0);
  for (auto& c : c_) m = std::max(m, abs_int(c));
  return m;
}

bool UPoly::try_divide(const UPoly& d, UPoly& q) const {
  assert(!d.is_zero());
  UPoly r = *this;
  std::vector<Int> qc;
  if (r.degree() < d.degree()) {
    if (r.is_zero()) {
      q = UPoly();
      return true;
    }
    return false;
  }
  qc.assign(r.degree() - d.degree() + 1, Int(0));
  while (!r.is_zero() && r.degree() >= d.degree()) {
    Int t = r.lc() % d.lc();
    if (t != 0) return false;
    Int f = r.lc() / d.lc();
    int shift = r.degree() - d.degree();
    qc[shift] = f;
    UPoly sub = d * f;
    std::vector<Int> shifted(shift, Int(0));
    shifted.insert(shifted.end(), sub.coeffs().begin(), sub.coeffs().end());
    r = r - UPoly(std::move(shifted));
  }
  if (!r.is_zero()) return false;
  q = UPoly(std::move(qc));
  return true;
}

UPoly UPoly::divide_exact(const UPoly& d) const {
  UPoly q;
  bool ok = try_divide(d, q);
  assert(ok && "divide_exact: not divisible");
  (void)ok;
  return q;
}

namespace {

// Pseudo-remainder with the exact scaling lc(b)^(deg a - deg b + 1) * a = q*b + r.
UPoly prem(const UPoly& a, const UPoly& b) {
  assert(!b.is_zero());
  UPoly r = a;
  int db = b.degree();
  Int lb = b.lc();
  int want = a.degree() - db + 1;
  int steps = 0;
  while (!r.is_zero() && r.degree() >= db) {
    int shift = r.degree() - db;
    Int lr = r.lc();
    UPoly sub = b * lr;
    std::vector<Int> shifted(shift, Int(0));
    shifted.insert(shifted.end(), sub.coeffs().begin(), sub.coeffs().end());
    r = r * lb - UPoly(std::move(shifted));
    ++steps;
  }
  for (; steps < want; ++steps) r = r * lb;
  return r;
}

Int int_pow(const Int& a, unsigned e) {
  Int r(1);
  for (unsigned i = 0; i < e; ++i) r *= a;
  return r;
}

}  // namespace

UPoly upoly_gcd(const UPoly& a, const UPoly& b) {
  if (a.is_zero()) return b.is_zero() ? UPoly() : b.primitive_part() * (b.lc() < 0 ? Int(-1) : Int(1));
  if (b.is_zero()) return a.primitive_part() * (a.lc() < 0 ? Int(-1) : Int(1));
  UPoly f = a.primitive_part(), g = b.primitive_part();
  if (f.degree() < g.degree()) std::swap(f, g);
  while (!g.is_zero()) {
    UPoly r = prem(f, g);
    f = g;
    g = r.is_zero() ? UPoly() : r.primitive_part();
  }
  UPoly out = f.primitive_part();
  if (!out.is_zero() && out.lc() < 0) out = -out;
  return out;
}

Int upoly_resultant(const UPoly& a, const UPoly& b) {
  // Subresultant PRS resultant.
  if (a.is_zero() || b.is_zero()) return Int(0);
  UPoly f = a, g = b;
  Int s(1);
  if (f.degree() < g.degree()) {
    if ((f.degree() & 1) && (g.degree() & 1)) s = -1;
    std::swap(f, g);
  }
  Int gcoef(1), h(1);
  Int res(1);
  while (g.degree() > 0) {
    int d = f.degree() - g.degree();
    if ((f.degree() & 1) && (g.degree() & 1)) s = -s;
    UPoly r = prem(f, g);
    f = g;
    Int hd = int_pow(h, d);
    Int denom = gcoef * hd;
    // r is divisible by gcoef * h^d.
    std::vector<Int> rc = r.coeffs();
    for (auto& c : rc) {
      assert(c % denom == 0);
      c /= denom;
    }
    g = UPoly(std::move(rc));
    gcoef = f.lc();
    Int gd = int_pow(gcoef, d);
    // h = h^(1-d) * g^d
    if (d == 0) {
      // h unchanged
    } else {
      Int hnum = gd;
      Int hden = int_pow(h, d - 1);
      assert(hden != 0 && hnum % hden == 0);
      h = hnum / hden;
    }
    if (g.is_zero()) return Int(0);
  }
  // g is a nonzero constant.
  Int c = g.lc();
  int df = f.degree();
  Int num = int_pow(c, (unsigned)df);
  Int den = int_pow(h, (unsigned)(df - 1 < 0 ? 0 : df - 1));
  assert(den != 0 && num % den == 0);
  res = num / den;
  return s * res;
}

SquarefreeDecomp squarefree_decompose(const UPoly& f) {
  SquarefreeDecomp out;
  out.unit = Int(1);
  if (f.is_zero()) {
    out.unit = 0;
    return out;
  }
  Int cont = f.content();
  UPoly p = f.primitive_part();
  if (p.lc() < 0) {
    p = -p;
    cont = -cont;
  }
  out.unit = cont;
  if (p.degree() == 0) return out;
  // Yun's algorithm.
  UPoly g = upoly_gcd(p, p.derivative());
  UPoly c = p.divide_exact(g);
  UPoly d = p.derivative().divide_exact(g) - c.derivative();
  unsigned i = 1;
  while (c.degree() > 0) {
    UPoly q = upoly_gcd(c, d);
    if (q.degree() > 0) out.parts.emplace_back(q, i);
    c = c.divide_exact(q);
    d = d.divide_exact(q) - c.derivative();
    ++i;
  }
  return out;
}

std::vector<Int> integer_roots(const UPoly& f) {
  std::vector<Int> out;
  if (f.is_zero() || f.degree() == 0) return out;
  auto fac = factor_over_z(f);
  for (auto& [p, e] : fac.parts) {
    if (p.degree() == 1) {
      // a*x + b = 0 -> x = -b/a if integral
      Int a = p.coeff(1), b = p.coeff(0);
      if (b % a == 0) out.push_back(-b / a);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Int> integer_roots_in_range(const UPoly& f, const Int& lo, const Int& hi) {
  std::vector<Int> out;
  if (f.is_zero() || lo > hi) return out;
  if (f.degree() == 0) return out;
  if (f.degree() == 1) {
    Int a = f.coeff(1), b = f.coeff(0);
    if (b % a == 0) {
      Int r = -b / a;
      if (r >= lo && r <= hi) out.push_back(r);
    }
    return out;
  }
  // Sturm chain of the squarefree part.
  UPoly g = upoly_gcd(f, f.derivative());
  UPoly p = g.degree() > 0 ? f.divide_exact(g) : f;
  std::vector<UPoly> chain{p, p.derivative()};
  while (chain.back().degree() > 0) {
    const UPoly& a = chain[chain.size() - 2];
    const UPoly& b = chain.back();
    UPoly r = prem(a, b);
    if (r.is_zero()) break;
    // prem scales the true remainder by lc(b)^d; undo a negative sign so the
    // chain keeps the Sturm property, then drop the (positive) content.
    int d = a.degree() - b.degree() + 1;
    if (b.lc() < 0 && (d % 2 == 1)) r = -r;
    chain.push_back(-r.primitive_part());
  }
  auto signs_at = [&](const Rat& x) {
    int v = 0, prev = 0;
    for (auto& q : chain) {
      Rat val = q.eval_rat(x);
      int s = val > 0 ? 1 : (val < 0 ? -1 : 0);
      if (s != 0) {
        if (prev != 0 && s != prev) ++v;
        prev = s;
      }
    }
    return v;
  };
  // Recursion: count roots in (a, b] and split down to unit intervals.
  std::function<void(Int, Int)> rec = [&](Int a, Int b) {
    int count = signs_at(Rat(a)) - signs_at(Rat(b));
    if (count <= 0) return;
    if (b - a == 1) {
      if (p.eval(b) == 0) out.push_back(b);
      return;
    }
    Int mid = a + (b - a) / 2;
    rec(a, mid);
    rec(mid, b);
  };
  // Cover [lo, hi]: check lo itself, then (lo, hi].
  if (p.eval(lo) == 0) out.push_back(lo);
  if (hi > lo) rec(lo, hi);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Rat> rational_roots(const UPoly& f) {
  std::vector<Rat> out;
  if (f.is_zero() || f.degree() == 0) return out;
  auto fac = factor_over_z(f);
  for (auto& [p, e] : fac.parts) {
    if (p.degree() == 1) {
      Rat r(-p.coeff(0), p.coeff(1));
      r.canonicalize();
      out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace trident
