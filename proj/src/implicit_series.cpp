#include "trident/implicit_series.hpp"

#include <cassert>

namespace trident {

namespace {
constexpr int kU = 0, kV = 1, kW = 2;
// Paper-faithful recurrence steps are cheap only for the first couple of
// orders; beyond kDirectSteps the factored correction keeps degrees at
// O(k + s^2) while preserving the exact identity.
constexpr int kDirectSteps = 2;
}  // namespace

LocalData local_data(const TernaryForm& F, const Rat& a, const Rat& b,
                     const Rat& gradmin) {
  LocalData ld;
  ld.a = a;
  ld.b = b;
  auto g = gradient(F, a, b);
  ld.F1 = g[0];
  ld.F2 = g[1];
  if (abs_rat(ld.F1) < gradmin)
    throw ParameterRangeError("local_data: |F1| below the patch certificate");
  ld.delta0 = F.eval_rat(a, b, 1);

  // Expand F(a+u, b+v, 1) - F(a,b,1) exactly.
  MPoly t1 = MPoly(Rat(a)) + MPoly::var(kU);
  MPoly t2 = MPoly(Rat(b)) + MPoly::var(kV);
  MPoly acc;
  for (auto& [e, c] : F.coeffs()) {
    MPoly t{Rat(c)};
    if (e[0] > 0) t = t * t1.pow(e[0]);
    if (e[1] > 0) t = t * t2.pow(e[1]);
    acc = acc + t;
  }
  acc.add_term(Expo{}, -ld.delta0);
  ld.w = acc;
  // Split off the linear part.
  MPoly lin = MPoly::var(kU) * Rat(ld.F1) + MPoly::var(kV) * Rat(ld.F2);
  ld.f = acc - lin;
  assert(ld.f.is_zero() || ld.f.min_degree() >= 2);
  return ld;
}

namespace {

// Exact residual Y(u,v) with u - X(v, w(u,v)) = u * Y(u,v); requires
// X(v, w(0,v)) = 0 identically.
MPoly residual(const MPoly& X, const LocalData& ld) {
  MPoly E = MPoly::var(kU) - X.subst(kW, ld.w);
  return E.divide_by_var(kU);
}

// Homogeneous degree-s correction Z(v,w) with the degree-s part of
// Z(v, u F1 + v F2) equal to the degree-s part of Yhat(u, v).
MPoly solve_correction(const MPoly& Yhat, int s, const Rat& F1, const Rat& F2) {
  MPoly ys = Yhat.homogeneous_part(s);
  std::vector<Rat> y(s + 1, Rat(0));  // coefficient of u^a v^(s-a)
  for (auto& [x, c] : ys.terms()) y[x.e[kU]] = c;
  // Binomials.
  std::vector<std::vector<Rat>> C(s + 1, std::vector<Rat>(s + 1, Rat(0)));
  for (int n = 0; n <= s; ++n) {
    C[n][0] = 1;
    for (int k = 1; k <= n; ++k)
      C[n][k] = C[n - 1][k - 1] + (k <= n - 1 ? C[n - 1][k] : Rat(0));
  }
  std::vector<Rat> z(s + 1, Rat(0));  // z[j] multiplies v^(s-j) w^j
  std::vector<Rat> F1pow(s + 1, Rat(1)), F2pow(s + 1, Rat(1));
  for (int i = 1; i <= s; ++i) {
    F1pow[i] = F1pow[i - 1] * F1;
    F2pow[i] = F2pow[i - 1] * F2;
  }
  for (int a = s; a >= 0; --a) {
    Rat rhs = y[a];
    for (int j = a + 1; j <= s; ++j)
      rhs -= z[j] * C[j][a] * F1pow[a] * F2pow[j - a];
    z[a] = rhs / F1pow[a];
  }
  MPoly Z;
  for (int j = 0; j <= s; ++j) {
    Expo x;
    x.e[kV] = s - j;
    x.e[kW] = j;
    Z.add_term(x, z[j]);
  }
  return Z;
}

}  // namespace

ImplicitSeries build_series(const LocalData& ld, int s) {
  assert(s >= 1);
  Rat invF1 = Rat(1) / ld.F1;
  // Base order: X1 = (w - v F2 - f(0,v)) / F1, Y1 = ((f(0,v) - f(u,v))/u) / F1.
  MPoly f0v = ld.f.eval_var(kU, Rat(0));
  MPoly X = (MPoly::var(kW) - MPoly::var(kV) * ld.F2 - f0v) * invF1;
  MPoly Y = (f0v - ld.f).divide_by_var(kU) * invF1;
  int cur = 1;
  // Direct recurrence while cheap.
  while (cur < s && cur < kDirectSteps) {
    MPoly YX = Y.subst(kU, X);
    MPoly Xn = X * (MPoly(Rat(1)) + YX);
    MPoly A = X + MPoly::var(kU) * Y;
    MPoly diff = Y.subst(kU, A) - YX;
    MPoly Yn = X * diff.divide_by_var(kU) + Y * Y;
    X = Xn;
    Y = Yn;
    ++cur;
  }
  if (cur < s) {
    // Factored corrections X <- X (1 + Z_cur) until the residual has the
    // required order; the final Y is the exact residual itself.
    MPoly Yhat = residual(X, ld);
    while (cur < s) {
      MPoly Z = solve_correction(Yhat, cur, ld.F1, ld.F2);
      X = X * (MPoly(Rat(1)) + Z);
      Yhat = residual(X, ld);
      ++cur;
    }
    Y = Yhat;
  }
  ImplicitSeries out;
  out.s = s;
  out.X = X;
  out.Y = Y;
  out.coeff_bound = std::max(X.max_abs_coeff(), Y.max_abs_coeff());
  // Invariants: exact identity, no constant term, minimal order.
  assert(X.constant_term() == 0);
  assert(Y.is_zero() || Y.min_degree() >= (unsigned)s);
#ifndef NDEBUG
  {
    MPoly E = X.subst(kW, ld.w) + MPoly::var(kU) * Y.subst(kW, ld.w);
    assert(E == MPoly::var(kU));
  }
#endif
  return out;
}

std::vector<Approximant> approximants(const ImplicitSeries& series, const LocalData& ld,
                                      const Rat& side, const Rat& delta_max, int h,
                                      const Rat& drop_threshold) {
  // Sizes: |u|,|v| <= side, |delta| <= delta_max, |w| <= |delta0| + delta_max.
  Rat wsize = abs_rat(ld.delta0) + delta_max;
  std::array<Rat, 4> sizes{side, side, wsize, Rat(0)};
  Rat ybound = series.Y.sup_bound(sizes);
  Rat uerr = side * ybound;  // |u - X_s(v, w)| over the in-patch box

  // X as a polynomial in (v, delta): substitute w = delta - delta0.
  MPoly wshift = MPoly::var(kW) + MPoly(Rat(-ld.delta0));
  MPoly Xd = series.X.subst(kW, wshift);  // slots (v, delta=kW)

  Rat amax = abs_rat(ld.a) + side;
  Rat bmax = abs_rat(ld.b) + side;
  auto size_of = [&](const Expo& x) {
    Rat size(1);
    for (unsigned i = 0; i < x.e[kV]; ++i) size *= side;
    for (unsigned i = 0; i < x.e[kW]; ++i) size *= delta_max;
    return size;
  };
  // Truncating the expansion once, before powering, keeps the products
  // small; the dropped mass goes into the same u-approximation budget.
  {
    MPoly kept;
    Rat dropped(0);
    for (auto& [x, c] : Xd.terms()) {
      Rat size = size_of(x);
      if (size * abs_rat(c) < drop_threshold / 4) {
        dropped += abs_rat(c) * size;
      } else {
        kept.add_term(x, c);
      }
    }
    Xd = std::move(kept);
    uerr += dropped;
  }

  std::vector<Approximant> out;
  // Power tables for (a + X) and (b + v).
  std::vector<MPoly> p1(h + 1), p2(h + 1);
  p1[0] = MPoly(Rat(1));
  p2[0] = MPoly(Rat(1));
  if (h >= 1) {
    p1[1] = MPoly(Rat(ld.a)) + Xd;
    p2[1] = MPoly(Rat(ld.b)) + MPoly::var(kV);
    for (int i = 2; i <= h; ++i) {
      p1[i] = p1[i - 1] * p1[1];
      p2[i] = p2[i - 1] * p2[1];
    }
  }
  for (int e = 0; e + 0 <= h; ++e) {
    for (int f = 0; e + f <= h; ++f) {
      MPoly G = p1[e] * p2[f];
      // |t1^e - (a+X)^e| <= e * amax^(e-1) * uerr, times |t2|^f <= bmax^f.
      Rat err(0);
      if (e > 0) {
        Rat pow1(1);
        for (int i = 0; i < e - 1; ++i) pow1 *= amax;
        Rat pow2(1);
        for (int i = 0; i < f; ++i) pow2 *= bmax;
        err = Rat(e) * pow1 * uerr * pow2;
      }
      MPoly kept;
      for (auto& [x, c] : G.terms()) {
        Rat size = size_of(x);
        if (size < drop_threshold) {
          err += abs_rat(c) * size;
        } else {
          kept.add_term(x, c);
        }
      }
      Approximant ap;
      ap.e = e;
      ap.f = f;
      ap.G = kept;
      ap.err = err;
      out.push_back(std::move(ap));
    }
  }
  return out;
}

TernaryForm swap_x1x2(const TernaryForm& f) {
  std::map<TernaryForm::Exp, Int> out;
  for (auto& [e, c] : f.coeffs()) out[{e[1], e[0], e[2]}] = c;
  return TernaryForm(f.degree(), std::move(out));
}

}  // namespace trident
