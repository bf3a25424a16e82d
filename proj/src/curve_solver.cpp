#include "trident/curve_solver.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "trident/linalg.hpp"
#include "trident/upoly.hpp"

namespace trident {

namespace {

Int int_pow(const Int& a, unsigned e) {
  Int r(1);
  for (unsigned i = 0; i < e; ++i) r *= a;
  return r;
}

Int ceil_rat(const Rat& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

// ---- binary form helpers ----

BinaryForm binary_mul(const BinaryForm& a, const BinaryForm& b) {
  std::map<BinaryForm::Exp, Int> out;
  for (auto& [e, c] : a.coeffs())
    for (auto& [f, d] : b.coeffs()) out[{e[0] + f[0], e[1] + f[1]}] += c * d;
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return BinaryForm(a.degree() + b.degree(), std::move(out));
}

BinaryForm binary_pow(const BinaryForm& a, unsigned n) {
  BinaryForm r(0, {{{0, 0}, Int(1)}});
  for (unsigned i = 0; i < n; ++i) r = binary_mul(r, a);
  return r;
}

UPoly dehomog(const BinaryForm& g) {
  std::vector<Int> c(g.degree() + 1, Int(0));
  for (auto& [e, coef] : g.coeffs()) c[e[0]] += coef;
  return UPoly(std::move(c));
}

BinaryForm homogenize(const UPoly& p, int degree) {
  std::map<BinaryForm::Exp, Int> out;
  for (int i = 0; i <= p.degree(); ++i)
    if (p.coeff(i) != 0) out[{i, degree - i}] = p.coeff(i);
  return BinaryForm(degree, std::move(out));
}

Int binary_resultant(const BinaryForm& f, const BinaryForm& g) {
  int m = f.degree(), n = g.degree();
  if (m == 0 || n == 0) return Int(1);
  IntMatrix s(m + n, std::vector<Int>(m + n, Int(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s[i][i + j] = f.coeff(m - j, j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s[n + i][i + j] = g.coeff(n - j, j);
  return matrix_det(std::move(s));
}

struct BinaryFactorization {
  Int unit;  // G = unit * prod parts^mult
  std::vector<std::pair<BinaryForm, unsigned>> parts;
};

BinaryFactorization binary_factor(const BinaryForm& g) {
  BinaryFactorization out;
  UPoly p = dehomog(g);
  int vpow = g.degree() - p.degree();
  auto zf = factor_over_z(p);
  out.unit = zf.unit;
  if (vpow > 0)
    out.parts.emplace_back(BinaryForm(1, {{{0, 1}, Int(1)}}), (unsigned)vpow);
  for (auto& [q, e] : zf.parts) out.parts.emplace_back(homogenize(q, q.degree()), e);
  return out;
}

BinaryForm compose_form(const TernaryForm& F, const std::array<BinaryForm, 3>& f) {
  BinaryForm acc(F.degree() * f[0].degree(), {});
  for (auto& [e, c] : F.coeffs()) {
    BinaryForm t(0, {{{0, 0}, Int(1)}});
    for (int i = 0; i < 3; ++i)
      if (e[i] > 0) t = binary_mul(t, binary_pow(f[i], (unsigned)e[i]));
    acc = acc + t * c;
  }
  return acc;
}

IntMatrix gram(const TernaryForm& q) {
  IntMatrix g(3, std::vector<Int>(3, Int(0)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      TernaryForm::Exp e{0, 0, 0};
      e[i] += 1;
      e[j] += 1;
      Int c = q.coeff(e);
      g[i][j] = (i == j) ? 2 * c : c;
    }
  return g;
}

IntMatrix inverse_unimodular(const IntMatrix& u) {
  Int det = matrix_det(u);
  assert(abs_int(det) == 1);
  IntMatrix adj(3, std::vector<Int>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Int m = u[(j + 1) % 3][(i + 1) % 3] * u[(j + 2) % 3][(i + 2) % 3] -
              u[(j + 1) % 3][(i + 2) % 3] * u[(j + 2) % 3][(i + 1) % 3];
      adj[i][j] = m * det;
    }
  return adj;
}

TernaryForm line_from_coeffs(const Int& a, const Int& b, const Int& c) {
  std::map<TernaryForm::Exp, Int> m;
  if (a != 0) m[{1, 0, 0}] = a;
  if (b != 0) m[{0, 1, 0}] = b;
  if (c != 0) m[{0, 0, 1}] = c;
  return TernaryForm(1, std::move(m)).primitive();
}

Int bilinear(const IntMatrix& G, const std::vector<Int>& x, const std::vector<Int>& y) {
  Int s(0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += x[i] * G[i][j] * y[j];
  return s;
}

}  // namespace

std::vector<CurveComponent> factor_aux(const TernaryForm& a) {
  std::vector<CurveComponent> out;
  if (a.degree() == 1) {
    out.push_back({CurveComponent::Kind::line, a.primitive(), {}, {}});
    return out;
  }
  assert(a.degree() == 2);
  IntMatrix G = gram(a);
  int rank = matrix_rank(G);
  if (rank == 3) {
    out.push_back({CurveComponent::Kind::conic, a.primitive(), {}, {}});
    return out;
  }
  if (rank == 1) {
    for (int i = 0; i < 3; ++i)
      if (G[i][0] != 0 || G[i][1] != 0 || G[i][2] != 0) {
        out.push_back({CurveComponent::Kind::line,
                       line_from_coeffs(G[i][0], G[i][1], G[i][2]),
                       {},
                       {}});
        return out;
      }
  }
  // rank 2: restrict transverse to the kernel direction.
  std::vector<Int> ker = kernel_vector(G);
  assert(ker.size() == 3);
  IntMatrix U = unimodular_complete(ker);
  TernaryForm b = a.substitute(U);
  assert(b.coeff({0, 0, 2}) == 0 && b.coeff({1, 0, 1}) == 0 && b.coeff({0, 1, 1}) == 0);
  Int qa = b.coeff({2, 0, 0}), qb = b.coeff({1, 1, 0}), qc = b.coeff({0, 2, 0});
  Int disc = qb * qb - 4 * qa * qc;
  IntMatrix Uinv = inverse_unimodular(U);
  auto pull_back = [&](const Int& l1, const Int& l2) {
    Int c1 = l1 * Uinv[0][0] + l2 * Uinv[1][0];
    Int c2 = l1 * Uinv[0][1] + l2 * Uinv[1][1];
    Int c3 = l1 * Uinv[0][2] + l2 * Uinv[1][2];
    return line_from_coeffs(c1, c2, c3);
  };
  auto s = exact_sqrt(disc);
  if (s) {
    if (qa != 0) {
      out.push_back({CurveComponent::Kind::line, pull_back(2 * qa, qb - *s), {}, {}});
      TernaryForm other = pull_back(2 * qa, qb + *s);
      if (!(other == out.back().form))
        out.push_back({CurveComponent::Kind::line, other, {}, {}});
    } else {
      out.push_back({CurveComponent::Kind::line, pull_back(Int(0), Int(1)), {}, {}});
      TernaryForm other = pull_back(qb, qc);
      if (!(other == out.back().form))
        out.push_back({CurveComponent::Kind::line, other, {}, {}});
    }
    return out;
  }
  // Irreducible over Q, split over a quadratic extension: integer points sit
  // on the kernel direction (two simultaneous linear conditions).
  CurveComponent comp;
  comp.kind = CurveComponent::Kind::conjugate_pair;
  comp.form = a.primitive();
  comp.pair_lines = {pull_back(Int(1), Int(0)), pull_back(Int(0), Int(1))};
  comp.pair_point = {ker[0], ker[1], ker[2]};
  out.push_back(comp);
  return out;
}

std::optional<std::string> no_rational_point_place(const TernaryForm& conic) {
  IntMatrix G = gram(conic);
  Int det = matrix_det(G);
  assert(det != 0);
  // Real place: if a diagonal Gram entry is zero the corresponding unit
  // vector is a point, so definiteness needs all of them nonzero.
  Int d1 = G[0][0];
  Int d2 = G[0][0] * G[1][1] - G[0][1] * G[1][0];
  if (d1 != 0 && d2 > 0) {
    if (d1 > 0 && det > 0) return std::string("real (positive definite)");
    if (d1 < 0 && det < 0) return std::string("real (negative definite)");
  }
  // Finite places: primitive-residue tests modulo 16, 9, p^2 (small p | det).
  std::vector<Int> moduli = {Int(16), Int(9)};
  for (auto& [p, e] : factorize(det)) {
    if (p <= 3 || p > 13) continue;
    moduli.push_back(p * p);
  }
  for (const Int& m : moduli) {
    long mm = m.get_si();
    bool found = false;
    for (long x1 = 0; x1 < mm && !found; ++x1)
      for (long x2 = 0; x2 < mm && !found; ++x2)
        for (long x3 = 0; x3 < mm && !found; ++x3) {
          if (x1 == 0 && x2 == 0 && x3 == 0) continue;
          Int g = gcd_int(gcd_int(Int(x1), Int(x2)), gcd_int(Int(x3), m));
          if (g != 1) continue;
          Int val = conic.eval({Int(x1), Int(x2), Int(x3)});
          if (val % m == 0) found = true;
        }
    if (!found) return "mod " + m.get_str();
  }
  return std::nullopt;
}

namespace {

std::optional<std::vector<Int>> search_conic_point(const TernaryForm& q,
                                                   const Int& height_bound) {
  Int a2 = q.coeff({0, 0, 2});
  bool local_checked = false;
  for (Int layer(1); layer <= height_bound; layer *= 2) {
    long L = layer.get_si();
    for (long x1 = -L; x1 <= L; ++x1)
      for (long x2 = -L; x2 <= L; ++x2) {
        Int b1 = q.coeff({1, 0, 1}) * x1 + q.coeff({0, 1, 1}) * x2;
        Int c0 = q.coeff({2, 0, 0}) * x1 * x1 + q.coeff({1, 1, 0}) * x1 * x2 +
                 q.coeff({0, 2, 0}) * x2 * x2;
        if (a2 == 0) {
          if (b1 != 0) {
            if (c0 % b1 == 0) {
              Int x3 = -c0 / b1;
              if (x1 != 0 || x2 != 0 || x3 != 0)
                return std::vector<Int>{Int(x1), Int(x2), x3};
            }
          } else if (c0 == 0 && (x1 != 0 || x2 != 0)) {
            return std::vector<Int>{Int(x1), Int(x2), Int(0)};
          }
          continue;
        }
        Int disc = b1 * b1 - 4 * a2 * c0;
        auto s = exact_sqrt(disc);
        if (!s) continue;
        for (int sign = 0; sign < (disc == 0 ? 1 : 2); ++sign) {
          Int num = -b1 + (sign ? Int(-*s) : *s);
          if (num % (2 * a2) != 0) continue;
          Int x3 = num / (2 * a2);
          if (x1 == 0 && x2 == 0 && x3 == 0) continue;
          return std::vector<Int>{Int(x1), Int(x2), x3};
        }
      }
    if (L >= 8 && !local_checked) {
      local_checked = true;
      if (no_rational_point_place(q)) return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Parameterization> parameterize_with_point(const CurveComponent& comp,
                                                        const IntegerTriple& point);

std::optional<Parameterization> parameterize(const CurveComponent& comp,
                                             const Int& height_bound) {
  if (comp.kind == CurveComponent::Kind::line) {
    std::vector<Int> l = {comp.form.coeff({1, 0, 0}), comp.form.coeff({0, 1, 0}),
                          comp.form.coeff({0, 0, 1})};
    IntMatrix U = unimodular_complete(l);
    IntMatrix Ut(3, std::vector<Int>(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) Ut[i][j] = U[j][i];
    IntMatrix Uti = inverse_unimodular(Ut);
    std::vector<Int> b1 = {Uti[0][0], Uti[1][0], Uti[2][0]};
    std::vector<Int> b2 = {Uti[0][1], Uti[1][1], Uti[2][1]};
    for (auto* b : {&b1, &b2}) {
      for (auto& c : *b) {
        if (c != 0) {
          if (c < 0)
            for (auto& d : *b) d = -d;
          break;
        }
      }
    }
    Parameterization out;
    out.degree = 1;
    for (int i = 0; i < 3; ++i) {
      std::map<BinaryForm::Exp, Int> m;
      if (b1[i] != 0) m[{1, 0}] = b1[i];
      if (b2[i] != 0) m[{0, 1}] = b2[i];
      out.f[i] = BinaryForm(1, std::move(m));
    }
    static const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    out.resolvent = 0;
    for (auto& pr : pairs) {
      Int r = out.f[pr[0]].coeff(1, 0) * out.f[pr[1]].coeff(0, 1) -
              out.f[pr[1]].coeff(1, 0) * out.f[pr[0]].coeff(0, 1);
      if (r != 0) {
        out.resolvent = r;
        break;
      }
    }
    assert(out.resolvent != 0);
    return out;
  }
  assert(comp.kind == CurveComponent::Kind::conic);
  auto pt = search_conic_point(comp.form, height_bound);
  if (!pt) return std::nullopt;
  return parameterize_with_point(comp, {(*pt)[0], (*pt)[1], (*pt)[2]});
}

// Classical projection from a rational point of the conic.
std::optional<Parameterization> parameterize_with_point(const CurveComponent& comp,
                                                        const IntegerTriple& point) {
  std::vector<Int> P = {point.x1, point.x2, point.x3};
  make_primitive(P);
  assert(comp.form.eval({P[0], P[1], P[2]}) == 0);
  IntMatrix G = gram(comp.form);
  IntMatrix U = unimodular_complete(P);
  std::vector<Int> u1 = {U[0][0], U[1][0], U[2][0]};
  std::vector<Int> u2 = {U[0][1], U[1][1], U[2][1]};
  Int q20 = comp.form.eval({u1[0], u1[1], u1[2]});
  Int q02 = comp.form.eval({u2[0], u2[1], u2[2]});
  Int q11 = bilinear(G, u1, u2);
  Int bp1 = bilinear(G, P, u1), bp2 = bilinear(G, P, u2);
  std::array<BinaryForm, 3> f;
  for (int i = 0; i < 3; ++i) {
    std::map<BinaryForm::Exp, Int> m;
    auto add = [&](int eu, int ev, const Int& c) {
      if (c != 0) m[{eu, ev}] += c;
    };
    add(2, 0, q20 * P[i] - bp1 * u1[i]);
    add(1, 1, q11 * P[i] - bp1 * u2[i] - bp2 * u1[i]);
    add(0, 2, q02 * P[i] - bp2 * u2[i]);
    for (auto it = m.begin(); it != m.end();)
      it = it->second == 0 ? m.erase(it) : std::next(it);
    f[i] = BinaryForm(2, std::move(m));
  }
  Int content(0);
  for (auto& g : f)
    for (auto& [e, c] : g.coeffs()) content = gcd_int(content, c);
  if (content > 1) {
    for (int i = 0; i < 3; ++i) {
      std::map<BinaryForm::Exp, Int> m;
      for (auto& [e, c] : f[i].coeffs()) m[e] = c / content;
      f[i] = BinaryForm(2, std::move(m));
    }
  }
  Parameterization out;
  out.f = f;
  out.degree = 2;
  static const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  out.resolvent = 0;
  for (auto& pr : pairs) {
    Int r = binary_resultant(out.f[pr[0]], out.f[pr[1]]);
    if (r != 0) {
      out.resolvent = r;
      break;
    }
  }
  for (int t = 1; t <= 3 && out.resolvent == 0; ++t) {
    Int r = binary_resultant(out.f[0], out.f[1] + out.f[2] * Int(t));
    if (r != 0) out.resolvent = r;
  }
  assert(out.resolvent != 0 && "parameterization resolvent vanished");
  return out;
}

BinaryFormEquation classify_binary(const BinaryForm& G, const Int& rhs) {
  BinaryFormEquation eq;
  eq.G = G;
  eq.rhs = rhs;
  auto fac = binary_factor(G);
  assert(!fac.parts.empty());
  if (fac.parts.size() >= 2) {
    eq.kind = BinaryFormEquation::Kind::split_coprime;
  } else {
    int d = fac.parts[0].first.degree();
    eq.kind = d == 1   ? BinaryFormEquation::Kind::special_linear
              : d == 2 ? BinaryFormEquation::Kind::pell
                       : BinaryFormEquation::Kind::thue;
  }
  return eq;
}

namespace {

constexpr long kScanCap = 4000000;

void push_checked(std::vector<std::pair<Int, Int>>& out, const BinaryForm& G,
                  const Int& rhs, const Int& u, const Int& v, const Int& ub,
                  const Int& vb) {
  if (abs_int(u) > ub || abs_int(v) > vb) return;
  if (G.eval(u, v) == rhs) out.emplace_back(u, v);
}

std::vector<Int> power_targets(const Int& unit, unsigned r, const Int& rhs) {
  std::vector<Int> out;
  if (rhs % unit != 0) return out;
  Int q = rhs / unit;
  auto root = exact_root(q, r);
  if (root) {
    out.push_back(*root);
    if (r % 2 == 0 && *root != 0) out.push_back(-*root);
  }
  return out;
}

// G(., v0) - target as a univariate polynomial in u.
UPoly slice_u(const BinaryForm& g, const Int& v0, const Int& target) {
  std::vector<Int> cs(g.degree() + 1, Int(0));
  for (auto& [e, c] : g.coeffs()) cs[e[0]] += c * int_pow(v0, (unsigned)e[1]);
  cs[0] -= target;
  return UPoly(std::move(cs));
}

void solve_with_factorization(const BinaryFormEquation& eq,
                              const BinaryFactorization& fac, const Int& ub,
                              const Int& vb, std::vector<std::pair<Int, Int>>& out) {
  const BinaryForm& G = eq.G;
  const Int& rhs = eq.rhs;
  assert(rhs != 0);
  if (eq.kind == BinaryFormEquation::Kind::split_coprime) {
    BinaryForm G1 = binary_pow(fac.parts[0].first, fac.parts[0].second);
    BinaryForm G2(0, {{{0, 0}, fac.unit}});
    for (size_t i = 1; i < fac.parts.size(); ++i)
      G2 = binary_mul(G2, binary_pow(fac.parts[i].first, fac.parts[i].second));
    auto to_mpoly = [](const BinaryForm& g, const Int& shift) {
      MPoly p;
      for (auto& [e, c] : g.coeffs()) {
        Expo x;
        x.e[0] = (uint16_t)e[0];
        x.e[1] = (uint16_t)e[1];
        p.add_term(x, Rat(c));
      }
      p.add_term(Expo{}, Rat(-shift));
      return p;
    };
    auto univariate_v = [](const MPoly& p) {
      int dv = 0;
      for (auto& [x, c] : p.terms()) dv = std::max(dv, (int)x.e[1]);
      std::vector<Int> cs(dv + 1, Int(0));
      for (auto& [x, c] : p.terms()) {
        assert(c.get_den() == 1);
        cs[x.e[1]] += c.get_num();
      }
      return UPoly(std::move(cs));
    };
    for (const Int& d : divisors(rhs)) {
      for (int sgn = 0; sgn < 2; ++sgn) {
        Int N1 = sgn ? Int(-d) : d;
        Int N2 = rhs / N1;
        MPoly g1p = to_mpoly(G1, N1), g2p = to_mpoly(G2, N2);
        int du1 = 0, du2 = 0;
        for (auto& [x, c] : g1p.terms()) du1 = std::max(du1, (int)x.e[0]);
        for (auto& [x, c] : g2p.terms()) du2 = std::max(du2, (int)x.e[0]);
        auto roots_then_check = [&](const UPoly& pv, const BinaryForm& other,
                                    const Int& target) {
          if (pv.is_zero() || pv.degree() == 0) return;
          for (const Int& v0 : integer_roots_in_range(pv, -vb, vb)) {
            UPoly pu = slice_u(other, v0, target);
            if (pu.is_zero()) continue;
            for (const Int& u0 : integer_roots_in_range(pu, -ub, ub))
              push_checked(out, G, rhs, u0, v0, ub, vb);
          }
        };
        if (du1 == 0) {
          roots_then_check(univariate_v(g1p), G2, N2);
          continue;
        }
        if (du2 == 0) {
          roots_then_check(univariate_v(g2p), G1, N1);
          continue;
        }
        MPoly res = mpoly_resultant(g1p, g2p, 0, du1, du2);
        if (res.is_zero()) {
          long UB = std::min<long>(ub.get_si(), 2000);
          long VB = std::min<long>(vb.get_si(), 2000);
          for (long v0 = -VB; v0 <= VB; ++v0)
            for (long u0 = -UB; u0 <= UB; ++u0)
              if (G1.eval(u0, v0) == N1 && G2.eval(u0, v0) == N2)
                push_checked(out, G, rhs, Int(u0), Int(v0), ub, vb);
          continue;
        }
        UPoly rv = univariate_v(res);
        if (rv.is_zero() || rv.degree() == 0) continue;
        for (const Int& v0 : integer_roots_in_range(rv, -vb, vb)) {
          UPoly pu = slice_u(G1, v0, N1);
          if (pu.is_zero()) {
            UPoly pu2 = slice_u(G2, v0, N2);
            if (pu2.is_zero()) continue;
            for (const Int& u0 : integer_roots_in_range(pu2, -ub, ub))
              push_checked(out, G, rhs, u0, v0, ub, vb);
            continue;
          }
          for (const Int& u0 : integer_roots_in_range(pu, -ub, ub))
            push_checked(out, G, rhs, u0, v0, ub, vb);
        }
      }
    }
    return;
  }
  const BinaryForm& Q1 = fac.parts[0].first;
  unsigned r = fac.parts[0].second;
  std::vector<Int> targets = power_targets(fac.unit, r, rhs);
  if (eq.kind == BinaryFormEquation::Kind::special_linear) {
    Int alpha = Q1.coeff(1, 0), beta = Q1.coeff(0, 1);
    for (const Int& t : targets) {
      Int g, x0, y0;
      mpz_gcdext(g.get_mpz_t(), x0.get_mpz_t(), y0.get_mpz_t(), alpha.get_mpz_t(),
                 beta.get_mpz_t());
      if (t % g != 0) continue;
      Int u0 = x0 * (t / g), v0 = y0 * (t / g);
      Int du = beta / g, dv = -alpha / g;
      Rat slo, shi;
      bool have = false, feasible = true;
      auto clamp = [&](const Int& base, const Int& step, const Int& bound) {
        if (step == 0) {
          if (abs_int(base) > bound) feasible = false;
          return;
        }
        Rat lo = (Rat(-bound) - Rat(base)) / Rat(step);
        Rat hi = (Rat(bound) - Rat(base)) / Rat(step);
        if (lo > hi) std::swap(lo, hi);
        if (!have) {
          slo = lo;
          shi = hi;
          have = true;
        } else {
          slo = std::max(slo, lo);
          shi = std::min(shi, hi);
        }
      };
      clamp(u0, du, ub);
      clamp(v0, dv, vb);
      if (!feasible || !have) continue;
      Int s_lo = ceil_rat(slo);
      Int s_hi = -ceil_rat(-shi);
      if (s_hi - s_lo > 2 * Int(kScanCap))
        throw ParameterRangeError("solve_binary: linear family range too large");
      for (Int s = s_lo; s <= s_hi; ++s)
        push_checked(out, G, rhs, u0 + s * du, v0 + s * dv, ub, vb);
    }
    return;
  }
  if (vb > kScanCap) throw ParameterRangeError("solve_binary: scan range too large");
  if (eq.kind == BinaryFormEquation::Kind::pell) {
    Int a = Q1.coeff(2, 0), b = Q1.coeff(1, 1), c = Q1.coeff(0, 2);
    Int D = b * b - 4 * a * c;
    for (const Int& t : targets) {
      for (Int v0 = -vb; v0 <= vb; ++v0) {
        if (a == 0) {
          if (v0 == 0) continue;
          Int num = t - c * v0 * v0;
          Int den = b * v0;
          if (den != 0 && num % den == 0)
            push_checked(out, G, rhs, num / den, v0, ub, vb);
          continue;
        }
        Int disc = D * v0 * v0 + 4 * a * t;
        auto s = exact_sqrt(disc);
        if (!s) continue;
        for (int sgn = 0; sgn < (disc == 0 ? 1 : 2); ++sgn) {
          Int num = -b * v0 + (sgn ? Int(-*s) : *s);
          if (num % (2 * a) == 0) push_checked(out, G, rhs, num / (2 * a), v0, ub, vb);
        }
      }
    }
    return;
  }
  // Thue: bounded enumeration over v with an exact root solve in u.
  for (const Int& t : targets) {
    int m = Q1.degree();
    for (Int v0 = -vb; v0 <= vb; ++v0) {
      UPoly pu = slice_u(Q1, v0, t);
      if (pu.is_zero()) continue;
      bool binomial = pu.degree() == m;
      for (int i = 1; i < m && binomial; ++i)
        if (pu.coeff(i) != 0) binomial = false;
      if (binomial) {
        Int c0 = pu.coeff(0), cm = pu.coeff(m);
        if (c0 == 0) {
          push_checked(out, G, rhs, Int(0), v0, ub, vb);
        } else if (c0 % cm == 0) {
          auto root = exact_root(-c0 / cm, (unsigned)m);
          if (root) {
            push_checked(out, G, rhs, *root, v0, ub, vb);
            if (m % 2 == 0) push_checked(out, G, rhs, Int(-*root), v0, ub, vb);
          }
        }
        continue;
      }
      for (const Int& u0 : integer_roots_in_range(pu, -ub, ub))
        push_checked(out, G, rhs, u0, v0, ub, vb);
    }
  }
}

}  // namespace

std::vector<std::pair<Int, Int>> solve_binary(const BinaryFormEquation& eq,
                                              const Int& ub, const Int& vb) {
  std::vector<std::pair<Int, Int>> out;
  auto fac = binary_factor(eq.G);
  solve_with_factorization(eq, fac, ub, vb, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<SpecialCertificate> detect_special(const CurveComponent& comp,
                                                 const Parameterization& param,
                                                 const TernaryForm& F) {
  BinaryForm G = compose_form(F, param.f);
  if (G.is_zero()) return std::nullopt;
  int m = G.degree();
  UPoly p = dehomog(G);
  Int alpha, beta, c;
  if (p.degree() <= 0) {
    alpha = 0;
    beta = 1;
    c = G.coeff(0, m);
    BinaryForm Lm = binary_pow(BinaryForm(1, {{{0, 1}, Int(1)}}), (unsigned)m);
    if (!(Lm * c == G)) return std::nullopt;
  } else if (p.degree() == m) {
    Rat root(-p.coeff(m - 1), Int(m) * p.coeff(m));
    root.canonicalize();
    alpha = root.get_den();
    beta = -root.get_num();
    std::map<BinaryForm::Exp, Int> lm;
    if (alpha != 0) lm[{1, 0}] = alpha;
    if (beta != 0) lm[{0, 1}] = beta;
    BinaryForm L(1, std::move(lm));
    BinaryForm Lm = binary_pow(L, (unsigned)m);
    Int gm = G.coeff(m, 0), lmc = Lm.coeff(m, 0);
    if (gm == 0 || lmc == 0 || gm % lmc != 0) return std::nullopt;
    c = gm / lmc;
    if (!(Lm * c == G)) return std::nullopt;
  } else {
    return std::nullopt;
  }
  SpecialCertificate cert;
  cert.component = comp;
  cert.param = param;
  cert.c = c;
  std::map<BinaryForm::Exp, Int> lcoef;
  if (alpha != 0) lcoef[{1, 0}] = alpha;
  if (beta != 0) lcoef[{0, 1}] = beta;
  cert.L = BinaryForm(1, std::move(lcoef));
  Int g, w12, w22;
  mpz_gcdext(g.get_mpz_t(), w12.get_mpz_t(), w22.get_mpz_t(), alpha.get_mpz_t(),
             beta.get_mpz_t());
  assert(g == 1 && "special linear factor not primitive");
  cert.W = {{{beta, w12}, {-alpha, w22}}};
  return cert;
}

Int uv_range_bound(const Parameterization& param, const std::array<Rat, 3>& C) {
  int d = param.degree;
  std::array<BinaryForm, 2> pair{};
  Int R(0);
  Rat cbound(0);
  static const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (auto& pr : pairs) {
    Int r = binary_resultant(param.f[pr[0]], param.f[pr[1]]);
    if (r != 0) {
      pair = {param.f[pr[0]], param.f[pr[1]]};
      R = r;
      cbound = std::max(C[pr[0]], C[pr[1]]);
      break;
    }
  }
  for (int t = 1; t <= 3 && R == 0; ++t) {
    BinaryForm combo = param.f[1] + param.f[2] * Int(t);
    Int r = binary_resultant(param.f[0], combo);
    if (r != 0) {
      pair = {param.f[0], combo};
      R = r;
      cbound = std::max(C[0], Rat(C[1] + Rat(t) * C[2]));
    }
  }
  assert(R != 0);
  auto cofactor_norm = [&](bool for_u) {
    int n = 2 * d;
    std::vector<std::vector<Rat>> M(n, std::vector<Rat>(n, Rat(0)));
    // Row index: coefficient of u^row v^(2d-1-row) in A f + B g.
    for (int t = 0; t < d; ++t) {
      for (auto& [e, c] : pair[0].coeffs()) M[e[0] + t][t] += Rat(c);
      for (auto& [e, c] : pair[1].coeffs()) M[e[0] + t][d + t] += Rat(c);
    }
    std::vector<Rat> rhs(n, Rat(0));
    rhs[for_u ? n - 1 : 0] = Rat(R);
    for (int col = 0, row = 0; col < n && row < n; ++col) {
      int piv = -1;
      for (int i = row; i < n; ++i)
        if (M[i][col] != 0) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      std::swap(M[row], M[piv]);
      std::swap(rhs[row], rhs[piv]);
      for (int i = 0; i < n; ++i) {
        if (i == row || M[i][col] == 0) continue;
        Rat fct = M[i][col] / M[row][col];
        for (int j = col; j < n; ++j) M[i][j] -= fct * M[row][j];
        rhs[i] -= fct * rhs[row];
      }
      ++row;
    }
    Rat norm(0);
    for (int i = 0; i < n; ++i) {
      int pc = -1;
      for (int j = 0; j < n; ++j)
        if (M[i][j] != 0) {
          pc = j;
          break;
        }
      if (pc >= 0) norm += abs_rat(rhs[i] / M[i][pc]);
    }
    return norm;
  };
  Rat K = std::max(cofactor_norm(true), cofactor_norm(false));
  Rat bound_pow = K * cbound / Rat(abs_int(R));
  Int num = ceil_rat(bound_pow);
  if (num < 0) num = 0;
  return iroot(num, (unsigned)d) + 1;
}

std::vector<IntegerTriple> solve_on_component(const CurveComponent& comp,
                                              const TernaryForm& F, const Int& N,
                                              const ComponentSolveOptions& opt) {
  assert(N >= 1);
  std::set<IntegerTriple> out;
  int k = F.degree();
  auto in_filters = [&](const IntegerTriple& x) {
    if (x.is_zero()) return false;
    Int mx = x.max_abs();
    if (mx > opt.box) return false;
    if (opt.shell && !(mx > opt.shell->first && mx <= opt.shell->second)) return false;
    if (opt.patch) {
      const Patch& p = *opt.patch;
      if (x.x3 <= 0) return false;
      Rat t1(x.x1, x.x3), t2(x.x2, x.x3);
      t1.canonicalize();
      t2.canonicalize();
      if (t1 < p.a || t1 > p.a + p.side) return false;
      if (t2 < p.b || t2 > p.b + p.side) return false;
    }
    return true;
  };
  auto value_ok = [&](const Int& val) {
    return opt.inequality ? abs_int(val) <= N : val == N;
  };
  auto emit = [&](const IntegerTriple& x) {
    if (in_filters(x) && value_ok(F.eval(x))) out.insert(x);
  };
  auto emit_ray = [&](const IntegerTriple& dir) {
    Int mx = dir.max_abs();
    if (mx == 0) return;
    Int mmax = opt.box / mx;
    for (Int m(1); m <= mmax; ++m) {
      emit({m * dir.x1, m * dir.x2, m * dir.x3});
      emit({-m * dir.x1, -m * dir.x2, -m * dir.x3});
    }
  };

  if (comp.kind == CurveComponent::Kind::conjugate_pair) {
    emit_ray(comp.pair_point);
    return std::vector<IntegerTriple>(out.begin(), out.end());
  }
  auto param_opt = parameterize(comp, opt.height_bound);
  if (!param_opt) return {};
  const Parameterization& param = *param_opt;
  BinaryForm G = compose_form(F, param.f);
  assert(!G.is_zero() && "component lies inside F = 0");
  auto fac = binary_factor(G);
  BinaryFormEquation::Kind kind;
  if (fac.parts.size() >= 2) {
    kind = BinaryFormEquation::Kind::split_coprime;
  } else {
    int dq = fac.parts[0].first.degree();
    kind = dq == 1   ? BinaryFormEquation::Kind::special_linear
           : dq == 2 ? BinaryFormEquation::Kind::pell
                     : BinaryFormEquation::Kind::thue;
  }

  std::vector<Int> values;
  if (opt.inequality) {
    for (Int v = -N; v <= N; ++v) values.push_back(v);
  } else {
    values.push_back(N);
  }
  for (const Int& val : values) {
    if (val == 0) {
      for (auto& [part, mult] : fac.parts) {
        if (part.degree() != 1) continue;
        Int a = part.coeff(1, 0), b = part.coeff(0, 1);
        Int g = gcd_int(a, b);
        Int u0 = b / g, v0 = -a / g;
        IntegerTriple dir{param.f[0].eval(u0, v0), param.f[1].eval(u0, v0),
                          param.f[2].eval(u0, v0)};
        if (dir.is_zero()) continue;
        std::vector<Int> dv = {dir.x1, dir.x2, dir.x3};
        make_primitive(dv);
        emit_ray({dv[0], dv[1], dv[2]});
      }
      continue;
    }
    std::vector<Int> lambdas;
    for (const Int& d : divisors(val))
      if (val % int_pow(d, (unsigned)k) == 0) lambdas.push_back(d);
    std::vector<Int> nus = divisors(param.resolvent);
    for (const Int& lam : lambdas) {
      for (const Int& nu : nus) {
        if (gcd_int(lam, nu) != 1) continue;
        for (int sgn = 0; sgn < 2; ++sgn) {
          Int sig = sgn ? -1 : 1;
          Int num = int_pow(nu, (unsigned)k) * val;
          Int den = int_pow(sig * lam, (unsigned)k);
          if (num % den != 0) continue;
          Int N0 = num / den;
          Rat C = Rat(nu * opt.box) / Rat(lam);
          Int T = uv_range_bound(param, {C, C, C});
          BinaryFormEquation eq;
          eq.G = G;
          eq.rhs = N0;
          eq.kind = kind;
          std::vector<std::pair<Int, Int>> uvs;
          solve_with_factorization(eq, fac, T, T, uvs);
          for (auto& [u, v] : uvs) {
            if (gcd_int(u, v) != 1) continue;
            Int n1 = sig * lam * param.f[0].eval(u, v);
            Int n2 = sig * lam * param.f[1].eval(u, v);
            Int n3 = sig * lam * param.f[2].eval(u, v);
            if (n1 % nu != 0 || n2 % nu != 0 || n3 % nu != 0) continue;
            emit({n1 / nu, n2 / nu, n3 / nu});
          }
        }
      }
    }
  }
  return std::vector<IntegerTriple>(out.begin(), out.end());
}

}  // namespace trident
