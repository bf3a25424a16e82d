#include <algorithm>
#include <cassert>
#include <random>

#include "trident/upoly.hpp"

// Factorization over Z: Cantor-Zassenhaus mod a small prime, quadratic Hensel
// lifting, subset recombination.  Non-monic inputs are handled through the
// classical monic substitution F(x) = lc^(d-1) f(x/lc).

namespace trident {
namespace {

// ---------- arithmetic in F_p[x], p < 2^31, dense vector<uint64_t> ----------

using FpPoly = std::vector<uint64_t>;

void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int fp_deg(const FpPoly& a) { return (int)a.size() - 1; }

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + (unsigned __int128)a[i] * b[j]) % p;
  }
  fp_trim(c);
  return c;
}

uint64_t fp_inv(uint64_t a, uint64_t p) { return powmod_u64(a, p - 2, p); }

// Remainder of a by b (b nonzero).
FpPoly fp_rem(FpPoly a, const FpPoly& b, uint64_t p) {
  int db = fp_deg(b);
  uint64_t ilb = fp_inv(b.back(), p);
  while (fp_deg(a) >= db) {
    uint64_t f = mulmod_u64(a.back(), ilb, p);
    int shift = fp_deg(a) - db;
    for (int i = 0; i <= db; ++i) {
      uint64_t t = mulmod_u64(f, b[i], p);
      a[i + shift] = (a[i + shift] + p - t) % p;
    }
    fp_trim(a);
  }
  return a;
}

FpPoly fp_quo(FpPoly a, const FpPoly& b, uint64_t p) {
  int db = fp_deg(b);
  if (fp_deg(a) < db) return {};
  FpPoly q(fp_deg(a) - db + 1, 0);
  uint64_t ilb = fp_inv(b.back(), p);
  while (fp_deg(a) >= db) {
    uint64_t f = mulmod_u64(a.back(), ilb, p);
    int shift = fp_deg(a) - db;
    q[shift] = f;
    for (int i = 0; i <= db; ++i) {
      uint64_t t = mulmod_u64(f, b[i], p);
      a[i + shift] = (a[i + shift] + p - t) % p;
    }
    fp_trim(a);
  }
  return q;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, uint64_t p) {
  while (!b.empty()) {
    FpPoly r = fp_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    uint64_t il = fp_inv(a.back(), p);
    for (auto& c : a) c = mulmod_u64(c, il, p);
  }
  return a;
}

FpPoly fp_sub(FpPoly a, const FpPoly& b, uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  fp_trim(a);
  return a;
}

FpPoly fp_powmod(FpPoly base, Int e, const FpPoly& mod, uint64_t p) {
  FpPoly r{1};
  base = fp_rem(std::move(base), mod, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = fp_rem(fp_mul(r, base, p), mod, p);
    e >>= 1;
    if (e > 0) base = fp_rem(fp_mul(base, base, p), mod, p);
  }
  return r;
}

FpPoly fp_deriv(const FpPoly& a, uint64_t p) {
  FpPoly d;
  for (size_t i = 1; i < a.size(); ++i) d.push_back(mulmod_u64(a[i], i % p, p));
  fp_trim(d);
  return d;
}

// Equal-degree splitting (Cantor-Zassenhaus), f squarefree monic, all
// irreducible factors of degree d.
void fp_edf(const FpPoly& f, int d, uint64_t p, std::mt19937_64& rng,
            std::vector<FpPoly>& out) {
  int n = fp_deg(f);
  if (n == d) {
    out.push_back(f);
    return;
  }
  Int pd(1);
  for (int i = 0; i < d; ++i) pd *= (unsigned long)p;
  Int e = (pd - 1) / 2;
  while (true) {
    FpPoly r(n, 0);
    for (auto& c : r) c = rng() % p;
    fp_trim(r);
    if (fp_deg(r) < 1) continue;
    FpPoly g = fp_gcd(f, r, p);
    if (fp_deg(g) > 0 && fp_deg(g) < n) {
      fp_edf(g, d, p, rng, out);
      fp_edf(fp_quo(f, g, p), d, p, rng, out);
      return;
    }
    FpPoly h = fp_powmod(r, e, f, p);
    if (h.empty()) continue;
    h[0] = (h[0] + p - 1) % p;
    fp_trim(h);
    g = fp_gcd(f, h, p);
    if (fp_deg(g) > 0 && fp_deg(g) < n) {
      fp_edf(g, d, p, rng, out);
      fp_edf(fp_quo(f, g, p), d, p, rng, out);
      return;
    }
  }
}

// Full factorization of a squarefree monic f mod p.
std::vector<FpPoly> fp_factor_squarefree(FpPoly f, uint64_t p) {
  std::vector<FpPoly> out;
  std::mt19937_64 rng(0x5eed5eedULL);
  FpPoly h{0, 1};  // x
  int d = 0;
  while (fp_deg(f) > 0) {
    ++d;
    if (2 * d > fp_deg(f)) {
      out.push_back(f);
      break;
    }
    h = fp_powmod(h, Int((unsigned long)p), f, p);
    FpPoly hx = fp_sub(h, FpPoly{0, 1}, p);
    FpPoly g = fp_gcd(f, hx, p);
    if (fp_deg(g) > 0) {
      fp_edf(g, d, p, rng, out);
      f = fp_quo(f, g, p);
      h = fp_rem(h, f, p);
    }
  }
  return out;
}

// ---------- arithmetic mod q = p^k with mpz coefficients ----------

using QPoly = std::vector<Int>;

void q_trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

QPoly q_reduce(const UPoly& f, const Int& q) {
  QPoly out;
  for (auto& c : f.coeffs()) {
    Int r = c % q;
    if (r < 0) r += q;
    out.push_back(r);
  }
  q_trim(out);
  return out;
}

QPoly q_mul(const QPoly& a, const QPoly& b, const Int& q) {
  if (a.empty() || b.empty()) return {};
  QPoly c(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  for (auto& x : c) {
    x %= q;
    if (x < 0) x += q;
  }
  q_trim(c);
  return c;
}

QPoly q_add(QPoly a, const QPoly& b, const Int& q) {
  if (a.size() < b.size()) a.resize(b.size(), Int(0));
  for (size_t i = 0; i < b.size(); ++i) {
    a[i] += b[i];
    if (a[i] >= q) a[i] -= q;
  }
  q_trim(a);
  return a;
}

QPoly q_sub(QPoly a, const QPoly& b, const Int& q) {
  if (a.size() < b.size()) a.resize(b.size(), Int(0));
  for (size_t i = 0; i < b.size(); ++i) {
    a[i] -= b[i];
    if (a[i] < 0) a[i] += q;
  }
  q_trim(a);
  return a;
}

// Division by a monic divisor mod q.
void q_divmod_monic(const QPoly& a, const QPoly& b, const Int& q, QPoly& quo, QPoly& rem) {
  assert(!b.empty() && b.back() == 1);
  rem = a;
  quo.clear();
  int db = (int)b.size() - 1;
  if ((int)rem.size() - 1 >= db) quo.assign(rem.size() - db, Int(0));
  while ((int)rem.size() - 1 >= db && !rem.empty()) {
    Int f = rem.back();
    int shift = (int)rem.size() - 1 - db;
    quo[shift] = f;
    for (int i = 0; i <= db; ++i) {
      rem[i + shift] -= f * b[i];
      rem[i + shift] %= q;
      if (rem[i + shift] < 0) rem[i + shift] += q;
    }
    q_trim(rem);
  }
  q_trim(quo);
}

// Symmetric (centered) lift to Z.
UPoly q_center(const QPoly& a, const Int& q) {
  std::vector<Int> out;
  Int half = q / 2;
  for (auto& c : a) out.push_back(c > half ? Int(c - q) : c);
  return UPoly(std::move(out));
}

struct LiftPair {
  QPoly g, h, s, t;  // f = g h, s g + t h = 1 (mod q)
};

// One quadratic Hensel step: from mod q to mod q^2 (f, g, h monic).
LiftPair hensel_step(const QPoly& f, const LiftPair& in, const Int& q) {
  Int q2 = q * q;
  QPoly g = in.g, h = in.h, s = in.s, t = in.t;
  QPoly e = q_sub(f, q_mul(g, h, q2), q2);
  QPoly se = q_mul(s, e, q2);
  QPoly qq, r;
  q_divmod_monic(se, h, q2, qq, r);
  QPoly gstar = q_add(q_add(g, q_mul(t, e, q2), q2), q_mul(qq, g, q2), q2);
  QPoly hstar = q_add(h, r, q2);
  QPoly b = q_sub(q_add(q_mul(s, gstar, q2), q_mul(t, hstar, q2), q2), QPoly{Int(1)}, q2);
  QPoly sb = q_mul(s, b, q2);
  QPoly c, d;
  q_divmod_monic(sb, hstar, q2, c, d);
  QPoly sstar = q_sub(s, d, q2);
  QPoly tstar = q_sub(q_sub(t, q_mul(t, b, q2), q2), q_mul(c, gstar, q2), q2);
  return LiftPair{gstar, hstar, sstar, tstar};
}

// Extended Euclid in F_p[x]: s a + t b = 1 for coprime a, b.
void fp_bezout(const FpPoly& a, const FpPoly& b, uint64_t p, FpPoly& s, FpPoly& t) {
  FpPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    FpPoly q = fp_quo(r0, r1, p);
    FpPoly r2 = fp_sub(r0, fp_mul(q, r1, p), p);
    FpPoly s2 = fp_sub(s0, fp_mul(q, s1, p), p);
    FpPoly t2 = fp_sub(t0, fp_mul(q, t1, p), p);
    r0 = std::move(r1); r1 = std::move(r2);
    s0 = std::move(s1); s1 = std::move(s2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  assert(fp_deg(r0) == 0 && !r0.empty());
  uint64_t il = fp_inv(r0[0], p);
  for (auto& c : s0) c = mulmod_u64(c, il, p);
  for (auto& c : t0) c = mulmod_u64(c, il, p);
  s = s0;
  t = t0;
}

QPoly from_fp(const FpPoly& a) {
  QPoly out;
  for (auto c : a) out.emplace_back((unsigned long)c);
  return out;
}

// Lift the factorization F = prod(fs) from mod p to mod p^(2^j) >= target.
// F and all fs monic.  Recursive binary-tree multifactor lifting.
void lift_tree(const UPoly& F, const std::vector<FpPoly>& fs, uint64_t p,
               const Int& target, std::vector<UPoly>& out) {
  if (fs.size() == 1) {
    Int q((unsigned long)p);
    while (q < target) q = q * q;
    out.push_back(q_center(q_reduce(F, q), q));
    return;
  }
  size_t half = fs.size() / 2;
  FpPoly g0{1}, h0{1};
  for (size_t i = 0; i < half; ++i) g0 = fp_mul(g0, fs[i], p);
  for (size_t i = half; i < fs.size(); ++i) h0 = fp_mul(h0, fs[i], p);
  FpPoly s0, t0;
  fp_bezout(g0, h0, p, s0, t0);
  Int q((unsigned long)p);
  LiftPair pair{from_fp(g0), from_fp(h0), from_fp(s0), from_fp(t0)};
  while (q < target) {
    QPoly fq = q_reduce(F, q * q);
    pair = hensel_step(fq, pair, q);
    q = q * q;
  }
  UPoly G = q_center(pair.g, q);
  UPoly H = q_center(pair.h, q);
  lift_tree(G, std::vector<FpPoly>(fs.begin(), fs.begin() + half), p, target, out);
  lift_tree(H, std::vector<FpPoly>(fs.begin() + half, fs.end()), p, target, out);
}

// Factor a primitive squarefree monic polynomial of degree >= 1.
std::vector<UPoly> factor_monic_squarefree(const UPoly& F) {
  if (F.degree() == 1) return {F};
  // Prime with F squarefree mod p.
  static const std::vector<uint32_t> candidates = primes_up_to(2000);
  uint64_t p = 0;
  FpPoly fp;
  for (uint32_t pc : candidates) {
    if (pc < 3) continue;
    if (mpz_divisible_ui_p(F.lc().get_mpz_t(), pc)) continue;
    FpPoly g;
    for (auto& c : F.coeffs()) {
      Int r = c % (unsigned long)pc;
      if (r < 0) r += (unsigned long)pc;
      g.push_back(r.get_ui());
    }
    fp_trim(g);
    if (fp_deg(g) != F.degree()) continue;
    FpPoly d = fp_deriv(g, pc);
    if (d.empty()) continue;
    FpPoly gc = fp_gcd(g, d, pc);
    if (fp_deg(gc) == 0) {
      p = pc;
      fp = g;
      break;
    }
  }
  assert(p != 0 && "no squarefree prime found");
  // Make monic mod p (F is monic over Z so already monic mod p).
  std::vector<FpPoly> modular = fp_factor_squarefree(fp, p);
  std::sort(modular.begin(), modular.end());
  if (modular.size() == 1) return {F};

  // Coefficient bound for any monic factor of F (Landau-Mignotte flavored).
  Int bound = F.max_abs_coeff();
  bound = bound * (Int(1) << (unsigned)(F.degree() + 2)) * Int(F.degree() + 1);
  Int target = 2 * bound + 1;
  std::vector<UPoly> lifted;
  lift_tree(F, modular, p, target, lifted);
  Int q((unsigned long)p);
  while (q < target) q = q * q;

  // Subset recombination.
  std::vector<UPoly> result;
  std::vector<int> alive(lifted.size(), 1);
  UPoly rest = F;
  size_t nalive = lifted.size();
  for (size_t card = 1; card <= nalive && nalive > 0; ++card) {
    bool again = true;
    while (again) {
      again = false;
      // Enumerate index subsets of size card among alive factors.
      std::vector<size_t> idx;
      for (size_t i = 0; i < lifted.size(); ++i)
        if (alive[i]) idx.push_back(i);
      if (card > idx.size()) break;
      std::vector<size_t> pick(card);
      for (size_t i = 0; i < card; ++i) pick[i] = i;
      while (true) {
        QPoly prod{Int(1)};
        for (size_t i = 0; i < card; ++i)
          prod = q_mul(prod, q_reduce(lifted[idx[pick[i]]], q), q);
        UPoly cand = q_center(prod, q);
        UPoly quo;
        if (cand.degree() >= 1 && rest.try_divide(cand, quo)) {
          result.push_back(cand);
          rest = quo;
          for (size_t i = 0; i < card; ++i) alive[idx[pick[i]]] = 0;
          nalive -= card;
          again = true;
          break;
        }
        // next combination
        size_t i = card;
        while (i > 0 && pick[i - 1] == idx.size() - card + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (size_t j = i; j < card; ++j) pick[j] = pick[j - 1] + 1;
      }
      if (rest.degree() == 0) break;
    }
    if (rest.degree() == 0) break;
  }
  if (rest.degree() >= 1) result.push_back(rest);
  return result;
}

}  // namespace

ZFactorization factor_over_z(const UPoly& f) {
  ZFactorization out;
  if (f.is_zero()) {
    out.unit = 0;
    return out;
  }
  SquarefreeDecomp sq = squarefree_decompose(f);
  out.unit = sq.unit;
  for (auto& [part, mult] : sq.parts) {
    // part primitive squarefree with positive leading coefficient.
    Int m = part.lc();
    std::vector<UPoly> irr;
    if (m == 1) {
      irr = factor_monic_squarefree(part);
    } else {
      // Monic substitution: G(x) = m^(d-1) part(x/m) is monic over Z.
      int d = part.degree();
      std::vector<Int> gc(d + 1);
      Int mp(1);
      // coeff of x^i in G: part_i * m^(d-1-i)
      for (int i = d; i >= 0; --i) {
        gc[i] = part.coeff(i) * mp;
        if (i > 0) mp *= m;
      }
      UPoly G{std::vector<Int>(gc)};
      assert(G.lc() == 1);
      auto gf = factor_monic_squarefree(G);
      for (auto& Gi : gf) {
        // Map back: g(x) = primitive part of Gi(m x).
        int di = Gi.degree();
        std::vector<Int> hc(di + 1);
        Int mm(1);
        for (int i = 0; i <= di; ++i) {
          hc[i] = Gi.coeff(i) * mm;
          mm *= m;
        }
        UPoly h{std::move(hc)};
        h = h.primitive_part();
        if (h.lc() < 0) h = -h;
        irr.push_back(h);
      }
    }
    // Normalize sign into the unit.
    Int prod_lc(1);
    for (auto& g : irr) prod_lc *= g.lc();
    // part = (part.lc()/prod_lc) * prod(irr); the ratio must be +-1 or a unit
    // times content; account exactly by comparing leading coefficients.
    Int ratio = part.lc() / prod_lc;
    if (ratio != 1) {
      // fold into unit (ratio^mult)
      Int r(1);
      for (unsigned i = 0; i < mult; ++i) r *= ratio;
      out.unit *= r;
    }
    for (auto& g : irr) out.parts.emplace_back(g, mult);
  }
  return out;
}

}  // namespace trident
