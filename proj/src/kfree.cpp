#include "trident/kfree.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <set>

#include "trident/aux_forms.hpp"
#include "trident/curve_solver.hpp"
#include "trident/forms.hpp"

namespace trident {

namespace {

Int int_pow(const Int& a, unsigned e) {
  Int r(1);
  for (unsigned i = 0; i < e; ++i) r *= a;
  return r;
}

// Roots of n^k + h = 0 mod m by exhaustion (m small).
std::vector<Int> roots_exhaustive(const Int& m, int k, const Int& h) {
  std::vector<Int> out;
  long mm = m.get_si();
  for (long n = 0; n < mm; ++n) {
    Int val = int_pow(Int(n), (unsigned)k) + h;
    if (val % m == 0) out.push_back(Int(n));
  }
  return out;
}

// Roots of n^k + h = 0 mod p (prime), exhaustive with u64 arithmetic.
std::vector<uint64_t> roots_mod_p(uint64_t p, int k, const Int& h) {
  std::vector<uint64_t> out;
  Int hm = h % (long)p;
  if (hm < 0) hm += (long)p;
  uint64_t hv = hm.get_ui();
  uint64_t target = (p - hv % p) % p;
  for (uint64_t n = 0; n < p; ++n)
    if (powmod_u64(n, (uint64_t)k, p) == target) out.push_back(n);
  return out;
}

// Number of k-th roots of -h mod p without listing them: gcd(k, p-1) when
// (-h)^((p-1)/g) = 1, else 0.
Int root_count_mod_p(const Int& p, int k, const Int& h) {
  Int a = (-h) % p;
  if (a < 0) a += p;
  if (a == 0) return Int(0);
  Int g = gcd_int(Int(k), p - 1);
  Int e = (p - 1) / g;
  Int t;
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  return t == 1 ? g : Int(0);
}

Int hensel_step(const Int& n0, const Int& pj, const Int& p, int k, const Int& h) {
  Int f = int_pow(n0, (unsigned)k) + h;
  assert(f % pj == 0);
  Int fp = Int(k) * int_pow(n0, (unsigned)(k - 1));
  Int fpinv;
  int ok = mpz_invert(fpinv.get_mpz_t(), fp.get_mpz_t(), p.get_mpz_t());
  assert(ok && "hensel_step: singular root");
  (void)ok;
  Int t = ((-(f / pj)) * fpinv) % p;
  if (t < 0) t += p;
  return n0 + t * pj;
}

}  // namespace

Int NuFunction::prime_power(const Int& p, unsigned e) {
  unsigned kk = (unsigned)k_;
  Int modulus = int_pow(p, e * (kk - 1));
  bool singular = (Int(k_) * h_) % p == 0;
  if (!singular) {
    // Simple roots mod p lift uniquely to every power: nu(p^e) = nu(p).
    return root_count_mod_p(p, k_, h_);
  }
  if (p > 13 || modulus > 2000000)
    throw ParameterRangeError("nu: singular prime too large for exhaustion");
  return Int((unsigned long)roots_exhaustive(modulus, k_, h_).size());
}

Int NuFunction::operator()(const Int& r) {
  assert(r >= 1);
  if (r == 1) return Int(1);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(r);
    if (it != cache_.end()) return it->second;
  }
  Int out(1);
  for (auto& [p, e] : factorize(r)) out *= prime_power(p, e);
  std::lock_guard<std::mutex> lock(mu_);
  cache_[r] = out;
  return out;
}

Int nu(const Int& r, int k, const Int& h) {
  NuFunction f(k, h);
  return f(r);
}

Density density(int k, const Int& h, const Int& P) {
  assert(P >= 2);
  Density out;
  out.k = k;
  out.h = h;
  out.P = P;
  out.partial = Rat(1);
  NuFunction nuf(k, h);
  for (uint32_t p : primes_up_to((uint32_t)P.get_ui())) {
    if (h % p == 0) continue;
    Int np = nuf(Int(p));
    Int denom = int_pow(Int(p), (unsigned)(k - 2)) * Int(p - 1);
    out.partial *= Rat(1) - Rat(np, denom);
  }
  if (k == 3) {
    out.tail_bound = Rat(3, P - 1);
  } else {
    out.tail_bound = Rat(Int(k), Int(k - 2) * int_pow(P - 1, (unsigned)(k - 2)));
  }
  return out;
}

double log_integral(double x) {
  if (x <= 2) return 0;
  std::function<double(double, double, double, double, double, double)> rec =
      [&](double a, double b, double fa, double fb, double fm, double whole) {
        double m = (a + b) / 2;
        double lm = (a + m) / 2, rm = (m + b) / 2;
        double flm = 1.0 / std::log(lm), frm = 1.0 / std::log(rm);
        double left = (m - a) / 6 * (fa + 4 * flm + fm);
        double right = (b - m) / 6 * (fm + 4 * frm + fb);
        if (std::abs(left + right - whole) < 1e-6) return left + right;
        return rec(a, m, fa, fm, flm, left) + rec(m, b, fm, fb, frm, right);
      };
  double fa = 1.0 / std::log(2), fb = 1.0 / std::log(x);
  double m = (2 + x) / 2, fm = 1.0 / std::log(m);
  double whole = (x - 2) / 6 * (fa + 4 * fm + fb);
  return rec(2, x, fa, fb, fm, whole);
}

namespace {

std::vector<Int> roots_mod_prime_power(const Int& q, int k, const Int& h) {
  unsigned kk = (unsigned)k;
  Int modulus = int_pow(q, kk - 1);
  bool singular = (Int(k) * h) % q == 0;
  if (singular) {
    if (modulus > 2000000)
      throw ParameterRangeError("census: singular prime too large");
    return roots_exhaustive(modulus, k, h);
  }
  std::vector<Int> out;
  for (uint64_t r : roots_mod_p(q.get_ui(), k, h)) {
    Int n0((unsigned long)r);
    Int pj = q;
    while (pj < modulus) {
      n0 = hensel_step(n0, pj, q, k, h);
      pj *= q;
    }
    out.push_back(n0 % modulus);
  }
  return out;
}

}  // namespace

CensusResult census(int k, const Int& h, const Int& X, const Config& cfg,
                    const Int& density_P) {
  if (X > cfg.census_ceiling)
    throw ParameterRangeError("census: X exceeds the configured ceiling");
  CensusResult out;
  out.dens = density(k, h, density_P);
  double c = out.dens.decimal();

  uint32_t limit = (uint32_t)X.get_ui();
  std::vector<bool> comp(limit + 1, false);
  for (uint32_t i = 2; (uint64_t)i * i <= limit; ++i)
    if (!comp[i])
      for (uint64_t j = (uint64_t)i * i; j <= limit; j += i) comp[j] = true;

  std::vector<Int> checkpoints;
  for (Int c10(10); c10 < X; c10 *= 10) checkpoints.push_back(c10);
  checkpoints.push_back(X);

  {
    unsigned long pc = 0, fc = 0;
    size_t cp = 0;
    for (uint32_t p = 2; p <= limit; ++p) {
      if (comp[p]) continue;
      while (cp < checkpoints.size() && Int(p) > checkpoints[cp]) {
        out.rows.push_back({checkpoints[cp], pc, fc, 0, 0, 0});
        ++cp;
      }
      ++pc;
      Int n = int_pow(Int(p), (unsigned)k) + h;
      if (n != 0 && is_power_free(n, (unsigned)(k - 1))) ++fc;
    }
    while (cp < checkpoints.size()) {
      out.rows.push_back({checkpoints[cp], pc, fc, 0, 0, 0});
      ++cp;
    }
  }
  for (auto& row : out.rows) {
    row.li = log_integral(row.X.get_d());
    row.predicted = c * row.li;
    row.rel_error = row.predicted > 0
                        ? std::abs((double)row.free_count - row.predicted) / row.predicted
                        : 0;
  }

  // Exact Moebius cross-check at X' = min(X, 1e5).
  Int Xp = std::min(X, Int(100000));
  uint32_t xl = (uint32_t)Xp.get_ui();
  unsigned long direct = 0;
  for (uint32_t p = 2; p <= xl; ++p) {
    if (comp[p]) continue;
    Int n = int_pow(Int(p), (unsigned)k) + h;
    if (n != 0 && is_power_free(n, (unsigned)(k - 1))) ++direct;
  }
  out.moebius_X = Xp;
  out.direct_count = direct;
  Int D = iroot(Xp * Xp, (unsigned)(k - 1));
  if (D < 1) D = 1;
  auto mu = moebius_up_to((uint32_t)D.get_ui());
  Int total(0);
  unsigned long pi_xp = 0;
  for (uint32_t p = 2; p <= xl; ++p)
    if (!comp[p]) ++pi_xp;
  total += Int(pi_xp);
  for (uint32_t d = 2; Int(d) <= D; ++d) {
    if (mu[d] == 0) continue;
    std::vector<Int> roots{Int(0)};
    Int modulus(1);
    bool fail = false;
    for (auto& [q, e] : factorize(Int(d))) {
      assert(e == 1);
      std::vector<Int> rq = roots_mod_prime_power(q, k, h);
      if (rq.empty()) {
        fail = true;
        break;
      }
      Int mq = int_pow(q, (unsigned)(k - 1));
      std::vector<Int> next;
      for (const Int& r0 : roots)
        for (const Int& r1 : rq) {
          Int g, s, t;
          mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), modulus.get_mpz_t(),
                     mq.get_mpz_t());
          assert(g == 1);
          Int newmod = modulus * mq;
          Int x = (r0 * t % newmod) * mq % newmod + (r1 * s % newmod) * modulus % newmod;
          x %= newmod;
          if (x < 0) x += newmod;
          next.push_back(x);
        }
      roots = std::move(next);
      modulus *= mq;
    }
    if (fail) continue;
    long cnt = 0;
    for (const Int& r0 : roots) {
      for (Int n = (r0 == 0 ? modulus : r0); n <= Xp; n += modulus) {
        long nn = n.get_si();
        if (nn >= 2 && !comp[nn]) ++cnt;
      }
    }
    total += Int((long)mu[d]) * Int(cnt);
  }
  Int remainder(0);
  for (uint32_t p = 2; p <= xl; ++p) {
    if (comp[p]) continue;
    Int n = int_pow(Int(p), (unsigned)k) + h;
    if (n == 0) continue;
    std::vector<Int> qs;
    for (auto& [q, e] : factorize(n))
      if (e >= (unsigned)(k - 1)) qs.push_back(q);
    size_t m = qs.size();
    for (size_t mask = 1; mask < (size_t(1) << m); ++mask) {
      Int d(1);
      int bits = 0;
      for (size_t i = 0; i < m; ++i)
        if (mask & (size_t(1) << i)) {
          d *= qs[i];
          ++bits;
        }
      if (d > D) remainder += Int(bits % 2 == 0 ? 1 : -1);
    }
  }
  out.moebius_total = total + remainder;
  out.moebius_ok = out.moebius_total == Int((unsigned long)direct);
  return out;
}

ExceptionResult exception_count_brute(const Int& A, const Int& B, int k, const Int& h) {
  assert(A >= 1 && B >= 1);
  ExceptionResult out;
  bool small = 2 * A <= Int(1 << 20) && 2 * B <= Int(1 << 20) && k <= 5;
  if (small) {
    long a = A.get_si(), b = B.get_si();
    long hv = h.get_si();
    for (long x = a + 1; x <= 2 * a; ++x) {
      unsigned __int128 xk = 1;
      for (int i = 0; i < k; ++i) xk *= (unsigned long)x;
      __int128 n = (__int128)xk + hv;
      bool neg = n < 0;
      unsigned __int128 an = neg ? (unsigned __int128)(-n) : (unsigned __int128)n;
      for (long y = b + 1; y <= 2 * b; ++y) {
        unsigned __int128 yk = 1;
        for (int i = 0; i < k - 1; ++i) yk *= (unsigned long)y;
        if (an % yk == 0) {
          __int128 z = n / (__int128)yk;
          Int zz;
          bool zneg = z < 0;
          unsigned __int128 az = zneg ? (unsigned __int128)(-z) : (unsigned __int128)z;
          zz = Int((unsigned long)(az >> 64));
          zz <<= 64;
          zz += Int((unsigned long)(az & 0xFFFFFFFFFFFFFFFFULL));
          if (zneg) zz = -zz;
          out.solutions.push_back({Int(x), Int(y), zz});
        }
      }
    }
  } else {
    for (Int x = A + 1; x <= 2 * A; ++x) {
      Int n = int_pow(x, (unsigned)k) + h;
      for (Int y = B + 1; y <= 2 * B; ++y) {
        Int yk = int_pow(y, (unsigned)(k - 1));
        if (n % yk == 0) out.solutions.push_back({x, y, n / yk});
      }
    }
  }
  std::sort(out.solutions.begin(), out.solutions.end());
  return out;
}

ExceptionResult exception_count_detmethod(const Int& A, const Int& B, int k,
                                          const Int& h, long M) {
  assert(A >= 1 && B >= 1);
  ExceptionResult out;
  if (M <= 0) {
    double a = A.get_d();
    M = (long)std::ceil(std::pow(a, 19.0 / 20.0));
    M = std::min<long>(M, 64);
    M = std::max<long>(M, 1);
  }
  Rat a0(A, 2 * B);
  a0.canonicalize();
  Rat w(3 * A, 2 * B * Int(M));
  w.canonicalize();

  std::vector<std::vector<std::array<Int, 3>>> per_interval(M);
  for (Int x = A + 1; x <= 2 * A; ++x) {
    Int n = int_pow(x, (unsigned)k) + h;
    for (Int y = B + 1; y <= 2 * B; ++y) {
      Int yk = int_pow(y, (unsigned)(k - 1));
      if (n % yk != 0) continue;
      Rat pos = (Rat(x, y) - a0) / w;
      Int idx;
      mpz_fdiv_q(idx.get_mpz_t(), pos.get_num_mpz_t(), pos.get_den_mpz_t());
      long ii = idx.get_si();
      if (ii < 0) ii = 0;
      if (ii >= M) ii = M - 1;
      per_interval[ii].push_back({x, y, n / yk});
    }
  }

  std::set<std::array<Int, 3>> result;
  for (long i = 0; i < M; ++i) {
    auto& pts = per_interval[i];
    if (pts.empty()) continue;
    ++out.intervals_checked;
    std::vector<IntegerTriple> triples;
    for (auto& s : pts) triples.push_back({s[0], s[1], s[2]});
    auto ns = fit_nullspace(triples, 2);
    if (ns.status == NullspaceResult::Status::rank_full) {
      ++out.intervals_rank_full;
      for (auto& s : pts) result.insert(s);
      continue;
    }
    assert(ns.status == NullspaceResult::Status::ok);
    std::set<std::array<Int, 3>> from_conic;
    Int zcap =
        (int_pow(2 * A, (unsigned)k) + abs_int(h)) / int_pow(B + 1, (unsigned)(k - 1)) +
        1;
    Int boxmax = std::max(std::max(Int(2 * A), Int(2 * B)), zcap);
    for (auto& comp : factor_aux(ns.form->form)) {
      if (comp.kind == CurveComponent::Kind::conjugate_pair) {
        const IntegerTriple& P = comp.pair_point;
        Int mx = P.max_abs();
        if (mx == 0) continue;
        for (Int m(1); m <= boxmax / mx; ++m) {
          for (int sg = 0; sg < 2; ++sg) {
            Int mm = sg ? Int(-m) : m;
            Int x = mm * P.x1, y = mm * P.x2, z = mm * P.x3;
            if (x <= A || x > 2 * A || y <= B || y > 2 * B) continue;
            if (int_pow(x, (unsigned)k) + h == int_pow(y, (unsigned)(k - 1)) * z)
              from_conic.insert({x, y, z});
          }
        }
        continue;
      }
      auto param = parameterize(comp, Int(1000000));
      if (!param) continue;
      // Surface equation through the parameterization:
      // lambda^k (f2^(k-1) f3 - f1^k) = nu^k h.
      MPoly fu[3];
      for (int j = 0; j < 3; ++j) {
        MPoly p;
        for (auto& [e, c] : param->f[j].coeffs()) {
          Expo xx;
          xx.e[0] = (uint16_t)e[0];
          xx.e[1] = (uint16_t)e[1];
          p.add_term(xx, Rat(c));
        }
        fu[j] = p;
      }
      MPoly acc = fu[1].pow((unsigned)(k - 1)) * fu[2] - fu[0].pow((unsigned)k);
      if (acc.is_zero()) {
        // Component inside the surface: points already enumerated directly.
        for (auto& s : pts) from_conic.insert(s);
        continue;
      }
      std::map<BinaryForm::Exp, Int> gcoef;
      for (auto& [xx, c] : acc.terms()) {
        assert(c.get_den() == 1);
        gcoef[{(int)xx.e[0], (int)xx.e[1]}] = c.get_num();
      }
      BinaryForm G(param->degree * k, std::move(gcoef));
      for (const Int& lam : divisors(h)) {
        if (h % int_pow(lam, (unsigned)k) != 0) continue;
        for (const Int& nuv : divisors(param->resolvent)) {
          if (gcd_int(lam, nuv) != 1) continue;
          for (int sg = 0; sg < 2; ++sg) {
            Int sig = sg ? -1 : 1;
            Int num = int_pow(nuv, (unsigned)k) * h;
            Int den = int_pow(sig * lam, (unsigned)k);
            if (num % den != 0) continue;
            Int N0 = num / den;
            if (N0 == 0) continue;
            Rat scale = Rat(nuv) / Rat(lam);
            std::array<Rat, 3> C = {scale * Rat(2 * A), scale * Rat(2 * B),
                                    scale * Rat(zcap)};
            Int T = uv_range_bound(*param, C);
            BinaryFormEquation eq = classify_binary(G, N0);
            for (auto& [u, v] : solve_binary(eq, T, T)) {
              if (gcd_int(u, v) != 1) continue;
              Int n1 = sig * lam * param->f[0].eval(u, v);
              Int n2 = sig * lam * param->f[1].eval(u, v);
              Int n3 = sig * lam * param->f[2].eval(u, v);
              if (n1 % nuv != 0 || n2 % nuv != 0 || n3 % nuv != 0) continue;
              Int x = n1 / nuv, y = n2 / nuv, z = n3 / nuv;
              if (x <= A || x > 2 * A || y <= B || y > 2 * B) continue;
              if (int_pow(x, (unsigned)k) + h == int_pow(y, (unsigned)(k - 1)) * z)
                from_conic.insert({x, y, z});
            }
          }
        }
      }
    }
    for (auto& s : pts)
      if (!from_conic.count(s))
        throw std::runtime_error("exception_count_detmethod: conic solve missed a point");
    for (auto& s : from_conic) result.insert(s);
  }
  out.solutions.assign(result.begin(), result.end());
  return out;
}

}  // namespace trident
