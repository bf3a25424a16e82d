#include "trident/numbers.hpp"

#include <algorithm>
#include <cassert>

namespace trident {

Int iroot(const Int& a, unsigned n) {
  assert(a >= 0 && n >= 1);
  Int r;
  mpz_root(r.get_mpz_t(), a.get_mpz_t(), n);
  return r;
}

std::optional<Int> exact_root(const Int& a, unsigned n) {
  assert(n >= 1);
  if (a < 0) {
    if (n % 2 == 0) return std::nullopt;
    auto r = exact_root(-a, n);
    if (!r) return std::nullopt;
    return Int(-*r);
  }
  Int r;
  int exact = mpz_root(r.get_mpz_t(), a.get_mpz_t(), n);
  if (!exact) return std::nullopt;
  return r;
}

bool is_perfect_square(const Int& a) {
  if (a < 0) return false;
  return mpz_perfect_square_p(a.get_mpz_t()) != 0;
}

bool is_probable_prime(const Int& n) {
  if (n < 2) return false;
  // Cheap small-prime screen, then strong-probable-prime tests to the fixed
  // base set valid below 3.3e24.
  static const unsigned small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (unsigned p : small) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  Int d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;
  for (unsigned a : small) {
    Int x;
    Int base(a);
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned long r = 1; r < s; ++r) {
      x = (x * x) % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  if (mpz_sizeinbase(n.get_mpz_t(), 2) > 81) {
    // Above the deterministic range of the base set; add GMP's own rounds.
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
  }
  return true;
}

namespace {

Int rho_brent(const Int& n, unsigned long c0) {
  // Brent's cycle variant of Pollard rho.
  if (mpz_even_p(n.get_mpz_t())) return Int(2);
  Int c(c0), y(2), g(1), q(1), x, ys;
  unsigned long r = 1, m = 64;
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      unsigned long lim = std::min(m, r - k);
      for (unsigned long i = 0; i < lim; ++i) {
        y = (y * y + c) % n;
        q = (q * abs_int(x - y)) % n;
      }
      g = gcd_int(q, n);
      k += lim;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = (ys * ys + c) % n;
      g = gcd_int(abs_int(x - ys), n);
    } while (g == 1);
  }
  return g;
}

void factor_rec(const Int& n, std::map<Int, unsigned>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out[n] += 1;
    return;
  }
  // Perfect powers first: rho struggles on p^2 with large p.
  unsigned maxe = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (unsigned e = 2; e <= maxe; ++e) {
    auto r = exact_root(n, e);
    if (r && *r > 1) {
      std::map<Int, unsigned> sub;
      factor_rec(*r, sub);
      for (auto& [p, m] : sub) out[p] += m * e;
      return;
    }
  }
  Int d = n;
  for (unsigned long c = 1; d == n; ++c) d = rho_brent(n, c);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::map<Int, unsigned> factorize(const Int& n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be nonzero");
  std::map<Int, unsigned> out;
  Int m = abs_int(n);
  static const std::vector<uint32_t> small = primes_up_to(10000);
  for (uint32_t p : small) {
    if (Int(p) * p > m) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= p;
      out[Int(p)] += 1;
    }
  }
  if (m > 1) {
    if (is_probable_prime(m)) {
      out[m] += 1;
    } else {
      factor_rec(m, out);
    }
  }
  return out;
}

std::vector<Int> divisors(const Int& n) {
  auto fac = factorize(n);
  std::vector<Int> out{Int(1)};
  for (auto& [p, e] : fac) {
    size_t base = out.size();
    Int pe(1);
    for (unsigned i = 1; i <= e; ++i) {
      pe *= p;
      for (size_t j = 0; j < base; ++j) out.push_back(out[j] * pe);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_power_free(const Int& n, unsigned l) {
  if (n == 0) throw std::invalid_argument("is_power_free: n must be nonzero");
  if (l < 2) throw std::invalid_argument("is_power_free: l must be >= 2");
  Int m = abs_int(n);
  if (m == 1) return true;
  static const std::vector<uint32_t> small = primes_up_to(10000);
  Int pl;
  for (uint32_t p : small) {
    mpz_ui_pow_ui(pl.get_mpz_t(), p, l);
    if (pl > m) return true;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      unsigned mult = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        m /= p;
        if (++mult >= l) return false;
      }
      if (m == 1) return true;
    }
  }
  // Cofactor has all prime factors > 10^4.  If it is below (10^4)^l no l-th
  // power fits; otherwise finish by factoring it.
  Int bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), 10000, l);
  if (m < bound) return true;
  if (is_probable_prime(m)) return true;
  std::map<Int, unsigned> fac;
  factor_rec(m, fac);
  for (auto& [p, e] : fac)
    if (e >= l) return false;
  return true;
}

std::vector<uint32_t> primes_up_to(uint32_t limit) {
  std::vector<uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> comp(limit + 1, false);
  for (uint32_t i = 2; i <= limit; ++i) {
    if (!comp[i]) {
      out.push_back(i);
      for (uint64_t j = uint64_t(i) * i; j <= limit; j += i) comp[j] = true;
    }
  }
  return out;
}

std::vector<int8_t> moebius_up_to(uint32_t limit) {
  std::vector<int8_t> mu(limit + 1, 0);
  std::vector<uint32_t> primes;
  std::vector<uint32_t> spf(limit + 1, 0);
  if (limit >= 1) mu[1] = 1;
  for (uint32_t i = 2; i <= limit; ++i) {
    if (spf[i] == 0) {
      spf[i] = i;
      mu[i] = -1;
      primes.push_back(i);
    }
    for (uint32_t p : primes) {
      uint64_t ip = uint64_t(i) * p;
      if (p > spf[i] || ip > limit) break;
      spf[ip] = p;
      mu[ip] = (p == spf[i]) ? 0 : -mu[i];
    }
  }
  return mu;
}

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return (uint64_t)((unsigned __int128)a * b % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace trident
