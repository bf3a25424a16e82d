#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace trident {

using Int = mpz_class;
using Rat = mpq_class;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }
inline Rat abs_rat(const Rat& a) { return a < 0 ? Rat(-a) : a; }

inline Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm_int(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// floor of the n-th root of a >= 0.
Int iroot(const Int& a, unsigned n);

// Exact n-th root: returns r with r^n == a (handles negative a for odd n).
std::optional<Int> exact_root(const Int& a, unsigned n);

inline std::optional<Int> exact_sqrt(const Int& a) { return exact_root(a, 2); }

bool is_perfect_square(const Int& a);

// Deterministic Miller-Rabin, valid far beyond 64 bits (fixed base set for
// n < 3.3e24, probabilistic witnesses above that, which this project never
// reaches).
bool is_probable_prime(const Int& n);

// Full factorization by trial division + Brent rho.  Exact for the sizes this
// project uses (inputs stay below ~2^128 in practice, rho handles those).
std::map<Int, unsigned> factorize(const Int& n);

// All positive divisors of |n| (n != 0), sorted ascending.
std::vector<Int> divisors(const Int& n);

// true iff no prime p has p^l | n.  Errors on n == 0.
bool is_power_free(const Int& n, unsigned l);

// Primes <= limit via sieve of Eratosthenes.
std::vector<uint32_t> primes_up_to(uint32_t limit);

// Moebius values mu[0..limit] via linear sieve.
std::vector<int8_t> moebius_up_to(uint32_t limit);

// a^e mod m for uint64 via 128-bit products.
uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m);

struct ParameterRangeError : std::runtime_error {
  explicit ParameterRangeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace trident
