#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "trident/config.hpp"
#include "trident/numbers.hpp"

namespace trident {

// nu(r) = #{n mod r^(k-1) : r^(k-1) | n^k + h}, multiplicative in r; prime
// powers by Hensel lifting from the roots mod p, with exhaustion for the few
// singular primes p | k h.
class NuFunction {
 public:
  NuFunction(int k, const Int& h) : k_(k), h_(h) {}
  Int operator()(const Int& r);

  int k() const { return k_; }
  const Int& h() const { return h_; }

 private:
  Int prime_power(const Int& p, unsigned e);
  int k_;
  Int h_;
  std::map<Int, Int> cache_;
  std::mutex mu_;
};

Int nu(const Int& r, int k, const Int& h);

struct Density {
  int k;
  Int h;
  Int P;            // truncation prime
  Rat partial;      // exact product over p <= P, p coprime to h
  Rat tail_bound;   // bound on |log of the omitted factor|
  double decimal() const { return partial.get_d(); }
};

Density density(int k, const Int& h, const Int& P);

struct CensusRow {
  Int X;
  unsigned long prime_count = 0;
  unsigned long free_count = 0;
  double li = 0;
  double predicted = 0;
  double rel_error = 0;
};

struct CensusResult {
  std::vector<CensusRow> rows;
  Density dens;
  // Exact Moebius-decomposition cross-check at min(X, 1e5):
  Int moebius_X;
  unsigned long direct_count = 0;
  Int moebius_total;  // truncated sum + exact remainder; must equal direct
  bool moebius_ok = false;
};

CensusResult census(int k, const Int& h, const Int& X, const Config& cfg,
                    const Int& density_P = Int(10000));

// Offset logarithmic integral, adaptive Simpson, |error| < 1e-3.
double log_integral(double x);

// Solutions of x^k + h = y^(k-1) z with A < x <= 2A, B < y <= 2B.
struct ExceptionResult {
  std::vector<std::array<Int, 3>> solutions;  // (x, y, z)
  long intervals_rank_full = 0;               // determinant backend diagnostics
  long intervals_checked = 0;
};

ExceptionResult exception_count_brute(const Int& A, const Int& B, int k, const Int& h);

// Interval cover + point-matrix rank + conic cross-solving; must agree with
// the brute backend.  M = 0 picks ceil(A^(19/20)) capped for desk scale.
ExceptionResult exception_count_detmethod(const Int& A, const Int& B, int k,
                                          const Int& h, long M = 0);

}  // namespace trident
