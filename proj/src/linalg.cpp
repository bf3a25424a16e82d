#include "trident/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace trident {

namespace {

// Fraction-free row echelon (Bareiss).  Returns pivot columns; m is reduced
// in place.
std::vector<int> bareiss_echelon(IntMatrix& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  int rows = (int)m.size(), cols = (int)m[0].size();
  Int prev(1);
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = c + 1; j < cols; ++j) {
        m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

int matrix_rank(IntMatrix m) { return (int)bareiss_echelon(m).size(); }

Int matrix_det(IntMatrix m) {
  int n = (int)m.size();
  if (n == 0) return Int(1);
  assert((int)m[0].size() == n);
  Int sign(1), prev(1);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (m[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return Int(0);
    if (piv != c) {
      std::swap(m[c], m[piv]);
      sign = -sign;
    }
    for (int i = c + 1; i < n; ++i) {
      for (int j = c + 1; j < n; ++j)
        m[i][j] = (m[c][c] * m[i][j] - m[i][c] * m[c][j]) / prev;
      m[i][c] = 0;
    }
    prev = m[c][c];
  }
  return sign * m[n - 1][n - 1];
}

void make_primitive(std::vector<Int>& v) {
  Int g(0);
  for (auto& x : v) g = gcd_int(g, x);
  if (g == 0) return;
  for (auto& x : v) x /= g;
  for (auto& x : v) {
    if (x != 0) {
      if (x < 0)
        for (auto& y : v) y = -y;
      break;
    }
  }
}

std::vector<Int> kernel_vector(const IntMatrix& m) {
  if (m.empty() || m[0].empty()) return {};
  int cols = (int)m[0].size();
  IntMatrix e = m;
  std::vector<int> pivots = bareiss_echelon(e);
  if ((int)pivots.size() == cols) return {};
  // Last free column.
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  int free_col = -1;
  for (int c = cols - 1; c >= 0; --c)
    if (!is_pivot[c]) {
      free_col = c;
      break;
    }
  // Back-substitute over Q: v[free_col] = 1, pivots solved bottom-up.
  std::vector<Rat> v(cols, Rat(0));
  v[free_col] = 1;
  for (int i = (int)pivots.size() - 1; i >= 0; --i) {
    int pc = pivots[i];
    Rat s(0);
    for (int j = pc + 1; j < cols; ++j)
      if (v[j] != 0) s += Rat(e[i][j]) * v[j];
    v[pc] = -s / Rat(e[i][pc]);
  }
  // Clear denominators.
  Int den(1);
  for (auto& x : v) den = lcm_int(den, x.get_den());
  std::vector<Int> out(cols);
  for (int j = 0; j < cols; ++j) {
    Rat t = v[j] * Rat(den);
    t.canonicalize();
    assert(t.get_den() == 1);
    out[j] = t.get_num();
  }
  make_primitive(out);
  return out;
}

std::vector<std::vector<Int>> unimodular_complete(const std::vector<Int>& v) {
  size_t n = v.size();
  assert(n == 2 || n == 3);
  if (n == 2) {
    // find (a,b) with a v0 + b v1 = 1; columns ((b, -a)?, v)
    Int g, a, b;
    mpz_gcdext(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t(), v[0].get_mpz_t(),
               v[1].get_mpz_t());
    assert(g == 1);
    // det [[ b, v0],[-a, v1]] = b v1 + a v0 = 1
    return {{b, v[0]}, {-a, v[1]}};
  }
  // n == 3: first combine v0, v1.
  Int g01, a, b;
  mpz_gcdext(g01.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t(), v[0].get_mpz_t(),
             v[1].get_mpz_t());
  Int g, c, d;
  if (g01 == 0) {
    // v = (0,0,+-1)
    assert(abs_int(v[2]) == 1);
    return {{Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)}, {Int(0), Int(0), v[2]}};
  }
  mpz_gcdext(g.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t(), g01.get_mpz_t(),
             v[2].get_mpz_t());
  assert(g == 1);
  // Columns: e1 = (b, -a, 0)-style kernel of (v0,v1); e2 = (c*v0/g01? ...)
  // Build explicitly: with w = (v0/g01, v1/g01):
  Int w0 = v[0] / g01, w1 = v[1] / g01;
  // col1 = (-b? ...) choose k1 = (b, -a, 0)?? det check below.
  // Take columns: k1 = (b, -a, 0), k2 = (c*w0?, c*w1?, ??)
  // Use standard construction: the matrix
  //   [ b   c*w0   v0 ]
  //   [ -a  c*w1   v1 ]
  //   [ 0   -d?    v2 ]
  // det = ... simpler: rows of inverse known; verify numerically below.
  std::vector<std::vector<Int>> M = {{b, -d * w0, v[0]},
                                     {-a, -d * w1, v[1]},
                                     {Int(0), c, v[2]}};
  // det = b*(-d w1 * ... ) verify:
  Int det = matrix_det(M);
  if (det == -1) {
    for (auto& row : M) row[0] = -row[0];
    det = -det;
  }
  assert(det == 1);
  return M;
}

void lll_reduce(std::vector<std::vector<Int>>& basis) {
  // Classical LLL with exact rational Gram data, incremental updates,
  // delta = 3/4.  Rows must be linearly independent.
  size_t n = basis.size();
  if (n <= 1) return;
  size_t dim = basis[0].size();
  auto dot = [&](const std::vector<Int>& a, const std::vector<Int>& b) {
    Int s(0);
    for (size_t i = 0; i < dim; ++i) s += a[i] * b[i];
    return s;
  };
  std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n, Rat(0)));
  std::vector<Rat> B(n, Rat(0));
  {
    // Initial Gram-Schmidt.
    std::vector<std::vector<Rat>> star(n, std::vector<Rat>(dim, Rat(0)));
    for (size_t i = 0; i < n; ++i) {
      for (size_t d = 0; d < dim; ++d) star[i][d] = Rat(basis[i][d]);
      for (size_t j = 0; j < i; ++j) {
        Rat num(0);
        for (size_t d = 0; d < dim; ++d) num += Rat(basis[i][d]) * star[j][d];
        assert(B[j] != 0 && "lll_reduce: dependent rows");
        mu[i][j] = num / B[j];
        for (size_t d = 0; d < dim; ++d) star[i][d] -= mu[i][j] * star[j][d];
      }
      Rat nb(0);
      for (size_t d = 0; d < dim; ++d) nb += star[i][d] * star[i][d];
      B[i] = nb;
    }
  }
  auto red = [&](size_t k, size_t l) {
    if (abs_rat(mu[k][l]) <= Rat(1, 2)) return;
    Rat half = mu[k][l] >= 0 ? Rat(mu[k][l] + Rat(1, 2)) : Rat(mu[k][l] - Rat(1, 2));
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), half.get_num_mpz_t(), half.get_den_mpz_t());
    if (q == 0) return;
    for (size_t d = 0; d < dim; ++d) basis[k][d] -= q * basis[l][d];
    mu[k][l] -= Rat(q);
    for (size_t i = 0; i < l; ++i) mu[k][i] -= Rat(q) * mu[l][i];
  };
  size_t k = 1;
  while (k < n) {
    red(k, k - 1);
    if (B[k] < (Rat(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
      Rat nu = mu[k][k - 1];
      Rat Bt = B[k] + nu * nu * B[k - 1];
      mu[k][k - 1] = nu * B[k - 1] / Bt;
      B[k] = B[k - 1] * B[k] / Bt;
      B[k - 1] = Bt;
      std::swap(basis[k], basis[k - 1]);
      for (size_t i = 0; i + 1 < k; ++i) std::swap(mu[k][i], mu[k - 1][i]);
      for (size_t i = k + 1; i < n; ++i) {
        Rat t = mu[i][k];
        mu[i][k] = mu[i][k - 1] - nu * t;
        mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
      }
      k = std::max<size_t>(1, k - 1);
    } else {
      for (size_t l = k - 1; l-- > 0;) red(k, l);
      ++k;
    }
  }
  (void)dot;
}

void lll_reduce_fp(std::vector<std::vector<Int>>& basis) {
  size_t n = basis.size();
  if (n <= 1) return;
  size_t dim = basis[0].size();
  auto dot_d = [&](size_t i, size_t j) {
    Int s(0);
    for (size_t d = 0; d < dim; ++d) s += basis[i][d] * basis[j][d];
    return s.get_d();
  };
  std::vector<std::vector<double>> mu(n, std::vector<double>(n, 0));
  std::vector<double> B(n, 0);
  auto gram = [&]() {
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < i; ++j) {
        double num = dot_d(i, j);
        for (size_t l = 0; l < j; ++l) num -= mu[j][l] * mu[i][l] * B[l];
        mu[i][j] = B[j] > 0 ? num / B[j] : 0;
      }
      double b = dot_d(i, i);
      for (size_t l = 0; l < i; ++l) b -= mu[i][l] * mu[i][l] * B[l];
      B[i] = b;
    }
  };
  gram();
  size_t k = 1;
  int guard = 0;
  const int max_iter = 20000;
  int since_gram = 0;
  while (k < n && ++guard < max_iter) {
    for (size_t j = k; j-- > 0;) {
      if (std::abs(mu[k][j]) > 0.5) {
        long q = std::lround(mu[k][j]);
        if (q != 0) {
          Int qi(q);
          for (size_t d = 0; d < dim; ++d) basis[k][d] -= qi * basis[j][d];
          for (size_t l = 0; l < j; ++l) mu[k][l] -= (double)q * mu[j][l];
          mu[k][j] -= (double)q;
        }
      }
    }
    if (B[k] < (0.75 - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
      std::swap(basis[k], basis[k - 1]);
      if (++since_gram > 64) {
        gram();
        since_gram = 0;
      } else {
        double nu = mu[k][k - 1];
        double Bt = B[k] + nu * nu * B[k - 1];
        if (Bt <= 0) {
          gram();
        } else {
          mu[k][k - 1] = nu * B[k - 1] / Bt;
          B[k] = B[k - 1] * B[k] / Bt;
          B[k - 1] = Bt;
          for (size_t i = 0; i + 1 < k; ++i) std::swap(mu[k][i], mu[k - 1][i]);
          for (size_t i = k + 1; i < n; ++i) {
            double t = mu[i][k];
            mu[i][k] = mu[i][k - 1] - nu * t;
            mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
          }
        }
      }
      k = std::max<size_t>(1, k - 1);
    } else {
      ++k;
    }
  }
}

}  // namespace trident
