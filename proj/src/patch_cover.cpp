#include "trident/patch_cover.hpp"

#include <algorithm>
#include <cassert>
#include <thread>

namespace trident {

namespace {

// Sup bound of |G(t1,t2,1)| over [-1,1]^2: sum of |coefficients|.
Rat sup_bound_unit_square(const TernaryForm& g) { return Rat(g.abs_coeff_sum()); }

struct Cell {
  Rat lo1, hi1, lo2, hi2;
  int depth;
};

}  // namespace

PatchConstants compute_constants(const TernaryForm& f, int max_depth) {
  int k = f.degree();
  TernaryForm p[3] = {f.partial(0), f.partial(1), f.partial(2)};
  // Per-partial Lipschitz data: L[i][j] bounds |d p_i / d t_j| on the square.
  Rat L[3][2];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) L[i][j] = sup_bound_unit_square(p[i].partial(j));

  // lambda: subdivide until every cell certifies some |F_i| > 0.
  Rat lambda(-1);
  std::vector<Cell> stack{{Rat(-1), Rat(1), Rat(-1), Rat(1), 0}};
  while (!stack.empty()) {
    Cell c = stack.back();
    stack.pop_back();
    Interval t1(c.lo1, c.hi1), t2(c.lo2, c.hi2);
    Rat best(0);
    for (int i = 0; i < 3; ++i) {
      Rat lb = p[i].interval_at(t1, t2).abs_lower();
      best = std::max(best, lb);
    }
    if (best > 0) {
      if (lambda < 0 || best < lambda) lambda = best;
      continue;
    }
    if (c.depth >= max_depth)
      throw ParameterRangeError(
          "compute_constants: subdivision depth exceeded; form is singular or "
          "nearly singular on [-1,1]^2");
    Rat m1 = (c.lo1 + c.hi1) / 2, m2 = (c.lo2 + c.hi2) / 2;
    stack.push_back({c.lo1, m1, c.lo2, m2, c.depth + 1});
    stack.push_back({m1, c.hi1, c.lo2, m2, c.depth + 1});
    stack.push_back({c.lo1, m1, m2, c.hi2, c.depth + 1});
    stack.push_back({m1, c.hi1, m2, c.hi2, c.depth + 1});
  }
  assert(lambda > 0);

  // M0: the three constraint families, each rounded up.
  auto ceil_rat = [](const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
  };
  Int m0 = ceil_rat(Rat(3 * k) / lambda);
  m0 = std::max(m0, ceil_rat(sup_bound_unit_square(p[0])));
  m0 = std::max(m0, ceil_rat(sup_bound_unit_square(p[1])));
  // Variation of F1, F2 over a square of side 1/M0 at most lambda/6:
  // (L[i][0]+L[i][1]) / M0 <= lambda/6.
  for (int i = 0; i < 2; ++i)
    m0 = std::max(m0, ceil_rat(Rat(6) * (L[i][0] + L[i][1]) / lambda));
  if (m0 < 1) m0 = 1;

  PatchConstants out;
  out.lambda = lambda;
  out.M0 = m0.get_si();
  out.lipschitz = std::max(L[0][0] + L[0][1], L[1][0] + L[1][1]);
  return out;
}

namespace {

struct GridCtx {
  const TernaryForm* f;
  const TernaryForm* f1;
  const TernaryForm* f2;
  Rat side;
  Rat tau;      // goodness threshold = side
  Rat gradmin;  // lambda / 6
  long n;       // grid cells per axis = 2 M0 M
  long M;
  std::vector<std::pair<long, long>> hits;
};

Rat grid_coord(const GridCtx& g, long idx) { return Rat(-1) + g.side * Rat(idx); }

// Recursive descent over index ranges [i0,i1) x [j0,j1).
void descend(GridCtx& g, long i0, long i1, long j0, long j1) {
  Interval t1(grid_coord(g, i0), grid_coord(g, i1));
  Interval t2(grid_coord(g, j0), grid_coord(g, j1));
  Interval val = g.f->interval_at(t1, t2);
  if (!val.meets(-g.tau, g.tau)) return;
  if (i1 - i0 == 1 && j1 - j0 == 1) {
    g.hits.emplace_back(i0, j0);
    return;
  }
  long im = i0 + (i1 - i0) / 2, jm = j0 + (j1 - j0) / 2;
  if (i1 - i0 == 1) {
    descend(g, i0, i1, j0, jm);
    descend(g, i0, i1, jm, j1);
    return;
  }
  if (j1 - j0 == 1) {
    descend(g, i0, im, j0, j1);
    descend(g, im, i1, j0, j1);
    return;
  }
  descend(g, i0, im, j0, jm);
  descend(g, i0, im, jm, j1);
  descend(g, im, i1, j0, jm);
  descend(g, im, i1, jm, j1);
}

// True if any sub-square of the refined 2^depth split still meets the
// goodness target (used to discard interval false positives before giving
// up on the gradient certificate).
bool refined_meets(const GridCtx& g, const Rat& lo1, const Rat& lo2, const Rat& w,
                   int depth) {
  Interval t1(lo1, lo1 + w), t2(lo2, lo2 + w);
  if (!g.f->interval_at(t1, t2).meets(-g.tau, g.tau)) return false;
  if (depth == 0) return true;
  Rat h = w / 2;
  return refined_meets(g, lo1, lo2, h, depth - 1) ||
         refined_meets(g, lo1 + h, lo2, h, depth - 1) ||
         refined_meets(g, lo1, lo2 + h, h, depth - 1) ||
         refined_meets(g, lo1 + h, lo2 + h, h, depth - 1);
}

}  // namespace

std::vector<Patch> good_squares(const TernaryForm& f, const PatchConstants& c, long M) {
  assert(M >= 1);
  GridCtx g;
  TernaryForm f1 = f.partial(0), f2 = f.partial(1);
  g.f = &f;
  g.f1 = &f1;
  g.f2 = &f2;
  g.n = 2 * c.M0 * M;
  g.side = Rat(1, (unsigned long)(c.M0 * M));
  g.tau = g.side;
  g.gradmin = c.lambda / 6;
  g.M = M;
  // Independent horizontal bands, merged in deterministic order.
  unsigned bands = std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), 8);
  if (g.n < (long)bands * 4) bands = 1;
  if (bands == 1) {
    descend(g, 0, g.n, 0, g.n);
  } else {
    std::vector<GridCtx> parts(bands, g);
    std::vector<std::thread> ts;
    for (unsigned t = 0; t < bands; ++t) {
      long j0 = g.n * t / bands, j1 = g.n * (t + 1) / bands;
      ts.emplace_back([&parts, t, j0, j1]() {
        descend(parts[t], 0, parts[t].n, j0, j1);
      });
    }
    for (auto& t : ts) t.join();
    for (auto& part : parts)
      g.hits.insert(g.hits.end(), part.hits.begin(), part.hits.end());
  }
  std::sort(g.hits.begin(), g.hits.end(),
            [](auto& a, auto& b) { return a.second != b.second ? a.second < b.second : a.first < b.first; });

  std::vector<Patch> out;
  out.reserve(g.hits.size());
  for (auto& [i, j] : g.hits) {
    Patch p;
    p.a = grid_coord(g, i);
    p.b = grid_coord(g, j);
    p.side = g.side;
    p.M = M;
    Interval t1(p.a, p.a + p.side), t2(p.b, p.b + p.side);
    Interval v1 = f1.interval_at(t1, t2), v2 = f2.interval_at(t1, t2);
    Rat l1 = v1.abs_lower(), l2 = v2.abs_lower();
    if (l1 >= g.gradmin || l2 >= g.gradmin) {
      if (l1 >= l2) {
        p.grad_index = 1;
        p.grad_sign = v1.lo > 0 ? 1 : -1;
      } else {
        p.grad_index = 2;
        p.grad_sign = v2.lo > 0 ? 1 : -1;
      }
      out.push_back(p);
      continue;
    }
    // Neither partial certifies: either an interval false positive (discard
    // after refined emptiness check) or the constants are broken.
    if (!refined_meets(g, p.a, p.b, p.side, 5)) continue;
    throw ParameterRangeError("good_squares: gradient certificate failed on a good square");
  }
  return out;
}

}  // namespace trident
