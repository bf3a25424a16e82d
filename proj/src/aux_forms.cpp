#include "trident/aux_forms.hpp"

#include <algorithm>
#include <cassert>

#include "trident/linalg.hpp"

namespace trident {

namespace {

Int int_pow(const Int& a, unsigned e) {
  Int r(1);
  for (unsigned i = 0; i < e; ++i) r *= a;
  return r;
}

Int floor_rat(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

}  // namespace

SolverParams choose_parameters(const Int& B, const Int& N, int k, AuxMode mode,
                               const Config& cfg, long M0) {
  if (k < 3) throw ParameterRangeError("choose_parameters: k must be >= 3");
  if (N < 1) throw ParameterRangeError("choose_parameters: N must be >= 1");
  if (B < 2) throw ParameterRangeError("choose_parameters: B must be >= 2");
  SolverParams p;
  p.B = B;
  p.N = N;
  p.k = k;
  p.mode = mode;
  p.c_prime = cfg.c_prime;
  Int Bk = int_pow(B, (unsigned)k);
  Int twok = int_pow(Int(2), (unsigned)k);
  if (mode == AuxMode::quadratic) {
    p.h = 2;
    p.H = 6;
    p.c = cfg.c_quadratic;
    // admissible range: N^13 <= (c' B)^3
    Int lhs = int_pow(N, 13);
    Rat rhs = Rat(int_pow(B, 3)) * p.c_prime * p.c_prime * p.c_prime;
    if (Rat(lhs) > rhs)
      throw ParameterRangeError("choose_parameters: N beyond the B^(3/13) range");
    p.M = std::max<long>(1, floor_rat(p.c * Rat(iroot(int_pow(B, 9) * N, 10))).get_si());
    // (c3): M^3 N 2^k <= B^k
    while (p.M > 1 && int_pow(Int(p.M), 3) * N * twok > Bk) --p.M;
    if (int_pow(Int(p.M), 3) * N * twok > Bk)
      throw ParameterRangeError("choose_parameters: condition (c3) fails");
  } else {
    p.h = (k - 1) / 2;
    if (p.h < 1) throw ParameterRangeError("choose_parameters: k too small for the balanced mode");
    p.H = (p.h + 1) * (p.h + 2) / 2;
    p.c = cfg.c_balanced;
    // (c2): N <= c' B
    if (Rat(N) > p.c_prime * Rat(B))
      throw ParameterRangeError("choose_parameters: N beyond the c'B range");
    p.M = std::max<long>(1, floor_rat(p.c * Rat(iroot(int_pow(B, 4), (unsigned)(p.h + 3)))).get_si());
    // (c1): N M^(H-1) 2^k <= B^k
    while (p.M > 1 && N * int_pow(Int(p.M), (unsigned)(p.H - 1)) * twok > Bk) --p.M;
    if (N * int_pow(Int(p.M), (unsigned)(p.H - 1)) * twok > Bk)
      throw ParameterRangeError("choose_parameters: condition (c1) fails");
  }
  p.s = p.H * (p.H - 1) / 2;
  // (c0): M N M0 2^k <= B^k
  while (p.M > 1 && Int(p.M) * N * Int(M0) * twok > Bk) --p.M;
  if (Int(p.M) * N * Int(M0) * twok > Bk)
    throw ParameterRangeError("choose_parameters: condition (c0) fails");
  return p;
}

MonomialOrder order_monomials(const SolverParams& params, const PatchConstants& consts) {
  MonomialOrder out;
  out.X_v = Rat(1, (unsigned long)(consts.M0 * params.M));
  out.X_delta = Rat(params.N) / Rat(int_pow(params.B / 2, (unsigned)params.k));
  int cap = params.H + 2;
  for (int e = 0; e <= cap; ++e)
    for (int f = 0; f <= cap; ++f) out.ordered.push_back({e, f});
  auto size_of = [&](const std::array<int, 2>& m) {
    Rat s(1);
    for (int i = 0; i < m[0]; ++i) s *= out.X_v;
    for (int i = 0; i < m[1]; ++i) s *= out.X_delta;
    return s;
  };
  std::stable_sort(out.ordered.begin(), out.ordered.end(),
                   [&](const auto& a, const auto& b) {
                     Rat sa = size_of(a), sb = size_of(b);
                     if (sa != sb) return sa > sb;
                     if (a[0] != b[0]) return a[0] > b[0];
                     return a[1] < b[1];
                   });
  for (auto& m : out.ordered) out.sizes.push_back(size_of(m));
  out.head_is_powers_of_v = true;
  for (int i = 0; i < params.H; ++i)
    if (out.ordered[i][1] != 0 || out.ordered[i][0] != i) out.head_is_powers_of_v = false;
  return out;
}

DetBound reduce_columns(const std::vector<MPoly>& fs, const std::vector<Rat>& sizes,
                        int nvars, int D) {
  int H = (int)fs.size();
  DetBound out;
  // Global monomial list of degree <= D, non-increasing size, lex-desc ties.
  std::vector<Expo> mons;
  std::function<void(int, int, Expo)> gen = [&](int var, int rem, Expo cur) {
    if (var == nvars) {
      mons.push_back(cur);
      return;
    }
    for (int e = 0; e <= rem; ++e) {
      Expo nxt = cur;
      nxt.e[var] = e;
      gen(var + 1, rem - e, nxt);
    }
  };
  gen(0, D, Expo{});
  auto size_of = [&](const Expo& x) {
    Rat s(1);
    for (int i = 0; i < nvars; ++i)
      for (unsigned j = 0; j < x.e[i]; ++j) s *= sizes[i];
    return s;
  };
  std::vector<Rat> msize;
  for (auto& m : mons) msize.push_back(size_of(m));
  std::vector<int> order(mons.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (msize[a] != msize[b]) return msize[a] > msize[b];
    return mons[b] < mons[a];  // lex descending
  });
  std::map<Expo, int> rank;  // monomial -> 1-based position
  std::vector<Rat> ranked_size(order.size());
  for (size_t i = 0; i < order.size(); ++i) {
    rank[mons[order[i]]] = (int)i + 1;
    ranked_size[i] = msize[order[i]];
  }
  auto index_of = [&](const MPoly& f) {
    int best = INT32_MAX;
    for (auto& [x, c] : f.terms()) {
      auto it = rank.find(x);
      assert(it != rank.end() && "reduce_columns: degree exceeds D");
      best = std::min(best, it->second);
    }
    return best;  // INT32_MAX for the zero polynomial
  };

  Rat max_height(0);
  for (auto& f : fs) max_height = std::max(max_height, f.max_abs_coeff());

  std::vector<MPoly> g = fs;
  for (int s = 0; s < H; ++s) {
    // Minimal index among remaining columns; largest |leading coeff| wins.
    int best_col = -1, best_idx = INT32_MAX;
    Rat best_abs(-1);
    for (int j = s; j < H; ++j) {
      int idx = index_of(g[j]);
      if (idx == INT32_MAX) continue;
      Rat lead = abs_rat(g[j].coeff(mons[order[idx - 1]]));
      if (idx < best_idx || (idx == best_idx && lead > best_abs)) {
        best_col = j;
        best_idx = idx;
        best_abs = lead;
      }
    }
    if (best_col < 0) {
      out.zero = true;  // all remaining columns vanish
      for (int j = s; j < H; ++j) out.indices.push_back(INT32_MAX);
      break;
    }
    std::swap(g[s], g[best_col]);
    out.indices.push_back(best_idx);
    Expo lead_mon = mons[order[best_idx - 1]];
    Rat cs = g[s].coeff(lead_mon);
    for (int j = s + 1; j < H; ++j) {
      Rat cj = g[j].coeff(lead_mon);
      if (cj != 0) g[j] = g[j] - g[s] * (cj / cs);
    }
  }
  out.reduced = g;

  // C(H, D) = H! (2^H T(n,D))^H with T the monomial count.
  Rat C(1);
  for (int i = 2; i <= H; ++i) C *= i;
  Rat T((unsigned long)mons.size());
  Rat factor = T * Rat(Int(1) << (unsigned)H);
  for (int i = 0; i < H; ++i) C *= factor;
  out.constant = C;
  if (out.zero) {
    out.bound = Rat(0);
  } else {
    Rat prod(1);
    for (int i = 0; i < H && i < (int)ranked_size.size(); ++i) prod *= ranked_size[i];
    Rat mh = max_height;
    Rat mhH(1);
    for (int i = 0; i < H; ++i) mhH *= mh;
    out.bound = C * mhH * prod;
  }
  return out;
}

NullspaceResult fit_nullspace(const std::vector<IntegerTriple>& points, int h) {
  NullspaceResult out;
  if (points.empty()) {
    out.status = NullspaceResult::Status::zero_dimensional;
    return out;
  }
  auto mons = monomials_of_degree(h);
  int H = (int)mons.size();
  IntMatrix m;
  m.reserve(points.size());
  for (auto& p : points) {
    assert(!p.is_zero());
    std::vector<Int> row;
    row.reserve(H);
    for (auto& e : mons) {
      Int t(1);
      for (int i = 0; i < e[0]; ++i) t *= p.x1;
      for (int i = 0; i < e[1]; ++i) t *= p.x2;
      for (int i = 0; i < e[2]; ++i) t *= p.x3;
      row.push_back(t);
    }
    m.push_back(std::move(row));
  }
  out.rank = matrix_rank(m);
  if (out.rank == H) {
    out.status = NullspaceResult::Status::rank_full;
    return out;
  }
  std::vector<Int> ker = kernel_vector(m);
  assert((int)ker.size() == H);
  std::map<TernaryForm::Exp, Int> coeffs;
  for (int i = 0; i < H; ++i)
    if (ker[i] != 0) coeffs[mons[i]] = ker[i];
  AuxForm af;
  af.form = TernaryForm(h, std::move(coeffs));
  af.height = af.form.height();
  af.provenance = AuxForm::Provenance::nullspace;
  out.form = af;
  out.status = NullspaceResult::Status::ok;
  return out;
}

namespace {

// One reduction attempt over a (v, delta) sub-box of the patch: v shifted to
// [0, width].  The residual block carries the certificate quantities
// c_i(lambda) * size_i * B^h directly, so short vectors are certifiable ones.
std::optional<AuxForm> fit_box(const std::vector<const Approximant*>& gs,
                               const std::vector<TernaryForm::Exp>& mons,
                               const SolverParams& params, const Rat& v0,
                               const Rat& width, const Rat& delta_max) {
  int H = params.H;
  std::vector<MPoly> shifted(H);
  MPoly vshift = MPoly::var(1) + MPoly(Rat(v0));
  for (int q = 0; q < H; ++q)
    shifted[q] = v0 == 0 ? gs[q]->G : gs[q]->G.subst(1, vshift);

  Rat Bh(1);
  for (int i = 0; i < params.h; ++i) Bh *= Rat(params.B);
  std::array<Rat, 4> box_sizes{Rat(0), width, delta_max, Rat(0)};

  // Union of (v, delta) monomials across the shifted expansions.
  std::map<Expo, int> index;
  for (auto& g : shifted)
    for (auto& [x, c] : g.terms())
      if (!index.count(x)) {
        int next = (int)index.size();
        index[x] = next;
      }
  size_t T = index.size();
  std::vector<Rat> msize(T, Rat(1));
  for (auto& [x, i] : index) {
    Rat s(1);
    for (unsigned j = 0; j < x.e[1]; ++j) s *= width;
    for (unsigned j = 0; j < x.e[2]; ++j) s *= delta_max;
    msize[i] = s * Bh;
  }

  const unsigned kPrec = 72;
  Int scale = Int(1) << kPrec;
  Rat err_max(0);
  for (auto& g : gs) err_max = std::max(err_max, g->err);
  Rat lambda_cap =
      err_max > 0 ? Rat(Rat(1) / (Rat(2 * H) * err_max * Bh)) : Rat(Int(1) << 30);
  lambda_cap = std::min(lambda_cap, Rat(Int(1) << 30));
  lambda_cap = std::max(lambda_cap, Rat(16));
  Rat s_rat = Rat(scale) / lambda_cap;
  Int S = s_rat.get_num() / s_rat.get_den();
  if (S < 1) S = 1;

  std::vector<std::vector<Int>> basis(H, std::vector<Int>(H + T, Int(0)));
  for (int q = 0; q < H; ++q) {
    basis[q][q] = S;
    for (auto& [x, c] : shifted[q].terms()) {
      int i = index[x];
      Rat w = c * msize[i] * Rat(scale);
      Rat half = w >= 0 ? Rat(w + Rat(1, 2)) : Rat(w - Rat(1, 2));
      basis[q][H + i] = floor_rat(half);
    }
  }
  lll_reduce_fp(basis);

  for (int ci = 0; ci < H; ++ci) {
    std::vector<Int> lambda(H);
    bool ok = true, zero = true;
    for (int q = 0; q < H; ++q) {
      if (basis[ci][q] % S != 0) {
        ok = false;
        break;
      }
      lambda[q] = basis[ci][q] / S;
      if (lambda[q] != 0) zero = false;
    }
    if (!ok || zero) continue;
    MPoly avd;
    Rat err_part(0);
    for (int q = 0; q < H; ++q) {
      if (lambda[q] == 0) continue;
      avd = avd + shifted[q] * Rat(lambda[q]);
      err_part += Rat(abs_int(lambda[q])) * gs[q]->err;
    }
    Rat sup = avd.sup_bound(box_sizes) + err_part * Bh;  // sup scaled by B^h
    if (sup < 1) {
      std::map<TernaryForm::Exp, Int> coeffs;
      for (int q = 0; q < H; ++q)
        if (lambda[q] != 0) coeffs[mons[q]] = lambda[q];
      AuxForm af;
      af.form = TernaryForm(params.h, std::move(coeffs)).primitive();
      af.height = af.form.height();
      af.provenance = AuxForm::Provenance::lattice;
      af.sup = sup / Bh;
      return af;
    }
  }
  return std::nullopt;
}

}  // namespace

LatticeFit fit_lattice(const Patch& patch, const std::vector<Approximant>& approx,
                       const SolverParams& params, const Rat& delta_max) {
  LatticeFit out;
  out.sup = Rat(-1);
  int H = params.H;
  auto mons = monomials_of_degree(params.h);
  assert((int)mons.size() == H);
  std::vector<const Approximant*> gs;
  for (auto& m : mons) {
    const Approximant* found = nullptr;
    for (auto& a : approx)
      if (a.e == m[0] && a.f == m[1]) found = &a;
    assert(found && "fit_lattice: missing approximant");
    gs.push_back(found);
  }
  // Certifiable forms rarely span the whole patch width; bisect the v range
  // until every strip certifies (the conics per strip count as separate
  // auxiliary forms; the union still covers the patch).
  const int kMaxDepth = 5;
  struct Strip {
    Rat v0, width;
    int depth;
  };
  std::vector<Strip> work{{Rat(0), patch.side, 0}};
  std::vector<AuxForm> found;
  while (!work.empty()) {
    Strip st = work.back();
    work.pop_back();
    auto af = fit_box(gs, mons, params, st.v0, st.width, delta_max);
    if (af) {
      found.push_back(*af);
      continue;
    }
    if (st.depth >= kMaxDepth) {
      out.fallback = true;
      return out;
    }
    Rat half = st.width / 2;
    work.push_back({st.v0, half, st.depth + 1});
    work.push_back({st.v0 + half, half, st.depth + 1});
  }
  assert(!found.empty());
  // Report the first strip's form; extra strip forms ride along.
  out.form = found.front();
  out.sup = found.front().sup;
  out.extra_forms.assign(found.begin() + 1, found.end());
  return out;
}

}  // namespace trident
