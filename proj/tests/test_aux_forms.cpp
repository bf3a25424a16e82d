#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "trident/aux_forms.hpp"
#include "trident/implicit_series.hpp"
#include "trident/linalg.hpp"
#include "trident/pipeline.hpp"

using namespace trident;

TEST_CASE("parameter choices") {
  Config cfg;
  SUBCASE("quadratic mode fixes h = 2, H = 6, s = 15") {
    auto p = choose_parameters(Int(4096), Int(1), 3, AuxMode::quadratic, cfg, 12);
    CHECK(p.h == 2);
    CHECK(p.H == 6);
    CHECK(p.s == 15);
  }
  SUBCASE("balanced mode at k = 7 gives h = 3 and the 2/3 exponent") {
    auto p = choose_parameters(Int(1) << 30, Int(1), 7, AuxMode::balanced, cfg, 1);
    CHECK(p.h == 3);
    CHECK(p.H == 10);
    // M = floor(c B^(4/6)) = B^(2/3) = 2^20 with c = 1
    CHECK(p.M == (1L << 20));
  }
  SUBCASE("exact power of two") {
    Config cfg1;
    cfg1.c_quadratic = Rat(1);
    auto p = choose_parameters(Int(1) << 20, Int(1), 3, AuxMode::quadratic, cfg1, 1);
    CHECK(p.M == (1L << 18));
  }
  SUBCASE("range errors name the violated condition") {
    CHECK_THROWS_AS(choose_parameters(Int(100), Int(90), 3, AuxMode::quadratic, cfg, 12),
                    ParameterRangeError);
    CHECK_THROWS_AS(choose_parameters(Int(100), Int(2000), 3, AuxMode::balanced, cfg, 12),
                    ParameterRangeError);
  }
}

TEST_CASE("monomial ordering by size") {
  Config cfg;
  PatchConstants consts;
  consts.M0 = 12;
  SUBCASE("balanced-style sizes put pure powers of v first") {
    SolverParams p = choose_parameters(Int(1) << 30, Int(1), 5, AuxMode::balanced, cfg, 12);
    MonomialOrder mo = order_monomials(p, consts);
    CHECK(mo.head_is_powers_of_v);
    for (int i = 0; i < p.H; ++i) {
      CHECK(mo.ordered[i][0] == i);
      CHECK(mo.ordered[i][1] == 0);
    }
  }
  SUBCASE("delta between v^5 and v^4 interleaves after v^4") {
    SolverParams p;
    p.B = 200;
    p.N = 1;
    p.k = 3;
    p.h = 2;
    p.H = 6;
    p.M = 2;  // X_v = 1/24, X_delta = 1e-6: v^4 > delta > v^5
    MonomialOrder mo = order_monomials(p, consts);
    Rat xv = mo.X_v, xd = mo.X_delta;
    REQUIRE(xd < xv * xv * xv * xv);
    REQUIRE(xd > xv * xv * xv * xv * xv);
    CHECK(mo.ordered[4] == std::array<int, 2>{4, 0});
    CHECK(mo.ordered[5] == std::array<int, 2>{0, 1});
  }
  SUBCASE("ties break with v before delta") {
    SolverParams p;
    p.B = 4;
    p.N = 1;
    p.k = 3;
    p.h = 2;
    p.H = 6;
    p.M = 8;
    PatchConstants c1;
    c1.M0 = 1;
    MonomialOrder mo = order_monomials(p, c1);
    REQUIRE(mo.X_v == mo.X_delta);
    CHECK(mo.ordered[0] == std::array<int, 2>{0, 0});
    CHECK(mo.ordered[1] == std::array<int, 2>{1, 0});
    CHECK(mo.ordered[2] == std::array<int, 2>{0, 1});
  }
}

namespace {

MPoly upoly_x(int var, const std::vector<Rat>& coeffs) {
  MPoly p;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    Expo e;
    e.e[var] = (uint16_t)i;
    p.add_term(e, coeffs[i]);
  }
  return p;
}

Rat det_rational(std::vector<std::vector<Rat>> m) {
  int n = (int)m.size();
  Rat det(1);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (m[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return Rat(0);
    if (piv != c) {
      std::swap(m[c], m[piv]);
      det = -det;
    }
    det *= m[c][c];
    for (int i = c + 1; i < n; ++i) {
      Rat f = m[i][c] / m[c][c];
      for (int j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

}  // namespace

TEST_CASE("column reduction examples") {
  SUBCASE("proportional columns vanish") {
    std::vector<MPoly> fs = {upoly_x(0, {Rat(0), Rat(1)}), upoly_x(0, {Rat(0), Rat(2)})};
    DetBound db = reduce_columns(fs, {Rat(10)}, 1, 1);
    CHECK(db.zero);
    CHECK(db.bound == 0);
  }
  SUBCASE("constant and linear keep increasing indices") {
    std::vector<MPoly> fs = {upoly_x(0, {Rat(1), Rat(1)}), upoly_x(0, {Rat(1)})};
    DetBound db = reduce_columns(fs, {Rat(10)}, 1, 1);
    REQUIRE(db.indices.size() == 2);
    CHECK(db.indices[0] == 1);
    CHECK(db.indices[1] == 2);
    // |det| at points 3, 7 is 4, far below the bound
    std::vector<std::vector<Rat>> m = {{Rat(1 + 3), Rat(1)}, {Rat(1 + 7), Rat(1)}};
    CHECK(abs_rat(det_rational(m)) == 4);
    CHECK(db.bound >= 4);
  }
  SUBCASE("classical power-basis determinant stays under the bound") {
    std::vector<MPoly> fs = {upoly_x(0, {Rat(1)}), upoly_x(0, {Rat(0), Rat(1)}),
                             upoly_x(0, {Rat(0), Rat(0), Rat(1)})};
    Rat X(5);
    DetBound db = reduce_columns(fs, {X}, 1, 2);
    // product of the three largest monomial sizes = X^2 * X * 1
    Rat prod = X * X * X;
    CHECK(db.bound == db.constant * prod);
    std::vector<Rat> pts = {Rat(1), Rat(-3), Rat(5)};
    std::vector<std::vector<Rat>> m(3, std::vector<Rat>(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] = fs[j].eval({pts[i], Rat(0), Rat(0), Rat(0)});
    CHECK(abs_rat(det_rational(m)) <= db.bound);
  }
}

TEST_CASE("column reduction randomized soundness") {
  std::mt19937 rng(31337);
  std::uniform_int_distribution<int> Hd(2, 6), Dd(1, 5), nd(1, 2), cd(-9, 9), Xd(1, 20);
  for (int iter = 0; iter < 200; ++iter) {
    int H = Hd(rng), D = Dd(rng), n = nd(rng);
    std::vector<Rat> sizes;
    for (int i = 0; i < n; ++i) sizes.push_back(Rat(Xd(rng)));
    std::vector<MPoly> fs;
    for (int j = 0; j < H; ++j) {
      MPoly f;
      std::function<void(int, int, Expo)> gen = [&](int var, int rem, Expo cur) {
        if (var == n) {
          int c = cd(rng);
          if (rng() % 3 == 0 && c != 0) f.add_term(cur, Rat(c));
          return;
        }
        for (int e = 0; e <= rem; ++e) {
          Expo nxt = cur;
          nxt.e[var] = (uint16_t)e;
          gen(var + 1, rem - e, nxt);
        }
      };
      gen(0, D, Expo{});
      if (f.is_zero()) f = MPoly(Rat(1));
      fs.push_back(f);
    }
    DetBound db = reduce_columns(fs, sizes, n, D);
    // random points within the size box
    std::vector<std::array<Rat, 4>> pts;
    for (int i = 0; i < H; ++i) {
      std::array<Rat, 4> pt{Rat(0), Rat(0), Rat(0), Rat(0)};
      for (int v = 0; v < n; ++v) {
        long den = 1 + rng() % 7;
        long num = (long)(rng() % (2 * sizes[v].get_num().get_ui() * den + 1)) -
                   (long)(sizes[v].get_num().get_ui() * den);
        Rat r(num, den);
        r.canonicalize();
        pt[v] = r;
      }
      pts.push_back(pt);
    }
    std::vector<std::vector<Rat>> orig(H, std::vector<Rat>(H));
    std::vector<std::vector<Rat>> red(H, std::vector<Rat>(H));
    for (int i = 0; i < H; ++i)
      for (int j = 0; j < H; ++j) {
        orig[i][j] = fs[j].eval(pts[i]);
        red[i][j] = db.reduced[j].eval(pts[i]);
      }
    Rat d0 = abs_rat(det_rational(orig));
    Rat d1 = abs_rat(det_rational(red));
    CHECK(d0 == d1);
    CHECK(d0 <= db.bound);
    if (!db.zero) {
      for (size_t j = 1; j < db.indices.size(); ++j)
        CHECK(db.indices[j - 1] < db.indices[j]);
    }
  }
}

TEST_CASE("nullspace fitting") {
  SUBCASE("shared linear relation") {
    std::vector<IntegerTriple> pts = {{Int(1), Int(2), Int(1)},
                                      {Int(2), Int(5), Int(2)},
                                      {Int(3), Int(-1), Int(3)},
                                      {Int(5), Int(0), Int(5)}};
    auto r = fit_nullspace(pts, 1);
    REQUIRE(r.status == NullspaceResult::Status::ok);
    CHECK(r.form->form == parse_ternary("x1-x3"));
  }
  SUBCASE("conic through six points of the split quadric") {
    std::vector<IntegerTriple> pts;
    for (long t = 1; t <= 6; ++t) pts.push_back({Int(t * t), Int(1), Int(t)});
    auto r = fit_nullspace(pts, 2);
    REQUIRE(r.status == NullspaceResult::Status::ok);
    TernaryForm expect = parse_ternary("x1x2-x3^2");
    CHECK(r.form->form.primitive() == expect.primitive());
  }
  SUBCASE("generic points have full rank") {
    std::vector<IntegerTriple> pts = {{Int(1), Int(2), Int(3)},  {Int(5), Int(1), Int(2)},
                                      {Int(7), Int(11), Int(1)}, {Int(2), Int(9), Int(5)},
                                      {Int(4), Int(3), Int(13)}, {Int(8), Int(5), Int(3)}};
    auto r = fit_nullspace(pts, 2);
    CHECK(r.status == NullspaceResult::Status::rank_full);
  }
  SUBCASE("empty input signals zero dimensional") {
    auto r = fit_nullspace({}, 2);
    CHECK(r.status == NullspaceResult::Status::zero_dimensional);
  }
}

TEST_CASE("lattice fit certifies a vanishing form on an in-patch family") {
  // Patch around the (1, t, t) family direction on the cubic difference
  // form; the certified fit must vanish on every oracle in-patch point.
  Config cfg;
  TernaryForm f = parse_ternary("x1^3+x2^3-x3^3");
  PatchConstants consts = compute_constants(f);
  Int B(4096), N(1);
  SolverParams params = choose_parameters(B, N, 3, AuxMode::quadratic, cfg, consts.M0);
  auto patches = good_squares(f, consts, params.M);
  REQUIRE(!patches.empty());
  auto oracle = brute_force(f, N, B, ValueMode::inequality, cfg);
  Rat delta_max = Rat(N) / Rat(Int(2048) * 2048 * 2048);
  Rat drop = Rat(1);
  for (int i = 0; i < 15; ++i) drop /= Rat(params.M);
  long fitted = 0, certified_nonempty = 0;
  Int height_cap = Int(1);
  for (int i = 0; i < 12; ++i) height_cap *= B;  // B^12
  for (auto& p : patches) {
    // oracle points inside this patch with x3 in the dyadic shell
    std::vector<IntegerTriple> inpatch;
    for (auto& s : oracle) {
      const IntegerTriple& x = s.x;
      if (x.x3 <= 2048 || x.x3 > 4096 || x.x3 != x.max_abs()) continue;
      Rat t1(x.x1, x.x3), t2(x.x2, x.x3);
      t1.canonicalize();
      t2.canonicalize();
      if (t1 >= p.a && t1 <= p.a + p.side && t2 >= p.b && t2 <= p.b + p.side)
        inpatch.push_back(x);
    }
    if (inpatch.empty()) continue;
    bool swapped = p.grad_index == 2;
    TernaryForm fl = swapped ? swap_x1x2(f) : f;
    LocalData ld =
        local_data(fl, swapped ? p.b : p.a, swapped ? p.a : p.b, consts.lambda / 6);
    LatticeFit fit;
    fit.fallback = true;
    for (int s : {2, 3, 5}) {
      ImplicitSeries ser = build_series(ld, s);
      auto approx = approximants(ser, ld, p.side, delta_max, params.h, drop);
      if (swapped)
        for (auto& ap : approx) std::swap(ap.e, ap.f);
      fit = fit_lattice(p, approx, params, delta_max);
      if (fit.form) break;
    }
    ++fitted;
    if (!fit.form) continue;
    ++certified_nonempty;
    CHECK(fit.form->height <= height_cap);
    for (auto& x : inpatch) {
      CHECK(fit.form->form.eval(x) == 0);
    }
  }
  CHECK(fitted > 0);
  // most populated patches should certify rather than fall back
  CHECK(certified_nonempty * 10 >= fitted * 9);
}
