#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "trident/forms.hpp"
#include "trident/patch_cover.hpp"

using namespace trident;

TEST_CASE("constants for the cubic difference form") {
  TernaryForm f = parse_ternary("x1^3+x2^3-x3^3");
  PatchConstants c = compute_constants(f);
  CHECK(c.lambda == 3);
  CHECK(c.M0 == 12);
}

TEST_CASE("constants for the positive quartic") {
  TernaryForm f = parse_ternary("x1^4+x2^4+x3^4");
  PatchConstants c = compute_constants(f);
  CHECK(c.lambda == 4);
}

TEST_CASE("lambda is a lower bound for the gradient sup at sampled points") {
  TernaryForm f = parse_ternary("x1^3+x2^3+x3^3");
  PatchConstants c = compute_constants(f);
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(-100, 100);
  for (int i = 0; i < 10000; ++i) {
    Rat t1(d(rng), 100), t2(d(rng), 100);
    t1.canonicalize();
    t2.canonicalize();
    auto g = gradient(f, t1, t2);
    Rat m = std::max(abs_rat(g[0]), std::max(abs_rat(g[1]), abs_rat(g[2])));
    CHECK(c.lambda <= m);
  }
}

TEST_CASE("positive definite quartic has no good squares") {
  TernaryForm f = parse_ternary("x1^4+x2^4+x3^4");
  PatchConstants c = compute_constants(f);
  for (long M : {1L, 4L, 16L}) CHECK(good_squares(f, c, M).empty());
}

TEST_CASE("good squares form a superset of the sampled near-zero cells") {
  TernaryForm f = parse_ternary("x1^3+x2^3-x3^3");
  PatchConstants c = compute_constants(f);
  long M = 10;
  auto patches = good_squares(f, c, M);
  CHECK(!patches.empty());
  CHECK((long)patches.size() <= 60 * M);
  Rat side = Rat(1, (unsigned long)(c.M0 * M));
  std::set<std::pair<long, long>> returned;
  for (auto& p : patches) {
    Rat idx1 = (p.a + 1) / side, idx2 = (p.b + 1) / side;
    REQUIRE(idx1.get_den() == 1);
    REQUIRE(idx2.get_den() == 1);
    returned.insert({idx1.get_num().get_si(), idx2.get_num().get_si()});
  }
  long n = 2 * c.M0 * M;
  const int fine = 3;
  for (long i = 0; i < n * fine; ++i)
    for (long j = 0; j < n * fine; ++j) {
      Rat t1 = Rat(-1) + side * Rat(i) / fine + side / (2 * fine);
      Rat t2 = Rat(-1) + side * Rat(j) / fine + side / (2 * fine);
      Rat v = f.eval_rat(t1, t2, 1);
      if (abs_rat(v) <= side) CHECK(returned.count({i / fine, j / fine}) == 1);
    }
}

TEST_CASE("count grows linearly in M") {
  TernaryForm f = parse_ternary("x1^3+x2^3-x3^3");
  PatchConstants c = compute_constants(f);
  double lo = 1e18, hi = 0;
  for (long M : {16L, 32L, 64L, 128L, 256L}) {
    auto patches = good_squares(f, c, M);
    double ratio = (double)patches.size() / (double)M;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK(hi < 2 * lo);
}

TEST_CASE("gradient certificate holds at random points of each patch") {
  TernaryForm f = parse_ternary("x1^3+x2^3-x3^3");
  PatchConstants c = compute_constants(f);
  auto patches = good_squares(f, c, 8);
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> d(0, 100);
  Rat gradmin = c.lambda / 6;
  for (auto& p : patches) {
    for (int i = 0; i < 100; ++i) {
      Rat t1 = p.a + p.side * Rat(d(rng), 100);
      Rat t2 = p.b + p.side * Rat(d(rng), 100);
      t1.canonicalize();
      t2.canonicalize();
      auto g = gradient(f, t1, t2);
      Rat val = p.grad_index == 1 ? g[0] : g[1];
      CHECK(abs_rat(val) >= gradmin);
      CHECK((val > 0 ? 1 : -1) == p.grad_sign);
    }
  }
}

TEST_CASE("solution directions are covered when the parameter condition holds") {
  TernaryForm f = parse_ternary("x1^3+x2^3-x3^3");
  PatchConstants c = compute_constants(f);
  const long B = 64;
  const long N = 1;
  long M = 4;
  REQUIRE(Int(M) * N * c.M0 <= Int(32) * 32 * 32);
  auto patches = good_squares(f, c, M);
  auto inside = [&](const Rat& t1, const Rat& t2) {
    for (auto& p : patches)
      if (t1 >= p.a && t1 <= p.a + p.side && t2 >= p.b && t2 <= p.b + p.side)
        return true;
    return false;
  };
  int covered = 0;
  for (long x1 = -B; x1 <= B; ++x1)
    for (long x2 = -B; x2 <= B; ++x2)
      for (long x3 = B / 2 + 1; x3 <= B; ++x3) {
        if (std::abs(x1) > x3 || std::abs(x2) > x3) continue;
        Int v = f.eval({Int(x1), Int(x2), Int(x3)});
        if (abs_int(v) > N) continue;
        Rat t1(x1, x3), t2(x2, x3);
        t1.canonicalize();
        t2.canonicalize();
        CHECK(inside(t1, t2));
        ++covered;
      }
  CHECK(covered > 0);
}
