#include "trident/pipeline.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <set>
#include <thread>

#include "trident/implicit_series.hpp"
#include "trident/patch_cover.hpp"
#include "trident/upoly.hpp"

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

Int ceil_rat(const Rat& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Int x_coord(const IntegerTriple& x, int i) {
  return i == 0 ? x.x1 : (i == 1 ? x.x2 : x.x3);
}

// ---- signed permutations ----

using Mat3 = std::vector<std::vector<Int>>;  // column-wise: x = M y

IntegerTriple apply_mat(const Mat3& m, const IntegerTriple& y) {
  return {m[0][0] * y.x1 + m[0][1] * y.x2 + m[0][2] * y.x3,
          m[1][0] * y.x1 + m[1][1] * y.x2 + m[1][2] * y.x3,
          m[2][0] * y.x1 + m[2][1] * y.x2 + m[2][2] * y.x3};
}

std::vector<Mat3> signed_permutations() {
  std::vector<Mat3> out;
  int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (auto& p : perms)
    for (int sgn = 0; sgn < 8; ++sgn) {
      Mat3 m(3, std::vector<Int>(3, Int(0)));
      for (int j = 0; j < 3; ++j) m[p[j]][j] = (sgn >> j) & 1 ? -1 : 1;
      out.push_back(m);
    }
  return out;
}

struct BranchGroup {
  TernaryForm form;           // search form for this orientation
  std::vector<Mat3> members;  // x = C y for every branch the group covers
};

// Six (position, sign) orientations making y3 = max|x_i| > 0, grouped by
// identical search form up to sign.
std::vector<BranchGroup> branch_groups(const TernaryForm& F) {
  std::vector<BranchGroup> out;
  std::map<TernaryForm, size_t> seen;
  for (int p = 0; p < 3; ++p) {
    int q1 = p == 0 ? 1 : 0;
    int q2 = p == 2 ? 1 : 2;
    for (int sgn = 0; sgn < 2; ++sgn) {
      Mat3 C(3, std::vector<Int>(3, Int(0)));
      C[q1][0] = 1;
      C[q2][1] = 1;
      C[p][2] = sgn ? -1 : 1;
      TernaryForm Fb = F.substitute(C);
      TernaryForm key = Fb.primitive();
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen[key] = out.size();
        out.push_back({Fb, {C}});
      } else {
        out[it->second].members.push_back(C);
      }
    }
  }
  return out;
}

struct DiagonalForm {
  int k;
  Int e1, e2, e3;
};

std::optional<DiagonalForm> as_diagonal(const TernaryForm& F) {
  int k = F.degree();
  DiagonalForm d{k, F.coeff({k, 0, 0}), F.coeff({0, k, 0}), F.coeff({0, 0, k})};
  if (d.e1 == 0 || d.e2 == 0 || d.e3 == 0) return std::nullopt;
  if ((int)F.coeffs().size() != 3) return std::nullopt;
  return d;
}

}  // namespace

std::vector<Solution> brute_force(const TernaryForm& F, const Int& N, const Int& B,
                                  ValueMode mode, const Config& cfg) {
  if (B > cfg.oracle_ceiling)
    throw ParameterRangeError("brute_force: B exceeds the oracle ceiling");
  std::vector<Solution> out;
  if (B < 1) return out;
  auto diag = as_diagonal(F);
  std::set<IntegerTriple> found;
  if (diag && abs_int(diag->e3) == 1 && B <= Int(1) << 20) {
    unsigned k = (unsigned)diag->k;
    long Bl = B.get_si();
    unsigned nthreads =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), 8);
    std::vector<std::set<IntegerTriple>> parts(nthreads);
    std::vector<std::thread> ts;
    for (unsigned t = 0; t < nthreads; ++t) {
      ts.emplace_back([&, t]() {
        for (long x1 = -Bl + (long)t; x1 <= Bl; x1 += nthreads) {
          Int p1 = diag->e1 * int_pow(Int(x1), k);
          for (long x2 = -Bl; x2 <= Bl; ++x2) {
            Int s = p1 + diag->e2 * int_pow(Int(x2), k);
            Int lo_val = mode == ValueMode::equation ? N : Int(-N);
            Int hi_val = N;
            Int a = (lo_val - s) * diag->e3;
            Int b = (hi_val - s) * diag->e3;
            if (a > b) std::swap(a, b);
            auto test = [&](const Int& x3) {
              IntegerTriple x{Int(x1), Int(x2), x3};
              if (x.is_zero() || x.max_abs() > B) return;
              Int val = F.eval(x);
              bool ok = mode == ValueMode::equation ? val == N : abs_int(val) <= N;
              if (ok) parts[t].insert(x);
            };
            if (k % 2 == 1) {
              // smallest x3 with x3^k >= a
              Int x3 = a >= 0 ? iroot(a, k) : -iroot(-a, k) - 1;
              while (int_pow(x3, k) < a) ++x3;
              for (; int_pow(x3, k) <= b; ++x3) test(x3);
            } else {
              if (b < 0) continue;
              Int lo_pos = a > 0 ? a : Int(0);
              Int r = iroot(lo_pos, k);
              while (int_pow(r, k) < lo_pos) ++r;
              for (; int_pow(r, k) <= b; ++r) {
                test(r);
                if (r != 0) test(-r);
              }
            }
          }
        }
      });
    }
    for (auto& th : ts) th.join();
    for (auto& part : parts) found.insert(part.begin(), part.end());
  } else {
    if (B > 600)
      throw ParameterRangeError("brute_force: non-diagonal oracle limited to B <= 600");
    long Bl = B.get_si();
    for (long x1 = -Bl; x1 <= Bl; ++x1)
      for (long x2 = -Bl; x2 <= Bl; ++x2) {
        MPoly m = F.to_mpoly().eval_var(0, Rat(Int(x1))).eval_var(1, Rat(Int(x2)));
        int dmax = 0;
        for (auto& [e, c] : m.terms()) dmax = std::max(dmax, (int)e.e[2]);
        std::vector<Int> cs(dmax + 1, Int(0));
        for (auto& [e, c] : m.terms()) cs[e.e[2]] = c.get_num();
        std::vector<Int> vals;
        if (mode == ValueMode::equation) {
          vals.push_back(N);
        } else {
          for (Int v = -N; v <= N; ++v) vals.push_back(v);
        }
        for (const Int& val : vals) {
          std::vector<Int> c2 = cs;
          c2[0] -= val;
          UPoly p{std::move(c2)};
          std::vector<Int> roots;
          if (p.is_zero()) {
            for (Int x3 = -B; x3 <= B; ++x3) roots.push_back(x3);
          } else {
            roots = integer_roots_in_range(p, -B, B);
          }
          for (const Int& x3 : roots) {
            IntegerTriple x{Int(x1), Int(x2), x3};
            if (x.is_zero() || x.max_abs() > B) continue;
            Int v2 = F.eval(x);
            bool ok = mode == ValueMode::equation ? v2 == N : abs_int(v2) <= N;
            if (ok) found.insert(x);
          }
        }
      }
  }
  for (auto& x : found) {
    Solution s;
    s.x = x;
    s.value = F.eval(x);
    s.provenance = "oracle";
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SolutionFamily> builtin_families(const TernaryForm& F, const Int& N) {
  std::vector<SolutionFamily> out;
  if (F.degree() != 3) return out;
  TernaryForm base = parse_ternary("x1^3+x2^3-x3^3");
  TernaryForm nbase = base * Int(-1);
  for (const Mat3& g : signed_permutations()) {
    TernaryForm Fg = F.substitute(g);
    Int value;
    if (Fg == base) value = 2;
    else if (Fg == nbase) value = -2;
    else continue;
    if (value != N) continue;
    SolutionFamily fam;
    fam.degree = 3;
    fam.builtin = true;
    fam.transform = g;
    fam.builtin_value = value;
    out.push_back(fam);
  }
  return out;
}

bool in_family(const IntegerTriple& x, const SolutionFamily& fam, const TernaryForm& F,
               const Int& N) {
  (void)F;
  (void)N;
  if (fam.builtin) {
    // x = g phi(t), phi(t) = (6t^3+1, -6t^3+1, 6t^2); g signed permutation,
    // inverse = transpose.
    Mat3 inv(3, std::vector<Int>(3, Int(0)));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) inv[i][j] = fam.transform[j][i];
    IntegerTriple y = apply_mat(inv, x);
    if (y.x3 < 0 || y.x3 % 6 != 0) return false;
    auto t = exact_sqrt(y.x3 / 6);
    if (!t) return false;
    for (int sg = 0; sg < (*t == 0 ? 1 : 2); ++sg) {
      Int tt = sg ? Int(-*t) : *t;
      Int c = 6 * tt * tt * tt;
      if (y.x1 == c + 1 && y.x2 == -c + 1) return true;
    }
    return false;
  }
  const auto& param = fam.cert.param;
  if (fam.cert.component.form.eval(x) != 0) return false;
  // Shared rational root (u : v) of the cross products f_i x_j - f_j x_i.
  UPoly g;
  bool all_zero = true;
  int common_v = INT32_MAX;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      BinaryForm cross = param.f[i] * x_coord(x, j) + param.f[j] * Int(-x_coord(x, i));
      if (cross.is_zero()) continue;
      all_zero = false;
      std::vector<Int> cs(cross.degree() + 1, Int(0));
      for (auto& [e, c] : cross.coeffs()) cs[e[0]] += c;
      UPoly p{std::move(cs)};
      int vmult = cross.degree() - p.degree();
      common_v = std::min(common_v, vmult);
      if (!p.is_zero()) g = upoly_gcd(g, p);
    }
  if (all_zero) return true;
  std::vector<std::pair<Int, Int>> candidates;
  if (!g.is_zero() && g.degree() >= 1)
    for (const Rat& r : rational_roots(g)) {
      Rat rr = r;
      rr.canonicalize();
      candidates.emplace_back(rr.get_num(), rr.get_den());
    }
  if (common_v != INT32_MAX && common_v > 0) candidates.emplace_back(Int(1), Int(0));
  for (auto& [u, v] : candidates) {
    Int f1 = param.f[0].eval(u, v), f2 = param.f[1].eval(u, v),
        f3 = param.f[2].eval(u, v);
    Int a1 = f1 * x.x2 - f2 * x.x1;
    Int a2 = f2 * x.x3 - f3 * x.x2;
    Int a3 = f1 * x.x3 - f3 * x.x1;
    if (a1 == 0 && a2 == 0 && a3 == 0 && !(f1 == 0 && f2 == 0 && f3 == 0)) return true;
  }
  return false;
}

Solution::Class classify(const IntegerTriple& x, const TernaryForm& F, const Int& N,
                         const std::vector<SolutionFamily>& families, int degree_cap,
                         int* out_degree) {
  (void)degree_cap;
  auto diag = as_diagonal(F);
  if (diag) {
    unsigned k = (unsigned)diag->k;
    if (diag->e1 * int_pow(x.x1, k) == N || diag->e2 * int_pow(x.x2, k) == N ||
        diag->e3 * int_pow(x.x3, k) == N)
      return Solution::Class::special;
  }
  int best = INT32_MAX;
  for (auto& fam : families)
    if (fam.degree < best && in_family(x, fam, F, N)) best = fam.degree;
  if (best != INT32_MAX) {
    if (out_degree) *out_degree = best;
    return Solution::Class::parametric;
  }
  return Solution::Class::sporadic;
}

namespace {

// Direct enumeration of a patch window: y3 in the shell, y1/y3 and y2/y3 in
// the patch square; exact evaluation.
void enumerate_patch(const TernaryForm& Fb, const Int& N, const Patch& patch,
                     const Int& lo, const Int& hi, ValueMode mode,
                     std::set<IntegerTriple>& out) {
  for (Int y3 = lo + 1; y3 <= hi; ++y3) {
    Int y1lo = ceil_rat(patch.a * Rat(y3));
    Int y1hi = floor_rat((patch.a + patch.side) * Rat(y3));
    Int y2lo = ceil_rat(patch.b * Rat(y3));
    Int y2hi = floor_rat((patch.b + patch.side) * Rat(y3));
    for (Int y1 = y1lo; y1 <= y1hi; ++y1)
      for (Int y2 = y2lo; y2 <= y2hi; ++y2) {
        IntegerTriple y{y1, y2, y3};
        if (y.is_zero()) continue;
        Int val = Fb.eval(y);
        bool ok = mode == ValueMode::equation ? val == N : abs_int(val) <= N;
        if (ok) out.insert(y);
      }
  }
}

struct LevelOutcome {
  std::set<IntegerTriple> points;  // in branch coordinates
  long patches = 0;
  long aux_forms = 0;
  long fallbacks = 0;
  std::vector<TernaryForm> aux_list;
};

}  // namespace

SolveReport solve_all(const TernaryForm& F, const Int& N, const Int& B,
                      AuxMode aux_mode, SolveMethod method, ValueMode mode,
                      const Config& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  int k = F.degree();
  if (k < 3) throw ParameterRangeError("solve_all: degree must be >= 3");
  if (!assert_nonsingular(F))
    throw ParameterRangeError("solve_all: form is singular");
  if (N < 1) throw ParameterRangeError("solve_all: N must be >= 1");
  SolveReport report;
  report.family_cap = aux_mode == AuxMode::quadratic ? 1 : k / 10;

  // Validate the top-level parameter ranges early (M0 = 1 placeholder; the
  // exact M0 enters per branch below).
  (void)choose_parameters(B, N, k, aux_mode, cfg);

  auto groups = branch_groups(F);
  std::map<TernaryForm, PatchConstants> consts_cache;
  auto consts_of = [&](const TernaryForm& Fb) -> const PatchConstants& {
    auto it = consts_cache.find(Fb);
    if (it == consts_cache.end())
      it = consts_cache.emplace(Fb, compute_constants(Fb)).first;
    return it->second;
  };

  std::set<IntegerTriple> solutions;  // original coordinates
  std::set<TernaryForm> aux_dedup;
  std::map<TernaryForm, std::optional<SpecialCertificate>> special_cache;
  std::vector<SolutionFamily> families = builtin_families(F, N);

  // Oracle points for verify mode (computed once, reused across levels).
  std::vector<Solution> oracle;
  if (method == SolveMethod::verify)
    oracle = brute_force(F, N, B, ValueMode::inequality, cfg);

  const Int B_cut(32);
  for (Int Bl = B; Bl > B_cut; Bl /= 2) {
    Int shell_lo = Bl / 2, shell_hi = Bl;
    for (auto& group : groups) {
      const TernaryForm& Fb = group.form;
      const PatchConstants& consts = consts_of(Fb);
      SolverParams params;
      try {
        params = choose_parameters(Bl, N, k, aux_mode, cfg, consts.M0);
      } catch (const ParameterRangeError&) {
        // Level too small for the cover; enumerate the whole shell directly.
        std::set<IntegerTriple> pts;
        Patch whole;
        whole.a = Rat(-1);
        whole.b = Rat(-1);
        whole.side = Rat(2);
        whole.M = 1;
        enumerate_patch(Fb, N, whole, shell_lo, shell_hi, ValueMode::inequality, pts);
        for (auto& y : pts)
          for (auto& C : group.members) solutions.insert(apply_mat(C, y));
        continue;
      }
      auto patches = good_squares(Fb, consts, params.M);
      report.patch_count += (long)patches.size();
      Rat delta_max = Rat(N) / Rat(int_pow(shell_lo, (unsigned)k));
      // Truncation threshold for the fit path: an order below the
      // certification floor B^-h / heights, far looser than the analytic
      // default M^(-H(H-1)/2) and absorbed exactly into the error budget.
      Rat drop = Rat(1) / Rat(int_pow(Bl, (unsigned)params.h) * (Int(1) << 40));

      std::set<IntegerTriple> branch_points;
      std::vector<TernaryForm> forms_to_solve;
      std::vector<size_t> fallback_patches;

      if (method == SolveMethod::verify) {
        // Assign oracle points (mapped into branch coordinates) to patches.
        std::map<std::pair<long, long>, std::vector<IntegerTriple>> by_cell;
        for (auto& C : group.members) {
          Mat3 inv(3, std::vector<Int>(3, Int(0)));
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) inv[i][j] = C[j][i];
          for (auto& sol : oracle) {
            IntegerTriple y = apply_mat(inv, sol.x);
            if (y.x3 <= shell_lo || y.x3 > shell_hi) continue;
            if (y.x3 != sol.x.max_abs()) continue;
            Rat t1(y.x1, y.x3), t2(y.x2, y.x3);
            t1.canonicalize();
            t2.canonicalize();
            Rat pos1 = (t1 + 1) / (Rat(2) / Rat((long)(2 * consts.M0 * params.M)));
            Rat pos2 = (t2 + 1) / (Rat(2) / Rat((long)(2 * consts.M0 * params.M)));
            long i1 = floor_rat(pos1).get_si(), i2 = floor_rat(pos2).get_si();
            by_cell[{i1, i2}].push_back(y);
          }
        }
        for (size_t pi = 0; pi < patches.size(); ++pi) {
          const Patch& p = patches[pi];
          long i1 = floor_rat((p.a + 1) / p.side).get_si();
          long i2 = floor_rat((p.b + 1) / p.side).get_si();
          std::vector<IntegerTriple> pts;
          // Points on cell boundaries can land in a neighbor: gather the
          // 2x2 neighborhood and filter exactly.
          for (long d1 = -1; d1 <= 1; ++d1)
            for (long d2 = -1; d2 <= 1; ++d2) {
              auto it = by_cell.find({i1 + d1, i2 + d2});
              if (it == by_cell.end()) continue;
              for (auto& y : it->second) {
                Rat t1(y.x1, y.x3), t2(y.x2, y.x3);
                t1.canonicalize();
                t2.canonicalize();
                if (t1 >= p.a && t1 <= p.a + p.side && t2 >= p.b && t2 <= p.b + p.side)
                  pts.push_back(y);
              }
            }
          std::sort(pts.begin(), pts.end());
          pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
          if (pts.empty()) continue;
          auto ns = fit_nullspace(pts, params.h);
          if (ns.status == NullspaceResult::Status::ok) {
            forms_to_solve.push_back(ns.form->form.primitive());
            ++report.aux_form_count;
          } else {
            fallback_patches.push_back(pi);
            ++report.fallback_count;
          }
        }
      } else {
        // Search mode: implicit series + lattice fit per patch.
        std::vector<int> outcome(patches.size(), 0);  // 1 form, 2 fallback
        std::vector<TernaryForm> produced(patches.size());
        unsigned nthreads =
            std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), 8);
        std::vector<std::thread> ts;
        std::atomic<size_t> next{0};
        auto worker = [&]() {
          while (true) {
            size_t pi = next.fetch_add(1);
            if (pi >= patches.size()) break;
            const Patch& p = patches[pi];
            bool swapped = p.grad_index == 2;
            TernaryForm Fl = swapped ? swap_x1x2(Fb) : Fb;
            Rat ca = swapped ? p.b : p.a;
            Rat cb = swapped ? p.a : p.b;
            LatticeFit fit;
            fit.fallback = true;
            try {
              LocalData ld = local_data(Fl, ca, cb, consts.lambda / 6);
              for (int s : {2, 3, 5}) {
                ImplicitSeries series = build_series(ld, s);
                auto approx = approximants(series, ld, p.side, delta_max, params.h, drop);
                if (swapped) {
                  for (auto& ap : approx) std::swap(ap.e, ap.f);
                }
                fit = fit_lattice(p, approx, params, delta_max);
                if (fit.form) break;
              }
            } catch (const ParameterRangeError&) {
              fit.fallback = true;
              fit.form.reset();
            }
            if (fit.form) {
              outcome[pi] = 1;
              produced[pi] = fit.form->form.primitive();
            } else {
              outcome[pi] = 2;
            }
          }
        };
        for (unsigned t = 0; t < nthreads; ++t) ts.emplace_back(worker);
        for (auto& th : ts) th.join();
        for (size_t pi = 0; pi < patches.size(); ++pi) {
          if (outcome[pi] == 1) {
            forms_to_solve.push_back(produced[pi]);
            ++report.aux_form_count;
          } else if (outcome[pi] == 2) {
            fallback_patches.push_back(pi);
            ++report.fallback_count;
          }
        }
      }

      // Fallback patches: direct enumeration.
      for (size_t pi : fallback_patches)
        enumerate_patch(Fb, N, patches[pi], shell_lo, shell_hi, ValueMode::inequality,
                        branch_points);

      // Distinct auxiliary forms -> components -> solve once per component.
      std::set<TernaryForm> distinct(forms_to_solve.begin(), forms_to_solve.end());
      std::set<CurveComponent> comps;
      for (auto& a : distinct) {
        aux_dedup.insert(a);
        for (auto& c : factor_aux(a)) comps.insert(c);
      }
      for (auto& comp : comps) {
        ComponentSolveOptions opt;
        opt.box = Bl;
        opt.shell = std::make_pair(shell_lo, shell_hi);
        // Internal component solving always runs in |F| <= N mode; branch
        // groups merge F with -F and the exact user-mode filter applies at
        // emission in the original coordinates.
        opt.inequality = true;
        opt.height_bound = cfg.rational_point_height;
        // In branch coordinates the shell also forces y3 > 0 via patches;
        // solve_on_component's filters keep only box/shell points, and the
        // exact F condition is re-checked on emission.
        for (auto& y : solve_on_component(comp, Fb, N, opt)) branch_points.insert(y);
        // Special components feed the parametric classification.
        if (comp.kind != CurveComponent::Kind::conjugate_pair) {
          TernaryForm key = comp.form;
          auto it = special_cache.find(key);
          if (it == special_cache.end()) {
            std::optional<SpecialCertificate> cert;
            auto par = parameterize(comp, cfg.rational_point_height);
            if (par) cert = detect_special(comp, *par, Fb);
            it = special_cache.emplace(key, cert).first;
            if (cert) {
              // Map the certificate's component back to original coordinates
              // through each branch member for membership tests.
              for (auto& C : group.members) {
                SolutionFamily fam;
                fam.degree = cert->param.degree;
                fam.builtin = false;
                fam.cert = *cert;
                // Transform the component form and parameterization into
                // original coordinates: x = C y, y on the component.
                Mat3 inv(3, std::vector<Int>(3, Int(0)));
                for (int i2 = 0; i2 < 3; ++i2)
                  for (int j2 = 0; j2 < 3; ++j2) inv[i2][j2] = C[j2][i2];
                fam.cert.component.form = comp.form.substitute(inv);
                std::array<BinaryForm, 3> fx;
                for (int i2 = 0; i2 < 3; ++i2) {
                  BinaryForm acc(cert->param.f[0].degree(), {});
                  for (int j2 = 0; j2 < 3; ++j2)
                    acc = acc + cert->param.f[j2] * C[i2][j2];
                  fx[i2] = acc;
                }
                fam.cert.param.f = fx;
                families.push_back(fam);
              }
            }
          }
        }
      }

      for (auto& y : branch_points) {
        if (!(y.max_abs() > shell_lo && y.max_abs() <= shell_hi)) continue;
        if (y.x3 != y.max_abs()) continue;  // branch owns y3-max points
        for (auto& C : group.members) solutions.insert(apply_mat(C, y));
      }
    }
  }
  // Core box.
  {
    Int Bc = std::min(B, B_cut);
    long Bl = Bc.get_si();
    for (long x1 = -Bl; x1 <= Bl; ++x1)
      for (long x2 = -Bl; x2 <= Bl; ++x2)
        for (long x3 = -Bl; x3 <= Bl; ++x3) {
          IntegerTriple x{Int(x1), Int(x2), Int(x3)};
          if (x.is_zero()) continue;
          Int val = F.eval(x);
          bool ok = mode == ValueMode::equation ? val == N : abs_int(val) <= N;
          if (ok) solutions.insert(x);
        }
  }

  // Final exact filter and classification.
  for (auto& x : solutions) {
    Int val = F.eval(x);
    bool ok = mode == ValueMode::equation ? val == N : abs_int(val) <= N;
    if (!ok || x.max_abs() > B) continue;
    Solution s;
    s.x = x;
    s.value = val;
    int deg = 0;
    s.clazz = classify(x, F, N, families, report.family_cap, &deg);
    s.parametric_degree = deg;
    s.provenance = method == SolveMethod::verify ? "verify" : "search";
    switch (s.clazz) {
      case Solution::Class::special: ++report.n_special; break;
      case Solution::Class::parametric: ++report.n_parametric; break;
      case Solution::Class::sporadic: ++report.n_sporadic; break;
    }
    bool excluded = false;
    for (auto& fam : families)
      if (fam.degree <= report.family_cap && in_family(x, fam, F, N)) {
        excluded = true;
        break;
      }
    if (!excluded) ++report.script_n;
    report.solutions.push_back(std::move(s));
  }
  std::sort(report.solutions.begin(), report.solutions.end());
  report.families = families;
  report.degraded = report.patch_count > 0 &&
                    report.fallback_count * 100 >
                        report.patch_count * cfg.fallback_budget_percent;
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

BenchResult benchmark(const TernaryForm& F, const Int& N, const std::vector<Int>& Bs,
                      const Config& cfg) {
  BenchResult out;
  for (const Int& B : Bs) {
    auto t0 = std::chrono::steady_clock::now();
    SolveReport rep =
        solve_all(F, N, B, AuxMode::quadratic, SolveMethod::search, ValueMode::equation, cfg);
    BenchRow row;
    row.B = B;
    row.patches = rep.patch_count;
    row.aux_forms = rep.aux_form_count;
    row.fallbacks = rep.fallback_count;
    row.solutions = rep.solutions.size();
    row.degraded = rep.degraded;
    row.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.any_degraded = out.any_degraded || row.degraded;
    out.rows.push_back(row);
  }
  // Least-squares slope of log(count) against log(B).
  auto slope = [&](auto field) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (auto& r : out.rows) {
      double c = (double)field(r);
      if (c <= 0) continue;
      double x = std::log(r.B.get_d()), y = std::log(c);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
    if (n < 2) return 0.0;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  out.aux_slope = slope([](const BenchRow& r) { return r.aux_forms; });
  out.patch_slope = slope([](const BenchRow& r) { return r.patches; });
  return out;
}

}  // namespace trident
