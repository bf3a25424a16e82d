#include "trident/forms.hpp"

#include <cassert>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "trident/upoly.hpp"

namespace trident {

TernaryForm::TernaryForm(int degree, std::map<Exp, Int> coeffs)
    : degree_(degree), coeffs_(std::move(coeffs)) {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (it->second == 0) {
      it = coeffs_.erase(it);
      continue;
    }
    const Exp& e = it->first;
    if (e[0] < 0 || e[1] < 0 || e[2] < 0 || e[0] + e[1] + e[2] != degree)
      throw std::invalid_argument("TernaryForm: non-homogeneous exponent triple");
    ++it;
  }
}

Int TernaryForm::eval(const IntegerTriple& x) const {
  Int out(0);
  for (auto& [e, c] : coeffs_) {
    Int t = c;
    for (int i = 0; i < e[0]; ++i) t *= x.x1;
    for (int i = 0; i < e[1]; ++i) t *= x.x2;
    for (int i = 0; i < e[2]; ++i) t *= x.x3;
    out += t;
  }
  return out;
}

Rat TernaryForm::eval_rat(const Rat& x1, const Rat& x2, const Rat& x3) const {
  Rat out(0);
  for (auto& [e, c] : coeffs_) {
    Rat t(c);
    for (int i = 0; i < e[0]; ++i) t *= x1;
    for (int i = 0; i < e[1]; ++i) t *= x2;
    for (int i = 0; i < e[2]; ++i) t *= x3;
    out += t;
  }
  return out;
}

TernaryForm TernaryForm::partial(int var) const {
  std::map<Exp, Int> out;
  for (auto& [e, c] : coeffs_) {
    if (e[var] == 0) continue;
    Exp d = e;
    d[var] -= 1;
    out[d] += c * e[var];
  }
  return TernaryForm(degree_ - 1, std::move(out));
}

Interval TernaryForm::interval_at(const Interval& t1, const Interval& t2) const {
  Interval out = Interval::point(Rat(0));
  for (auto& [e, c] : coeffs_) {
    Interval t = t1.pow(e[0]) * t2.pow(e[1]);
    out = out + t * Rat(c);
  }
  return out;
}

Int TernaryForm::height() const {
  Int m(0);
  for (auto& [e, c] : coeffs_) m = std::max(m, abs_int(c));
  return m;
}

Int TernaryForm::abs_coeff_sum() const {
  Int s(0);
  for (auto& [e, c] : coeffs_) s += abs_int(c);
  return s;
}

TernaryForm TernaryForm::operator*(const Int& s) const {
  std::map<Exp, Int> out;
  if (s != 0)
    for (auto& [e, c] : coeffs_) out[e] = c * s;
  return TernaryForm(degree_, std::move(out));
}

TernaryForm TernaryForm::operator+(const TernaryForm& o) const {
  assert(coeffs_.empty() || o.coeffs_.empty() || degree_ == o.degree_);
  std::map<Exp, Int> out = coeffs_;
  for (auto& [e, c] : o.coeffs_) {
    out[e] += c;
    if (out[e] == 0) out.erase(e);
  }
  return TernaryForm(coeffs_.empty() ? o.degree_ : degree_, std::move(out));
}

TernaryForm TernaryForm::substitute(const std::vector<std::vector<Int>>& cols) const {
  // x_i -> sum_j cols[i][j] * y_j  (cols given column-wise: column j is the
  // image basis vector).  Build via MPoly arithmetic.
  MPoly lin[3];
  for (int i = 0; i < 3; ++i) {
    MPoly p;
    for (int j = 0; j < 3; ++j) {
      Expo x;
      x.e[j] = 1;
      p.add_term(x, Rat(cols[i][j]));
    }
    lin[i] = p;
  }
  MPoly acc;
  for (auto& [e, c] : coeffs_) {
    MPoly t{Rat(c)};
    for (int i = 0; i < 3; ++i)
      if (e[i] > 0) t = t * lin[i].pow(e[i]);
    acc = acc + t;
  }
  std::map<Exp, Int> out;
  for (auto& [x, c] : acc.terms()) {
    assert(c.get_den() == 1);
    out[{(int)x.e[0], (int)x.e[1], (int)x.e[2]}] = c.get_num();
  }
  return TernaryForm(degree_, std::move(out));
}

TernaryForm TernaryForm::primitive() const {
  if (coeffs_.empty()) return *this;
  Int g(0);
  for (auto& [e, c] : coeffs_) g = gcd_int(g, c);
  std::map<Exp, Int> out;
  for (auto& [e, c] : coeffs_) out[e] = c / g;
  // lex-largest exponent's coefficient positive
  if (out.rbegin()->second < 0)
    for (auto& [e, c] : out) c = -c;
  return TernaryForm(degree_, std::move(out));
}

MPoly TernaryForm::to_mpoly() const {
  MPoly p;
  for (auto& [e, c] : coeffs_) {
    Expo x;
    x.e[0] = e[0];
    x.e[1] = e[1];
    x.e[2] = e[2];
    p.add_term(x, Rat(c));
  }
  return p;
}

std::string TernaryForm::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    const Exp& e = it->first;
    const Int& c = it->second;
    Int a = abs_int(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? "-" : "+");
    }
    bool has_var = e[0] + e[1] + e[2] > 0;
    if (a != 1 || !has_var) os << a.get_str();
    for (int i = 0; i < 3; ++i) {
      if (e[i] == 0) continue;
      os << "x" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

BinaryForm::BinaryForm(int degree, std::map<Exp, Int> coeffs)
    : degree_(degree), coeffs_(std::move(coeffs)) {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (it->second == 0) {
      it = coeffs_.erase(it);
      continue;
    }
    const Exp& e = it->first;
    if (e[0] < 0 || e[1] < 0 || e[0] + e[1] != degree)
      throw std::invalid_argument("BinaryForm: non-homogeneous exponent pair");
    ++it;
  }
}

Int BinaryForm::eval(const Int& u, const Int& v) const {
  Int out(0);
  for (auto& [e, c] : coeffs_) {
    Int t = c;
    for (int i = 0; i < e[0]; ++i) t *= u;
    for (int i = 0; i < e[1]; ++i) t *= v;
    out += t;
  }
  return out;
}

Int BinaryForm::height() const {
  Int m(0);
  for (auto& [e, c] : coeffs_) m = std::max(m, abs_int(c));
  return m;
}

BinaryForm BinaryForm::operator+(const BinaryForm& o) const {
  assert(coeffs_.empty() || o.coeffs_.empty() || degree_ == o.degree_);
  std::map<Exp, Int> out = coeffs_;
  for (auto& [e, c] : o.coeffs_) {
    out[e] += c;
    if (out[e] == 0) out.erase(e);
  }
  return BinaryForm(coeffs_.empty() ? o.degree_ : degree_, std::move(out));
}

BinaryForm BinaryForm::operator*(const Int& s) const {
  std::map<Exp, Int> out;
  if (s != 0)
    for (auto& [e, c] : coeffs_) out[e] = c * s;
  return BinaryForm(degree_, std::move(out));
}

BinaryForm BinaryForm::primitive() const {
  if (coeffs_.empty()) return *this;
  Int g(0);
  for (auto& [e, c] : coeffs_) g = gcd_int(g, c);
  std::map<Exp, Int> out;
  for (auto& [e, c] : coeffs_) out[e] = c / g;
  if (out.rbegin()->second < 0)
    for (auto& [e, c] : out) c = -c;
  return BinaryForm(degree_, std::move(out));
}

std::string BinaryForm::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    auto& e = it->first;
    auto& c = it->second;
    Int a = abs_int(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? "-" : "+");
    }
    bool has_var = e[0] + e[1] > 0;
    if (a != 1 || !has_var) os << a.get_str();
    if (e[0] > 0) {
      os << "u";
      if (e[0] > 1) os << "^" << e[0];
    }
    if (e[1] > 0) {
      os << "v";
      if (e[1] > 1) os << "^" << e[1];
    }
  }
  return os.str();
}

Int eval_form(const TernaryForm& f, const IntegerTriple& x) { return f.eval(x); }

std::array<Rat, 3> gradient(const TernaryForm& f, const Rat& t1, const Rat& t2) {
  return {f.partial(0).eval_rat(t1, t2, 1), f.partial(1).eval_rat(t1, t2, 1),
          f.partial(2).eval_rat(t1, t2, 1)};
}

// ---------------- nonsingularity ----------------

namespace {

// gcd of a set of binary forms in (x1, x2) given as MPoly; nonzero result is
// meaningful only up to scalars.  Returns the degree of the gcd.
int binary_gcd_degree(const std::vector<MPoly>& forms) {
  // Dehomogenize x1 = z, x2 = 1 and take univariate gcds over Z; account for
  // the common power of x2 separately (common root at (1:0)).
  UPoly g;
  int common_x2 = INT32_MAX;
  bool all_zero = true;
  for (auto& f : forms) {
    if (f.is_zero()) continue;
    all_zero = false;
    int min_e1 = INT32_MAX;  // power of x2 dividing f equals min over terms of e(x2)
    int deg = 0;
    for (auto& [x, c] : f.terms()) {
      min_e1 = std::min(min_e1, (int)x.e[1]);
      deg = std::max(deg, (int)(x.e[0] + x.e[1]));
    }
    common_x2 = std::min(common_x2, min_e1);
    // univariate in z: coefficient of z^e1
    std::vector<Int> cs(deg + 1, Int(0));
    Int den(1);
    for (auto& [x, c] : f.terms()) den = lcm_int(den, c.get_den());
    for (auto& [x, c] : f.terms()) {
      Rat t = c * Rat(den);
      t.canonicalize();
      cs[x.e[0]] += t.get_num();
    }
    UPoly u{std::move(cs)};
    g = upoly_gcd(g, u);
    if (g.degree() == 0 && common_x2 == 0) return 0;
  }
  if (all_zero) return -1;  // everything vanished: whole line of zeros
  return g.degree() + (common_x2 == INT32_MAX ? 0 : common_x2);
}

}  // namespace

bool assert_nonsingular(const TernaryForm& f) {
  int k = f.degree();
  if (k < 2 || f.is_zero()) return false;
  TernaryForm p1 = f.partial(0), p2 = f.partial(1), p3 = f.partial(2);
  // A form missing some variable is singular at the corresponding unit point.
  if (p1.is_zero() || p2.is_zero() || p3.is_zero()) return false;

  // Shear (x1, x2, x3) -> (x1 + a x3, x2 + b x3, x3) so every sheared partial
  // has nonzero coefficient on x3^(k-1); i.e. F1, F2 and F itself are nonzero
  // at (a, b, 1).
  int A = -1, Bv = -1;
  for (int a = 0; a <= 3 * k + 1 && A < 0; ++a)
    for (int b = 0; b <= 3 * k + 1; ++b) {
      if (p1.eval_rat(a, b, 1) != 0 && p2.eval_rat(a, b, 1) != 0 &&
          f.eval_rat(a, b, 1) != 0) {
        A = a;
        Bv = b;
        break;
      }
    }
  assert(A >= 0 && "nonsingular shear search failed");
  std::vector<std::vector<Int>> cols = {{Int(1), Int(0), Int(A)},
                                        {Int(0), Int(1), Int(Bv)},
                                        {Int(0), Int(0), Int(1)}};
  TernaryForm g = f.substitute(cols);
  MPoly g1 = g.partial(0).to_mpoly();
  MPoly g2 = g.partial(1).to_mpoly();
  MPoly g3 = g.partial(2).to_mpoly();
  // Pencil g2 + t g3 with t in slot 3.
  MPoly pencil = g2 + g3 * MPoly::var(3);
  MPoly W = mpoly_resultant(g1, pencil, 2, k - 1, k - 1);
  // W is a polynomial in t (slot 3) whose coefficients are binary forms in
  // (x1, x2).  The partials share a projective zero iff all the coefficient
  // forms share a root, i.e. their gcd has positive degree (or all vanish).
  std::vector<MPoly> coeff_forms;
  unsigned maxt = 0;
  for (auto& [x, c] : W.terms()) maxt = std::max(maxt, (unsigned)x.e[3]);
  for (unsigned j = 0; j <= maxt; ++j) {
    MPoly cj;
    for (auto& [x, c] : W.terms()) {
      if (x.e[3] != j) continue;
      Expo y = x;
      y.e[3] = 0;
      cj.add_term(y, c);
    }
    coeff_forms.push_back(cj);
  }
  if (W.is_zero()) return false;  // g1 shares a factor with the pencil
  int d = binary_gcd_degree(coeff_forms);
  return d == 0;
}

TernaryForm parse_ternary(const std::string& text) {
  std::map<TernaryForm::Exp, Int> coeffs;
  size_t i = 0;
  auto skipws = [&]() {
    while (i < text.size() && std::isspace((unsigned char)text[i])) ++i;
  };
  int degree = -1;
  skipws();
  bool first = true;
  while (i < text.size()) {
    int sign = 1;
    skipws();
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw std::invalid_argument("form parse: expected '+' or '-'");
    }
    first = false;
    skipws();
    Int c(1);
    bool has_digits = false;
    std::string num;
    while (i < text.size() && std::isdigit((unsigned char)text[i])) {
      num += text[i++];
      has_digits = true;
    }
    if (has_digits) c = Int(num);
    TernaryForm::Exp e{0, 0, 0};
    bool has_var = false;
    while (i < text.size()) {
      skipws();
      if (i >= text.size() || (text[i] != 'x' && text[i] != 'X')) break;
      ++i;
      if (i >= text.size() || text[i] < '1' || text[i] > '3')
        throw std::invalid_argument("form parse: expected variable index 1..3");
      int var = text[i] - '1';
      ++i;
      int pow = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        std::string p;
        while (i < text.size() && std::isdigit((unsigned char)text[i])) p += text[i++];
        if (p.empty()) throw std::invalid_argument("form parse: exponent expected");
        pow = std::stoi(p);
      }
      e[var] += pow;
      has_var = true;
    }
    if (!has_digits && !has_var)
      throw std::invalid_argument("form parse: empty monomial");
    int d = e[0] + e[1] + e[2];
    if (degree < 0) degree = d;
    if (d != degree)
      throw std::invalid_argument("form parse: non-homogeneous input");
    coeffs[e] += c * sign;
    skipws();
  }
  if (degree < 0) throw std::invalid_argument("form parse: empty input");
  TernaryForm out(degree, std::move(coeffs));
  if (out.is_zero()) throw std::invalid_argument("form parse: zero form");
  return out;
}

std::vector<TernaryForm::Exp> monomials_of_degree(int h) {
  std::vector<TernaryForm::Exp> out;
  for (int a = h; a >= 0; --a)
    for (int b = h - a; b >= 0; --b) out.push_back({a, b, h - a - b});
  return out;
}

}  // namespace trident
