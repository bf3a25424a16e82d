#include "trident/mpoly.hpp"

#include <functional>
#include <sstream>
#include <vector>

namespace trident {

MPoly MPoly::subst(int i, const MPoly& p) const {
  // Group by the exponent of variable i, reuse powers of p.
  std::map<unsigned, MPoly> by_pow;
  for (auto& [x, c] : terms_) {
    Expo rest = x;
    unsigned k = rest.e[i];
    rest.e[i] = 0;
    by_pow[k].add_term(rest, c);
  }
  MPoly out;
  MPoly pk(Rat(1));
  unsigned cur = 0;
  for (auto& [k, q] : by_pow) {
    while (cur < k) {
      pk = pk * p;
      ++cur;
    }
    out = out + q * pk;
  }
  return out;
}

MPoly MPoly::eval_var(int i, const Rat& val) const {
  MPoly out;
  // Powers of val cached by exponent.
  std::map<unsigned, Rat> pows{{0, Rat(1)}};
  for (auto& [x, c] : terms_) {
    unsigned k = x.e[i];
    auto it = pows.find(k);
    if (it == pows.end()) {
      Rat p = pows.rbegin()->second;
      for (unsigned j = pows.rbegin()->first; j < k; ++j) p *= val;
      it = pows.emplace(k, p).first;
    }
    Expo rest = x;
    rest.e[i] = 0;
    out.add_term(rest, c * it->second);
  }
  return out;
}

Rat MPoly::eval(const std::array<Rat, 4>& vals) const {
  Rat out(0);
  for (auto& [x, c] : terms_) {
    Rat t = c;
    for (int i = 0; i < 4; ++i)
      for (unsigned j = 0; j < x.e[i]; ++j) t *= vals[i];
    out += t;
  }
  return out;
}

MPoly MPoly::derivative(int i) const {
  MPoly out;
  for (auto& [x, c] : terms_) {
    if (x.e[i] == 0) continue;
    Expo y = x;
    y.e[i] -= 1;
    out.add_term(y, c * x.e[i]);
  }
  return out;
}

MPoly MPoly::divide_by_var(int i) const {
  MPoly out;
  for (auto& [x, c] : terms_) {
    assert(x.e[i] >= 1 && "divide_by_var: term without the variable");
    Expo y = x;
    y.e[i] -= 1;
    out.add_term(y, c);
  }
  return out;
}

MPoly MPoly::homogeneous_part(unsigned d) const {
  MPoly out;
  for (auto& [x, c] : terms_)
    if (x.total() == d) out.add_term(x, c);
  return out;
}

Rat MPoly::sup_bound(const std::array<Rat, 4>& sizes) const {
  Rat out(0);
  for (auto& [x, c] : terms_) {
    Rat t = abs_rat(c);
    for (int i = 0; i < 4; ++i)
      for (unsigned j = 0; j < x.e[i]; ++j) t *= sizes[i];
    out += t;
  }
  return out;
}

std::string MPoly::str(const std::array<const char*, 4>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first, then lex, for readable output.
  std::vector<std::pair<Expo, Rat>> ts(terms_.begin(), terms_.end());
  std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
    if (a.first.total() != b.first.total()) return a.first.total() > b.first.total();
    return b.first < a.first;
  });
  for (auto& [x, c] : ts) {
    Rat a = abs_rat(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool has_var = x.total() > 0;
    if (!has_var || a != 1) {
      os << a.get_str();
      if (has_var) os << "*";
    }
    bool firstv = true;
    for (int i = 0; i < 4; ++i) {
      if (x.e[i] == 0) continue;
      if (!firstv) os << "*";
      firstv = false;
      os << names[i];
      if (x.e[i] > 1) os << "^" << x.e[i];
    }
  }
  return os.str();
}

MPoly mpoly_det(const std::vector<std::vector<MPoly>>& m) {
  size_t n = m.size();
  if (n == 0) return MPoly(Rat(1));
  std::map<uint32_t, MPoly> memo;
  std::function<const MPoly&(uint32_t)> rec = [&](uint32_t mask) -> const MPoly& {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    MPoly out;
    int cnt = __builtin_popcount(mask);
    size_t row = n - cnt;
    int sign = 1;
    for (size_t c = 0; c < n; ++c) {
      if (!(mask & (1u << c))) continue;
      if (!m[row][c].is_zero()) {
        if (cnt == 1) {
          out = out + m[row][c] * Rat(sign);
        } else {
          out = out + m[row][c] * rec(mask & ~(1u << c)) * Rat(sign);
        }
      }
      sign = -sign;
    }
    return memo.emplace(mask, std::move(out)).first->second;
  };
  return rec(n >= 32 ? ~0u : ((1u << n) - 1));
}

MPoly mpoly_resultant(const MPoly& g, const MPoly& h, int var, int dg, int dh) {
  auto coeff_of = [var](const MPoly& p, int j) {
    MPoly out;
    for (auto& [x, c] : p.terms()) {
      if ((int)x.e[var] != j) continue;
      Expo y = x;
      y.e[var] = 0;
      out.add_term(y, c);
    }
    return out;
  };
  int n = dg + dh;
  std::vector<std::vector<MPoly>> m(n, std::vector<MPoly>(n));
  for (int i = 0; i < dh; ++i)
    for (int j = 0; j <= dg; ++j) m[i][i + j] = coeff_of(g, dg - j);
  for (int i = 0; i < dg; ++i)
    for (int j = 0; j <= dh; ++j) m[dh + i][i + j] = coeff_of(h, dh - j);
  return mpoly_det(m);
}

}  // namespace trident
