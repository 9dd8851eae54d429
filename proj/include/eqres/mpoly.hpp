// Sparse multivariate polynomials over Q(zeta) with up to four variable
// slots, ordered lexicographically, plus a fraction-free resultant used for
// implicitization and primitivity certificates.  The meaning of each slot is
// assigned at the call site (e.g. x=0,y=1 for implicit plane curves).
#pragma once

#include <array>
#include <map>

#include "eqres/upoly.hpp"

namespace eqres {

inline constexpr int kVars = 4;
using ExpKey = std::array<int, kVars>;

class MPoly {
 public:
  using TermMap = std::map<ExpKey, CycloNum>;

  MPoly() = default;
  static MPoly constant(CycloNum c) { return monomial(std::move(c), ExpKey{0, 0, 0, 0}); }
  static MPoly variable(int slot) {
    ExpKey e{0, 0, 0, 0};
    e[slot] = 1;
    return monomial(CycloNum(1), e);
  }
  static MPoly monomial(CycloNum c, const ExpKey& e) {
    MPoly p;
    if (!c.is_zero()) p.t_[e] = std::move(c);
    return p;
  }
  // Lift a univariate polynomial into the given slot.
  static MPoly from_upoly(const CPoly& p, int slot) {
    MPoly r;
    for (long i = 0; i <= p.deg(); ++i) {
      CycloNum c = p.coeff(i);
      if (c.is_zero()) continue;
      ExpKey e{0, 0, 0, 0};
      e[slot] = static_cast<int>(i);
      r.t_[e] = std::move(c);
    }
    return r;
  }

  bool is_zero() const { return t_.empty(); }
  const TermMap& terms() const { return t_; }

  bool uses_slot(int slot) const {
    for (const auto& [e, c] : t_)
      if (e[slot] != 0) return true;
    return false;
  }
  long degree_in(int slot) const {
    long d = 0;
    for (const auto& [e, c] : t_) d = std::max<long>(d, e[slot]);
    return d;
  }
  // Coefficient of slot^k, as a polynomial in the remaining slots.
  MPoly coeff_in(int slot, long k) const {
    MPoly r;
    for (const auto& [e, c] : t_) {
      if (e[slot] != k) continue;
      ExpKey e2 = e;
      e2[slot] = 0;
      r.t_[e2] = c;
    }
    return r;
  }
  CPoly to_upoly(int slot) const {
    std::vector<CycloNum> c(degree_in(slot) + 1, CycloNum());
    for (const auto& [e, coef] : t_) {
      for (int s = 0; s < kVars; ++s)
        check_internal(s == slot || e[s] == 0, "stray variable in univariate view");
      c[e[slot]] = coef;
    }
    return CPoly(std::move(c));
  }

  // Leading term under lex order on the exponent array.
  std::pair<ExpKey, CycloNum> lead_term() const {
    check_internal(!t_.empty(), "leading term of zero polynomial");
    return *t_.rbegin();
  }

  friend MPoly operator+(const MPoly& a, const MPoly& b) {
    MPoly r = a;
    for (const auto& [e, c] : b.t_) r.add_term(e, c);
    return r;
  }
  friend MPoly operator-(const MPoly& a, const MPoly& b) {
    MPoly r = a;
    for (const auto& [e, c] : b.t_) r.add_term(e, -c);
    return r;
  }
  MPoly operator-() const {
    MPoly r;
    for (const auto& [e, c] : t_) r.t_[e] = -c;
    return r;
  }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r;
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) {
        ExpKey e;
        for (int i = 0; i < kVars; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend MPoly operator*(const CycloNum& s, const MPoly& p) {
    MPoly r;
    if (s.is_zero()) return r;
    for (const auto& [e, c] : p.t_) r.t_[e] = s * c;
    return r;
  }

  MPoly pow(long n) const {
    check_internal(n >= 0, "negative polynomial power");
    MPoly r = constant(CycloNum(1));
    for (long i = 0; i < n; ++i) r = r * *this;
    return r;
  }

  // Exact division by lead-term elimination; internal error if not divisible.
  MPoly exact_div(const MPoly& d) const {
    check_internal(!d.is_zero(), "polynomial division by zero");
    MPoly rem = *this;
    MPoly q;
    auto [ed, cd] = d.lead_term();
    while (!rem.is_zero()) {
      auto [er, cr] = rem.lead_term();
      ExpKey e;
      for (int i = 0; i < kVars; ++i) {
        e[i] = er[i] - ed[i];
        check_internal(e[i] >= 0, "multivariate division not exact");
      }
      MPoly piece = monomial(cr / cd, e);
      q = q + piece;
      rem = rem - piece * d;
    }
    return q;
  }

  // Multiply the coefficient of each term by prod_i scale[i]^{e_i}.
  MPoly scale_vars(const std::array<CycloNum, kVars>& scale) const {
    MPoly r;
    for (const auto& [e, c] : t_) {
      CycloNum f = c;
      for (int i = 0; i < kVars; ++i)
        if (e[i] != 0) f = f * scale[i].pow(e[i]);
      r.add_term(e, f);
    }
    return r;
  }

  MPoly subst_const(int slot, const CycloNum& val) const {
    MPoly r;
    for (const auto& [e, c] : t_) {
      ExpKey e2 = e;
      e2[slot] = 0;
      r.add_term(e2, e[slot] == 0 ? c : c * val.pow(e[slot]));
    }
    return r;
  }

  // Evaluate with slots 0 and 1 set to rational functions of t (the other
  // slots must be unused).
  RatFunc eval_ratfunc(const RatFunc& x, const RatFunc& y) const {
    check_internal(!uses_slot(2) && !uses_slot(3), "unexpected extra variables");
    RatFunc r;
    for (const auto& [e, c] : t_) r = r + c * (x.pow(e[0]) * y.pow(e[1]));
    return r;
  }

  // Substitute polynomials for slots 0 and 1; *this must use only those two.
  MPoly subst_xy(const MPoly& x, const MPoly& y) const {
    MPoly r;
    for (const auto& [e, c] : t_) {
      check_internal(e[2] == 0 && e[3] == 0, "unexpected extra variables");
      r = r + constant(c) * x.pow(e[0]) * y.pow(e[1]);
    }
    return r;
  }

  // Canonical scaling: leading lex coefficient becomes 1.
  MPoly normalized() const {
    if (is_zero()) return *this;
    CycloNum inv = CycloNum(1) / lead_term().second;
    return inv * *this;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    if (a.t_.size() != b.t_.size()) return false;
    auto ia = a.t_.begin();
    auto ib = b.t_.begin();
    for (; ia != a.t_.end(); ++ia, ++ib) {
      if (ia->first != ib->first || !(ia->second == ib->second)) return false;
    }
    return true;
  }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  std::string to_string(const std::array<std::string, kVars>& names = {"x", "y", "c",
                                                                       "t"}) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Render highest terms first for readability.
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      if (!first) os << " + ";
      os << "(" << it->second.to_string() << ")";
      for (int i = 0; i < kVars; ++i) {
        if (it->first[i] == 0) continue;
        os << "*" << names[i];
        if (it->first[i] > 1) os << "^" << it->first[i];
      }
      first = false;
    }
    return os.str();
  }

 private:
  void add_term(const ExpKey& e, const CycloNum& c) {
    if (c.is_zero()) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
      t_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  TermMap t_;
};

// Resultant of f and g with respect to the given variable slot, computed as
// the Bareiss fraction-free determinant of the Sylvester matrix.  Entries are
// polynomials in the remaining slots.
inline MPoly resultant_wrt(const MPoly& f, const MPoly& g, int slot) {
  if (f.is_zero() || g.is_zero()) return MPoly();
  long m = f.degree_in(slot);
  long n = g.degree_in(slot);
  if (m == 0 && n == 0) return MPoly::constant(CycloNum(1));
  if (m == 0) return f.pow(n);
  if (n == 0) return g.pow(m);

  long size = m + n;
  std::vector<std::vector<MPoly>> M(size, std::vector<MPoly>(size));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j <= m; ++j) M[i][i + j] = f.coeff_in(slot, m - j);
  for (long i = 0; i < m; ++i)
    for (long j = 0; j <= n; ++j) M[n + i][i + j] = g.coeff_in(slot, n - j);

  int sign = 1;
  MPoly prev = MPoly::constant(CycloNum(1));
  for (long k = 0; k + 1 < size; ++k) {
    if (M[k][k].is_zero()) {
      long swap_row = -1;
      for (long i = k + 1; i < size; ++i)
        if (!M[i][k].is_zero()) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return MPoly();  // singular: resultant vanishes
      std::swap(M[k], M[swap_row]);
      sign = -sign;
    }
    for (long i = k + 1; i < size; ++i) {
      for (long j = k + 1; j < size; ++j) {
        MPoly num = M[k][k] * M[i][j] - M[i][k] * M[k][j];
        M[i][j] = num.exact_div(prev);
      }
      M[i][k] = MPoly();
    }
    prev = M[k][k];
  }
  MPoly det = M[size - 1][size - 1];
  return sign == 1 ? det : -det;
}

}  // namespace eqres
