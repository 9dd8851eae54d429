// Dense univariate polynomials over an exact field, plus rational functions
// of one variable (used for branch parametrizations carried through chart
// transitions, where denominators nonvanishing at t=0 appear).
#pragma once

#include <limits>
#include <utility>

#include "eqres/cyclotomic.hpp"

namespace eqres {

// Order sentinel for the zero polynomial / zero function.
inline constexpr long kInfOrd = std::numeric_limits<long>::max() / 4;

template <typename K>
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<K> c) : c_(std::move(c)) { trim(); }
  static UPoly constant(K v) { return UPoly(std::vector<K>{std::move(v)}); }
  static UPoly monomial(K v, long e) {
    std::vector<K> c(e + 1, K{});
    c[e] = std::move(v);
    return UPoly(std::move(c));
  }

  long deg() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  long ord() const {
    for (size_t i = 0; i < c_.size(); ++i)
      if (!(c_[i] == K{})) return static_cast<long>(i);
    return kInfOrd;
  }
  K coeff(long i) const {
    if (i < 0 || i > deg()) return K{};
    return c_[i];
  }
  const std::vector<K>& coeffs() const { return c_; }
  K lead() const {
    check_internal(!c_.empty(), "leading coefficient of zero polynomial");
    return c_.back();
  }

  K eval(const K& x) const {
    K r{};
    for (long i = deg(); i >= 0; --i) r = r * x + c_[i];
    return r;
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<K> c(std::max(a.c_.size(), b.c_.size()), K{});
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return UPoly(std::move(c));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<K> c(std::max(a.c_.size(), b.c_.size()), K{});
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return UPoly(std::move(c));
  }
  UPoly operator-() const {
    std::vector<K> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
    return UPoly(std::move(c));
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<K> c(a.c_.size() + b.c_.size() - 1, K{});
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == K{}) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(c));
  }
  friend UPoly operator*(const K& s, const UPoly& p) { return UPoly::constant(s) * p; }

  // p(c * t): multiply coefficient i by c^i.
  UPoly scale_arg(const K& s) const {
    std::vector<K> c = c_;
    K p = K(1);
    for (size_t i = 0; i < c.size(); ++i) {
      c[i] = c[i] * p;
      p = p * s;
    }
    return UPoly(std::move(c));
  }

  UPoly derivative() const {
    if (deg() < 1) return UPoly();
    std::vector<K> c(deg());
    for (long i = 1; i <= deg(); ++i) c[i - 1] = c_[i] * K(i);
    return UPoly(std::move(c));
  }

  std::pair<UPoly, UPoly> divmod(const UPoly& b) const {
    check_internal(!b.is_zero(), "polynomial division by zero");
    UPoly rem = *this;
    std::vector<K> q(std::max<long>(deg() - b.deg() + 1, 0), K{});
    while (!rem.is_zero() && rem.deg() >= b.deg()) {
      long k = rem.deg() - b.deg();
      K c = rem.lead() / b.lead();
      q[k] = c;
      std::vector<K> sub(rem.c_);
      for (long i = 0; i <= b.deg(); ++i) sub[k + i] = sub[k + i] - c * b.c_[i];
      rem = UPoly(std::move(sub));
    }
    return {UPoly(std::move(q)), rem};
  }
  UPoly exact_div(const UPoly& b) const {
    auto [q, r] = divmod(b);
    check_internal(r.is_zero(), "polynomial division not exact");
    return q;
  }

  UPoly monic() const {
    if (is_zero()) return *this;
    K inv = K(1) / lead();
    std::vector<K> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] * inv;
    return UPoly(std::move(c));
  }

  static UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
      UPoly r = a.divmod(b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  // Divide out t^k (requires ord >= k).
  UPoly shift_down(long k) const {
    if (is_zero()) return *this;
    check_internal(ord() >= k, "t-power cancellation below order");
    return UPoly(std::vector<K>(c_.begin() + k, c_.end()));
  }
  UPoly shift_up(long k) const {
    if (is_zero()) return *this;
    std::vector<K> c(c_.size() + k, K{});
    std::copy(c_.begin(), c_.end(), c.begin() + k);
    return UPoly(std::move(c));
  }

  friend bool operator==(const UPoly& a, const UPoly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  std::string to_string(const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = 0; i <= deg(); ++i) {
      if (c_[i] == K{}) continue;
      if (!first) os << " + ";
      os << "(" << coeff_str(c_[i]) << ")";
      if (i >= 1) {
        os << "*" << var;
        if (i > 1) os << "^" << i;
      }
      first = false;
    }
    return os.str();
  }

 private:
  static std::string coeff_str(const Rational& q) { return rational_to_string(q); }
  static std::string coeff_str(const CycloNum& z) { return z.to_string(); }

  void trim() {
    while (!c_.empty() && c_.back() == K{}) c_.pop_back();
  }

  std::vector<K> c_;
};

using QPoly = UPoly<Rational>;
using CPoly = UPoly<CycloNum>;

// Rational function in one variable over Q(zeta).  Kept reduced: common
// t-powers and the polynomial gcd of numerator and denominator are divided
// out, and the denominator is monic.
class RatFunc {
 public:
  RatFunc() : num_(), den_(CPoly::constant(CycloNum(1))) {}
  explicit RatFunc(CPoly num) : num_(std::move(num)), den_(CPoly::constant(CycloNum(1))) {}
  RatFunc(CPoly num, CPoly den) : num_(std::move(num)), den_(std::move(den)) {
    check_internal(!den_.is_zero(), "rational function with zero denominator");
    reduce();
  }

  const CPoly& num() const { return num_; }
  const CPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  // Order at t=0 (can be negative for a pole; kInfOrd for zero).
  long ord() const {
    if (num_.is_zero()) return kInfOrd;
    return num_.ord() - den_.ord();
  }

  // Value at t=0; requires no pole there.
  CycloNum at_zero() const {
    CycloNum d0 = den_.coeff(0);
    if (d0.is_zero()) throw math_error("evaluating rational function at a pole");
    return num_.coeff(0) / d0;
  }

  bool is_polynomial() const { return den_.deg() == 0; }
  CPoly as_poly() const {
    check_internal(is_polynomial(), "rational function is not polynomial");
    CycloNum inv = CycloNum(1) / den_.coeff(0);
    return inv * num_;
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  RatFunc operator-() const { return RatFunc(-num_, den_); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw math_error("division by zero rational function");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend RatFunc operator*(const CycloNum& s, const RatFunc& f) {
    return RatFunc(s * f.num_, f.den_);
  }
  friend RatFunc operator-(const RatFunc& f, const CycloNum& c) {
    return f - RatFunc(CPoly::constant(c));
  }

  RatFunc pow(long e) const {
    check_internal(e >= 0, "negative rational function power");
    RatFunc r{CPoly::constant(CycloNum(1))};
    for (long i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return (a.num_ * b.den_) == (b.num_ * a.den_);
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  std::string to_string(const std::string& var = "t") const {
    if (is_polynomial()) return as_poly().to_string(var);
    return "(" + num_.to_string(var) + ") / (" + den_.to_string(var) + ")";
  }

 private:
  void reduce() {
    if (num_.is_zero()) {
      den_ = CPoly::constant(CycloNum(1));
      return;
    }
    long k = std::min(num_.ord(), den_.ord());
    if (k > 0) {
      num_ = num_.shift_down(k);
      den_ = den_.shift_down(k);
    }
    CPoly g = CPoly::gcd(num_, den_);
    if (g.deg() > 0) {
      num_ = num_.exact_div(g);
      den_ = den_.exact_div(g);
    }
    CycloNum inv = CycloNum(1) / den_.lead();
    num_ = inv * num_;
    den_ = inv * den_;
  }

  CPoly num_;
  CPoly den_;
};

}  // namespace eqres
