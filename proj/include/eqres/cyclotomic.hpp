// Exact arithmetic in the cyclotomic field Q(zeta_N) represented as
// Q[x]/Phi_N(x) on the dense power basis 1, x, ..., x^{phi(N)-1}.
#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "eqres/common.hpp"

namespace eqres {

class CycloField;
using FieldPtr = std::shared_ptr<const CycloField>;

class CycloField {
 public:
  long n() const { return n_; }
  long degree() const { return phi_; }
  // Monic minimal polynomial Phi_N, coefficient list of size degree()+1.
  const std::vector<Rational>& min_poly() const { return phi_poly_; }
  // x^k mod Phi_N for k in [0, 2*degree()-2], as coefficient rows.
  const std::vector<Rational>& power_row(long k) const { return rows_[k]; }

  static FieldPtr get(long n) {
    if (n < 1) throw input_error("cyclotomic modulus must be positive");
    static std::mutex mu;
    static std::map<long, FieldPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    FieldPtr f(new CycloField(n));
    cache.emplace(n, f);
    return f;
  }

 private:
  explicit CycloField(long n) : n_(n), phi_(euler_phi(n)) {
    phi_poly_ = cyclotomic_poly(n);
    // Reduction rows for x^k, k = 0..2*phi-2.
    rows_.assign(2 * phi_ - 1, std::vector<Rational>(phi_, Rational(0)));
    for (long k = 0; k < phi_; ++k) rows_[k][k] = 1;
    for (long k = phi_; k <= 2 * phi_ - 2; ++k) {
      // x^k = x * x^{k-1}; shift previous row then reduce the overflow term.
      std::vector<Rational> row(phi_, Rational(0));
      Rational overflow = rows_[k - 1][phi_ - 1];
      for (long i = phi_ - 1; i >= 1; --i) row[i] = rows_[k - 1][i - 1];
      row[0] = 0;
      if (overflow != 0) {
        // x^phi = -(phi_poly[0] + phi_poly[1] x + ...)/1 (monic).
        for (long i = 0; i < phi_; ++i) row[i] -= overflow * phi_poly_[i];
      }
      rows_[k] = std::move(row);
    }
  }

  // Phi_n via Phi_n(x) = (x^n - 1) / prod_{d | n, d < n} Phi_d(x).
  static std::vector<Rational> cyclotomic_poly(long n) {
    std::vector<Rational> num(n + 1, Rational(0));
    num[0] = -1;
    num[n] = 1;
    for (long d = 1; d < n; ++d) {
      if (n % d != 0) continue;
      std::vector<Rational> phi_d = cyclotomic_poly(d);
      num = poly_div_exact(num, phi_d);
    }
    return num;
  }

  // Exact division of polynomials with rational coefficients (b monic-ish).
  static std::vector<Rational> poly_div_exact(std::vector<Rational> a,
                                              const std::vector<Rational>& b) {
    long da = static_cast<long>(a.size()) - 1;
    long db = static_cast<long>(b.size()) - 1;
    std::vector<Rational> q(da - db + 1, Rational(0));
    for (long k = da - db; k >= 0; --k) {
      Rational c = a[k + db] / b[db];
      q[k] = c;
      if (c == 0) continue;
      for (long i = 0; i <= db; ++i) a[k + i] -= c * b[i];
    }
    for (const Rational& c : a) check_internal(c == 0, "cyclotomic division not exact");
    return q;
  }

  long n_;
  long phi_;
  std::vector<Rational> phi_poly_;
  std::vector<std::vector<Rational>> rows_;
};

// One element of Q(zeta_N).
class CycloNum {
 public:
  CycloNum() : field_(CycloField::get(1)), c_(1, Rational(0)) {}
  // Rational constants live in the degree-one field and promote on demand.
  explicit CycloNum(const Rational& q) : field_(CycloField::get(1)), c_(1, q) {}
  explicit CycloNum(long v) : CycloNum(Rational(v)) {}
  explicit CycloNum(FieldPtr f) : field_(std::move(f)) {
    c_.assign(field_->degree(), Rational(0));
  }
  CycloNum(FieldPtr f, const Rational& q) : CycloNum(std::move(f)) { c_[0] = q; }
  CycloNum(FieldPtr f, std::vector<Rational> coeffs)
      : field_(std::move(f)), c_(std::move(coeffs)) {
    c_.resize(field_->degree(), Rational(0));
  }

  // zeta_N^k, computed as (class of x)^k.
  static CycloNum zeta_power(const FieldPtr& f, long k) {
    CycloNum z(f);
    if (f->degree() == 1) {
      z.c_[0] = -f->min_poly()[0];  // x == -Phi(0) for monic linear Phi
    } else {
      z.c_[1] = 1;
    }
    return z.pow(mod_pos(k, f->n()));
  }

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
  }
  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  const Rational& rational_part() const { return c_[0]; }

  friend CycloNum operator+(CycloNum a, CycloNum b) {
    align(a, b);
    CycloNum r(a.field_);
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
  }
  friend CycloNum operator-(CycloNum a, CycloNum b) {
    align(a, b);
    CycloNum r(a.field_);
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
    return r;
  }
  CycloNum operator-() const {
    CycloNum r(field_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
    return r;
  }
  friend CycloNum operator*(CycloNum a, CycloNum b) {
    align(a, b);
    long d = a.field_->degree();
    std::vector<Rational> prod(2 * d - 1, Rational(0));
    for (long i = 0; i < d; ++i) {
      if (a.c_[i] == 0) continue;
      for (long j = 0; j < d; ++j) {
        if (b.c_[j] == 0) continue;
        prod[i + j] += a.c_[i] * b.c_[j];
      }
    }
    CycloNum r(a.field_);
    for (long k = 0; k < 2 * d - 1; ++k) {
      if (prod[k] == 0) continue;
      const std::vector<Rational>& row = a.field_->power_row(k);
      for (long i = 0; i < d; ++i) r.c_[i] += prod[k] * row[i];
    }
    return r;
  }
  friend CycloNum operator/(const CycloNum& a, const CycloNum& b) { return a * b.inverse(); }

  CycloNum& operator+=(const CycloNum& o) { return *this = *this + o; }
  CycloNum& operator-=(const CycloNum& o) { return *this = *this - o; }
  CycloNum& operator*=(const CycloNum& o) { return *this = *this * o; }
  CycloNum& operator/=(const CycloNum& o) { return *this = *this / o; }

  // Multiplicative inverse via the extended Euclid algorithm against Phi_N.
  CycloNum inverse() const {
    if (is_zero()) throw math_error("division by zero in Q(zeta)");
    long d = field_->degree();
    // r0 = Phi, r1 = this; track s only against r1 (s0 = 0, s1 = 1).
    std::vector<Rational> r0 = field_->min_poly();
    std::vector<Rational> r1 = c_;
    trim(r1);
    std::vector<Rational> s0(1, Rational(0)), s1(1, Rational(1));
    while (poly_deg(r1) > 0) {
      auto [q, rem] = poly_divmod(r0, r1);
      std::vector<Rational> s2 = poly_sub(s0, poly_mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
      check_internal(!(poly_deg(r1) < 0), "gcd with irreducible Phi_N hit zero remainder");
    }
    // r1 is a nonzero constant c: s1 * this = c (mod Phi), inverse = s1/c.
    Rational c = r1.empty() ? Rational(0) : r1[0];
    check_internal(c != 0, "Phi_N not coprime to nonzero element");
    CycloNum inv(field_);
    for (long i = 0; i < d && i < static_cast<long>(s1.size()); ++i) inv.c_[i] = s1[i] / c;
    return inv;
  }

  CycloNum pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CycloNum r(field_, Rational(1));
    CycloNum base = *this;
    while (e > 0) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }

  friend bool operator==(CycloNum a, CycloNum b) {
    align(a, b);
    return a.c_ == b.c_;
  }
  friend bool operator!=(const CycloNum& a, const CycloNum& b) { return !(a == b); }

  // Canonical deterministic total order: lexicographic on the coefficient
  // vector.  Used to pick orbit representatives and order blow-up sites.
  friend bool operator<(CycloNum a, CycloNum b) {
    align(a, b);
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    }
    return false;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (!first) os << (c_[i] > 0 ? "+" : "");
      os << rational_to_string(c_[i]);
      if (i >= 1) os << "*z" << (i > 1 ? "^" + std::to_string(i) : "");
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  // Lift rational constants (field N=1) into the other operand's field.
  static void align(CycloNum& a, CycloNum& b) {
    if (a.field_->n() == b.field_->n()) return;
    if (a.field_->n() == 1 && a.is_rational()) {
      a = CycloNum(b.field_, a.c_[0]);
      return;
    }
    if (b.field_->n() == 1 && b.is_rational()) {
      b = CycloNum(a.field_, b.c_[0]);
      return;
    }
    throw internal_check_error("mixed cyclotomic moduli");
  }

  static void trim(std::vector<Rational>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  }
  static long poly_deg(const std::vector<Rational>& p) {
    return static_cast<long>(p.size()) - 1;
  }
  static std::vector<Rational> poly_mul(const std::vector<Rational>& a,
                                        const std::vector<Rational>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Rational> r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
  }
  static std::vector<Rational> poly_sub(const std::vector<Rational>& a,
                                        const std::vector<Rational>& b) {
    std::vector<Rational> r = a;
    if (r.size() < b.size()) r.resize(b.size(), Rational(0));
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
  }
  static std::pair<std::vector<Rational>, std::vector<Rational>> poly_divmod(
      std::vector<Rational> a, const std::vector<Rational>& b) {
    long db = poly_deg(b);
    std::vector<Rational> q(std::max<long>(poly_deg(a) - db + 1, 0), Rational(0));
    while (poly_deg(a) >= db && !a.empty()) {
      long k = poly_deg(a) - db;
      Rational c = a.back() / b[db];
      q[k] = c;
      for (long i = 0; i <= db; ++i) a[k + i] -= c * b[i];
      trim(a);
    }
    return {q, a};
  }

  FieldPtr field_;
  std::vector<Rational> c_;
};

}  // namespace eqres
