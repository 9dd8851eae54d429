// The Grothendieck ring of finite weighted G-orbits: transitive classes
// (points G/H, one multiplicity vector per coset, a twisting character of
// the stabilizer), finite sums, truncated power series with factorization
// into cyclotomic-style factors (1 - T)^s, the forgetful map to ordinary
// multivariate series, and index extension by group shifts.
#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "eqres/group.hpp"

namespace eqres {

// Isomorphism class of a transitive weighted orbit.  Canonical form: the
// weight table is minimized lexicographically over base-point translations
// (for an abelian group these are all equivariant relabelings).
class GRClass {
 public:
  GRClass(Subgroup h, const std::vector<std::vector<long>>& w, SubChar alpha)
      : h_(std::move(h)), alpha_(std::move(alpha)) {
    check_internal(alpha_.domain() == h_, "twist character off the stabilizer");
    reps_ = h_.coset_reps_in(Subgroup::full(h_.ambient()));
    check_internal(w.size() == reps_.size(), "weight table size mismatch");
    nidx_ = w.empty() ? 0 : static_cast<int>(w[0].size());
    for (const auto& row : w)
      check_internal(static_cast<int>(row.size()) == nidx_, "ragged weight table");

    const AbelianGroup& g = h_.ambient();
    for (const GElem& s : reps_) {
      std::vector<std::vector<long>> cand(reps_.size());
      for (size_t j = 0; j < reps_.size(); ++j)
        cand[j] = w[coset_index_of(g.add(reps_[j], s))];
      if (w_.empty() || cand < w_) w_ = std::move(cand);
    }
    mindeg_ = -1;
    for (const auto& row : w_) {
      long tot = 0;
      for (long v : row) tot += v;
      if (mindeg_ < 0 || tot < mindeg_) mindeg_ = tot;
    }
  }

  // The one-point orbit with zero weights and trivial twist.
  static GRClass unit(const AbelianGroup& g, int nidx) {
    Subgroup full = Subgroup::full(g);
    return GRClass(full, {std::vector<long>(nidx, 0)}, SubChar::trivial(full));
  }

  const Subgroup& stab() const { return h_; }
  const SubChar& alpha() const { return alpha_; }
  const std::vector<GElem>& reps() const { return reps_; }
  const std::vector<std::vector<long>>& w() const { return w_; }
  int nidx() const { return nidx_; }
  long npoints() const { return static_cast<long>(reps_.size()); }
  long mindeg() const { return mindeg_; }

  std::string to_string() const {
    std::ostringstream o;
    o << "[H={";
    for (const GElem& e : h_.elements()) {
      o << "(";
      for (size_t i = 0; i < e.size(); ++i) o << (i ? "," : "") << e[i];
      o << ")";
    }
    o << "};a=(";
    std::vector<long> t = alpha_.ambient_char().tuple();
    for (size_t i = 0; i < t.size(); ++i) o << (i ? "," : "") << t[i];
    o << ");w=";
    for (const auto& row : w_) {
      o << "(";
      for (size_t i = 0; i < row.size(); ++i) o << (i ? "," : "") << row[i];
      o << ")";
    }
    o << "]";
    return o.str();
  }

  int coset_index_of(const GElem& g) const {
    const AbelianGroup& amb = h_.ambient();
    GElem best = amb.add(g, h_.elements().front());
    for (const GElem& e : h_.elements()) best = std::min(best, amb.add(g, e));
    auto it = std::lower_bound(reps_.begin(), reps_.end(), best);
    check_internal(it != reps_.end() && *it == best, "coset representative not found");
    return static_cast<int>(it - reps_.begin());
  }

  friend bool operator==(const GRClass& a, const GRClass& b) {
    return a.h_ == b.h_ && a.alpha_ == b.alpha_ && a.w_ == b.w_;
  }
  friend bool operator<(const GRClass& a, const GRClass& b) {
    if (a.h_ != b.h_) return a.h_ < b.h_;
    if (!(a.alpha_ == b.alpha_)) return a.alpha_ < b.alpha_;
    return a.w_ < b.w_;
  }

 private:
  Subgroup h_;
  SubChar alpha_;
  std::vector<GElem> reps_;
  std::vector<std::vector<long>> w_;  // canonical, aligned with reps_
  int nidx_ = 0;
  long mindeg_ = 0;
};

// Orbit decomposition of the product of two transitive classes: diagonal
// action on the point pairs, weights added, twists added on the common
// stabilizer.  Orbits correspond to cosets of the join of the stabilizers.
inline std::vector<GRClass> mult_classes(const GRClass& a, const GRClass& b) {
  const AbelianGroup& g = a.stab().ambient();
  check_internal(g == b.stab().ambient(), "classes over different groups");
  check_internal(a.nidx() == b.nidx(), "classes with different index counts");
  Subgroup k = intersect(a.stab(), b.stab());
  Subgroup j = join(a.stab(), b.stab());
  SubChar alpha = a.alpha().restrict_to(k) + b.alpha().restrict_to(k);
  Subgroup full = Subgroup::full(g);
  std::vector<GElem> kreps = k.coset_reps_in(full);
  std::vector<GRClass> out;
  for (const GElem& d : j.coset_reps_in(full)) {
    std::vector<std::vector<long>> w(kreps.size());
    for (size_t i = 0; i < kreps.size(); ++i) {
      const auto& wa = a.w()[a.coset_index_of(kreps[i])];
      const auto& wb = b.w()[b.coset_index_of(g.add(kreps[i], d))];
      w[i].resize(a.nidx());
      for (int q = 0; q < a.nidx(); ++q) w[i][q] = wa[q] + wb[q];
    }
    out.emplace_back(k, w, alpha);
  }
  return out;
}

// Finite integer combination of transitive classes.
class GRSet {
 public:
  GRSet() = default;
  static GRSet of(const GRClass& c, long m = 1) {
    GRSet s;
    s.add(c, m);
    return s;
  }

  void add(const GRClass& c, long m) {
    if (m == 0) return;
    auto [it, fresh] = c_.emplace(c, m);
    if (!fresh && (it->second += m) == 0) c_.erase(it);
  }
  const std::map<GRClass, long>& terms() const { return c_; }
  long coeff(const GRClass& c) const {
    auto it = c_.find(c);
    return it == c_.end() ? 0 : it->second;
  }
  long cardinality() const {
    long n = 0;
    for (const auto& [c, m] : c_) n += m * c.npoints();
    return n;
  }

  friend GRSet operator+(const GRSet& x, const GRSet& y) {
    GRSet r = x;
    for (const auto& [c, m] : y.c_) r.add(c, m);
    return r;
  }
  friend GRSet operator-(const GRSet& x, const GRSet& y) {
    GRSet r = x;
    for (const auto& [c, m] : y.c_) r.add(c, -m);
    return r;
  }
  friend GRSet operator*(const GRSet& x, const GRSet& y) {
    GRSet r;
    for (const auto& [ca, ma] : x.c_)
      for (const auto& [cb, mb] : y.c_)
        for (const GRClass& c : mult_classes(ca, cb)) r.add(c, ma * mb);
    return r;
  }
  friend bool operator==(const GRSet& x, const GRSet& y) { return x.c_ == y.c_; }

 private:
  std::map<GRClass, long> c_;
};

// Power series in transitive classes, truncated by minimal total weight.
class GRSeries {
 public:
  explicit GRSeries(long bound) : d_(bound) {}
  static GRSeries one(const AbelianGroup& g, int nidx, long bound) {
    GRSeries s(bound);
    s.add(GRClass::unit(g, nidx), 1);
    return s;
  }
  static GRSeries of_class(const GRClass& c, long bound) {
    GRSeries s(bound);
    s.add(c, 1);
    return s;
  }

  long bound() const { return d_; }
  const std::map<GRClass, long>& terms() const { return c_; }
  long coeff(const GRClass& c) const {
    auto it = c_.find(c);
    return it == c_.end() ? 0 : it->second;
  }
  void add(const GRClass& c, long m) {
    if (m == 0 || c.mindeg() > d_) return;
    auto [it, fresh] = c_.emplace(c, m);
    if (!fresh && (it->second += m) == 0) c_.erase(it);
  }

  friend GRSeries operator+(const GRSeries& x, const GRSeries& y) {
    check_internal(x.d_ == y.d_, "series with different truncation bounds");
    GRSeries r = x;
    for (const auto& [c, m] : y.c_) r.add(c, m);
    return r;
  }
  friend GRSeries operator-(const GRSeries& x, const GRSeries& y) {
    check_internal(x.d_ == y.d_, "series with different truncation bounds");
    GRSeries r = x;
    for (const auto& [c, m] : y.c_) r.add(c, -m);
    return r;
  }
  friend GRSeries operator*(const GRSeries& x, const GRSeries& y) {
    check_internal(x.d_ == y.d_, "series with different truncation bounds");
    GRSeries r(x.d_);
    for (const auto& [ca, ma] : x.c_)
      for (const auto& [cb, mb] : y.c_) {
        if (ca.mindeg() + cb.mindeg() > x.d_) continue;
        for (const GRClass& c : mult_classes(ca, cb)) r.add(c, ma * mb);
      }
    return r;
  }
  friend bool operator==(const GRSeries& x, const GRSeries& y) {
    return x.d_ == y.d_ && x.c_ == y.c_;
  }

 private:
  long d_;
  std::map<GRClass, long> c_;
};

inline long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// The factor (1 - T)^s as a truncated series; inverting (s < 0) requires T
// to have positive minimal weight.
inline GRSeries expand_factor(const GRClass& t, long s, long bound) {
  const AbelianGroup& g = t.stab().ambient();
  GRSeries r = GRSeries::one(g, t.nidx(), bound);
  if (s == 0) return r;
  check_internal(s > 0 || t.mindeg() >= 1, "cannot invert a factor of weight zero");
  GRSeries power = r;  // T^k, accumulated
  long k = 1;
  while (true) {
    if (t.mindeg() > 0 && k * t.mindeg() > bound) break;
    if (s > 0 && k > s) break;
    power = power * GRSeries::of_class(t, bound);
    long coef = s > 0 ? ((k % 2 == 0 ? 1 : -1) * binomial(s, k))
                      : binomial(-s - 1 + k, k);
    for (const auto& [c, m] : power.terms()) r.add(c, coef * m);
    ++k;
  }
  return r;
}

// Graded peeling of a multiplicative structure: write the series (constant
// term one) as a product of factors (1 - T)^{s_T} up to the truncation
// bound, and fail if a residual survives.
inline std::map<GRClass, long> factor_exponents(GRSeries p) {
  long bound = p.bound();
  const GRClass* unit = nullptr;
  for (const auto& [c, m] : p.terms())
    if (c.mindeg() == 0) {
      check_internal(m == 1 && c.npoints() == 1 && unit == nullptr,
                     "series does not start at one");
      unit = &c;
    }
  check_internal(unit != nullptr, "series does not start at one");
  std::map<GRClass, long> out;
  for (long d = 1; d <= bound; ++d) {
    std::vector<std::pair<GRClass, long>> level;
    for (const auto& [c, m] : p.terms())
      if (c.mindeg() == d && m != 0) level.push_back({c, m});
    for (const auto& [c, m] : level) {
      long s = -m;
      out[c] = s;
      p = p * expand_factor(c, -s, bound);
    }
  }
  for (const auto& [c, m] : p.terms())
    check_internal(c.mindeg() == 0 && m == 1,
                   "series does not admit a graded factorization");
  return out;
}

// Ordinary multivariate power series with integer coefficients, truncated
// by total degree; exponent vectors are the keys.
class PlainSeries {
 public:
  PlainSeries(int nvars, long bound) : n_(nvars), d_(bound) {}
  static PlainSeries one(int nvars, long bound) {
    PlainSeries s(nvars, bound);
    s.add(std::vector<long>(nvars, 0), 1);
    return s;
  }

  int nvars() const { return n_; }
  long bound() const { return d_; }
  const std::map<std::vector<long>, long>& terms() const { return c_; }
  long coeff(const std::vector<long>& e) const {
    auto it = c_.find(e);
    return it == c_.end() ? 0 : it->second;
  }
  void add(const std::vector<long>& e, long m) {
    check_internal(static_cast<int>(e.size()) == n_, "exponent arity mismatch");
    long tot = 0;
    for (long v : e) tot += v;
    if (m == 0 || tot > d_) return;
    auto [it, fresh] = c_.emplace(e, m);
    if (!fresh && (it->second += m) == 0) c_.erase(it);
  }

  friend PlainSeries operator+(const PlainSeries& x, const PlainSeries& y) {
    check_internal(x.n_ == y.n_ && x.d_ == y.d_, "series shape mismatch");
    PlainSeries r = x;
    for (const auto& [e, m] : y.c_) r.add(e, m);
    return r;
  }
  friend PlainSeries operator-(const PlainSeries& x, const PlainSeries& y) {
    check_internal(x.n_ == y.n_ && x.d_ == y.d_, "series shape mismatch");
    PlainSeries r = x;
    for (const auto& [e, m] : y.c_) r.add(e, -m);
    return r;
  }
  friend PlainSeries operator*(const PlainSeries& x, const PlainSeries& y) {
    check_internal(x.n_ == y.n_ && x.d_ == y.d_, "series shape mismatch");
    PlainSeries r(x.n_, x.d_);
    for (const auto& [ea, ma] : x.c_)
      for (const auto& [eb, mb] : y.c_) {
        std::vector<long> e(x.n_);
        for (int i = 0; i < x.n_; ++i) e[i] = ea[i] + eb[i];
        r.add(e, ma * mb);
      }
    return r;
  }
  friend bool operator==(const PlainSeries& x, const PlainSeries& y) {
    return x.n_ == y.n_ && x.d_ == y.d_ && x.c_ == y.c_;
  }

  // (1 - t^e)^s; inversion requires a positive total degree.
  static PlainSeries power_factor(const std::vector<long>& e, long s, long bound) {
    int n = static_cast<int>(e.size());
    long tot = 0;
    for (long v : e) tot += v;
    check_internal(s >= 0 || tot >= 1, "cannot invert a degree-zero factor");
    PlainSeries r = one(n, bound);
    for (long k = 1;; ++k) {
      if (tot > 0 && k * tot > bound) break;
      if (s >= 0 && k > s) break;
      std::vector<long> ke(n);
      for (int i = 0; i < n; ++i) ke[i] = k * e[i];
      long coef = s >= 0 ? ((k % 2 == 0 ? 1 : -1) * binomial(s, k))
                         : binomial(-s - 1 + k, k);
      r.add(ke, coef);
    }
    return r;
  }

  std::string to_string() const {
    std::ostringstream o;
    bool first = true;
    for (const auto& [e, m] : c_) {
      if (!first) o << (m > 0 ? " + " : " - ");
      else if (m < 0)
        o << "-";
      first = false;
      long a = m > 0 ? m : -m;
      long tot = 0;
      for (long v : e) tot += v;
      if (a != 1 || tot == 0) o << a;
      if (tot > 0) {
        if (a != 1) o << "*";
        o << "t(";
        for (size_t i = 0; i < e.size(); ++i) o << (i ? "," : "") << e[i];
        o << ")";
      }
    }
    if (first) o << "0";
    return o.str();
  }

 private:
  int n_;
  long d_;
  std::map<std::vector<long>, long> c_;
};

// Forget the group: each orbit contributes one monomial per point.
inline PlainSeries forget_G(const GRClass& c, long bound) {
  PlainSeries s(c.nidx(), bound);
  for (const auto& row : c.w()) s.add(row, 1);
  return s;
}
inline PlainSeries forget_G(const GRSeries& p, int nidx) {
  PlainSeries s(nidx, p.bound());
  for (const auto& [c, m] : p.terms()) {
    check_internal(c.nidx() == nidx, "index count mismatch in forgetful map");
    for (const auto& row : c.w()) s.add(row, m);
  }
  return s;
}

// Factor-wise reduction: (1 - T)^s contributes (1 - t^{w(x)})^s for every
// point x of T.  (This is not the forgetful ring map; the two differ in
// general and agree on shift-extended data.)
inline PlainSeries reduce_to_plain(const std::map<GRClass, long>& exps, int nidx,
                                   long bound) {
  PlainSeries r = PlainSeries::one(nidx, bound);
  for (const auto& [c, s] : exps) {
    check_internal(c.nidx() == nidx, "index count mismatch in reduction");
    for (const auto& row : c.w()) r = r * PlainSeries::power_factor(row, s, bound);
  }
  return r;
}

// Extend the index set by group shifts: the new indices are pairs (i, g) in
// row-major order over the element list of G, weighing a point x by the
// i-th weight of g^{-1} x.
inline GRClass extend_to_shifts(const GRClass& c) {
  const AbelianGroup& g = c.stab().ambient();
  std::vector<GElem> els = g.elements();
  std::vector<std::vector<long>> w(c.reps().size());
  for (size_t j = 0; j < c.reps().size(); ++j) {
    w[j].assign(c.nidx() * els.size(), 0);
    for (int i = 0; i < c.nidx(); ++i)
      for (size_t gi = 0; gi < els.size(); ++gi)
        w[j][i * els.size() + gi] =
            c.w()[c.coset_index_of(g.add(c.reps()[j], g.neg(els[gi])))][i];
  }
  return GRClass(c.stab(), w, c.alpha());
}

inline std::map<GRClass, long> extend_to_shifts(const std::map<GRClass, long>& exps) {
  std::map<GRClass, long> out;
  for (const auto& [c, s] : exps) out[extend_to_shifts(c)] += s;
  return out;
}

}  // namespace eqres
