// Finite abelian groups presented as products of cyclic factors, their
// characters, subgroups (stored as explicit element sets; all groups here are
// small), and characters of subgroups with a canonical ambient extension.
#pragma once

#include <algorithm>
#include <numeric>
#include <set>

#include "eqres/cyclotomic.hpp"

namespace eqres {

using GElem = std::vector<long>;

struct AbelianGroup {
  std::vector<long> factors;  // cyclic orders n_1, ..., n_k (each >= 1)

  AbelianGroup() = default;
  explicit AbelianGroup(std::vector<long> f) : factors(std::move(f)) {
    for (long n : factors)
      if (n < 1) throw input_error("cyclic factor orders must be positive");
  }

  size_t rank() const { return factors.size(); }
  long order() const {
    long p = 1;
    for (long n : factors) p *= n;
    return p;
  }
  long exponent() const {
    long e = 1;
    for (long n : factors) e = lcm_long(e, n);
    return e;
  }

  GElem zero() const { return GElem(factors.size(), 0); }
  GElem canon(GElem g) const {
    check_internal(g.size() == factors.size(), "group element arity");
    for (size_t j = 0; j < g.size(); ++j) g[j] = mod_pos(g[j], factors[j]);
    return g;
  }
  GElem add(const GElem& a, const GElem& b) const {
    GElem r(factors.size());
    for (size_t j = 0; j < r.size(); ++j) r[j] = mod_pos(a[j] + b[j], factors[j]);
    return r;
  }
  GElem neg(const GElem& a) const {
    GElem r(factors.size());
    for (size_t j = 0; j < r.size(); ++j) r[j] = mod_pos(-a[j], factors[j]);
    return r;
  }

  // All elements, in lexicographic order.
  std::vector<GElem> elements() const {
    std::vector<GElem> out;
    GElem cur = zero();
    while (true) {
      out.push_back(cur);
      size_t j = factors.size();
      while (j > 0) {
        --j;
        if (++cur[j] < factors[j]) break;
        cur[j] = 0;
        if (j == 0) return out;
      }
      if (factors.empty()) return out;
    }
  }

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
    return a.factors == b.factors;
  }
  friend bool operator!=(const AbelianGroup& a, const AbelianGroup& b) { return !(a == b); }
};

// A character chi: G -> Z/E (exponent of zeta_E) given by residues a_j mod n_j,
// chi(g) = sum_j a_j g_j E/n_j  (mod E).
class Character {
 public:
  Character() = default;
  Character(AbelianGroup g, std::vector<long> a) : g_(std::move(g)), a_(std::move(a)) {
    check_internal(a_.size() == g_.factors.size(), "character arity");
    for (size_t j = 0; j < a_.size(); ++j) a_[j] = mod_pos(a_[j], g_.factors[j]);
  }
  static Character trivial(const AbelianGroup& g) {
    return Character(g, std::vector<long>(g.factors.size(), 0));
  }

  const AbelianGroup& group() const { return g_; }
  const std::vector<long>& tuple() const { return a_; }

  // Value in Z/E, E = exponent of the group.
  long operator()(const GElem& g) const {
    long e = g_.exponent();
    long v = 0;
    for (size_t j = 0; j < a_.size(); ++j)
      v = mod_pos(v + a_[j] * g[j] % e * (e / g_.factors[j]), e);
    return v;
  }

  // chi(g) as a root of unity in Q(zeta_N); N must be a multiple of E.
  CycloNum root_of_unity(const FieldPtr& f, const GElem& g) const {
    long e = g_.exponent();
    check_internal(f->n() % e == 0, "field too small for character values");
    return CycloNum::zeta_power(f, (*this)(g)*(f->n() / e));
  }

  friend Character operator+(const Character& x, const Character& y) {
    check_internal(x.g_ == y.g_, "characters of different groups");
    std::vector<long> a(x.a_.size());
    for (size_t j = 0; j < a.size(); ++j) a[j] = x.a_[j] + y.a_[j];
    return Character(x.g_, std::move(a));
  }
  friend Character operator-(const Character& x, const Character& y) {
    check_internal(x.g_ == y.g_, "characters of different groups");
    std::vector<long> a(x.a_.size());
    for (size_t j = 0; j < a.size(); ++j) a[j] = x.a_[j] - y.a_[j];
    return Character(x.g_, std::move(a));
  }
  Character scaled(long m) const {
    std::vector<long> a(a_.size());
    for (size_t j = 0; j < a.size(); ++j) a[j] = a_[j] * mod_pos(m, g_.factors[j]);
    return Character(g_, std::move(a));
  }

  friend bool operator==(const Character& x, const Character& y) {
    return x.g_ == y.g_ && x.a_ == y.a_;
  }
  friend bool operator!=(const Character& x, const Character& y) { return !(x == y); }
  friend bool operator<(const Character& x, const Character& y) { return x.a_ < y.a_; }

 private:
  AbelianGroup g_;
  std::vector<long> a_;
};

// All characters of G, in lexicographic tuple order.
inline std::vector<Character> all_characters(const AbelianGroup& g) {
  std::vector<Character> out;
  for (const GElem& a : g.elements()) out.emplace_back(g, a);
  return out;
}

// Subgroup of an ambient abelian group, stored as the sorted list of all of
// its elements.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(AbelianGroup g, const std::vector<GElem>& gens) : g_(std::move(g)) {
    std::vector<GElem> frontier{g_.zero()};
    std::set<GElem> seen{g_.zero()};
    while (!frontier.empty()) {
      GElem cur = frontier.back();
      frontier.pop_back();
      for (const GElem& gen : gens) {
        GElem nxt = g_.add(cur, g_.canon(gen));
        if (seen.insert(nxt).second) frontier.push_back(nxt);
      }
    }
    elems_.assign(seen.begin(), seen.end());
  }
  static Subgroup trivial(const AbelianGroup& g) { return Subgroup(g, {}); }
  static Subgroup full(AbelianGroup g) {
    Subgroup s;
    s.g_ = std::move(g);
    auto all = s.g_.elements();
    std::sort(all.begin(), all.end());
    s.elems_ = std::move(all);
    return s;
  }
  static Subgroup from_elements(AbelianGroup g, std::vector<GElem> elems) {
    Subgroup s;
    s.g_ = std::move(g);
    std::sort(elems.begin(), elems.end());
    s.elems_ = std::move(elems);
    s.verify_closed();
    return s;
  }

  const AbelianGroup& ambient() const { return g_; }
  const std::vector<GElem>& elements() const { return elems_; }
  long size() const { return static_cast<long>(elems_.size()); }
  long index() const { return g_.order() / size(); }
  bool is_full() const { return size() == g_.order(); }
  bool is_trivial() const { return size() == 1; }

  bool contains(const GElem& x) const {
    return std::binary_search(elems_.begin(), elems_.end(), g_.canon(x));
  }
  bool contains_subgroup(const Subgroup& h) const {
    return std::includes(elems_.begin(), elems_.end(), h.elems_.begin(), h.elems_.end());
  }

  friend Subgroup intersect(const Subgroup& a, const Subgroup& b) {
    check_internal(a.g_ == b.g_, "subgroups of different groups");
    Subgroup s;
    s.g_ = a.g_;
    std::set_intersection(a.elems_.begin(), a.elems_.end(), b.elems_.begin(),
                          b.elems_.end(), std::back_inserter(s.elems_));
    return s;
  }
  friend Subgroup join(const Subgroup& a, const Subgroup& b) {
    check_internal(a.g_ == b.g_, "subgroups of different groups");
    std::vector<GElem> gens = a.elems_;
    gens.insert(gens.end(), b.elems_.begin(), b.elems_.end());
    return Subgroup(a.g_, gens);
  }

  // Kernel of chi restricted to this subgroup (as a subgroup of the ambient).
  Subgroup kernel_of(const Character& chi) const {
    std::vector<GElem> ker;
    for (const GElem& h : elems_)
      if (chi(h) == 0) ker.push_back(h);
    return from_elements(g_, std::move(ker));
  }

  bool character_trivial(const Character& chi) const {
    return std::all_of(elems_.begin(), elems_.end(),
                       [&](const GElem& h) { return chi(h) == 0; });
  }

  // Coset representatives of this subgroup inside sup (this must be contained
  // in sup).  Each representative is the minimal element of its coset; the
  // list is sorted, starting with the identity coset.
  std::vector<GElem> coset_reps_in(const Subgroup& sup) const {
    check_internal(sup.contains_subgroup(*this), "coset of non-subgroup");
    std::vector<GElem> reps;
    std::set<GElem> covered;
    for (const GElem& x : sup.elems_) {
      if (covered.count(x)) continue;
      reps.push_back(x);
      for (const GElem& h : elems_) covered.insert(g_.add(x, h));
    }
    return reps;
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.g_ == b.g_ && a.elems_ == b.elems_;
  }
  friend bool operator!=(const Subgroup& a, const Subgroup& b) { return !(a == b); }
  friend bool operator<(const Subgroup& a, const Subgroup& b) { return a.elems_ < b.elems_; }

 private:
  void verify_closed() const {
    check_internal(!elems_.empty() && contains(g_.zero()), "subgroup misses identity");
    for (const GElem& a : elems_)
      for (const GElem& b : elems_)
        check_internal(contains(g_.add(a, b)), "element set not closed");
  }

  AbelianGroup g_;
  std::vector<GElem> elems_;  // sorted
};

// A character of a subgroup H <= G, stored with a canonical ambient
// extension: the lexicographically smallest tuple of an ambient character
// with the same restriction to H.
class SubChar {
 public:
  SubChar() = default;
  SubChar(const Character& ambient, Subgroup domain) : dom_(std::move(domain)) {
    check_internal(ambient.group() == dom_.ambient(), "character/domain mismatch");
    canon_ = canonical_extension(ambient, dom_);
  }
  static SubChar trivial(const Subgroup& domain) {
    return SubChar(Character::trivial(domain.ambient()), domain);
  }

  const Subgroup& domain() const { return dom_; }
  const Character& ambient_char() const { return canon_; }

  long operator()(const GElem& h) const {
    check_internal(dom_.contains(h), "character evaluated off its domain");
    return canon_(h);
  }
  bool is_trivial() const { return dom_.character_trivial(canon_); }

  SubChar restrict_to(const Subgroup& sub) const {
    check_internal(dom_.contains_subgroup(sub), "restriction to non-subgroup");
    return SubChar(canon_, sub);
  }

  friend SubChar operator+(const SubChar& x, const SubChar& y) {
    check_internal(x.dom_ == y.dom_, "adding characters on different domains");
    return SubChar(x.canon_ + y.canon_, x.dom_);
  }
  friend SubChar operator-(const SubChar& x, const SubChar& y) {
    check_internal(x.dom_ == y.dom_, "subtracting characters on different domains");
    return SubChar(x.canon_ - y.canon_, x.dom_);
  }
  SubChar scaled(long m) const { return SubChar(canon_.scaled(m), dom_); }

  friend bool operator==(const SubChar& x, const SubChar& y) {
    return x.dom_ == y.dom_ && x.canon_ == y.canon_;
  }
  friend bool operator!=(const SubChar& x, const SubChar& y) { return !(x == y); }
  friend bool operator<(const SubChar& x, const SubChar& y) {
    if (x.dom_ != y.dom_) return x.dom_ < y.dom_;
    return x.canon_ < y.canon_;
  }

 private:
  static Character canonical_extension(const Character& chi, const Subgroup& dom) {
    std::vector<long> want;
    want.reserve(dom.elements().size());
    for (const GElem& h : dom.elements()) want.push_back(chi(h));
    for (const Character& cand : all_characters(dom.ambient())) {
      bool ok = true;
      size_t i = 0;
      for (const GElem& h : dom.elements()) {
        if (cand(h) != want[i++]) {
          ok = false;
          break;
        }
      }
      if (ok) return cand;
    }
    throw internal_check_error("no ambient extension found for subgroup character");
  }

  Subgroup dom_;
  Character canon_;
};

}  // namespace eqres
