// Plane curve branches (irreducible germs at the origin with primitive
// polynomial parametrizations) under a diagonal action of a finite abelian
// group on (x, y), with implicit-equation caches, intersection
// multiplicities, semi-invariance characters, and orbit expansion.
#pragma once

#include <optional>

#include "eqres/group.hpp"
#include "eqres/mpoly.hpp"

namespace eqres {

// Diagonal action of G on the plane: g sends (x, y) to
// (zeta^{chi_x(g)} x, zeta^{chi_y(g)} y) with zeta the primitive E-th root of
// unity, E the exponent of G.
struct GroupAction {
  AbelianGroup G;
  Character chi_x, chi_y;
  FieldPtr field;  // Q(zeta_E)

  GroupAction() = default;
  GroupAction(AbelianGroup g, Character cx, Character cy)
      : G(std::move(g)), chi_x(std::move(cx)), chi_y(std::move(cy)) {
    check_internal(chi_x.group() == G && chi_y.group() == G, "characters of wrong group");
    field = CycloField::get(G.exponent());
  }

  bool faithful() const {
    Subgroup full = Subgroup::full(G);
    return intersect(full.kernel_of(chi_x), full.kernel_of(chi_y)).is_trivial();
  }

  CycloNum x_factor(const GElem& g) const { return chi_x.root_of_unity(field, g); }
  CycloNum y_factor(const GElem& g) const { return chi_y.root_of_unity(field, g); }

  std::pair<CycloNum, CycloNum> act_point(const GElem& g,
                                          const std::pair<CycloNum, CycloNum>& p) const {
    return {x_factor(g) * p.first, y_factor(g) * p.second};
  }
};

// Irreducible plane curve germ at the origin.  Slots of the implicit
// equation: x = 0, y = 1.
class Branch {
 public:
  // Validates: passes through the origin, hits the origin only at t = 0, and
  // the parametrization is primitive (injective; certified by the common-root
  // resultant of difference quotients).  Violations raise math_error.
  Branch(CPoly x_of_t, CPoly y_of_t) : x_(std::move(x_of_t)), y_(std::move(y_of_t)) {
    validate();
    eq_ = implicitize(x_, y_);
  }

  const CPoly& xt() const { return x_; }
  const CPoly& yt() const { return y_; }
  const MPoly& equation() const { return eq_; }

  long multiplicity() const { return std::min(x_.ord(), y_.ord()); }
  bool is_smooth() const { return multiplicity() == 1; }

  RatFunc x_rat() const { return RatFunc(x_); }
  RatFunc y_rat() const { return RatFunc(y_); }

  friend bool same_germ(const Branch& a, const Branch& b) { return a.eq_ == b.eq_; }

  // Image under a group element (still a branch; no re-validation needed).
  Branch acted(const GroupAction& act, const GElem& g) const {
    Branch r;
    r.x_ = act.x_factor(g) * x_;
    r.y_ = act.y_factor(g) * y_;
    // Equation of the image: substitute g^{-1} into the old equation.
    GElem ginv = act.G.neg(g);
    r.eq_ = eq_.scale_vars({act.x_factor(ginv), act.y_factor(ginv), CycloNum(1),
                            CycloNum(1)})
                .normalized();
    return r;
  }

  Subgroup isotropy(const GroupAction& act) const {
    std::vector<GElem> stab;
    for (const GElem& g : act.G.elements())
      if (same_germ(acted(act, g), *this)) stab.push_back(g);
    return Subgroup::from_elements(act.G, std::move(stab));
  }

  // Canonical implicit equation of a primitive parametrization; throws
  // math_error when the parametrization is non-primitive.
  static MPoly implicitize(const CPoly& X, const CPoly& Y) {
    if (X.is_zero()) return MPoly::variable(0);
    if (Y.is_zero()) return MPoly::variable(1);
    MPoly f = MPoly::variable(0) - MPoly::from_upoly(X, 3);
    MPoly g = MPoly::variable(1) - MPoly::from_upoly(Y, 3);
    MPoly r = resultant_wrt(f, g, 3);
    check_internal(!r.is_zero(), "implicitization produced zero");
    return r.normalized();
  }

 private:
  Branch() = default;

  void validate() const {
    if (x_.is_zero() && y_.is_zero())
      throw math_error("branch parametrization is constant");
    if (!x_.coeff(0).is_zero() || !y_.coeff(0).is_zero())
      throw math_error("branch must pass through the origin");
    // The parameter line must meet the origin only at t = 0: gcd(X, Y) is a
    // power of t.  Otherwise germ-level bookkeeping would see phantom
    // branches of the global curve.
    if (!x_.is_zero() && !y_.is_zero()) {
      CPoly g = CPoly::gcd(x_, y_);
      check_math(g == CPoly::monomial(CycloNum(1), g.ord()),
                 "parametrization returns to the origin at a nonzero parameter");
    }
    // Primitivity.
    if (x_.is_zero() || y_.is_zero()) {
      const CPoly& p = x_.is_zero() ? y_ : x_;
      check_math(p.deg() == 1, "non-primitive parametrization of a coordinate axis");
      return;
    }
    MPoly w = diff_quotient(x_);
    MPoly v = diff_quotient(y_);
    check_math(!resultant_wrt(w, v, 1).is_zero(),
               "non-primitive parametrization (multiple cover of its image)");
  }

  // (P(t) - P(s)) / (t - s) with t in slot 0, s in slot 1.
  static MPoly diff_quotient(const CPoly& p) {
    MPoly pt = MPoly::from_upoly(p, 0);
    MPoly ps;
    for (long i = 0; i <= p.deg(); ++i) {
      CycloNum c = p.coeff(i);
      if (c.is_zero()) continue;
      ExpKey e{0, static_cast<int>(i), 0, 0};
      ps = ps + MPoly::monomial(c, e);
    }
    return (pt - ps).exact_div(MPoly::variable(0) - MPoly::variable(1));
  }

  static void check_math(bool cond, const std::string& msg) {
    if (!cond) throw math_error(msg);
  }

  CPoly x_, y_;
  MPoly eq_;
};

// Intersection multiplicity of two distinct germs: order of vanishing of
// one's equation along the other's parametrization.  Same germ gives kInfOrd.
inline long intersection_multiplicity(const Branch& a, const Branch& b) {
  if (same_germ(a, b)) return kInfOrd;
  RatFunc v = b.equation().eval_ratfunc(a.x_rat(), a.y_rat());
  check_internal(!v.is_zero(), "distinct germs with identically vanishing pairing");
  return v.ord();
}

// Character lambda of H acting on a semi-invariant polynomial F (slots x, y;
// slot c is tolerated and ignored so symbolic families work):
// F(g.(x,y)) = zeta^{lambda(g)} F(x,y) for g in H.  Internal error if F is
// not semi-invariant under H.
inline SubChar semi_invariant_character(const MPoly& F, const GroupAction& act,
                                        const Subgroup& H) {
  check_internal(!F.is_zero(), "semi-invariance of the zero polynomial");
  check_internal(!F.uses_slot(3), "unexpected variable in plane equation");
  std::optional<SubChar> lambda;
  std::set<std::pair<int, int>> seen;
  for (const auto& [e, c] : F.terms()) {
    if (!seen.insert({e[0], e[1]}).second) continue;
    Character exy = act.chi_x.scaled(e[0]) + act.chi_y.scaled(e[1]);
    SubChar cand(exy, H);
    if (!lambda) {
      lambda = cand;
    } else {
      check_internal(*lambda == cand, "polynomial is not semi-invariant for the subgroup");
    }
  }
  return *lambda;
}

inline SubChar semi_invariant_character(const Branch& C, const GroupAction& act,
                                        const Subgroup& H) {
  return semi_invariant_character(C.equation(), act, H);
}

// One curve of the orbit-expanded collection.
struct BranchCopy {
  Branch curve;
  std::set<int> labels;    // input indices i with g.C_i = this curve for some g
  int orbit;               // orbit id (index into orbit_reps)
  bool is_rep;             // canonical representative of its orbit
  GElem from_rep;          // group element sending the rep copy to this copy
};

// Distinct curves of the union of G-orbits of the input branches, labelled.
// The representative of an orbit is the copy equal to the smallest-index
// input branch it contains.
struct ExpandedBranches {
  std::vector<BranchCopy> copies;
  std::vector<int> orbit_reps;        // copy index of each orbit's rep
  std::vector<int> input_copy;        // input index -> copy index
  std::vector<long> orbit_size;       // per orbit

  static ExpandedBranches build(const GroupAction& act, const std::vector<Branch>& input) {
    ExpandedBranches out;
    out.input_copy.assign(input.size(), -1);
    for (size_t i = 0; i < input.size(); ++i) {
      if (out.input_copy[i] >= 0) continue;  // already seen in an earlier orbit
      int orbit_id = static_cast<int>(out.orbit_reps.size());
      int rep_copy = static_cast<int>(out.copies.size());
      out.orbit_reps.push_back(rep_copy);
      long count = 0;
      for (const GElem& g : act.G.elements()) {
        Branch img = input[i].acted(act, g);
        int found = -1;
        for (size_t k = rep_copy; k < out.copies.size(); ++k)
          if (same_germ(out.copies[k].curve, img)) {
            found = static_cast<int>(k);
            break;
          }
        if (found < 0) {
          found = static_cast<int>(out.copies.size());
          bool rep = g == act.G.zero();
          out.copies.push_back({img, {}, orbit_id, rep, g});
          ++count;
        }
        for (size_t j = i; j < input.size(); ++j)
          if (same_germ(img, input[j])) {
            out.copies[found].labels.insert(static_cast<int>(j));
            if (out.input_copy[j] < 0) out.input_copy[j] = found;
          }
      }
      out.orbit_size.push_back(count);
    }
    return out;
  }
};

}  // namespace eqres
