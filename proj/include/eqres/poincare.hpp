// Poincare series of the multi-index filtrations attached to a resolved
// collection: the equivariant series with values in the ring of weighted
// orbit classes, the ordinary series over the expanded collection, an
// independent oracle computing dimensions of jet spaces directly from the
// parametrizations, and the inverse procedure reading a diagonal
// representation back off a divisorial series.
#pragma once

#include "eqres/grring.hpp"
#include "eqres/resgraph.hpp"

namespace eqres {

inline GRClass stratum_class(const StratumClass& s) {
  GRClass c(s.H, s.w, s.alpha);
  check_internal(c.reps() == s.reps, "stratum representatives not canonical");
  return c;
}

// Product over strata of (1 - T)^{-chi}.
inline GRSeries equivariant_poincare(const ResGraph& rg, long bound) {
  GRSeries p = GRSeries::one(rg.res().act.G, rg.nfilt(), bound);
  for (const StratumClass& s : rg.strata())
    if (s.chi != 0) p = p * expand_factor(stratum_class(s), -s.chi, bound);
  return p;
}

// Points removed from one copy of the component: intersections with other
// components, and in curve mode the branch attachment points.
inline long removed_on_copy(const ResGraph& rg, int comp) {
  const Resolution& r = rg.res();
  long n = 0;
  for (const Site& s : r.sites) {
    if (!s.is_open() || (s.comp_a != comp && s.comp_b != comp)) continue;
    bool removed = s.is_corner() ||
                   (rg.mode() == Mode::kCurves && !s.branches.empty());
    if (removed) n += r.comps[comp].stab.size() / s.stab.size();
  }
  return n;
}

// Ordinary series of the expanded collection (curve mode: one index per
// distinct curve of the orbits; divisorial mode: one index per marked
// component): product over component copies of (1 - t^w)^{-chi} with chi
// the characteristic of the copy minus its removed points.
inline PlainSeries plain_poincare(const ResGraph& rg, long bound) {
  const Resolution& r = rg.res();
  int nvars = rg.mode() == Mode::kCurves
                  ? static_cast<int>(r.ex.copies.size())
                  : rg.nfilt();
  PlainSeries p = PlainSeries::one(nvars, bound);
  for (size_t k = 0; k < rg.copies().size(); ++k) {
    long chi = 2 - removed_on_copy(rg, rg.copies()[k].comp);
    if (chi == 0) continue;
    std::vector<long> w(nvars);
    for (int c = 0; c < nvars; ++c)
      w[c] = rg.mode() == Mode::kCurves
                 ? rg.minv(static_cast<int>(k), rg.attach_copy(c))
                 : rg.minv(static_cast<int>(k), rg.marked_copy(c));
    p = p * PlainSeries::power_factor(w, -chi, bound);
  }
  return p;
}

// Obstructions to reading the collection's topology off its series: two
// input curves in one orbit, or a smooth branch kept invariant by a group
// element acting non-scalarly.  Empty result means no obstruction.
inline std::vector<std::string> determination_obstructions(
    const GroupAction& act, const std::vector<Branch>& input) {
  std::vector<std::string> out;
  for (size_t i = 0; i < input.size(); ++i)
    for (size_t j = i + 1; j < input.size(); ++j)
      for (const GElem& g : act.G.elements())
        if (same_germ(input[i].acted(act, g), input[j])) {
          out.push_back("curves " + std::to_string(i) + " and " +
                        std::to_string(j) + " lie in one orbit");
          break;
        }
  for (size_t i = 0; i < input.size(); ++i) {
    long mult = std::min(input[i].xt().ord(), input[i].yt().ord());
    if (mult != 1) continue;
    Subgroup iso = input[i].isotropy(act);
    for (const GElem& g : iso.elements())
      if (act.chi_x(g) != act.chi_y(g)) {
        out.push_back("smooth invariant branch under non-scalar element (curve " +
                      std::to_string(i) + ")");
        break;
      }
  }
  return out;
}

// Copy index of the shifted curve g . C_i.
inline int shifted_copy(const Resolution& r, int input, const GElem& g) {
  const BranchCopy& base = r.ex.copies[r.ex.input_copy[input]];
  Branch img = base.curve.acted(r.act, g);
  for (size_t k = 0; k < r.ex.copies.size(); ++k)
    if (r.ex.copies[k].orbit == base.orbit && same_germ(r.ex.copies[k].curve, img))
      return static_cast<int>(k);
  throw internal_check_error("shifted branch copy not found");
}

// Reindex a series: new variable j reads its exponent off old variable
// src_of_new[j] (several new variables may share an old one).
inline PlainSeries inflate_vars(const PlainSeries& p, const std::vector<int>& src_of_new) {
  PlainSeries r(static_cast<int>(src_of_new.size()), p.bound());
  for (const auto& [e, m] : p.terms()) {
    std::vector<long> ne(src_of_new.size());
    for (size_t j = 0; j < src_of_new.size(); ++j) ne[j] = e[src_of_new[j]];
    r.add(ne, m);
  }
  return r;
}

// Dimension-counting oracle: filtration indices are curves given by
// parametrizations, possibly depending polynomially on a generic position
// parameter (slot 2) with curve parameter in slot 3.  l(v) is the number of
// independent linear conditions the contact orders put on jets, and the
// series coefficients follow by inclusion-exclusion over index subsets.
class JetsOracle {
 public:
  JetsOracle(FieldPtr field, std::vector<std::pair<MPoly, MPoly>> par)
      : field_(std::move(field)), par_(std::move(par)) {
    for (const auto& [x, y] : par_) {
      long ox = t_order(x), oy = t_order(y);
      minord_.push_back(std::min(ox, oy));
      check_math(minord_.back() >= 1 && minord_.back() < kBigOrd,
                 "index curve not passing through the origin");
    }
    cache_.resize(par_.size());
  }

  static JetsOracle for_branches(FieldPtr field, const std::vector<Branch>& bs) {
    std::vector<std::pair<MPoly, MPoly>> par;
    for (const Branch& b : bs)
      par.push_back({MPoly::from_upoly(b.xt(), 3), MPoly::from_upoly(b.yt(), 3)});
    return JetsOracle(std::move(field), std::move(par));
  }

  // Divisorial indices: generic transversal families through the marked
  // copies; the generic contact order equals the order along the divisor.
  static JetsOracle for_divisor(const ResGraph& rg) {
    const Resolution& r = rg.res();
    std::vector<std::pair<MPoly, MPoly>> par;
    for (int p = 0; p < rg.nfilt(); ++p) {
      const CompCopy& cc = rg.copies()[rg.marked_copy(p)];
      auto fam = rg.curvette_family(cc.comp);
      CycloNum lx = r.act.x_factor(cc.rep), ly = r.act.y_factor(cc.rep);
      par.push_back({fam.first * MPoly::constant(lx), fam.second * MPoly::constant(ly)});
    }
    return JetsOracle(r.act.field, std::move(par));
  }

  long ell(const std::vector<long>& v) {
    check_internal(v.size() == par_.size(), "index arity mismatch");
    auto it = memo_.find(v);
    if (it != memo_.end()) return it->second;
    long vmax = 0;
    for (size_t c = 0; c < v.size(); ++c)
      vmax = std::max(vmax, (v[c] + minord_[c] - 1) / minord_[c]);
    // Monomials beyond this jet degree have contact at least v with every
    // index curve and contribute zero columns.
    long kmax = vmax;
    std::vector<std::vector<CycloNum>> rows;
    for (size_t c = 0; c < v.size(); ++c) {
      if (v[c] <= 0) continue;
      long qmax = 0;
      std::vector<const MPoly*> vals;
      for (long i = 0; i <= kmax; ++i)
        for (long j = 0; i + j <= kmax; ++j) {
          const MPoly& m = mono_value(static_cast<int>(c), i, j, v[c]);
          vals.push_back(&m);
          for (const auto& [e, coef] : m.terms()) qmax = std::max(qmax, (long)e[2]);
        }
      for (long p = 0; p < v[c]; ++p)
        for (long q = 0; q <= qmax; ++q) {
          std::vector<CycloNum> row;
          bool nonzero = false;
          for (const MPoly* m : vals) {
            CycloNum e = coeff_of(*m, q, p);
            if (!e.is_zero()) nonzero = true;
            row.push_back(std::move(e));
          }
          if (nonzero) rows.push_back(std::move(row));
        }
    }
    long rank = matrix_rank(rows);
    memo_.emplace(v, rank);
    return rank;
  }

  PlainSeries series(long bound) {
    int r = static_cast<int>(par_.size());
    PlainSeries out(r, bound);
    std::vector<long> v(r, 0);
    for (;;) {
      long coeff = 0;
      for (unsigned mask = 0; mask < (1u << r); ++mask) {
        std::vector<long> u = v;
        int bits = 0;
        for (int c = 0; c < r; ++c)
          if (mask & (1u << c)) {
            ++u[c];
            ++bits;
          }
        coeff += (bits % 2 == 1 ? 1 : -1) * ell(u);
      }
      out.add(v, coeff);
      // next exponent vector with total <= bound
      int i = r - 1;
      for (; i >= 0; --i) {
        ++v[i];
        long tot = 0;
        for (long x : v) tot += x;
        if (tot <= bound) break;
        v[i] = 0;
      }
      if (i < 0) break;
    }
    return out;
  }

 private:
  // Order in t; a vanishing component (axis curve) has infinite contact.
  static constexpr long kBigOrd = 1L << 40;
  static long t_order(const MPoly& f) {
    long k = kBigOrd;
    for (const auto& [e, c] : f.terms()) k = std::min<long>(k, e[3]);
    return k;
  }

  static CycloNum coeff_of(const MPoly& m, long q, long p) {
    auto it = m.terms().find(ExpKey{0, 0, static_cast<int>(q), static_cast<int>(p)});
    return it == m.terms().end() ? CycloNum() : it->second;
  }

  // x^i y^j along index curve c, truncated beyond the needed contact order.
  const MPoly& mono_value(int c, long i, long j, long tcap) {
    auto key = std::array<long, 3>{i, j, tcap};
    auto it = cache_[c].find(key);
    if (it != cache_[c].end()) return it->second;
    MPoly m;
    if (i == 0 && j == 0)
      m = MPoly::constant(CycloNum(field_, Rational(1)));
    else if (j > 0)
      m = mono_value(c, i, j - 1, tcap) * par_[c].second;
    else
      m = mono_value(c, i - 1, 0, tcap) * par_[c].first;
    MPoly t;
    for (const auto& [e, coef] : m.terms())
      if (e[3] < tcap) t = t + MPoly::monomial(coef, e);
    return cache_[c].emplace(key, std::move(t)).first->second;
  }

  static long matrix_rank(std::vector<std::vector<CycloNum>>& rows) {
    if (rows.empty()) return 0;
    size_t ncols = rows[0].size();
    long rank = 0;
    for (size_t col = 0; col < ncols && rank < (long)rows.size(); ++col) {
      size_t piv = rank;
      while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
      if (piv == rows.size()) continue;
      std::swap(rows[rank], rows[piv]);
      for (size_t r = rank + 1; r < rows.size(); ++r) {
        if (rows[r][col].is_zero()) continue;
        CycloNum f = rows[r][col] / rows[rank][col];
        for (size_t cc = col; cc < ncols; ++cc)
          rows[r][cc] = rows[r][cc] - f * rows[rank][cc];
      }
      ++rank;
    }
    return rank;
  }

  FieldPtr field_;
  std::vector<std::pair<MPoly, MPoly>> par_;
  std::vector<long> minord_;
  std::map<std::vector<long>, long> memo_;
  std::vector<std::map<std::array<long, 3>, MPoly>> cache_;
};

// Read the diagonal representation back off a divisorial series.  Inverse
// factors whose class is a single fixed point are matched to strata on
// components carrying a smooth curvette (multiplicity-one certificate: the
// inverse intersection entry against the first component is 1); their twist
// characters are characters of linear coordinate forms, assigned by which
// side of the component's chart the stratum point sits on.  A factor on a
// pointwise-fixed component yields the scalar character.
// One read-off step of representation inference: the point stratum on
// component `comp` contributes an inverse one-point factor whose curvette is
// smooth downstairs, so its twist is the character of the semi-invariant
// linear form cutting the curvette.  `axis` says which form that was: 'x',
// 'y', or 's' when the curvette is transversal to both axes (scalar action).
struct InferStep {
  int comp;
  char axis;
  Character alpha;
};

struct InferResult {
  Character chi_x, chi_y;
  std::vector<InferStep> steps;
};

inline InferResult infer_representation_detailed(const GRSeries& p,
                                                 const ResGraph& rg) {
  const Resolution& r = rg.res();
  int first = -1;
  for (const Component& c : r.comps)
    if (c.nu == 1) {
      check_math(first < 0, "several first components");
      first = c.id;
    }
  check_math(first >= 0, "no first component");
  int e1 = rg.copy_index(first, r.act.G.zero());

  InferResult out;
  Character scalar;
  bool have_x = false, have_y = false, have_scalar = false;
  for (const auto& [c, s] : factor_exponents(p)) {
    if (c.npoints() != 1 || s >= 0) continue;
    const StratumClass* hit = nullptr;
    for (const StratumClass& st : rg.strata())
      if (stratum_class(st) == c) {
        hit = &st;
        break;
      }
    check_internal(hit != nullptr, "series factor without a matching stratum");
    if (rg.minv(rg.copy_index(hit->comp, r.act.G.zero()), e1) != 1)
      continue;  // the component's curvette is singular downstairs
    Character a = c.alpha().ambient_char();
    if (hit->site < 0) {
      scalar = a;
      have_scalar = true;
      out.steps.push_back({hit->comp, 's', a});
      continue;
    }
    // The twist of a point stratum with a smooth curvette is the character of
    // the linear form cutting that curvette, so the tangent axis of the
    // curvette downstairs tells which coordinate character was read off.
    Branch cv = rg.curvette_at(hit->site);
    long ox = cv.xt().ord(), oy = cv.yt().ord();
    if (ox == 1 && oy == 1) {
      scalar = a;  // transversal to both axes forces a scalar action
      have_scalar = true;
      out.steps.push_back({hit->comp, 's', a});
    } else if (oy == 1) {
      out.chi_x = a;  // tangent to the y-axis, cut by x + higher order
      have_x = true;
      out.steps.push_back({hit->comp, 'x', a});
    } else if (ox == 1) {
      out.chi_y = a;  // tangent to the x-axis, cut by y + higher order
      have_y = true;
      out.steps.push_back({hit->comp, 'y', a});
    }
  }
  if (have_scalar && !have_x) out.chi_x = scalar, have_x = true;
  if (have_scalar && !have_y) out.chi_y = scalar, have_y = true;
  if (!have_x || !have_y)
    throw math_error("series does not determine the representation");
  return out;
}

inline std::pair<Character, Character> infer_representation(const GRSeries& p,
                                                            const ResGraph& rg) {
  InferResult r = infer_representation_detailed(p, rg);
  return {r.chi_x, r.chi_y};
}

// Description of the first differing term of two equivariant series; empty
// when the series are equal.
inline std::string series_diff(const GRSeries& a, const GRSeries& b) {
  check_internal(a.bound() == b.bound(), "series with different truncation bounds");
  std::map<GRClass, std::pair<long, long>> all;
  for (const auto& [c, m] : a.terms()) all[c].first = m;
  for (const auto& [c, m] : b.terms()) all[c].second = m;
  for (const auto& [c, mm] : all)
    if (mm.first != mm.second)
      return c.to_string() + ": " + std::to_string(mm.first) + " vs " +
             std::to_string(mm.second);
  return "";
}

}  // namespace eqres
