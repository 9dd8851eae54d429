// Equivariant embedded resolution of a G-stable collection of plane curve
// branches by iterated blow-ups of orbits of points.
//
// Each interesting point is a "site" carrying a local coordinate frame
// (u, v) on which the site's stabilizer acts diagonally through two tracked
// characters; u is the equation of the newest exceptional component through
// the point.  Blowing up a site produces a new component whose chart
// relations are
//   chart U:  (u, v) = (a, a b)    with characters (gu, gv - gu) on (a, b),
//   chart V:  (u, v) = (c d, d)    with characters (gu - gv, gv) on (c, d),
// so the strict transform of {u = 0} meets the new component at b = infinity
// (the chart V origin) and the strict transform of {v = 0} at b = 0.  Only
// one representative point per orbit is tracked; branches landing on
// non-representative orbit members are recorded as "shadows" of their
// tracked counterparts and their attachment data is recovered by transport.
#pragma once

#include "eqres/branch.hpp"

namespace eqres {

struct LocalBranch {
  int copy;      // index into ExpandedBranches.copies
  RatFunc u, v;  // local parametrization in the site's frame, vanishing at t=0
};

struct Site {
  int id = -1;
  int comp_a = -1;  // component whose equation is the frame coordinate u
  int comp_b = -1;  // second component through the point (corner), else -1
  enum class Pos { kInitial, kZero, kInfinity, kTranslated };
  Pos pos = Pos::kInitial;
  CycloNum b0;  // position on the parent P1 for kTranslated
  Subgroup stab;
  SubChar gu, gv;
  std::vector<LocalBranch> branches;
  // Chart relation to the frame of parent_site (for pushing curvettes down).
  enum class Chart { kNone, kUOrigin, kUTranslated, kVOrigin };
  Chart chart = Chart::kNone;
  int parent_site = -1;
  int child = -1;                  // component created by blowing this site
  std::map<int, long> blow_mults;  // branch copy -> multiplicity at blow time

  bool is_corner() const { return comp_b >= 0; }
  bool is_open() const { return child < 0; }
};

struct Component {
  int id = -1;
  long nu = 1;         // multiplicity weight: 1 + sum over components through
                       // the blown point (canonical recursion)
  long self_int = -1;  // self-intersection of the representative copy
  Subgroup stab;       // G_sigma: stabilizer of the representative copy
  Subgroup pointwise;  // G*_sigma: kernel of the action on the component
  SubChar gamma_b;     // character of the stabilizer action on the P1
  int birth_site = -1;
};

struct Resolution {
  GroupAction act;
  std::vector<Branch> input;
  ExpandedBranches ex;
  std::vector<Component> comps;
  std::vector<Site> sites;
  // Attachment of each expanded branch copy: the copy's strict transform
  // meets the divisor at arrow_transport[c] . (representative point of
  // arrow_site[c]).
  std::vector<int> arrow_site;
  std::vector<GElem> arrow_transport;

  std::vector<int> sites_on(int comp) const {
    std::vector<int> out;
    for (const Site& s : sites)
      if (s.comp_a == comp || s.comp_b == comp) out.push_back(s.id);
    return out;
  }
  // Component copy carrying the attachment point of a branch copy.
  int arrow_comp(int copy) const { return sites[arrow_site[copy]].comp_a; }
};

namespace detail {

class BlowupEngine {
 public:
  BlowupEngine(const GroupAction& act, const std::vector<Branch>& input) {
    r_.act = act;
    r_.input = input;
    r_.ex = ExpandedBranches::build(act, input);
    build_copy_action();
  }

  Resolution run() {
    seed_origin();
    for (int round = 0; round < 600; ++round) {
      std::vector<int> work;
      for (const Site& s : r_.sites)
        if (s.is_open() && violates(s)) work.push_back(s.id);
      if (work.empty()) {
        finalize();
        return std::move(r_);
      }
      for (int sid : work) blow(sid);
      check_internal(r_.comps.size() < 500, "resolution failed to terminate");
    }
    throw internal_check_error("resolution failed to terminate");
  }

 private:
  using BranchList = std::vector<LocalBranch>;

  void build_copy_action() {
    for (const GElem& g : r_.act.G.elements()) {
      std::vector<int> perm(r_.ex.copies.size(), -1);
      for (size_t c = 0; c < r_.ex.copies.size(); ++c) {
        Branch img = r_.ex.copies[c].curve.acted(r_.act, g);
        for (size_t d = 0; d < r_.ex.copies.size(); ++d)
          if (same_germ(img, r_.ex.copies[d].curve)) {
            perm[c] = static_cast<int>(d);
            break;
          }
        check_internal(perm[c] >= 0, "copy set not closed under the action");
      }
      copy_act_[g] = std::move(perm);
    }
  }

  void seed_origin() {
    Site s;
    s.id = 0;
    s.pos = Site::Pos::kInitial;
    s.stab = Subgroup::full(r_.act.G);
    s.gu = SubChar(r_.act.chi_x, s.stab);
    s.gv = SubChar(r_.act.chi_y, s.stab);
    for (size_t c = 0; c < r_.ex.copies.size(); ++c)
      s.branches.push_back({static_cast<int>(c), r_.ex.copies[c].curve.x_rat(),
                            r_.ex.copies[c].curve.y_rat()});
    r_.sites.push_back(std::move(s));
  }

  bool violates(const Site& s) const {
    if (s.pos == Site::Pos::kInitial) return true;  // the first blow-up is forced
    if (s.branches.empty()) return false;
    if (s.is_corner()) return true;        // branch through a divisor double point
    if (s.branches.size() >= 2) return true;  // branches must be separated
    const LocalBranch& b = s.branches[0];
    long ou = b.u.ord(), ov = b.v.ord();
    if (std::min(ou, ov) >= 2) return true;  // singular strict transform
    if (s.comp_a >= 0 && ou >= 2) return true;  // tangent to the component
    return false;
  }

  void blow(int sid) {
    Site s = r_.sites[sid];  // copy: r_.sites may reallocate below
    const Subgroup H = s.stab;

    // New component.
    Component comp;
    comp.id = static_cast<int>(r_.comps.size());
    comp.nu = 1;
    if (s.comp_a >= 0) comp.nu += r_.comps[s.comp_a].nu;
    if (s.comp_b >= 0) comp.nu += r_.comps[s.comp_b].nu;
    comp.self_int = -1;
    comp.stab = H;
    comp.gamma_b = s.gv - s.gu;
    comp.pointwise = H.kernel_of(comp.gamma_b.ambient_char());
    comp.birth_site = sid;

    // Parent components lose one point per orbit member on their rep copy.
    for (int pc : {s.comp_a, s.comp_b}) {
      if (pc < 0) continue;
      check_internal(r_.comps[pc].stab.contains_subgroup(H),
                     "point stabilizer exceeds component stabilizer");
      r_.comps[pc].self_int -= r_.comps[pc].stab.size() / H.size();
    }

    // Multiplicity record for Noether-style cross-checks.
    for (const LocalBranch& b : s.branches) {
      long m = std::min(b.u.ord(), b.v.ord());
      check_internal(m >= 1, "blown branch does not pass through the site");
      s.blow_mults[b.copy] = m;
    }

    // Transport branches through the blow-up.
    BranchList at_zero, at_inf;
    std::map<CycloNum, BranchList> translated;
    for (const LocalBranch& b : s.branches) {
      if (b.u.ord() <= b.v.ord()) {
        RatFunc slope = b.v / b.u;
        CycloNum b0 = slope.at_zero();
        if (b0.is_zero()) {
          at_zero.push_back({b.copy, b.u, slope});
        } else {
          translated[b0].push_back({b.copy, b.u, slope - b0});
        }
      } else {
        at_inf.push_back({b.copy, b.v, b.u / b.v});
      }
    }

    // Fixed sites of the new P1 (b = 0 and b = infinity).
    Site zero;
    zero.comp_a = comp.id;
    zero.comp_b = s.comp_b;  // strict transform of {v=0} if it was a divisor
    zero.pos = Site::Pos::kZero;
    zero.stab = H;
    zero.gu = s.gu;
    zero.gv = s.gv - s.gu;
    zero.chart = Site::Chart::kUOrigin;
    zero.parent_site = sid;
    zero.branches = std::move(at_zero);

    Site inf;
    inf.comp_a = comp.id;
    inf.comp_b = s.comp_a;  // strict transform of {u=0}
    inf.pos = Site::Pos::kInfinity;
    inf.stab = H;
    inf.gu = s.gv;
    inf.gv = s.gu - s.gv;
    inf.chart = Site::Chart::kVOrigin;
    inf.parent_site = sid;
    inf.branches = std::move(at_inf);

    std::vector<Site> fresh;
    fresh.push_back(std::move(zero));
    fresh.push_back(std::move(inf));

    // Translated landing points, grouped into orbits of the stabilizer; only
    // the representative of each orbit is kept.
    const Subgroup ker = comp.pointwise;
    std::set<CycloNum> seen;
    for (const auto& [b0, list] : translated) {
      if (seen.count(b0)) continue;
      // Orbit of this landing value under H.
      std::map<CycloNum, GElem> orbit;  // value -> element sending b0 to it
      for (const GElem& h : H.elements()) {
        CycloNum val = comp.gamma_b.ambient_char().root_of_unity(r_.act.field, h) * b0;
        if (!orbit.count(val)) orbit.emplace(val, h);
      }
      check_internal(orbit.size() == static_cast<size_t>(H.size() / ker.size()),
                     "translated orbit size mismatch");
      int best_copy = std::numeric_limits<int>::max();
      for (const auto& [val, h] : orbit) {
        auto it = translated.find(val);
        check_internal(it != translated.end(), "landing points not orbit-symmetric");
        for (const LocalBranch& b : it->second) best_copy = std::min(best_copy, b.copy);
      }
      // Representative: carries the smallest copy index; ties by position.
      CycloNum rep_val;
      bool have = false;
      for (const auto& [val, h] : orbit) {
        for (const LocalBranch& b : translated[val])
          if (b.copy == best_copy && !have) {
            rep_val = val;
            have = true;
          }
      }
      check_internal(have, "no representative landing point");
      // Re-anchor the orbit on the representative.
      GElem to_rep = orbit[rep_val];
      for (const auto& [val, h] : orbit) {
        seen.insert(val);
        if (val == rep_val) continue;
        // h_rel sends rep_val to val.
        GElem h_rel = r_.act.G.add(h, r_.act.G.neg(to_rep));
        check_internal(
            comp.gamma_b.ambient_char().root_of_unity(r_.act.field, h_rel) * rep_val ==
                val,
            "orbit transport inconsistent");
        GElem h_inv = r_.act.G.neg(h_rel);
        for (const LocalBranch& b : translated[val]) {
          int src = copy_act_.at(h_inv)[b.copy];
          bool found = false;
          for (const LocalBranch& rb : translated[rep_val]) found |= rb.copy == src;
          check_internal(found, "shadow source copy not tracked at representative");
          check_internal(!shadow_.count(b.copy), "branch copy dropped twice");
          shadow_[b.copy] = {h_rel, src};
        }
      }
      Site tr;
      tr.comp_a = comp.id;
      tr.pos = Site::Pos::kTranslated;
      tr.b0 = rep_val;
      tr.stab = ker;
      tr.gu = s.gu.restrict_to(ker);
      tr.gv = SubChar::trivial(ker);
      tr.chart = Site::Chart::kUTranslated;
      tr.parent_site = sid;
      tr.branches = translated[rep_val];
      fresh.push_back(std::move(tr));
    }

    r_.sites[sid] = std::move(s);
    r_.sites[sid].child = comp.id;
    r_.sites[sid].branches.clear();  // now recoverable from blow_mults
    r_.comps.push_back(std::move(comp));
    for (Site& f : fresh) {
      f.id = static_cast<int>(r_.sites.size());
      r_.sites.push_back(std::move(f));
    }
  }

  void finalize() {
    size_t n = r_.ex.copies.size();
    r_.arrow_site.assign(n, -1);
    r_.arrow_transport.assign(n, r_.act.G.zero());
    for (const Site& s : r_.sites) {
      if (!s.is_open() || s.branches.empty()) continue;
      check_internal(s.branches.size() == 1 && !s.is_corner(),
                     "unresolved crossing survived the resolution loop");
      const LocalBranch& b = s.branches[0];
      check_internal(b.u.ord() == 1 && b.v.ord() >= 1,
                     "non-transversal attachment survived the resolution loop");
      r_.arrow_site[b.copy] = s.id;
    }
    for (size_t c = 0; c < n; ++c) {
      int cur = static_cast<int>(c);
      GElem g = r_.act.G.zero();
      int guard = 0;
      while (r_.arrow_site[cur] < 0) {
        auto it = shadow_.find(cur);
        check_internal(it != shadow_.end(), "branch copy lost during resolution");
        g = r_.act.G.add(g, it->second.first);
        cur = it->second.second;
        check_internal(++guard < 1000, "shadow chain does not terminate");
      }
      r_.arrow_site[c] = r_.arrow_site[cur];
      r_.arrow_transport[c] = g;
    }
  }

  Resolution r_;
  std::map<GElem, std::vector<int>> copy_act_;
  std::map<int, std::pair<GElem, int>> shadow_;  // copy -> (h, tracked copy)
};

}  // namespace detail

// Resolve the G-orbit closure of the given branches.  The result's dual
// graph, strata, and filtration data are derived by the graph layer.
inline Resolution resolve_collection(const GroupAction& act,
                                     const std::vector<Branch>& input) {
  check_internal(!input.empty(), "empty branch collection");
  return detail::BlowupEngine(act, input).run();
}

}  // namespace eqres
