// Resolution graphs enriched with copy-level (expanded) intersection data.
//
// On top of a finished Resolution this module builds:
//   * the expanded intersection matrix over actual component copies (one row
//     per coset of a component stabilizer), its inverse, and the unimodularity
//     and positivity checks that come with it;
//   * curvette push-downs: transversal curves through a chosen point of the
//     exceptional divisor written in the original (x, y) coordinates, both at
//     tracked sites and as a one-parameter family over a generic position;
//   * multiplicity vectors and twisting characters of divisor strata, each
//     computed by two independent routes (direct evaluation on curvettes
//     versus graph combinatorics) with mismatches raised as internal errors;
//   * the stratification underlying the equivariant Poincare series, in
//     curve-collection mode and in marked-divisor (pair-of-curvettes) mode;
//   * a layered equivalence test for decorated graphs and DOT export.
#pragma once

#include <functional>
#include <sstream>

#include "eqres/blowup.hpp"

namespace eqres {

enum class Mode { kCurves, kDivisorial };

// A divisorial filtration index: the component met by two chosen curvettes
// (indices into the input branch list) at two distinct points.
struct DivPair {
  int a = -1;
  int b = -1;
};

// One stratum of the exceptional divisor, recorded as an orbit type: points
// form copies of G/H, each coset representative carries a multiplicity
// vector, and the stabilizer acts on a transversal slice through the
// character alpha.  chi is the Euler characteristic of the quotient stratum
// (1 for point strata).
struct StratumClass {
  int comp;
  int site;  // tracked site id for a point stratum, -1 for the generic one
  long chi;
  Subgroup H;
  SubChar alpha;
  std::vector<GElem> reps;
  std::vector<std::vector<long>> w;

  StratumClass(int c, int s, long x, Subgroup h, SubChar a)
      : comp(c), site(s), chi(x), H(std::move(h)), alpha(std::move(a)) {}
};

struct CompareResult {
  int first_diff_layer = 0;  // 0 when fully equivalent, else 1..3
  std::string detail_a;
  std::string detail_b;
  bool equal() const { return first_diff_layer == 0; }
};

inline const char* compare_layer_name(int layer) {
  switch (layer) {
    case 1:
      return "decorated shape";
    case 2:
      return "attachment characters";
    case 3:
      return "point character decorations";
    default:
      return "none";
  }
}

// Equation of g^{-1}.C from the equation of C: compose with the action of g
// on the plane and renormalize.
inline MPoly acted_equation(const GroupAction& act, const MPoly& eq, const GElem& g) {
  return eq.scale_vars({act.x_factor(g), act.y_factor(g), CycloNum(1), CycloNum(1)})
      .normalized();
}

struct CompCopy {
  int comp;
  GElem rep;  // canonical coset representative of the component stabilizer
};

class ResGraph {
 public:
  ResGraph(Resolution res, Mode mode, std::vector<DivPair> pairs = {})
      : r_(std::move(res)),
        mode_(mode),
        pairs_(std::move(pairs)),
        full_(Subgroup::full(r_.act.G)) {
    if (mode_ == Mode::kCurves) {
      check_internal(pairs_.empty(), "pair markings require divisorial mode");
      nidx_ = static_cast<int>(r_.input.size());
    } else {
      if (pairs_.empty())
        throw input_error("divisorial mode needs at least one curvette pair");
      nidx_ = static_cast<int>(pairs_.size());
    }
    build_copies();
    build_matrix();
    build_attachments();
    if (mode_ == Mode::kDivisorial) build_marks();
    build_strata();
  }

  const Resolution& res() const { return r_; }
  Mode mode() const { return mode_; }
  int nfilt() const { return nidx_; }
  const std::vector<CompCopy>& copies() const { return copies_; }
  const std::vector<std::vector<long>>& mtilde() const { return mtilde_; }
  const std::vector<std::vector<long>>& minv_matrix() const { return minv_; }
  long minv(int i, int j) const { return minv_[i][j]; }
  int attach_copy(int branch_copy) const { return attach_copy_[branch_copy]; }
  int marked_copy(int pair) const { return marked_copy_[pair]; }
  const std::vector<StratumClass>& strata() const { return strata_; }

  // Index of the copy of `comp` containing the coset of g.
  int copy_index(int comp, const GElem& g) const {
    const Subgroup& h = r_.comps[comp].stab;
    GElem best = r_.act.G.add(g, h.elements().front());
    for (const GElem& e : h.elements()) best = std::min(best, r_.act.G.add(g, e));
    auto it = copy_lookup_.find({comp, best});
    check_internal(it != copy_lookup_.end(), "unknown component copy");
    return it->second;
  }

  // Multiplicity of a branch copy along the identity copy of a component,
  // recovered from the per-blow-up multiplicity records alone (no matrix
  // inverse): the value at the created point plus the values along all
  // components through that point.
  long chain_mult(int branch_copy, int comp) const {
    std::map<int, long> memo;
    std::function<long(int)> m = [&](int c) -> long {
      auto hit = memo.find(c);
      if (hit != memo.end()) return hit->second;
      const Site& b = r_.sites[r_.comps[c].birth_site];
      long v = 0;
      auto bt = b.blow_mults.find(branch_copy);
      if (bt != b.blow_mults.end()) v = bt->second;
      if (b.comp_a >= 0) v += m(b.comp_a);
      if (b.comp_b >= 0) v += m(b.comp_b);
      memo[c] = v;
      return v;
    };
    return m(comp);
  }

  // Rewrite a parametrized curve from the local frame of `site` to the
  // original (x, y) coordinates by unwinding the chart chain.
  std::pair<MPoly, MPoly> push_down(int site, MPoly u, MPoly v) const {
    int sid = site;
    while (sid >= 0) {
      const Site& s = r_.sites[sid];
      if (s.chart == Site::Chart::kNone) break;
      switch (s.chart) {
        case Site::Chart::kUOrigin:
          v = u * v;
          break;
        case Site::Chart::kUTranslated:
          v = u * (v + MPoly::constant(s.b0));
          break;
        case Site::Chart::kVOrigin: {
          MPoly keep = u;
          u = v * u;
          v = keep;
          break;
        }
        default:
          break;
      }
      sid = s.parent_site;
    }
    return {u, v};
  }

  // One-parameter family of curvettes on a component: the curve {b = c} in
  // the birth chart, pushed to the plane.  Slot 3 is the curve parameter,
  // slot 2 the position along the component.
  std::pair<MPoly, MPoly> curvette_family(int comp) const {
    return push_down(zero_site_of(comp), MPoly::variable(3), MPoly::variable(2));
  }

  // Concrete transversal curvette through the tracked point of a site.
  Branch curvette_at(int site) const {
    check_internal(!r_.sites[site].is_corner(), "no curvette at a corner site");
    auto [x, y] = push_down(site, MPoly::variable(3), MPoly());
    return Branch(x.to_upoly(3), y.to_upoly(3));
  }

  // Twisting character at a tracked site from graph data: m*gu + gv on the
  // point stabilizer, with m the diagonal inverse entry of the copy.
  SubChar alpha_graph_at(int site) const {
    const Site& s = r_.sites[site];
    int k = copy_index(s.comp_a, r_.act.G.zero());
    return s.gu.scaled(minv_[k][k]) + s.gv;
  }

  // Twisting character at a tracked site from the curvette itself: the
  // semi-invariance character of its defining equation.
  SubChar alpha_direct_at(int site) const {
    return semi_invariant_character(curvette_at(site), r_.act, r_.sites[site].stab);
  }

  // Twisting character along the generic stratum of a component, on the
  // pointwise stabilizer; cross-checked against the implicitized curvette
  // family whenever that stabilizer is nontrivial.
  SubChar alpha_generic(int comp) const {
    const Component& c = r_.comps[comp];
    const Site& z = r_.sites[zero_site_of(comp)];
    int k = copy_index(comp, r_.act.G.zero());
    SubChar graph = (z.gu.scaled(minv_[k][k]) + z.gv).restrict_to(c.pointwise);
    if (!c.pointwise.is_trivial()) {
      auto [x, y] = curvette_family(comp);
      MPoly f = resultant_wrt(MPoly::variable(0) - x, MPoly::variable(1) - y, 3)
                    .normalized();
      SubChar direct = semi_invariant_character(f, r_.act, c.pointwise);
      check_internal(direct == graph, "twisting character computations disagree");
    }
    return graph;
  }

  // Layered equivalence of decorated graphs: 1 compares the equivariant
  // shape (tree, multiplicity orders, self-intersections, stabilizers,
  // arrow index sets, marks), 2 adds the attachment characters of the
  // component equations at every tracked boundary point, 3 adds the full
  // character decorations (transversal characters and twists).
  static CompareResult compare(const ResGraph& a, const ResGraph& b) {
    if (a.r_.act.G != b.r_.act.G || a.mode_ != b.mode_ || a.nidx_ != b.nidx_) {
      CompareResult r;
      r.first_diff_layer = 1;
      r.detail_a = a.ambient_str();
      r.detail_b = b.ambient_str();
      return r;
    }
    for (int layer = 1; layer <= 3; ++layer) {
      std::string ea = a.canonical_form(layer);
      std::string eb = b.canonical_form(layer);
      if (ea != eb) return {layer, ea, eb};
    }
    return {};
  }

  // Canonical string of the decorated graph at the given comparison layer.
  // The graph is a tree rooted at the unique component of multiplicity
  // order one; children are sorted by their own encodings.
  std::string canonical_form(int layer) const {
    int root = -1;
    for (int c = 0; c < static_cast<int>(r_.comps.size()); ++c)
      if (r_.comps[c].nu == 1) {
        check_internal(root < 0, "several minimal components");
        root = c;
      }
    check_internal(root >= 0, "no minimal component");
    std::vector<std::vector<std::pair<int, int>>> adj(r_.comps.size());
    for (int sid = 0; sid < static_cast<int>(r_.sites.size()); ++sid) {
      const Site& s = r_.sites[sid];
      if (!s.is_open() || !s.is_corner()) continue;
      adj[s.comp_a].push_back({s.comp_b, sid});
      adj[s.comp_b].push_back({s.comp_a, sid});
    }
    std::vector<char> seen(r_.comps.size(), 0);
    std::function<std::string(int, int)> enc = [&](int c, int via) -> std::string {
      check_internal(!seen[c], "exceptional graph is not a tree");
      seen[c] = 1;
      std::vector<std::string> kids;
      for (auto [other, sid] : adj[c]) {
        if (sid == via) continue;
        kids.push_back("~" + edge_label(sid) + enc(other, sid));
      }
      std::sort(kids.begin(), kids.end());
      std::string out = "(" + node_label(layer, c);
      for (const std::string& k : kids) out += k;
      return out + ")";
    };
    return enc(root, -1);
  }

  std::string dot() const {
    std::ostringstream o;
    o << "graph resolution {\n  node [fontsize=10];\n";
    for (size_t c = 0; c < r_.comps.size(); ++c) {
      const Component& cc = r_.comps[c];
      o << "  c" << c << " [shape=circle,label=\"E" << c << "\\nnu=" << cc.nu
        << " s=" << cc.self_int << " |G|=" << cc.stab.size() << "\"];\n";
    }
    for (size_t sid = 0; sid < r_.sites.size(); ++sid) {
      const Site& s = r_.sites[sid];
      if (!s.is_open()) continue;
      if (s.is_corner()) {
        o << "  c" << s.comp_a << " -- c" << s.comp_b << " [label=\"|H|="
          << s.stab.size() << "\"];\n";
      } else if (!s.branches.empty()) {
        o << "  a" << sid << " [shape=box,label=\"" << arrow_label(sid) << "\"];\n";
        o << "  c" << s.comp_a << " -- a" << sid << " [style=dashed];\n";
      }
    }
    o << "}\n";
    return o.str();
  }

 private:
  void build_copies() {
    for (int c = 0; c < static_cast<int>(r_.comps.size()); ++c)
      for (const GElem& rep : r_.comps[c].stab.coset_reps_in(full_)) {
        copy_lookup_[{c, rep}] = static_cast<int>(copies_.size());
        copies_.push_back({c, rep});
      }
  }

  void build_matrix() {
    int n = static_cast<int>(copies_.size());
    mtilde_.assign(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i)
      mtilde_[i][i] = r_.comps[copies_[i].comp].self_int;
    for (const Site& s : r_.sites) {
      if (!s.is_open() || !s.is_corner()) continue;
      for (const GElem& g : s.stab.coset_reps_in(full_)) {
        int i = copy_index(s.comp_a, g);
        int j = copy_index(s.comp_b, g);
        mtilde_[i][j] += 1;
        mtilde_[j][i] += 1;
      }
    }

    // Invert -mtilde over the rationals, tracking the determinant.
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a[i][j] = Rational(-mtilde_[i][j]);
      inv[i][i] = 1;
    }
    Rational det(1);
    for (int col = 0; col < n; ++col) {
      int piv = -1;
      for (int row = col; row < n; ++row)
        if (a[row][col] != 0) {
          piv = row;
          break;
        }
      check_internal(piv >= 0, "expanded intersection matrix is singular");
      if (piv != col) {
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        det = -det;
      }
      Rational p = a[col][col];
      det *= p;
      for (int j = 0; j < n; ++j) {
        a[col][j] /= p;
        inv[col][j] /= p;
      }
      for (int row = 0; row < n; ++row) {
        if (row == col || a[row][col] == 0) continue;
        Rational f = a[row][col];
        for (int j = 0; j < n; ++j) {
          a[row][j] -= f * a[col][j];
          inv[row][j] -= f * inv[col][j];
        }
      }
    }
    check_internal(det == 1 || det == -1,
                   "expanded intersection matrix is not unimodular");
    det_neg_ = det == 1 ? 1 : -1;
    minv_.assign(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        check_internal(boost::multiprecision::denominator(inv[i][j]) == 1,
                       "inverse intersection entry is not an integer");
        long v = boost::multiprecision::numerator(inv[i][j]).convert_to<long>();
        check_internal(v >= 1, "inverse intersection entry is not positive");
        minv_[i][j] = v;
      }
  }

  void build_attachments() {
    attach_copy_.resize(r_.ex.copies.size());
    for (size_t c = 0; c < r_.ex.copies.size(); ++c)
      attach_copy_[c] =
          copy_index(r_.sites[r_.arrow_site[c]].comp_a, r_.arrow_transport[c]);
  }

  void build_marks() {
    marked_copy_.resize(pairs_.size());
    for (size_t p = 0; p < pairs_.size(); ++p) {
      const DivPair& pr = pairs_[p];
      if (pr.a < 0 || pr.b < 0 || pr.a >= static_cast<int>(r_.input.size()) ||
          pr.b >= static_cast<int>(r_.input.size()) || pr.a == pr.b)
        throw input_error("curvette pair indices out of range");
      int ca = r_.ex.input_copy[pr.a];
      int cb = r_.ex.input_copy[pr.b];
      int sa = r_.arrow_site[ca];
      int sb = r_.arrow_site[cb];
      if (r_.sites[sa].comp_a != r_.sites[sb].comp_a)
        throw math_error("the two curvettes of a pair meet different components");
      if (attach_copy_[ca] != attach_copy_[cb])
        throw math_error(
            "the two curvettes of a pair meet different copies of their component");
      if (sa == sb && r_.arrow_transport[ca] == r_.arrow_transport[cb])
        throw math_error("the two curvettes of a pair meet the divisor at the same point");
      marked_copy_[p] = attach_copy_[ca];
    }
  }

  int zero_site_of(int comp) const {
    for (int sid = 0; sid < static_cast<int>(r_.sites.size()); ++sid) {
      const Site& s = r_.sites[sid];
      if (s.comp_a == comp && s.parent_site == r_.comps[comp].birth_site &&
          s.chart == Site::Chart::kUOrigin)
        return sid;
    }
    throw internal_check_error("component without a birth chart origin");
  }

  // Minimal order in the curve parameter over a generic position, with the
  // critical position polynomial whose roots are where the order jumps.
  static std::pair<long, UPoly<CycloNum>> generic_t_order(const MPoly& f) {
    check_internal(!f.is_zero(), "equation vanishes along a curvette family");
    long k = -1;
    for (const auto& [e, c] : f.terms())
      if (k < 0 || e[3] < k) k = e[3];
    return {k, f.coeff_in(3, k).to_upoly(2)};
  }

  // Every root of the critical position polynomial must be a tracked
  // position on the component or in the orbit of one.
  void verify_generic_drop(int comp, UPoly<CycloNum> crit) const {
    for (const CycloNum& pos : known_positions(comp)) {
      UPoly<CycloNum> lin({CycloNum() - pos, CycloNum(1)});
      while (crit.deg() >= 1 && crit.eval(pos).is_zero()) crit = crit.exact_div(lin);
    }
    check_internal(crit.deg() == 0 && !crit.is_zero(),
                   "multiplicity drops at an untracked divisor position");
  }

  std::set<CycloNum> known_positions(int comp) const {
    const Component& c = r_.comps[comp];
    Character gb = c.gamma_b.ambient_char();
    std::set<CycloNum> out;
    for (const Site& s : r_.sites) {
      if (s.comp_a != comp) continue;
      if (s.pos == Site::Pos::kZero) {
        out.insert(CycloNum(r_.act.field, Rational(0)));
      } else if (s.pos == Site::Pos::kTranslated) {
        for (const GElem& h : c.stab.elements())
          out.insert(gb.root_of_unity(r_.act.field, h) * s.b0);
      }
    }
    return out;
  }

  // Multiplicity vector of the stratum points in the coset of g: direct
  // curvette evaluation cross-checked against the inverse matrix entries in
  // curve mode, inverse matrix entries against marked copies in divisorial
  // mode.
  std::vector<long> stratum_w(int comp, const GElem& g, int site) const {
    std::vector<long> row;
    int kr = copy_index(comp, g);
    if (mode_ == Mode::kDivisorial) {
      for (size_t p = 0; p < pairs_.size(); ++p)
        row.push_back(minv_[kr][marked_copy_[p]]);
      return row;
    }
    std::pair<MPoly, MPoly> xy = site < 0
                                     ? curvette_family(comp)
                                     : push_down(site, MPoly::variable(3), MPoly());
    for (size_t i = 0; i < r_.input.size(); ++i) {
      MPoly f = acted_equation(r_.act, r_.input[i].equation(), g)
                    .subst_xy(xy.first, xy.second);
      auto [k, crit] = generic_t_order(f);
      if (site < 0) verify_generic_drop(comp, crit);
      long km = minv_[kr][attach_copy_[r_.ex.input_copy[i]]];
      check_internal(k == km,
                     "intersection multiplicities from the curve and from the graph disagree");
      row.push_back(k);
    }
    return row;
  }

  void build_strata() {
    for (int comp = 0; comp < static_cast<int>(r_.comps.size()); ++comp) {
      const Component& c = r_.comps[comp];
      bool enlarged = !c.gamma_b.is_trivial();
      long npts = 0;
      std::vector<int> point_sites;
      for (int sid = 0; sid < static_cast<int>(r_.sites.size()); ++sid) {
        const Site& s = r_.sites[sid];
        if (!s.is_open() || (s.comp_a != comp && s.comp_b != comp)) continue;
        check_internal(c.stab.contains_subgroup(s.stab),
                       "site stabilizer exceeds component stabilizer");
        bool corner = s.is_corner();
        bool arrow = !s.branches.empty();
        bool removed = corner || (mode_ == Mode::kCurves && arrow);
        bool axis = s.comp_a == comp &&
                    (s.pos == Site::Pos::kZero || s.pos == Site::Pos::kInfinity);
        bool special = removed || (axis && enlarged);
        if (!special) continue;
        npts += c.stab.size() / s.stab.size();
        if (!removed) point_sites.push_back(sid);
      }

      long q = c.stab.size() / c.pointwise.size();
      long num = 2 - npts;
      check_internal(num % q == 0,
                     "generic stratum characteristic is not divisible by the orbit size");
      StratumClass gen(comp, -1, num / q, c.pointwise, alpha_generic(comp));
      gen.reps = c.pointwise.coset_reps_in(full_);
      for (const GElem& g : gen.reps) gen.w.push_back(stratum_w(comp, g, -1));
      strata_.push_back(std::move(gen));

      for (int sid : point_sites) {
        const Site& s = r_.sites[sid];
        check_internal(s.stab == c.stab, "axis point with partial stabilizer");
        SubChar ag = alpha_graph_at(sid);
        check_internal(ag == alpha_direct_at(sid),
                       "twisting character computations disagree");
        StratumClass pt(comp, sid, 1, s.stab, ag);
        pt.reps = s.stab.coset_reps_in(full_);
        for (const GElem& g : pt.reps) pt.w.push_back(stratum_w(comp, g, sid));
        strata_.push_back(std::move(pt));
      }
    }
  }

  static std::string elems_str(const Subgroup& h) {
    std::ostringstream o;
    o << "{";
    for (const GElem& e : h.elements()) o << vec_str(e);
    o << "}";
    return o.str();
  }
  static std::string vec_str(const std::vector<long>& v) {
    std::ostringstream o;
    o << "(";
    for (size_t i = 0; i < v.size(); ++i) o << (i ? "," : "") << v[i];
    o << ")";
    return o.str();
  }
  static std::string char_str(const Character& c) { return vec_str(c.tuple()); }

  std::string ambient_str() const {
    std::ostringstream o;
    o << "group=" << vec_str(r_.act.G.factors)
      << ";mode=" << (mode_ == Mode::kCurves ? "curves" : "divisorial")
      << ";indices=" << nidx_;
    return o.str();
  }

  std::string arrow_label(int sid) const {
    std::set<int> labels;
    for (size_t c = 0; c < r_.ex.copies.size(); ++c)
      if (r_.arrow_site[c] == sid)
        labels.insert(r_.ex.copies[c].labels.begin(), r_.ex.copies[c].labels.end());
    std::ostringstream o;
    o << "{";
    bool first = true;
    for (int l : labels) {
      o << (first ? "" : ",") << l;
      first = false;
    }
    o << "}";
    return o.str();
  }

  std::string edge_label(int sid) const {
    return "[H=" + elems_str(r_.sites[sid].stab) + "]";
  }

  std::string node_label(int layer, int comp) const {
    const Component& c = r_.comps[comp];
    std::ostringstream o;
    o << "nu=" << c.nu << ";s=" << c.self_int << ";G=" << elems_str(c.stab)
      << ";P=" << elems_str(c.pointwise);
    std::vector<std::string> decor;
    for (int sid = 0; sid < static_cast<int>(r_.sites.size()); ++sid) {
      const Site& s = r_.sites[sid];
      if (!s.is_open() || s.comp_a != comp || s.is_corner()) continue;
      std::ostringstream d;
      d << (s.branches.empty() ? "pt" : "ar") << arrow_label(sid)
        << ";H=" << elems_str(s.stab);
      if (layer >= 2) d << ";gu=" << char_str(s.gu.ambient_char());
      if (layer >= 3)
        d << ";gv=" << char_str(s.gv.ambient_char())
          << ";al=" << char_str(alpha_graph_at(sid).ambient_char());
      decor.push_back(d.str());
    }
    std::sort(decor.begin(), decor.end());
    o << ";bd=[";
    for (const std::string& d : decor) o << "<" << d << ">";
    o << "]";
    if (mode_ == Mode::kDivisorial) {
      o << ";mk=[";
      for (size_t p = 0; p < pairs_.size(); ++p)
        if (copies_[marked_copy_[p]].comp == comp) o << p << ",";
      o << "]";
    }
    return o.str();
  }

  Resolution r_;
  Mode mode_;
  std::vector<DivPair> pairs_;
  Subgroup full_;
  int nidx_ = 0;
  std::vector<CompCopy> copies_;
  std::map<std::pair<int, GElem>, int> copy_lookup_;
  std::vector<std::vector<long>> mtilde_;
  std::vector<std::vector<long>> minv_;  // entries of -(mtilde)^{-1}
  long det_neg_ = 0;                     // determinant of -(mtilde)
  std::vector<int> attach_copy_;         // per branch copy
  std::vector<int> marked_copy_;         // per divisorial pair
  std::vector<StratumClass> strata_;
};

}  // namespace eqres
