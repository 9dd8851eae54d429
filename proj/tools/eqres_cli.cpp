// Command-line front end: loads JSON scene files and runs the resolution,
// series, comparison, inference, oracle, and hypothesis-check commands.
//
// Exit codes: 0 success, 2 malformed input, 3 violated mathematical
// precondition (also: failed hypothesis check), 4 internal cross-check
// failure (a bug, never bad input).

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eqres/poincare.hpp"
#include "eqres/scene.hpp"

using namespace eqres;
using ordered_json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Serialization helpers.  All containers iterate in deterministic orders and
// ordered_json preserves insertion order, so outputs are byte-stable.

ordered_json tuple_json(const std::vector<long>& v) {
  return ordered_json(v);
}

ordered_json elem_json(const GElem& g) {
  return ordered_json(g);
}

ordered_json series_json(const GRSeries& p) {
  ordered_json terms = ordered_json::array();
  for (const auto& [c, m] : p.terms()) {
    ordered_json t;
    t["class"] = c.to_string();
    t["coefficient"] = m;
    terms.push_back(std::move(t));
  }
  ordered_json j;
  j["bound"] = p.bound();
  j["terms"] = std::move(terms);
  return j;
}

ordered_json factors_json(const std::map<GRClass, long>& f) {
  ordered_json factors = ordered_json::array();
  for (const auto& [c, s] : f) {
    ordered_json t;
    t["class"] = c.to_string();
    t["exponent"] = s;
    factors.push_back(std::move(t));
  }
  return factors;
}

ordered_json plain_json(const PlainSeries& p) {
  ordered_json terms = ordered_json::array();
  for (const auto& [e, m] : p.terms()) {
    if (m == 0) continue;
    ordered_json t;
    t["exponent"] = tuple_json(e);
    t["coefficient"] = m;
    terms.push_back(std::move(t));
  }
  ordered_json j;
  j["nvars"] = p.nvars();
  j["bound"] = p.bound();
  j["terms"] = std::move(terms);
  return j;
}

ordered_json graph_json(const ResGraph& rg, const Scene& sc) {
  const Resolution& r = rg.res();
  ordered_json j;
  j["mode"] = rg.mode() == Mode::kCurves ? "curves" : "divisorial";
  j["group"] = tuple_json(r.act.G.factors);
  j["chi_x"] = tuple_json(r.act.chi_x.tuple());
  j["chi_y"] = tuple_json(r.act.chi_y.tuple());

  ordered_json comps = ordered_json::array();
  for (const Component& c : r.comps) {
    ordered_json e;
    e["id"] = c.id;
    e["order"] = c.nu;
    e["self_intersection"] = c.self_int;
    e["stabilizer_order"] = c.stab.size();
    e["pointwise_order"] = c.pointwise.size();
    e["orbit_size"] = r.act.G.order() / c.stab.size();
    comps.push_back(std::move(e));
  }
  j["components"] = std::move(comps);

  ordered_json edges = ordered_json::array();
  for (const Site& s : r.sites) {
    if (!s.is_corner()) continue;
    ordered_json e;
    e["a"] = s.comp_a;
    e["b"] = s.comp_b;
    e["points"] = r.act.G.order() / s.stab.size();
    edges.push_back(std::move(e));
  }
  j["edges"] = std::move(edges);

  ordered_json copies = ordered_json::array();
  for (const CompCopy& c : rg.copies()) {
    ordered_json e;
    e["component"] = c.comp;
    e["shift"] = elem_json(c.rep);
    copies.push_back(std::move(e));
  }
  j["copies"] = std::move(copies);
  j["m_tilde"] = ordered_json(rg.mtilde());
  j["minus_m_inverse"] = ordered_json(rg.minv_matrix());

  if (rg.mode() == Mode::kCurves) {
    ordered_json arrows = ordered_json::array();
    for (size_t i = 0; i < r.input.size(); ++i) {
      int copy = r.ex.input_copy[i];
      int orbit = r.ex.copies[copy].orbit;
      long orbit_size = 0;
      for (const BranchCopy& bc : r.ex.copies)
        if (bc.orbit == orbit) ++orbit_size;
      ordered_json e;
      e["branch"] = i;
      e["name"] = i < sc.names.size() ? sc.names[i] : ("C" + std::to_string(i));
      e["component"] = rg.copies()[rg.attach_copy(copy)].comp;
      e["component_copy"] = rg.attach_copy(copy);
      e["orbit_size"] = orbit_size;
      arrows.push_back(std::move(e));
    }
    j["arrows"] = std::move(arrows);
  } else {
    ordered_json marks = ordered_json::array();
    for (int p = 0; p < rg.nfilt(); ++p) {
      ordered_json e;
      e["pair"] = ordered_json::array({sc.pairs[p].a, sc.pairs[p].b});
      e["component"] = rg.copies()[rg.marked_copy(p)].comp;
      e["component_copy"] = rg.marked_copy(p);
      marks.push_back(std::move(e));
    }
    j["marks"] = std::move(marks);
  }

  ordered_json strata = ordered_json::array();
  for (const StratumClass& st : rg.strata()) {
    ordered_json e;
    e["component"] = st.comp;
    e["kind"] = st.site < 0 ? "generic" : "point";
    e["euler"] = st.chi;
    e["points"] = st.reps.size();
    e["stabilizer_order"] = st.H.size();
    e["alpha"] = tuple_json(st.alpha.ambient_char().tuple());
    ordered_json w = ordered_json::array();
    for (const auto& row : st.w) w.push_back(tuple_json(row));
    e["weights"] = std::move(w);
    strata.push_back(std::move(e));
  }
  j["strata"] = std::move(strata);
  return j;
}

// ---------------------------------------------------------------------------
// Command plumbing.

struct Options {
  std::string scene_a;
  std::string scene_b;
  std::string json_path;
  std::string dot_path;
  std::string mode_override;
  long degree_bound = 10;
  bool bound_given = false;
  bool plain = false;
  bool equivariant = false;
  bool factor = false;
  bool series = false;
  bool topology = false;
};

Mode effective_mode(const Scene& sc, const Options& opt) {
  if (opt.mode_override == "curves") return Mode::kCurves;
  if (opt.mode_override == "divisorial") return Mode::kDivisorial;
  return sc.mode;
}

long effective_bound(const Scene& sc, const Options& opt) {
  return opt.bound_given ? opt.degree_bound : sc.bound;
}

ResGraph build_graph(const Scene& sc, Mode mode) {
  Resolution res = resolve_collection(sc.act, sc.branches);
  std::vector<DivPair> pairs;
  if (mode == Mode::kDivisorial) {
    if (sc.pairs.empty())
      throw scene_error("divisorial mode requires a \"pairs\" list in the scene");
    pairs = sc.pairs;
  }
  return ResGraph(std::move(res), mode, std::move(pairs));
}

void emit(const ordered_json& j, const Options& opt) {
  std::string text = j.dump(2) + "\n";
  if (!opt.json_path.empty()) {
    std::ofstream out(opt.json_path);
    if (!out) throw input_error("cannot write to " + opt.json_path);
    out << text;
  } else {
    std::cout << text;
  }
}

int cmd_resolve(const Options& opt) {
  Scene sc = load_scene(opt.scene_a);
  ResGraph rg = build_graph(sc, effective_mode(sc, opt));
  if (!opt.dot_path.empty()) {
    std::ofstream out(opt.dot_path);
    if (!out) throw input_error("cannot write to " + opt.dot_path);
    out << rg.dot();
  }
  emit(graph_json(rg, sc), opt);
  return 0;
}

int cmd_poincare(const Options& opt) {
  Scene sc = load_scene(opt.scene_a);
  ResGraph rg = build_graph(sc, effective_mode(sc, opt));
  long bound = effective_bound(sc, opt);
  bool any = opt.plain || opt.equivariant || opt.factor;
  ordered_json j;
  if (opt.equivariant || opt.factor || !any) {
    GRSeries p = equivariant_poincare(rg, bound);
    if (opt.equivariant || !any) j["equivariant"] = series_json(p);
    if (opt.factor) j["factors"] = factors_json(factor_exponents(p));
  }
  if (opt.plain) j["plain"] = plain_json(plain_poincare(rg, bound));
  emit(j, opt);
  return 0;
}

int cmd_compare(const Options& opt) {
  Scene sa = load_scene(opt.scene_a);
  Scene sb = load_scene(opt.scene_b);
  ResGraph ga = build_graph(sa, effective_mode(sa, opt));
  ResGraph gb = build_graph(sb, effective_mode(sb, opt));
  ordered_json j;
  if (opt.topology) {
    CompareResult r = ResGraph::compare(ga, gb);
    j["comparison"] = "topology";
    j["verdict"] = r.equal() ? "equivalent" : "not equivalent";
    if (!r.equal()) {
      j["first_difference"] = compare_layer_name(r.first_diff_layer);
      j["detail_a"] = r.detail_a;
      j["detail_b"] = r.detail_b;
    }
  } else {
    j["comparison"] = "series";
    if (!(ga.res().act.G == gb.res().act.G) || ga.nfilt() != gb.nfilt()) {
      j["verdict"] = "different";
      j["witness"] = "ambient actions or index sets differ";
    } else {
      long bound = opt.bound_given ? opt.degree_bound
                                   : std::min(sa.bound, sb.bound);
      GRSeries pa = equivariant_poincare(ga, bound);
      GRSeries pb = equivariant_poincare(gb, bound);
      std::string diff = series_diff(pa, pb);
      j["verdict"] = diff.empty() ? "equal" : "different";
      if (!diff.empty()) j["witness"] = diff;
    }
  }
  emit(j, opt);
  return 0;
}

int cmd_infer(const Options& opt) {
  Scene sc = load_scene(opt.scene_a);
  ResGraph rg = build_graph(sc, effective_mode(sc, opt));
  GRSeries p = equivariant_poincare(rg, effective_bound(sc, opt));
  InferResult r = infer_representation_detailed(p, rg);
  ordered_json j;
  j["chi_x"] = tuple_json(r.chi_x.tuple());
  j["chi_y"] = tuple_json(r.chi_y.tuple());
  ordered_json steps = ordered_json::array();
  for (const InferStep& s : r.steps) {
    ordered_json e;
    e["component"] = s.comp;
    e["linear_form"] = s.axis == 'x' ? "x" : s.axis == 'y' ? "y" : "scalar";
    e["alpha"] = tuple_json(s.alpha.tuple());
    steps.push_back(std::move(e));
  }
  j["assignment"] = std::move(steps);
  emit(j, opt);
  return 0;
}

int cmd_oracle(const Options& opt) {
  Scene sc = load_scene(opt.scene_a);
  Mode mode = effective_mode(sc, opt);
  long bound = effective_bound(sc, opt);
  ordered_json j;
  if (mode == Mode::kCurves) {
    JetsOracle oracle = JetsOracle::for_branches(sc.act.field, sc.branches);
    j["oracle"] = plain_json(oracle.series(bound));
  } else {
    ResGraph rg = build_graph(sc, mode);
    JetsOracle oracle = JetsOracle::for_divisor(rg);
    j["oracle"] = plain_json(oracle.series(bound));
  }
  emit(j, opt);
  return 0;
}

int cmd_check(const Options& opt) {
  Scene sc = load_scene(opt.scene_a);
  std::vector<std::string> reasons =
      determination_obstructions(sc.act, sc.branches);
  ordered_json j;
  j["verdict"] = reasons.empty() ? "determined" : "obstructed";
  if (!reasons.empty()) j["reasons"] = ordered_json(reasons);
  emit(j, opt);
  return reasons.empty() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Equivariant resolution of plane curve collections and equivariant "
      "Poincare series of the associated multi-index filtrations"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool with_bound) {
    sub->add_option("--json", opt.json_path, "write the JSON output to a file");
    sub->add_option("--mode", opt.mode_override,
                    "override the scene's filtration mode")
        ->check(CLI::IsMember({"curves", "divisorial"}));
    if (with_bound)
      sub->add_option("--degree-bound", opt.degree_bound,
                      "truncation degree for series expansions (default 10)")
          ->check(CLI::PositiveNumber);
  };

  CLI::App* resolve = app.add_subcommand(
      "resolve", "compute the equivariant resolution graph of a scene");
  resolve->add_option("scene", opt.scene_a, "scene JSON file")->required();
  resolve->add_option("--dot", opt.dot_path, "write a DOT rendering to a file");
  add_common(resolve, false);

  CLI::App* poincare = app.add_subcommand(
      "poincare", "compute Poincare series of the scene's filtration");
  poincare->add_option("scene", opt.scene_a, "scene JSON file")->required();
  poincare->add_flag("--plain", opt.plain, "ordinary integer series");
  poincare->add_flag("--equivariant", opt.equivariant,
                     "equivariant series, expanded to the bound (default)");
  poincare->add_flag("--factor", opt.factor,
                     "canonical factored form of the equivariant series");
  add_common(poincare, true);

  CLI::App* compare =
      app.add_subcommand("compare", "compare two scenes");
  compare->add_option("sceneA", opt.scene_a, "first scene JSON file")->required();
  compare->add_option("sceneB", opt.scene_b, "second scene JSON file")->required();
  compare->add_flag("--series", opt.series,
                    "compare equivariant Poincare series (default)");
  compare->add_flag("--topology", opt.topology,
                    "compare decorated resolution graphs");
  add_common(compare, true);

  CLI::App* infer = app.add_subcommand(
      "infer", "recover the acting characters from series and graph");
  infer->add_option("scene", opt.scene_a, "scene JSON file")->required();
  add_common(infer, true);

  CLI::App* oracle = app.add_subcommand(
      "oracle", "ordinary series by the independent jet-dimension oracle");
  oracle->add_option("scene", opt.scene_a, "scene JSON file")->required();
  add_common(oracle, true);

  CLI::App* check = app.add_subcommand(
      "check", "check the topology-determination hypotheses of a scene");
  check->add_option("scene", opt.scene_a, "scene JSON file")->required();
  add_common(check, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (CLI::App* sub : {poincare, compare, infer, oracle})
    if (sub->parsed() && sub->count("--degree-bound") > 0) opt.bound_given = true;
  if (compare->parsed() && opt.series && opt.topology) {
    std::cerr << "compare: choose one of --series and --topology\n";
    return 2;
  }

  try {
    if (resolve->parsed()) return cmd_resolve(opt);
    if (poincare->parsed()) return cmd_poincare(opt);
    if (compare->parsed()) return cmd_compare(opt);
    if (infer->parsed()) return cmd_infer(opt);
    if (oracle->parsed()) return cmd_oracle(opt);
    if (check->parsed()) return cmd_check(opt);
  } catch (const internal_check_error& e) {
    std::cerr << "internal cross-check failure: " << e.what() << "\n";
    return 4;
  } catch (const math_error& e) {
    std::cerr << "mathematical precondition violated: " << e.what() << "\n";
    return 3;
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
