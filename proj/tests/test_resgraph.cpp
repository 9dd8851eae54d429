#include <catch2/catch_amalgamated.hpp>

#include "eqres/resgraph.hpp"

using namespace eqres;

namespace {

CPoly tp(std::initializer_list<long> coeffs) {
  std::vector<CycloNum> c;
  for (long v : coeffs) c.emplace_back(v);
  return CPoly(std::move(c));
}

GroupAction trivial_action() {
  AbelianGroup g({1});
  return GroupAction(g, Character(g, {0}), Character(g, {0}));
}

GroupAction z15_35() {
  AbelianGroup g({15});
  return GroupAction(g, Character(g, {3}), Character(g, {5}));
}

ResGraph cusp_graph() {
  return ResGraph(
      resolve_collection(trivial_action(), {Branch(tp({0, 0, 1}), tp({0, 0, 0, 1}))}),
      Mode::kCurves);
}

}  // namespace

TEST_CASE("cusp: expanded matrix, inverse, and multiplicity routes") {
  ResGraph g = cusp_graph();
  REQUIRE(g.copies().size() == 3);
  CHECK(g.mtilde() == std::vector<std::vector<long>>{{-3, 0, 1}, {0, -2, 1}, {1, 1, -1}});
  CHECK(g.minv_matrix() ==
        std::vector<std::vector<long>>{{1, 1, 2}, {1, 2, 3}, {2, 3, 6}});
  CHECK(g.attach_copy(0) == 2);
  for (int comp = 0; comp < 3; ++comp)
    CHECK(g.chain_mult(0, comp) == g.minv(comp, 2));

  // Curvette families: lines y = c x on the first component, and the
  // one-parameter cusp family on the last one.
  MPoly t = MPoly::variable(3), c = MPoly::variable(2);
  auto fam0 = g.curvette_family(0);
  CHECK(fam0.first == t);
  CHECK(fam0.second == c * t);
  auto fam2 = g.curvette_family(2);
  CHECK(fam2.first == c * t * t);
  CHECK(fam2.second == c * t * t * t);
}

TEST_CASE("cusp: strata carry the semigroup data") {
  ResGraph g = cusp_graph();
  const auto& st = g.strata();
  REQUIRE(st.size() == 3);
  CHECK(st[0].comp == 0);
  CHECK(st[0].chi == 1);
  CHECK(st[0].w == std::vector<std::vector<long>>{{2}});
  CHECK(st[1].chi == 1);
  CHECK(st[1].w == std::vector<std::vector<long>>{{3}});
  CHECK(st[2].chi == -1);
  CHECK(st[2].w == std::vector<std::vector<long>>{{6}});
  for (const auto& s : st) {
    CHECK(s.site == -1);
    CHECK(s.alpha.is_trivial());
  }

  // The transversal curve through the arrow point is the cusp itself.
  int arrow = g.res().arrow_site[0];
  CHECK(g.curvette_at(arrow).equation() == g.res().input[0].equation());
}

TEST_CASE("weighted-circle collection: strata and multiplicity vectors") {
  GroupAction act = z15_35();
  std::vector<Branch> input{Branch(tp({0, 1}), CPoly()), Branch(CPoly(), tp({0, 1})),
                            Branch(tp({0, 1}), tp({0, 0, 1}))};
  ResGraph g(resolve_collection(act, input), Mode::kCurves);

  REQUIRE(g.copies().size() == 2);
  CHECK(g.minv_matrix() == std::vector<std::vector<long>>{{1, 1}, {1, 2}});

  const auto& st = g.strata();
  REQUIRE(st.size() == 2);
  CHECK(st[0].comp == 0);
  CHECK(st[0].chi == 0);
  CHECK(st[1].comp == 1);
  CHECK(st[1].chi == -1);
  CHECK(st[1].H.is_trivial());
  CHECK(st[1].reps.size() == 15);
  for (const auto& row : st[1].w) CHECK(row == std::vector<long>{2, 1, 2});
  for (const auto& row : st[0].w) CHECK(row == std::vector<long>{1, 1, 1});
  CHECK(st[1].alpha.is_trivial());
}

TEST_CASE("tangent pair: twisting characters at the two axis points") {
  GroupAction act = z15_35();
  std::vector<Branch> input{Branch(tp({0, 1}), tp({0, 0, 1})),
                            Branch(tp({0, 1}), tp({0, 0, -1}))};
  ResGraph g(resolve_collection(act, input), Mode::kCurves);

  const auto& st = g.strata();
  REQUIRE(st.size() == 4);
  // First component: generic stratum plus the point at b = infinity.
  CHECK(st[0].chi == 0);
  CHECK(st[1].site >= 0);
  CHECK(st[1].chi == 1);
  CHECK(st[1].H.is_full());
  CHECK(st[1].alpha.ambient_char() == Character(act.G, {3}));
  CHECK(st[1].w == std::vector<std::vector<long>>{{1, 1}});
  // Second component: generic stratum plus the point at b = 0.
  CHECK(st[2].comp == 1);
  CHECK(st[2].chi == -2);
  CHECK(st[3].site >= 0);
  CHECK(st[3].alpha.ambient_char() == Character(act.G, {5}));
  CHECK(st[3].w == std::vector<std::vector<long>>{{2, 2}});
  for (const auto& row : st[2].w) CHECK(row == std::vector<long>{2, 2});
}

TEST_CASE("divisorial pair marking the first component") {
  GroupAction act = z15_35();
  std::vector<Branch> input{Branch(tp({0, 1}), CPoly()), Branch(CPoly(), tp({0, 1}))};
  ResGraph g(resolve_collection(act, input), Mode::kDivisorial, {{0, 1}});

  CHECK(g.nfilt() == 1);
  CHECK(g.marked_copy(0) == 0);
  const auto& st = g.strata();
  REQUIRE(st.size() == 3);
  CHECK(st[0].chi == 0);
  CHECK(st[1].chi == 1);
  CHECK(st[2].chi == 1);
  // One axis point carries the character of y, the other the character of x.
  std::set<Character> alphas{st[1].alpha.ambient_char(), st[2].alpha.ambient_char()};
  CHECK(alphas == std::set<Character>{Character(act.G, {3}), Character(act.G, {5})});
  CHECK(st[1].w == std::vector<std::vector<long>>{{1}});
  CHECK(st[2].w == std::vector<std::vector<long>>{{1}});
}

TEST_CASE("divisorial pair rejections") {
  GroupAction tr = trivial_action();
  // Curvettes resolving onto different components.
  std::vector<Branch> in1{Branch(tp({0, 0, 1}), tp({0, 0, 0, 1})),
                          Branch(tp({0, 1}), tp({0, 1}))};
  Resolution r1 = resolve_collection(tr, in1);
  CHECK_THROWS_AS(ResGraph(r1, Mode::kDivisorial, {{0, 1}}), math_error);
  // Identical curvettes meet the divisor at the same point.
  std::vector<Branch> in2{Branch(tp({0, 1}), CPoly()), Branch(tp({0, 1}), CPoly())};
  Resolution r2 = resolve_collection(tr, in2);
  CHECK_THROWS_AS(ResGraph(r2, Mode::kDivisorial, {{0, 1}}), math_error);
  // Pair indices must be distinct and in range.
  std::vector<Branch> in3{Branch(tp({0, 1}), CPoly()), Branch(CPoly(), tp({0, 1}))};
  Resolution r3 = resolve_collection(tr, in3);
  CHECK_THROWS_AS(ResGraph(r3, Mode::kDivisorial, {{0, 0}}), input_error);
  CHECK_THROWS_AS(ResGraph(r3, Mode::kDivisorial, {{0, 7}}), input_error);
}

TEST_CASE("deeper orbit: several copies of one component, all checks engaged") {
  AbelianGroup z4({4});
  GroupAction act(z4, Character(z4, {1}), Character(z4, {3}));
  ResGraph g(resolve_collection(act, {Branch(tp({0, 0, 1}), tp({0, 0, 1, 1}))}),
             Mode::kCurves);
  int second_copies = 0;
  for (const CompCopy& c : g.copies())
    if (c.comp == 1) ++second_copies;
  CHECK(second_copies == 2);
  // Matrix route against the blow-up record route, for every copy and
  // component.
  for (size_t bc = 0; bc < g.res().ex.copies.size(); ++bc)
    for (int comp = 0; comp < static_cast<int>(g.res().comps.size()); ++comp)
      CHECK(g.chain_mult(static_cast<int>(bc), comp) ==
            g.minv(g.copy_index(comp, act.G.zero()), g.attach_copy(static_cast<int>(bc))));
}

TEST_CASE("acted equation matches the acted branch") {
  GroupAction act = z15_35();
  Branch par(tp({0, 1}), tp({0, 0, 1}));
  for (long k : {1L, 4L, 7L}) {
    GElem gk{k};
    CHECK(par.acted(act, gk).equation() ==
          acted_equation(act, par.equation(), act.G.neg(gk)));
  }
}

TEST_CASE("layered comparison separates swapped representations") {
  GroupAction act = z15_35();
  AbelianGroup z15({15});
  GroupAction swapped(z15, Character(z15, {5}), Character(z15, {3}));
  std::vector<Branch> input{Branch(tp({0, 1}), CPoly()), Branch(CPoly(), tp({0, 1})),
                            Branch(tp({0, 1}), tp({0, 0, 1}))};

  ResGraph a(resolve_collection(act, input), Mode::kCurves);
  ResGraph a2(resolve_collection(act, input), Mode::kCurves);
  ResGraph b(resolve_collection(swapped, input), Mode::kCurves);

  CHECK(ResGraph::compare(a, a2).equal());
  CompareResult r = ResGraph::compare(a, b);
  CHECK(r.first_diff_layer == 2);
  CHECK(ResGraph::compare(a, a).equal());

  // Different group sizes fail at the ambient level.
  AbelianGroup z7({7});
  GroupAction g7(z7, Character(z7, {1}), Character(z7, {3}));
  std::vector<Branch> in7{Branch(tp({0, 1}), CPoly()), Branch(CPoly(), tp({0, 1})),
                          Branch(tp({0, 1}), tp({0, 0, 1}))};
  ResGraph c(resolve_collection(g7, in7), Mode::kCurves);
  CHECK(ResGraph::compare(a, c).first_diff_layer == 1);
}

TEST_CASE("dot export names every component once") {
  ResGraph g = cusp_graph();
  std::string d = g.dot();
  CHECK(d.find("c0 [shape=circle") != std::string::npos);
  CHECK(d.find("c2 [shape=circle") != std::string::npos);
  CHECK(d.find("shape=box") != std::string::npos);
  CHECK(d.find("graph resolution {") == 0);
}
