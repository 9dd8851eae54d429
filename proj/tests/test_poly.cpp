#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "eqres/mpoly.hpp"

using namespace eqres;

namespace {

CPoly tpoly(std::initializer_list<long> coeffs) {
  std::vector<CycloNum> c;
  for (long v : coeffs) c.emplace_back(v);
  return CPoly(std::move(c));
}

// x - X(t), y - Y(t) with x,y in slots 0,1 and t in slot 3.
MPoly elim_pair(const CPoly& X, const CPoly& Y, int which) {
  const CPoly& p = which == 0 ? X : Y;
  return MPoly::variable(which) - MPoly::from_upoly(p, 3);
}

MPoly implicit_of(const CPoly& X, const CPoly& Y) {
  return resultant_wrt(elim_pair(X, Y, 0), elim_pair(X, Y, 1), 3).normalized();
}

MPoly xy_term(long cx, int a, int b) {
  return MPoly::monomial(CycloNum(cx), ExpKey{a, b, 0, 0});
}

}  // namespace

TEST_CASE("univariate polynomial basics") {
  CPoly p = tpoly({0, 0, 3, 1});  // 3t^2 + t^3
  CHECK(p.deg() == 3);
  CHECK(p.ord() == 2);
  CHECK(CPoly().ord() == kInfOrd);
  CHECK(p.eval(CycloNum(2)) == CycloNum(20));

  CPoly q = tpoly({-1, 0, 1});  // t^2 - 1
  CPoly d = tpoly({-1, 1});     // t - 1
  CHECK(CPoly::gcd(q, d) == d.monic());
  CHECK(q.exact_div(d) == tpoly({1, 1}));

  std::mt19937 rng(11);
  std::uniform_int_distribution<int> cd(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<CycloNum> ac, bc;
    for (int i = 0; i < 6; ++i) ac.emplace_back(cd(rng));
    for (int i = 0; i < 4; ++i) bc.emplace_back(cd(rng));
    CPoly a{std::move(ac)}, b{std::move(bc)};
    if (b.is_zero()) continue;
    auto [quot, rem] = a.divmod(b);
    REQUIRE(quot * b + rem == a);
    REQUIRE((rem.is_zero() || rem.deg() < b.deg()));
  }

  auto f3 = CycloField::get(3);
  CycloNum w = CycloNum::zeta_power(f3, 1);
  CPoly s = tpoly({1, 1, 1}).scale_arg(w);  // 1 + w t + w^2 t^2
  CHECK(s.coeff(1) == w);
  CHECK(s.coeff(2) == w * w);
}

TEST_CASE("rational functions reduce and track order at the origin") {
  RatFunc f(tpoly({0, 1, 1}), tpoly({0, 1}));  // (t + t^2)/t = 1 + t
  CHECK(f.is_polynomial());
  CHECK(f.as_poly() == tpoly({1, 1}));
  CHECK(f.ord() == 0);
  CHECK(f.at_zero() == CycloNum(1));

  RatFunc g(tpoly({0, 1}), tpoly({1, 1}));  // t/(1+t)
  CHECK(g.ord() == 1);
  CHECK(g.at_zero() == CycloNum(0));
  CHECK((g * g).ord() == 2);
  CHECK((f / g).ord() == -1);
  CHECK((g - g).is_zero());
  CHECK((g - g).ord() == kInfOrd);

  RatFunc h(tpoly({0, 0, 0, 2}), tpoly({0, 2, 2}));  // 2t^3 / (2t + 2t^2)
  CHECK(h.ord() == 2);
  CHECK(h == RatFunc(tpoly({0, 0, 1}), tpoly({1, 1})));
}

TEST_CASE("multivariate arithmetic and exact division") {
  MPoly x = MPoly::variable(0), y = MPoly::variable(1);
  MPoly diff_sq = x * x - y * y;
  CHECK(diff_sq.exact_div(x - y) == x + y);
  CHECK(diff_sq.exact_div(x + y) == x - y);

  // (X(t) - X(s)) / (t - s) is polynomial for X = t^3 + 2t.
  MPoly t = MPoly::variable(0), s = MPoly::variable(1);
  MPoly Xt = t.pow(3) + MPoly::constant(CycloNum(2)) * t;
  MPoly Xs = s.pow(3) + MPoly::constant(CycloNum(2)) * s;
  MPoly w = (Xt - Xs).exact_div(t - s);
  CHECK(w == t * t + t * s + s * s + MPoly::constant(CycloNum(2)));

  CHECK(diff_sq.subst_const(1, CycloNum(3)) == x * x - MPoly::constant(CycloNum(9)));
  CHECK(diff_sq.degree_in(0) == 2);
  CHECK(diff_sq.coeff_in(0, 2) == MPoly::constant(CycloNum(1)));
}

TEST_CASE("resultant eliminates the parameter for standard germs") {
  // (t^2, t^3): cuspidal cubic.
  CHECK(implicit_of(tpoly({0, 0, 1}), tpoly({0, 0, 0, 1})) ==
        xy_term(1, 3, 0) + xy_term(-1, 0, 2));
  // (t, t^2): smooth parabola.
  CHECK(implicit_of(tpoly({0, 1}), tpoly({0, 0, 1})) == xy_term(1, 2, 0) + xy_term(-1, 0, 1));
  // (t^2, t^5).
  CHECK(implicit_of(tpoly({0, 0, 1}), tpoly({0, 0, 0, 0, 0, 1})) ==
        xy_term(1, 5, 0) + xy_term(-1, 0, 2));
  // (t, t): the diagonal line.
  CHECK(implicit_of(tpoly({0, 1}), tpoly({0, 1})) == xy_term(1, 1, 0) + xy_term(-1, 0, 1));
}

TEST_CASE("resultant of linear factors and multiplicativity") {
  auto lin = [](long root) {  // t - root, t in slot 3
    return MPoly::variable(3) - MPoly::constant(CycloNum(root));
  };
  // Res_t(t - a, t - b) = a - b up to overall sign convention; |.| pinned.
  MPoly r = resultant_wrt(lin(5), lin(2), 3);
  bool plus = r == MPoly::constant(CycloNum(3));
  bool minus = r == MPoly::constant(CycloNum(-3));
  CHECK((plus || minus));

  std::mt19937 rng(99);
  std::uniform_int_distribution<int> cd(-4, 4);
  auto rnd = [&](int deg) {
    MPoly p;
    for (int i = 0; i <= deg; ++i) {
      ExpKey e{0, 0, 0, i};
      p = p + MPoly::monomial(CycloNum(cd(rng)), e);
    }
    if (p.degree_in(3) < deg) p = p + MPoly::monomial(CycloNum(1), ExpKey{0, 0, 0, deg});
    return p;
  };
  for (int trial = 0; trial < 30; ++trial) {
    MPoly f = rnd(2), g = rnd(3), h = rnd(2);
    MPoly lhs = resultant_wrt(f * g, h, 3);
    MPoly rhs = resultant_wrt(f, h, 3) * resultant_wrt(g, h, 3);
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("resultant detects common factors") {
  MPoly t = MPoly::variable(3);
  MPoly f = (t - MPoly::constant(CycloNum(1))) * (t - MPoly::constant(CycloNum(2)));
  MPoly g = (t - MPoly::constant(CycloNum(1))) * (t + MPoly::constant(CycloNum(7)));
  CHECK(resultant_wrt(f, g, 3).is_zero());
}

TEST_CASE("evaluating an implicit equation along a parametrization") {
  // Cusp x^3 - y^2 evaluated on the cusp itself: identically zero.
  MPoly cusp = xy_term(1, 3, 0) + xy_term(-1, 0, 2);
  RatFunc X(tpoly({0, 0, 1})), Y(tpoly({0, 0, 0, 1}));
  CHECK(cusp.eval_ratfunc(X, Y).is_zero());
  // Evaluated on the line (t, t): order = intersection multiplicity 2.
  RatFunc L(tpoly({0, 1}));
  CHECK(cusp.eval_ratfunc(L, L).ord() == 2);
  // Evaluated on (t, t^2): t^3 - t^4 has order 3.
  CHECK(cusp.eval_ratfunc(L, RatFunc(tpoly({0, 0, 1}))).ord() == 3);
}
