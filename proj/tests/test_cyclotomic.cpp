#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "eqres/cyclotomic.hpp"

using namespace eqres;

namespace {

CycloNum random_elem(const FieldPtr& f, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  std::vector<Rational> c(f->degree());
  for (auto& q : c) q = Rational(num(rng), den(rng));
  return CycloNum(f, std::move(c));
}

}  // namespace

TEST_CASE("minimal polynomials of small cyclotomic fields") {
  auto poly = [](long n) { return CycloField::get(n)->min_poly(); };
  CHECK(poly(1) == std::vector<Rational>{-1, 1});          // x - 1
  CHECK(poly(2) == std::vector<Rational>{1, 1});           // x + 1
  CHECK(poly(3) == std::vector<Rational>{1, 1, 1});        // x^2 + x + 1
  CHECK(poly(4) == std::vector<Rational>{1, 0, 1});        // x^2 + 1
  CHECK(poly(6) == std::vector<Rational>{1, -1, 1});       // x^2 - x + 1
  CHECK(poly(12) == std::vector<Rational>{1, 0, -1, 0, 1});  // x^4 - x^2 + 1
  CHECK(CycloField::get(15)->degree() == 8);
  CHECK(CycloField::get(105)->degree() == 48);
}

TEST_CASE("roots of unity behave as expected") {
  auto f4 = CycloField::get(4);
  CycloNum i = CycloNum::zeta_power(f4, 1);
  CHECK(i * i == CycloNum(f4, Rational(-1)));
  CHECK(i.pow(4) == CycloNum(f4, Rational(1)));

  auto f1 = CycloField::get(1);
  CHECK(CycloNum::zeta_power(f1, 0) == CycloNum(f1, Rational(1)));
  auto f2 = CycloField::get(2);
  CHECK(CycloNum::zeta_power(f2, 1) == CycloNum(f2, Rational(-1)));

  auto f15 = CycloField::get(15);
  CycloNum z3 = CycloNum::zeta_power(f15, 3);  // order 5
  CHECK(z3.pow(5) == CycloNum(f15, Rational(1)));
  CHECK(z3 != CycloNum(f15, Rational(1)));
  CHECK(z3.pow(2) != CycloNum(f15, Rational(1)));

  // Sum of all n-th roots of unity vanishes for n > 1.
  for (long n : {5L, 7L, 12L}) {
    auto f = CycloField::get(n);
    CycloNum s(f);
    for (long k = 0; k < n; ++k) s += CycloNum::zeta_power(f, k);
    CHECK(s.is_zero());
  }
}

TEST_CASE("field axioms hold on random elements") {
  std::mt19937 rng(20240817);
  for (long n : {12L, 15L}) {
    auto f = CycloField::get(n);
    CycloNum one(f, Rational(1));
    for (int trial = 0; trial < 300; ++trial) {
      CycloNum a = random_elem(f, rng);
      CycloNum b = random_elem(f, rng);
      CycloNum c = random_elem(f, rng);
      REQUIRE(a + b == b + a);
      REQUIRE((a + b) + c == a + (b + c));
      REQUIRE(a * b == b * a);
      REQUIRE((a * b) * c == a * (b * c));
      REQUIRE(a * (b + c) == a * b + a * c);
      REQUIRE(a - a == CycloNum(f));
      if (!a.is_zero()) {
        REQUIRE(a * a.inverse() == one);
        if (!b.is_zero()) REQUIRE((a / b) * b == a);
      }
    }
  }
}

TEST_CASE("inverse of mixed rational plus root expressions") {
  auto f3 = CycloField::get(3);
  CycloNum w = CycloNum::zeta_power(f3, 1);
  CycloNum a = CycloNum(f3, Rational(1)) + w;  // 1 + zeta_3 = -zeta_3^2
  CHECK(a * a.inverse() == CycloNum(f3, Rational(1)));
  CHECK(a / a == CycloNum(f3, Rational(1)));
  CHECK_THROWS_AS(CycloNum(f3).inverse(), math_error);
}

TEST_CASE("canonical order is a strict total order") {
  std::mt19937 rng(7);
  auto f = CycloField::get(12);
  std::vector<CycloNum> xs;
  for (int i = 0; i < 40; ++i) xs.push_back(random_elem(f, rng));
  for (const auto& a : xs)
    for (const auto& b : xs) {
      int rel = (a < b ? 1 : 0) + (b < a ? 1 : 0) + (a == b ? 1 : 0);
      REQUIRE(rel == 1);  // exactly one of <, >, ==
    }
  std::sort(xs.begin(), xs.end());
  for (size_t i = 0; i + 1 < xs.size(); ++i) REQUIRE(!(xs[i + 1] < xs[i]));
}

TEST_CASE("string rendering") {
  auto f4 = CycloField::get(4);
  CycloNum i = CycloNum::zeta_power(f4, 1);
  CHECK(CycloNum(f4).to_string() == "0");
  CHECK((CycloNum(f4, Rational(1, 2)) + i).to_string() == "1/2+1*z");
}
