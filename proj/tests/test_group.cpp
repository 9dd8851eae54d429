#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "eqres/group.hpp"

using namespace eqres;

namespace {
Subgroup gen(const AbelianGroup& g, std::initializer_list<long> v) {
  return Subgroup(g, {GElem(v)});
}
}  // namespace

TEST_CASE("cyclic group orders, subgroups, lattice identities") {
  AbelianGroup z15({15});
  CHECK(z15.order() == 15);
  CHECK(z15.exponent() == 15);
  CHECK(z15.elements().size() == 15);

  Subgroup h3 = gen(z15, {3});  // order 5
  Subgroup h5 = gen(z15, {5});  // order 3
  CHECK(h3.size() == 5);
  CHECK(h3.index() == 3);
  CHECK(h5.size() == 3);
  CHECK(intersect(h3, h5) == Subgroup::trivial(z15));
  CHECK(join(h3, h5) == Subgroup::full(z15));
  CHECK(Subgroup::full(z15).contains_subgroup(h3));
  CHECK(!h3.contains_subgroup(h5));

  AbelianGroup z6({6});
  CHECK(intersect(gen(z6, {2}), gen(z6, {3})) == Subgroup::trivial(z6));

  // |A||B| = |A cap B| |A + B| on random subgroup pairs of Z4 x Z6.
  AbelianGroup g({4, 6});
  CHECK(g.exponent() == 12);
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> d0(0, 3), d1(0, 5);
  for (int trial = 0; trial < 40; ++trial) {
    Subgroup a(g, {GElem{d0(rng), d1(rng)}, GElem{d0(rng), d1(rng)}});
    Subgroup b(g, {GElem{d0(rng), d1(rng)}});
    REQUIRE(a.size() * b.size() == intersect(a, b).size() * join(a, b).size());
  }
}

TEST_CASE("characters evaluate as exponents of a fixed primitive root") {
  AbelianGroup z15({15});
  Character chi2(z15, {2});
  CHECK(chi2(GElem{1}) == 2);
  CHECK(chi2(GElem{8}) == 1);  // 16 mod 15
  CHECK(Subgroup::full(z15).kernel_of(chi2).is_trivial());
  Character chi5(z15, {5});
  CHECK(Subgroup::full(z15).kernel_of(chi5) == gen(z15, {3}));

  AbelianGroup g({2, 3});
  Character chi(g, {1, 2});
  CHECK(chi(GElem{1, 1}) == 1);  // 3 + 4 mod 6
  CHECK(chi(GElem{0, 2}) == 2);  // 8 mod 6
  auto f6 = CycloField::get(6);
  CHECK(chi.root_of_unity(f6, GElem{1, 1}) == CycloNum::zeta_power(f6, 1));

  // Character arithmetic.
  CHECK(chi + chi == chi.scaled(2));
  CHECK(chi - chi == Character::trivial(g));
  CHECK(chi.scaled(-1) == Character(g, {1, 1}));
  CHECK(all_characters(g).size() == 6);

  // Sum over the group of chi(g) as root of unity vanishes for nontrivial chi.
  for (const Character& c : all_characters(g)) {
    CycloNum s(f6);
    for (const GElem& e : g.elements()) s += c.root_of_unity(f6, e);
    if (c == Character::trivial(g)) {
      CHECK(s == CycloNum(6));
    } else {
      CHECK(s.is_zero());
    }
  }
}

TEST_CASE("coset representatives are minimal and complete") {
  AbelianGroup z15({15});
  Subgroup h3 = gen(z15, {3});
  auto reps = h3.coset_reps_in(Subgroup::full(z15));
  CHECK(reps == std::vector<GElem>{{0}, {1}, {2}});
  CHECK(Subgroup::trivial(z15).coset_reps_in(h3).size() == 5);
}

TEST_CASE("subgroup characters canonicalize the ambient extension") {
  AbelianGroup z15({15});
  Subgroup h3 = gen(z15, {3});

  SubChar a(Character(z15, {7}), h3);
  CHECK(a.ambient_char() == Character(z15, {2}));  // 7*3 == 2*3 (mod 15)
  CHECK(a(GElem{3}) == 6);
  CHECK(a == SubChar(Character(z15, {2}), h3));
  CHECK(a != SubChar(Character(z15, {3}), h3));

  SubChar t = a.restrict_to(Subgroup::trivial(z15));
  CHECK(t.is_trivial());
  CHECK(t.ambient_char() == Character::trivial(z15));

  // Adding characters adds values pointwise.
  SubChar b(Character(z15, {1}), h3);
  CHECK((a + b)(GElem{3}) == 9);

  // Restriction of a sum equals sum of restrictions.
  Subgroup sub = gen(z15, {6});  // {0,3,6,9,12} too: 6 generates the same order-5 group
  CHECK(sub == h3);
}
