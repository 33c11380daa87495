#include <doctest.h>

#include <random>

#include "wonder/space.hpp"
#include "testutil.hpp"

using namespace wonder;

TEST_CASE("atom construction and fact normalization") {
  Space x = atom("X", 2, Tristate::Unknown, Tristate::Unknown);
  CHECK(x.dim() == 2);
  CHECK(x.atom_facts().ordinary == Tristate::Unknown);
  CHECK(x.atom_facts().hodge_witt == Tristate::Unknown);
  CHECK_FALSE(x.atom_facts().hodge_witt_asserted);

  // ordinary = true forces hodge_witt = true
  Space a = atom("A", 1, Tristate::True, Tristate::Unknown);
  CHECK(a.atom_facts().ordinary == Tristate::True);
  CHECK(a.atom_facts().hodge_witt == Tristate::True);
  CHECK_FALSE(a.atom_facts().hodge_witt_asserted);

  Space b = atom("B", 1, Tristate::True, Tristate::True);
  CHECK(b.atom_facts().hodge_witt_asserted);

  CHECK_THROWS_AS(atom("C", 1, Tristate::True, Tristate::False),
                  std::invalid_argument);

  Space p2 = atom("P2", 2, Tristate::True, Tristate::True,
                  PoincarePolynomial{1, 0, 1, 0, 1});
  CHECK(p2.atom_poincare()->degree() == 4);
}

TEST_CASE("normalization is idempotent") {
  for (Tristate ord : {Tristate::True, Tristate::False, Tristate::Unknown})
    for (Tristate hw : {Tristate::True, Tristate::False, Tristate::Unknown}) {
      if (ord == Tristate::True && hw == Tristate::False) continue;
      PropertyFacts once = make_facts(ord, hw);
      PropertyFacts twice = make_facts(once.ordinary, once.hodge_witt);
      CHECK(once.ordinary == twice.ordinary);
      CHECK(once.hodge_witt == twice.hodge_witt);
    }
}

TEST_CASE("atom rejects bad poincare data") {
  CHECK_THROWS_AS(atom("X", 1, Tristate::Unknown, Tristate::Unknown,
                       PoincarePolynomial{1, 0, 1, 0, 1}),
                  std::invalid_argument);  // degree 4 > 2*dim
  CHECK_THROWS_AS(atom("X", 2, Tristate::Unknown, Tristate::Unknown,
                       PoincarePolynomial{2, 0, 1}),
                  std::invalid_argument);  // constant term != 1
}

TEST_CASE("projective space presets") {
  Space p0 = projective_space(0);
  CHECK(p0.kind() == SpaceKind::Atom);
  CHECK(p0.dim() == 0);
  CHECK(p0.atom_poincare()->coefficients() ==
        std::vector<PoincarePolynomial::Int>{1});

  Space p1 = projective_space(1);
  CHECK(p1.dim() == 1);
  CHECK(*p1.atom_poincare() == PoincarePolynomial{1, 0, 1});
  CHECK(p1.atom_facts().ordinary == Tristate::True);

  Space p3 = projective_space(3);
  CHECK(*p3.atom_poincare() == PoincarePolynomial{1, 0, 1, 0, 1, 0, 1});
}

TEST_CASE("dimension arithmetic") {
  Space p1 = projective_space(1);
  CHECK(dimension(point()) == 0);
  CHECK(dimension(product(p1, p1)) == 2);
  CHECK(dimension(proj_bundle(p1, 3)) == 3);
  CHECK(dimension(proj_bundle(point(), 4)) == 3);  // projective 3-space over a point
  CHECK(dimension(proj_bundle(atom("X", 2, Tristate::Unknown, Tristate::Unknown), 1)) == 2);
  CHECK(dimension(blow_up(projective_space(2), point(), 2)) == 2);
  CHECK_THROWS_AS(dimension(empty_space()), std::invalid_argument);
}

TEST_CASE("constructor preconditions") {
  Space p1 = projective_space(1);
  CHECK_THROWS_AS(product(p1, empty_space()), std::invalid_argument);
  CHECK_THROWS_AS(product(empty_space(), p1), std::invalid_argument);
  CHECK_THROWS_AS(proj_bundle(p1, 0), std::invalid_argument);
  CHECK_THROWS_AS(proj_bundle(empty_space(), 2), std::invalid_argument);
  CHECK_THROWS_AS(blow_up(projective_space(2), p1, 2), std::invalid_argument);
  CHECK_THROWS_AS(blow_up(projective_space(2), point(), 0), std::invalid_argument);
}

TEST_CASE("blowup with empty center is the identity") {
  Space x = product(projective_space(1), projective_space(1));
  Space b = blow_up(x, empty_space(), 7);
  CHECK(b == x);
  CHECK(b.kind() == SpaceKind::Product);
}

TEST_CASE("structural equality") {
  Space x = atom("X", 2, Tristate::Unknown, Tristate::Unknown);
  Space y = atom("X", 2, Tristate::Unknown, Tristate::Unknown);
  CHECK(x == y);
  CHECK(product(x, y) == product(y, x));  // same shape, same leaves
  CHECK(product(x, point()) != product(point(), x));
  CHECK(atom("X", 2, Tristate::True, Tristate::Unknown) != x);  // facts differ
}

TEST_CASE("divisorial flag") {
  Space x = projective_space(2);
  Space d = blow_up(x, projective_space(1), 1);
  CHECK(is_divisorial(d));
  CHECK_FALSE(is_divisorial(blow_up(x, point(), 2)));
  CHECK_FALSE(is_divisorial(x));
}

TEST_CASE("random expressions have consistent dimensions") {
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    Space s = testutil::random_space(rng);
    switch (s.kind()) {
      case SpaceKind::Product:
        CHECK(s.dim() == s.left().dim() + s.right().dim());
        break;
      case SpaceKind::ProjBundle:
        CHECK(s.dim() == s.base().dim() + s.fiber_rank() - 1);
        break;
      case SpaceKind::Blowup:
        CHECK(s.dim() == s.ambient().dim());
        CHECK(s.center().dim() + s.codim() == s.ambient().dim());
        break;
      case SpaceKind::Point:
        CHECK(s.dim() == 0);
        break;
      default:
        CHECK(s.dim() >= 0);
    }
  }
}

TEST_CASE("fact overrides rebuild atoms before normalization") {
  Space x = atom("X", 2, Tristate::True, Tristate::Unknown);
  std::map<std::string, FactOverride> o;
  o["X"] = FactOverride{Tristate::False, std::nullopt};
  Space y = apply_fact_overrides(x, o);
  CHECK(y.atom_facts().ordinary == Tristate::False);
  // the implied hodge_witt=true falls away with its premise
  CHECK(y.atom_facts().hodge_witt == Tristate::Unknown);

  std::map<std::string, FactOverride> o2;
  o2["X"] = FactOverride{Tristate::True, std::nullopt};
  Space z = apply_fact_overrides(atom("X", 2, Tristate::Unknown, Tristate::Unknown), o2);
  CHECK(z.atom_facts().hodge_witt == Tristate::True);  // normalization applies

  Space tree = product(x, proj_bundle(x, 2));
  Space rebuilt = apply_fact_overrides(tree, o);
  CHECK(rebuilt.left().atom_facts().ordinary == Tristate::False);
  CHECK(rebuilt.right().base().atom_facts().ordinary == Tristate::False);
}

TEST_CASE("text rendering is canonical") {
  Space x = projective_space(2);
  Space e = blow_up(product(x, x), x, 2);
  CHECK(to_text(e) == "Bl((P2 x P2), P2, 2)");
  CHECK(to_text(point()) == "pt");
  CHECK(to_text(proj_bundle(x, 3)) == "P(P2, 3)");
}
