#include <doctest.h>

#include <random>

#include "wonder/betti.hpp"
#include "wonder/space.hpp"
#include "testutil.hpp"

using namespace wonder;

TEST_CASE("polynomial arithmetic and rendering") {
  PoincarePolynomial p{1, 0, 5, 0, 1};
  CHECK(p.str() == "1 + 5*t^2 + t^4");
  CHECK(p.degree() == 4);
  CHECK(p.at_one() == 7);
  CHECK(p.is_palindromic(4));
  CHECK_FALSE(p.is_palindromic(6));
  CHECK(PoincarePolynomial{}.str() == "0");
  CHECK(PoincarePolynomial{1}.str() == "1");
  CHECK((PoincarePolynomial{0, 3}).str() == "3*t");
  CHECK((PoincarePolynomial{0, 1}).str() == "t");

  CHECK(PoincarePolynomial::projective(3) == PoincarePolynomial{1, 0, 1, 0, 1});
  CHECK((PoincarePolynomial{1, 1} * PoincarePolynomial{1, 1}) ==
        PoincarePolynomial{1, 2, 1});
  CHECK((PoincarePolynomial{1, 0, 1}).shifted(2) == PoincarePolynomial{0, 0, 1, 0, 1});
}

TEST_CASE("point and atom polynomials") {
  CHECK(poincare(point()) == PoincarePolynomial{1});
  CHECK(betti_vector(point()) == std::vector<PoincarePolynomial::Int>{1});
  Space bare = atom("X", 2, Tristate::Unknown, Tristate::Unknown);
  CHECK_THROWS_WITH_AS(poincare(bare),
                       "insufficient data: atom X carries no poincare polynomial",
                       std::runtime_error);
}

TEST_CASE("blowup of the plane in a point") {
  Space b = blow_up(projective_space(2), point(), 2);
  CHECK(poincare(b) == PoincarePolynomial{1, 0, 2, 0, 1});
}

TEST_CASE("product of projective lines") {
  Space s = product(projective_space(1), projective_space(1));
  CHECK(betti_vector(s) ==
        std::vector<PoincarePolynomial::Int>{1, 0, 2, 0, 1});
}

TEST_CASE("divisorial blowups do not change the polynomial") {
  Space p2 = projective_space(2);
  Space d = blow_up(p2, projective_space(1), 1);
  CHECK(poincare(d) == poincare(p2));
}

TEST_CASE("bundle formula") {
  Space s = proj_bundle(projective_space(1), 3);
  // (1 + t^2)(1 + t^2 + t^4)
  CHECK(poincare(s) == PoincarePolynomial{1, 0, 2, 0, 2, 0, 1});
}

TEST_CASE("euler number of a blowup") {
  // e(Bl_Z X) = e(X) + e(Z) * (c - 1), checked on random expressions
  std::mt19937 rng(11);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    Space s = testutil::random_space(rng);
    if (s.kind() != SpaceKind::Blowup) continue;
    ++checked;
    auto e = poincare(s).at_one();
    auto ex = poincare(s.ambient()).at_one();
    auto ez = poincare(s.center()).at_one();
    CHECK(e == ex + ez * (s.codim() - 1));
  }
  CHECK(checked > 20);
}

TEST_CASE("random expressions from palindromic atoms are palindromic") {
  std::mt19937 rng(23);
  for (int i = 0; i < 300; ++i) {
    Space s = testutil::random_space(rng);
    CHECK(poincare(s).is_palindromic(2 * s.dim()));
  }
}
