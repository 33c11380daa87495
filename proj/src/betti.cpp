#include "wonder/betti.hpp"

#include <stdexcept>

namespace wonder {

PoincarePolynomial poincare(const Space& s) {
  switch (s.kind()) {
    case SpaceKind::Empty:
      throw std::invalid_argument("poincare: empty space");
    case SpaceKind::Point:
      return PoincarePolynomial::one();
    case SpaceKind::Atom:
      if (!s.atom_poincare())
        throw std::runtime_error("insufficient data: atom " + s.atom_name() +
                                 " carries no poincare polynomial");
      return *s.atom_poincare();
    case SpaceKind::Product:
      return poincare(s.left()) * poincare(s.right());
    case SpaceKind::ProjBundle:
      return poincare(s.base()) * PoincarePolynomial::projective(s.fiber_rank());
    case SpaceKind::Blowup: {
      PoincarePolynomial amb = poincare(s.ambient());
      int c = s.codim();
      if (c == 1) return amb;
      // t^2 + ... + t^{2(c-1)}
      PoincarePolynomial fiber = PoincarePolynomial::projective(c - 1).shifted(2);
      return amb + poincare(s.center()) * fiber;
    }
  }
  throw std::logic_error("poincare: unreachable");
}

std::vector<PoincarePolynomial::Int> betti_vector(const Space& s) {
  return poincare(s).coefficients();
}

}  // namespace wonder
