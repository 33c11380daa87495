#ifndef WONDER_BETTI_HPP
#define WONDER_BETTI_HPP

#include <vector>

#include "wonder/poincare.hpp"
#include "wonder/space.hpp"

namespace wonder {

// Poincare polynomial of a space expression:
//   Point            -> 1
//   Atom             -> stored polynomial (error when absent)
//   Product          -> product of the factors' polynomials
//   ProjBundle(B, r) -> P(B) * (1 + t^2 + ... + t^{2(r-1)})
//   Blowup, codim c>=2 -> P(ambient) + P(center) * (t^2 + ... + t^{2(c-1)})
//   Blowup, codim 1    -> P(ambient)   (divisorial, an isomorphism)
// Throws std::runtime_error naming the atom when an atom carries no
// polynomial, std::invalid_argument on Empty.
PoincarePolynomial poincare(const Space& s);

// Coefficient vector of poincare(s): entry i is the Betti number b_i.
std::vector<PoincarePolynomial::Int> betti_vector(const Space& s);

}  // namespace wonder

#endif
