#ifndef WONDER_SPACE_HPP
#define WONDER_SPACE_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>

#include "wonder/poincare.hpp"
#include "wonder/tristate.hpp"

namespace wonder {

// Truth status of the two predicates tracked per atom. `ordinary = True`
// forces `hodge_witt = True` at construction; `hodge_witt_asserted`
// remembers whether the Hodge-Witt value was supplied directly or only
// obtained through that implication (certificates must cite the
// implication in the latter case, and only then).
struct PropertyFacts {
  Tristate ordinary = Tristate::Unknown;
  Tristate hodge_witt = Tristate::Unknown;
  bool hodge_witt_asserted = false;

  bool operator==(const PropertyFacts&) const = default;
};

// Normalizes raw assertions. Throws std::invalid_argument on the
// contradictory pair (ordinary = True, hodge_witt = False).
PropertyFacts make_facts(Tristate ordinary, Tristate hodge_witt);

enum class SpaceKind { Empty, Point, Atom, Product, ProjBundle, Blowup };

struct SpaceNode;

// Immutable expression denoting a smooth projective variety built from
// atoms by product, projective bundle and blowup. Values are cheap
// shared handles; equality is structural.
class Space {
 public:
  Space();  // the empty space

  SpaceKind kind() const;
  bool is_empty() const { return kind() == SpaceKind::Empty; }

  // Structural dimension; throws std::invalid_argument on Empty.
  int dim() const;

  // Atom accessors (throw std::logic_error when the kind does not match).
  const std::string& atom_name() const;
  const PropertyFacts& atom_facts() const;
  const std::optional<PoincarePolynomial>& atom_poincare() const;

  const Space& left() const;
  const Space& right() const;

  const Space& base() const;
  int fiber_rank() const;

  const Space& ambient() const;
  const Space& center() const;
  int codim() const;

  bool operator==(const Space& o) const;
  bool operator!=(const Space& o) const { return !(*this == o); }

  // Identity of the underlying shared node; used to memoize work on
  // shared subexpressions. Equal pointers imply structural equality, not
  // conversely.
  const void* identity() const;

 private:
  explicit Space(std::shared_ptr<const SpaceNode> node);
  std::shared_ptr<const SpaceNode> node_;

  friend Space empty_space();
  friend Space point();
  friend Space atom(std::string, int, Tristate, Tristate,
                    std::optional<PoincarePolynomial>);
  friend Space product(const Space&, const Space&);
  friend Space proj_bundle(const Space&, int);
  friend Space blow_up(const Space&, const Space&, int);
};

Space empty_space();
Space point();

// An axiomatized variety: name, dimension, asserted facts, optional
// Poincare polynomial. Rejects a polynomial whose degree exceeds 2*dim
// or whose constant coefficient is not 1.
Space atom(std::string name, int dim, Tristate ordinary, Tristate hodge_witt,
           std::optional<PoincarePolynomial> poincare = std::nullopt);

// Preset atom "P<d>": ordinary, Hodge-Witt, with 1 + t^2 + ... + t^{2d}.
Space projective_space(int d);

Space product(const Space& a, const Space& b);

// Projectivized rank-r bundle over `base`; the fibers are projective
// (r-1)-spaces, so dim = dim(base) + r - 1. Rank 1 is allowed and is the
// identity in dimension.
Space proj_bundle(const Space& base, int fiber_rank);

// Blowup of `ambient` along `center` of codimension `codim`; requires
// dim(center) + codim = dim(ambient). An Empty center returns `ambient`
// unchanged. codim = 1 is permitted (blowup along a divisor, an
// isomorphism); the Betti and certification rules treat it as identity.
Space blow_up(const Space& ambient, const Space& center, int codim);

inline int dimension(const Space& s) { return s.dim(); }

// True for codim-1 blowup nodes.
bool is_divisorial(const Space& s);

// Canonical text rendering, e.g. "Bl((P2 x P2), P2, 2)".
std::string to_text(const Space& s);

// Names of every atom occurring in the expression.
std::set<std::string> atom_names(const Space& s);

struct FactOverride {
  std::optional<Tristate> ordinary;
  std::optional<Tristate> hodge_witt;
};

// Rebuilds the expression with the named atoms' raw assertions replaced
// and re-normalized. Unnamed atoms are untouched.
Space apply_fact_overrides(const Space& s,
                           const std::map<std::string, FactOverride>& overrides);

}  // namespace wonder

#endif
