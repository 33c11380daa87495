#ifndef WONDER_LATTICE_HPP
#define WONDER_LATTICE_HPP

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wonder/space.hpp"

namespace wonder {

using ElementId = std::string;

// One subscheme of the ambient space, described by its abstract
// isomorphism type. `origin` records generator provenance and is only
// used for labels and tie-breaking.
struct ElementDescriptor {
  ElementId id;
  int dim = 0;
  Space space;
  std::string origin;
};

// Validates dim(space) and dim < dim(ambient) elsewhere; this only
// derives dim from the space.
ElementDescriptor make_element(ElementId id, Space space, std::string origin);

// Meet table over canonical (a < b) id pairs; the mapped value is the id
// of the meet, or nullopt for the empty intersection. The diagonal is
// implicit (meet(a, a) = a).
using MeetTable =
    std::map<std::pair<ElementId, ElementId>, std::optional<ElementId>>;

std::pair<ElementId, ElementId> meet_key(const ElementId& a, const ElementId& b);

// Lookup with implicit diagonal; throws std::invalid_argument naming the
// pair when the table has no entry.
std::optional<ElementId> table_meet(const MeetTable& table, const ElementId& a,
                                    const ElementId& b);

// a <= b under `table`.
bool table_leq(const MeetTable& table, const ElementId& a, const ElementId& b);

// Finite meet-closed family of element descriptors inside an ambient
// space. Immutable once built; the inclusion order is derived from the
// meet table (a <= b iff meet(a, b) = a).
class Arrangement {
 public:
  Arrangement() = default;

  // Builds from explicit tables and checks consistency: meets land in the
  // element set, the table is idempotent-compatible and associative, meet
  // dims do not exceed either argument's dim, and any supplied `leq`
  // pairs agree with the table. Throws std::invalid_argument on
  // violations.
  static Arrangement from_tables(Space ambient,
                                 std::vector<ElementDescriptor> elements,
                                 MeetTable meet);

  const Space& ambient() const { return ambient_; }
  const std::map<ElementId, ElementDescriptor>& elements() const {
    return elements_;
  }
  bool contains(const ElementId& id) const { return elements_.count(id) > 0; }
  const ElementDescriptor& at(const ElementId& id) const;

  // Meet of two elements; nullopt encodes the empty intersection.
  std::optional<ElementId> meet(const ElementId& a, const ElementId& b) const;
  // a <= b in the inclusion order.
  bool leq(const ElementId& a, const ElementId& b) const;
  int codim(const ElementId& id) const;

  const MeetTable& table() const { return meet_; }
  size_t size() const { return elements_.size(); }

 private:
  void check_consistency() const;

  Space ambient_;
  std::map<ElementId, ElementDescriptor> elements_;
  MeetTable meet_;
};

// Generator-specific intersection rule: returns the descriptor of the
// meet of two elements, or nullopt for an empty intersection. Must be
// commutative and must not exceed either argument's dimension.
using MeetOracle = std::function<std::optional<ElementDescriptor>(
    const ElementDescriptor&, const ElementDescriptor&)>;

// Smallest meet-closed arrangement containing the generators. Throws on
// oracle inconsistency (non-commutativity, dimension violations, id
// collisions with differing content), reporting the offending pair.
Arrangement close_under_meet(const Space& ambient,
                             const std::vector<ElementDescriptor>& generators,
                             const MeetOracle& oracle);

struct BuildingSet {
  Arrangement arrangement;
  std::vector<ElementId> members;  // sorted, unique
};

// Outcome of the building-set test for one non-member element.
struct ValidationCheck {
  ElementId element;
  bool intersection_ok = true;    // meet of minimal members equals the element
  bool transversality_ok = true;  // codim additivity over the minimal members
  std::string detail;
};

struct ValidationReport {
  bool valid = true;
  // The transversality test is combinatorial codimension additivity; for
  // user-supplied arrangements matching the geometric notion is the
  // user's assertion burden.
  std::string transversality_model = "combinatorial codimension additivity";
  std::vector<ValidationCheck> checks;  // one per non-member element

  std::vector<const ValidationCheck*> violations() const;
};

// For every non-member S: the inclusion-minimal members containing S must
// (i) have iterated meet equal to S and (ii) satisfy
// codim(S) = sum codim(G_i) in the ambient. Violations are reported, not
// thrown. Throws std::invalid_argument when members are not element ids.
ValidationReport is_building_set(const Arrangement& arr,
                                 const std::vector<ElementId>& members);

// Linearization of the members in which every member precedes every
// member strictly containing it: ascending dimension, ties by origin
// label then id. Throws std::invalid_argument on inclusion-order
// violations that no dimension sort can repair (malformed input).
std::vector<ElementId> inclusion_order(const BuildingSet& bs);

// Smallest subset of element ids containing `seed` and closed under the
// arrangement's meet.
std::set<ElementId> meet_closure(const Arrangement& arr,
                                 const std::vector<ElementId>& seed);

}  // namespace wonder

#endif
