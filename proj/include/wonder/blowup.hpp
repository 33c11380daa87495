#ifndef WONDER_BLOWUP_HPP
#define WONDER_BLOWUP_HPP

#include <map>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "wonder/lattice.hpp"
#include "wonder/space.hpp"

namespace wonder {

// How an element moves through one blowup: equal to the center (it
// becomes the exceptional divisor), strictly contained in the center
// (full preimage, a projective bundle), disjoint from it (unchanged), or
// meeting it properly (strict transform, an inner blowup).
enum class TransformCase { Equal, Pullback, Disjoint, Strict };

std::string_view to_string(TransformCase c);
TransformCase transform_case_from_string(std::string_view s);

struct StageElement {
  ElementId id;
  // Unset for stage-0 elements (the original arrangement).
  std::optional<TransformCase> tcase;
  Space space;
  int dim = 0;
  // (stage, id) entries back to the original arrangement, newest first.
  std::vector<std::pair<int, ElementId>> origin_chain;
};

// Working state of the induction: ambient at this stage, every
// arrangement element's transform, the induced meet table, and the
// members still awaiting their blowup in order.
struct StageState {
  int stage = 0;
  Space ambient;
  std::map<ElementId, StageElement> elements;
  MeetTable meet;
  std::vector<ElementId> pending;
};

// One recorded stage of a trace (stage >= 1).
struct TraceStage {
  ElementId center_id;
  int center_codim = 0;
  Space ambient;
  std::map<ElementId, StageElement> elements;
  MeetTable meet;
};

// Full record of the iterated-blowup construction: initial data, the
// center order, every stage's elements with their case tags and induced
// meets, and the resulting space.
struct BlowupTrace {
  BuildingSet building_set;
  std::vector<ElementId> order;
  std::vector<TraceStage> stages;
  Space final_space;

  const Space& initial_space() const { return building_set.arrangement.ambient(); }
};

StageState initial_state(const BuildingSet& bs, std::vector<ElementId> order);

// Case analysis for one element y against the blowup center z:
//   Equal    -> ProjBundle(z.space, codim z),      dim = dim(ambient) - 1
//   Pullback -> ProjBundle(y.space, codim z),      dim = dim(y) + codim z - 1
//   Disjoint -> y.space unchanged
//   Strict   -> Blowup(y.space, meet(y,z).space, dim y - dim meet)
// Throws std::invalid_argument when the meet table lacks the (y, z) pair.
StageElement dominant_transform(const StageElement& y, const StageElement& z,
                                const Space& ambient, const MeetTable& meet,
                                const std::map<ElementId, StageElement>& elements);

// Blows up the next center: every element is replaced by its dominant
// transform and the meet table is rewritten by the separation rule
//   meet' = empty  when meet(a,b) <= center and neither a nor b is,
//   meet' = meet(a,b)'s transform otherwise.
// Throws when the center is not pending or a pending member is strictly
// inside it (out-of-order center).
StageState blowup_step(const StageState& prev, const ElementId& center_id);

// Runs the full induction over inclusion_order(bs). Throws
// std::invalid_argument when is_building_set rejects the input.
BlowupTrace wonderful(const BuildingSet& bs);
// Variant that also checks the supplied ambient matches the arrangement.
BlowupTrace wonderful(const Space& ambient, const BuildingSet& bs);

}  // namespace wonder

#endif
