#ifndef WONDER_CERTIFY_HPP
#define WONDER_CERTIFY_HPP

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wonder/blowup.hpp"
#include "wonder/lattice.hpp"
#include "wonder/space.hpp"
#include "wonder/tristate.hpp"

namespace wonder {

// Inference rules. Every certificate node carries exactly one; leaves
// are ATOM_FACT, EMPTY_ORDINARY or POINT_ORDINARY only.
enum class Rule {
  AtomFact,
  EmptyOrdinary,
  PointOrdinary,
  EkedahlProduct,
  IllusieProjBundle,
  IllusieBlowup,
  DominantTransform,
  OrdImpliesHw,
  MainTheorem,
  OrdinaryBuildingSet,
};

std::string_view to_string(Rule r);
Rule rule_from_string(std::string_view s);

enum class Property { Ordinary, HodgeWitt };

std::string_view to_string(Property p);
Property property_from_string(std::string_view s);

// Claims are about a single space, a building set, or the outcome of a
// whole trace.
struct BuildingSetRef {
  Space ambient;
  std::vector<ElementId> members;
};

struct TraceRef {
  Space final_space;
  size_t stage_count = 0;
};

using Subject = std::variant<Space, BuildingSetRef, TraceRef>;

std::string subject_text(const Subject& s);

struct Claim {
  Subject subject;
  Property property = Property::Ordinary;
  Tristate verdict = Tristate::Unknown;
};

struct Certificate;
using CertPtr = std::shared_ptr<const Certificate>;

// Derivation node: (claim, rule, premises). Premises are shared; a big
// derivation is a DAG in memory even though it renders as a tree.
struct Certificate {
  Claim claim;
  Rule rule = Rule::AtomFact;
  // Set on DominantTransform nodes only: which proof case applied.
  std::optional<TransformCase> dt_case;
  std::vector<CertPtr> premises;
};

// Truth tables of the rules, exposed so that the independent checker and
// the exhaustive rule tests evaluate exactly what the builder does.
// Premise order for the product rule: [ord(L), hw(L), ord(R), hw(R)].
Tristate eval_ekedahl_product(Tristate ord_l, Tristate hw_l, Tristate ord_r,
                              Tristate hw_r);
Tristate eval_illusie_blowup(Tristate ord_ambient, Tristate ord_center);
Tristate eval_illusie_proj_bundle(Tristate ord_base);
Tristate eval_ord_implies_hw(Tristate ordinary);
Tristate eval_dominant_transform(Tristate ord_prev, Tristate ord_meet);
Tristate eval_conjunction(const std::vector<Tristate>& vs);

// Structural certification of a space expression. Hodge-Witt claims on
// anything without a direct assertion go through ORD_IMPLIES_HW; no
// other Hodge-Witt propagation is performed.
CertPtr certify_space(const Space& s, Property property = Property::Ordinary);

// Conjunction over the ambient and every element of the meet-closure of
// the members.
CertPtr certify_building_set(const BuildingSet& bs);

// Theorem-level verdict for a trace: MAIN_THEOREM over the building-set
// certificate.
CertPtr certify_wonderful(const BlowupTrace& trace);

// Proof-level verdict: replays the recorded stages, deriving each
// element by DOMINANT_TRANSFORM and each ambient by ILLUSIE_BLOWUP.
// Agrees with certify_wonderful on every valid trace.
CertPtr certify_trace(const BlowupTrace& trace);

// Atoms responsible for an Unknown verdict: Unknown fact leaves, and
// atoms whose Hodge-Witt status the implication could not settle.
std::set<std::string> blocking_atoms(const Certificate& cert);

// Human-readable rendering of the derivation tree.
std::string explain_text(const Certificate& cert);

struct CheckReport {
  bool ok = true;
  std::vector<std::string> issues;
};

// Independent re-checker: recomputes every node's verdict from its
// premises via the rule tables and validates rule arity, leaf discipline
// and claim shapes. Does not consult the builder.
CheckReport verify_certificate(const Certificate& cert);

}  // namespace wonder

#endif
