#ifndef WONDER_IO_HPP
#define WONDER_IO_HPP

#include <string>

#include <json.hpp>

#include "wonder/blowup.hpp"
#include "wonder/certify.hpp"
#include "wonder/constructions.hpp"
#include "wonder/lattice.hpp"
#include "wonder/poincare.hpp"
#include "wonder/space.hpp"

namespace wonder::io {

using json = nlohmann::json;

// All serializers emit objects with sorted keys and a top-level
// "schema_version": 1; byte-identical output for identical inputs.
inline constexpr int kSchemaVersion = 1;

// Canonical byte rendering of a JSON document (2-space indent, trailing
// newline, sorted keys).
std::string dump(const json& j);

json space_to_json(const Space& s);
Space space_from_json(const json& j);

json poincare_to_json(const PoincarePolynomial& p);
PoincarePolynomial poincare_from_json(const json& j);

// Building-set file: ambient, elements, meet table (and the derived leq
// relation), distinguished members.
json building_set_to_json(const BuildingSet& bs);
BuildingSet building_set_from_json(const json& j);

json validation_report_to_json(const ValidationReport& report);

json trace_to_json(const BlowupTrace& trace);
BlowupTrace trace_from_json(const json& j);

json tower_to_json(const TowerDescription& tower);
TowerDescription tower_from_json(const json& j);

// The nested derivation-tree format. Shared premises are expanded; an
// UnsupportedRangeError is thrown when the expansion would exceed the
// node budget.
json certificate_to_json(const Certificate& cert);
CertPtr certificate_from_json(const json& j);

}  // namespace wonder::io

#endif
