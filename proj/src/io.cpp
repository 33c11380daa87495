#include "wonder/io.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>

#include "wonder/errors.hpp"

namespace wonder::io {

namespace {

constexpr const char* kEmptyMeet = "∅";
constexpr uint64_t kMaxCertificateNodes = 500000;

[[noreturn]] void bad(const std::string& msg) {
  throw std::invalid_argument("malformed input: " + msg);
}

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) bad(std::string("missing field '") + name + "'");
  return *it;
}

std::string str_field(const json& j, const char* name) {
  const json& f = field(j, name);
  if (!f.is_string()) bad(std::string("field '") + name + "' must be a string");
  return f.get<std::string>();
}

int int_field(const json& j, const char* name) {
  const json& f = field(j, name);
  if (!f.is_number_integer()) bad(std::string("field '") + name + "' must be an integer");
  return f.get<int>();
}

json int_to_json(const PoincarePolynomial::Int& v) {
  if (v >= std::numeric_limits<int64_t>::min() &&
      v <= std::numeric_limits<int64_t>::max())
    return json(static_cast<int64_t>(v));
  return json(v.str());  // decimal string beyond 64 bits
}

PoincarePolynomial::Int int_from_json(const json& j) {
  if (j.is_number_integer()) return PoincarePolynomial::Int(j.get<int64_t>());
  if (j.is_string()) return PoincarePolynomial::Int(j.get<std::string>());
  bad("polynomial coefficients must be integers or decimal strings");
}

void check_kind(const json& j, const char* kind) {
  if (!j.is_object()) bad("expected an object");
  if (str_field(j, "kind") != kind)
    bad(std::string("expected kind '") + kind + "', got '" +
        str_field(j, "kind") + "'");
  int v = int_field(j, "schema_version");
  if (v != kSchemaVersion)
    bad("unsupported schema_version " + std::to_string(v));
}

}  // namespace

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json space_to_json(const Space& s) {
  json j;
  switch (s.kind()) {
    case SpaceKind::Empty:
      j["kind"] = "empty";
      break;
    case SpaceKind::Point:
      j["kind"] = "point";
      break;
    case SpaceKind::Atom: {
      j["kind"] = "atom";
      j["name"] = s.atom_name();
      j["dim"] = s.dim();
      const PropertyFacts& f = s.atom_facts();
      j["ordinary"] = std::string(to_string(f.ordinary));
      j["hodge_witt"] = std::string(to_string(f.hodge_witt));
      j["hodge_witt_asserted"] = f.hodge_witt_asserted;
      if (s.atom_poincare()) {
        json coeffs = json::array();
        for (const auto& c : s.atom_poincare()->coefficients())
          coeffs.push_back(int_to_json(c));
        j["poincare"] = std::move(coeffs);
      }
      break;
    }
    case SpaceKind::Product:
      j["kind"] = "product";
      j["left"] = space_to_json(s.left());
      j["right"] = space_to_json(s.right());
      break;
    case SpaceKind::ProjBundle:
      j["kind"] = "proj_bundle";
      j["base"] = space_to_json(s.base());
      j["fiber_rank"] = s.fiber_rank();
      break;
    case SpaceKind::Blowup:
      j["kind"] = "blowup";
      j["ambient"] = space_to_json(s.ambient());
      j["center"] = space_to_json(s.center());
      j["codim"] = s.codim();
      break;
  }
  return j;
}

Space space_from_json(const json& j) {
  if (!j.is_object()) bad("space must be an object");
  std::string kind = str_field(j, "kind");
  if (kind == "empty") return empty_space();
  if (kind == "point") return point();
  if (kind == "atom") {
    Tristate ord = tristate_from_string(str_field(j, "ordinary"));
    Tristate hw_stored = tristate_from_string(str_field(j, "hodge_witt"));
    const json& asserted_f = field(j, "hodge_witt_asserted");
    if (!asserted_f.is_boolean()) bad("hodge_witt_asserted must be a boolean");
    bool asserted = asserted_f.get<bool>();
    Tristate hw_raw = asserted ? hw_stored : Tristate::Unknown;
    std::optional<PoincarePolynomial> poly;
    if (j.contains("poincare")) {
      const json& arr = j.at("poincare");
      if (!arr.is_array()) bad("poincare must be an array");
      std::vector<PoincarePolynomial::Int> coeffs;
      for (const json& c : arr) coeffs.push_back(int_from_json(c));
      poly = PoincarePolynomial(std::move(coeffs));
    }
    Space s = atom(str_field(j, "name"), int_field(j, "dim"), ord, hw_raw, poly);
    if (s.atom_facts().hodge_witt != hw_stored)
      bad("atom " + s.atom_name() + " carries inconsistent facts");
    return s;
  }
  if (kind == "product")
    return product(space_from_json(field(j, "left")),
                   space_from_json(field(j, "right")));
  if (kind == "proj_bundle")
    return proj_bundle(space_from_json(field(j, "base")),
                       int_field(j, "fiber_rank"));
  if (kind == "blowup")
    return blow_up(space_from_json(field(j, "ambient")),
                   space_from_json(field(j, "center")), int_field(j, "codim"));
  bad("unknown space kind '" + kind + "'");
}

json poincare_to_json(const PoincarePolynomial& p) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "poincare";
  json coeffs = json::array();
  for (const auto& c : p.coefficients()) coeffs.push_back(int_to_json(c));
  j["coefficients"] = std::move(coeffs);
  j["rendered"] = p.str();
  return j;
}

PoincarePolynomial poincare_from_json(const json& j) {
  check_kind(j, "poincare");
  std::vector<PoincarePolynomial::Int> coeffs;
  for (const json& c : field(j, "coefficients")) coeffs.push_back(int_from_json(c));
  return PoincarePolynomial(std::move(coeffs));
}

namespace {

json meet_table_to_json(const MeetTable& table) {
  json out = json::array();
  for (const auto& [pair, value] : table) {
    json row = json::array();
    row.push_back(pair.first);
    row.push_back(pair.second);
    row.push_back(value ? json(*value) : json(kEmptyMeet));
    out.push_back(std::move(row));
  }
  return out;
}

MeetTable meet_table_from_json(const json& j) {
  if (!j.is_array()) bad("meet table must be an array");
  MeetTable table;
  for (const json& row : j) {
    if (!row.is_array() || row.size() != 3) bad("meet rows are [a, b, m] triples");
    ElementId a = row[0].get<ElementId>();
    ElementId b = row[1].get<ElementId>();
    std::optional<ElementId> m;
    std::string v = row[2].get<std::string>();
    if (v != kEmptyMeet) m = v;
    auto key = meet_key(a, b);
    auto [it, inserted] = table.emplace(key, m);
    if (!inserted && it->second != m)
      bad("meet table lists (" + a + ", " + b + ") twice with different values");
  }
  return table;
}

json elements_to_json(const std::map<ElementId, ElementDescriptor>& elements) {
  json out = json::array();
  for (const auto& [id, e] : elements) {
    json row;
    row["id"] = e.id;
    row["dim"] = e.dim;
    row["origin"] = e.origin;
    row["space"] = space_to_json(e.space);
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<ElementDescriptor> elements_from_json(const json& j) {
  if (!j.is_array()) bad("elements must be an array");
  std::vector<ElementDescriptor> out;
  for (const json& row : j) {
    ElementDescriptor e =
        make_element(str_field(row, "id"), space_from_json(field(row, "space")),
                     str_field(row, "origin"));
    if (e.dim != int_field(row, "dim"))
      bad("element " + e.id + ": recorded dim disagrees with its space");
    out.push_back(std::move(e));
  }
  return out;
}

json leq_to_json(const Arrangement& arr) {
  json out = json::array();
  for (const auto& [a, ea] : arr.elements())
    for (const auto& [b, eb] : arr.elements())
      if (a != b && arr.leq(a, b)) {
        json row = json::array();
        row.push_back(a);
        row.push_back(b);
        out.push_back(std::move(row));
      }
  return out;
}

json initial_to_json(const BuildingSet& bs) {
  json j;
  j["ambient"] = space_to_json(bs.arrangement.ambient());
  j["elements"] = elements_to_json(bs.arrangement.elements());
  j["leq"] = leq_to_json(bs.arrangement);
  j["meet"] = meet_table_to_json(bs.arrangement.table());
  j["members"] = bs.members;
  return j;
}

BuildingSet initial_from_json(const json& j) {
  BuildingSet bs;
  bs.arrangement = Arrangement::from_tables(
      space_from_json(field(j, "ambient")), elements_from_json(field(j, "elements")),
      meet_table_from_json(field(j, "meet")));
  if (j.contains("members")) {
    for (const json& m : j.at("members")) bs.members.push_back(m.get<ElementId>());
    std::sort(bs.members.begin(), bs.members.end());
    bs.members.erase(std::unique(bs.members.begin(), bs.members.end()),
                     bs.members.end());
    for (const ElementId& m : bs.members)
      if (!bs.arrangement.contains(m)) bad("member " + m + " is not an element");
  }
  if (j.contains("leq")) {
    for (const json& row : j.at("leq")) {
      if (!row.is_array() || row.size() != 2) bad("leq rows are [a, b] pairs");
      ElementId a = row[0].get<ElementId>();
      ElementId b = row[1].get<ElementId>();
      if (!bs.arrangement.leq(a, b))
        bad("declared leq pair (" + a + ", " + b + ") disagrees with the meet table");
    }
  }
  return bs;
}

}  // namespace

json building_set_to_json(const BuildingSet& bs) {
  json j = initial_to_json(bs);
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "arrangement";
  return j;
}

BuildingSet building_set_from_json(const json& j) {
  check_kind(j, "arrangement");
  return initial_from_json(j);
}

json validation_report_to_json(const ValidationReport& report) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "validation_report";
  j["valid"] = report.valid;
  j["transversality_model"] = report.transversality_model;
  json checks = json::array();
  for (const ValidationCheck& c : report.checks) {
    json row;
    row["element"] = c.element;
    row["intersection_ok"] = c.intersection_ok;
    row["transversality_ok"] = c.transversality_ok;
    row["detail"] = c.detail;
    checks.push_back(std::move(row));
  }
  j["checks"] = std::move(checks);
  return j;
}

json trace_to_json(const BlowupTrace& trace) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "trace";
  j["initial"] = initial_to_json(trace.building_set);
  j["order"] = trace.order;
  json stages = json::array();
  for (const TraceStage& stage : trace.stages) {
    json s;
    s["center"] = stage.center_id;
    s["center_codim"] = stage.center_codim;
    s["ambient"] = space_to_json(stage.ambient);
    json elements = json::array();
    for (const auto& [id, e] : stage.elements) {
      json row;
      row["id"] = e.id;
      row["case"] = std::string(to_string(*e.tcase));
      row["dim"] = e.dim;
      row["space"] = space_to_json(e.space);
      elements.push_back(std::move(row));
    }
    s["elements"] = std::move(elements);
    s["meet"] = meet_table_to_json(stage.meet);
    stages.push_back(std::move(s));
  }
  j["stages"] = std::move(stages);
  j["final_space"] = space_to_json(trace.final_space);
  return j;
}

BlowupTrace trace_from_json(const json& j) {
  check_kind(j, "trace");
  BlowupTrace trace;
  trace.building_set = initial_from_json(field(j, "initial"));
  for (const json& c : field(j, "order")) trace.order.push_back(c.get<ElementId>());

  int stage_no = 0;
  for (const json& s : field(j, "stages")) {
    ++stage_no;
    TraceStage stage;
    stage.center_id = str_field(s, "center");
    stage.center_codim = int_field(s, "center_codim");
    stage.ambient = space_from_json(field(s, "ambient"));
    for (const json& row : field(s, "elements")) {
      StageElement e;
      e.id = str_field(row, "id");
      e.tcase = transform_case_from_string(str_field(row, "case"));
      e.space = space_from_json(field(row, "space"));
      e.dim = int_field(row, "dim");
      if (e.dim != e.space.dim())
        bad("stage element " + e.id + ": recorded dim disagrees with its space");
      for (int k = stage_no; k >= 0; --k) e.origin_chain.push_back({k, e.id});
      stage.elements.emplace(e.id, std::move(e));
    }
    stage.meet = meet_table_from_json(field(s, "meet"));
    trace.stages.push_back(std::move(stage));
  }
  trace.final_space = space_from_json(field(j, "final_space"));
  if (trace.order.size() != trace.stages.size())
    bad("trace order and stages disagree in length");
  return trace;
}

json tower_to_json(const TowerDescription& tower) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "tower";
  j["base"] = space_to_json(tower.base);
  json steps = json::array();
  for (const TowerStep& step : tower.steps) {
    json s;
    s["label"] = step.label;
    json centers = json::array();
    for (const Space& c : step.centers) {
      json row;
      row["space"] = space_to_json(c);
      row["codim"] = tower.base.dim() - c.dim();
      centers.push_back(std::move(row));
    }
    s["centers"] = std::move(centers);
    steps.push_back(std::move(s));
  }
  j["steps"] = std::move(steps);
  j["realized"] = space_to_json(realize_tower(tower));
  return j;
}

TowerDescription tower_from_json(const json& j) {
  check_kind(j, "tower");
  TowerDescription tower;
  tower.base = space_from_json(field(j, "base"));
  for (const json& s : field(j, "steps")) {
    TowerStep step;
    step.label = str_field(s, "label");
    for (const json& row : field(s, "centers"))
      step.centers.push_back(space_from_json(field(row, "space")));
    tower.steps.push_back(std::move(step));
  }
  return tower;
}

namespace {

json subject_to_json(const Subject& subject) {
  json j;
  if (const Space* s = std::get_if<Space>(&subject)) {
    j["kind"] = "space";
    j["space"] = space_to_json(*s);
  } else if (const BuildingSetRef* b = std::get_if<BuildingSetRef>(&subject)) {
    j["kind"] = "building_set";
    j["ambient"] = space_to_json(b->ambient);
    j["members"] = b->members;
  } else {
    const TraceRef& t = std::get<TraceRef>(subject);
    j["kind"] = "trace";
    j["final_space"] = space_to_json(t.final_space);
    j["stages"] = t.stage_count;
  }
  return j;
}

Subject subject_from_json(const json& j) {
  std::string kind = str_field(j, "kind");
  if (kind == "space") return Subject(space_from_json(field(j, "space")));
  if (kind == "building_set") {
    BuildingSetRef ref;
    ref.ambient = space_from_json(field(j, "ambient"));
    for (const json& m : field(j, "members")) ref.members.push_back(m.get<ElementId>());
    return Subject(std::move(ref));
  }
  if (kind == "trace") {
    TraceRef ref;
    ref.final_space = space_from_json(field(j, "final_space"));
    ref.stage_count = field(j, "stages").get<size_t>();
    return Subject(std::move(ref));
  }
  bad("unknown subject kind '" + kind + "'");
}

uint64_t expanded_size(const Certificate& c,
                       std::map<const Certificate*, uint64_t>& memo) {
  auto it = memo.find(&c);
  if (it != memo.end()) return it->second;
  uint64_t total = 1;
  for (const CertPtr& p : c.premises) {
    uint64_t sub = expanded_size(*p, memo);
    total = total > std::numeric_limits<uint64_t>::max() - sub ?
        std::numeric_limits<uint64_t>::max() : total + sub;
  }
  memo.emplace(&c, total);
  return total;
}

json certificate_node_to_json(const Certificate& c) {
  json j;
  json claim;
  claim["subject"] = subject_to_json(c.claim.subject);
  claim["property"] = std::string(to_string(c.claim.property));
  claim["verdict"] = std::string(to_string(c.claim.verdict));
  j["claim"] = std::move(claim);
  j["rule"] = std::string(to_string(c.rule));
  if (c.dt_case) j["case"] = std::string(to_string(*c.dt_case));
  json premises = json::array();
  for (const CertPtr& p : c.premises)
    premises.push_back(certificate_node_to_json(*p));
  j["premises"] = std::move(premises);
  return j;
}

CertPtr certificate_node_from_json(const json& j) {
  auto cert = std::make_shared<Certificate>();
  const json& claim = field(j, "claim");
  cert->claim.subject = subject_from_json(field(claim, "subject"));
  cert->claim.property = property_from_string(str_field(claim, "property"));
  cert->claim.verdict = tristate_from_string(str_field(claim, "verdict"));
  cert->rule = rule_from_string(str_field(j, "rule"));
  if (j.contains("case"))
    cert->dt_case = transform_case_from_string(str_field(j, "case"));
  for (const json& p : field(j, "premises"))
    cert->premises.push_back(certificate_node_from_json(p));
  return cert;
}

}  // namespace

json certificate_to_json(const Certificate& cert) {
  std::map<const Certificate*, uint64_t> memo;
  if (expanded_size(cert, memo) > kMaxCertificateNodes)
    throw UnsupportedRangeError(
        "certificate expansion exceeds the node budget; rebuild with a smaller "
        "instance or use the text rendering");
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "certificate";
  j["verdict"] = std::string(to_string(cert.claim.verdict));
  json blocking = json::array();
  for (const std::string& name : blocking_atoms(cert)) blocking.push_back(name);
  j["blocking"] = std::move(blocking);
  j["certificate"] = certificate_node_to_json(cert);
  return j;
}

CertPtr certificate_from_json(const json& j) {
  check_kind(j, "certificate");
  return certificate_node_from_json(field(j, "certificate"));
}

}  // namespace wonder::io
