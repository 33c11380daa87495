#include "wonder/lattice.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace wonder {

namespace {

std::pair<ElementId, ElementId> key(const ElementId& a, const ElementId& b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument(msg);
}

constexpr size_t kMaxClosureElements = 100000;

}  // namespace

std::pair<ElementId, ElementId> meet_key(const ElementId& a, const ElementId& b) {
  return key(a, b);
}

std::optional<ElementId> table_meet(const MeetTable& table, const ElementId& a,
                                    const ElementId& b) {
  if (a == b) return a;
  auto it = table.find(key(a, b));
  if (it == table.end())
    fail("meet table missing pair (" + a + ", " + b + ")");
  return it->second;
}

bool table_leq(const MeetTable& table, const ElementId& a, const ElementId& b) {
  auto m = table_meet(table, a, b);
  return m && *m == a;
}

ElementDescriptor make_element(ElementId id, Space space, std::string origin) {
  if (id.empty()) fail("element with empty id");
  if (space.is_empty()) fail("element " + id + " has empty space");
  ElementDescriptor e;
  e.id = std::move(id);
  e.dim = space.dim();
  e.space = std::move(space);
  e.origin = std::move(origin);
  return e;
}

Arrangement Arrangement::from_tables(Space ambient,
                                     std::vector<ElementDescriptor> elements,
                                     MeetTable meet) {
  Arrangement arr;
  arr.ambient_ = std::move(ambient);
  if (arr.ambient_.is_empty()) fail("arrangement with empty ambient");
  for (ElementDescriptor& e : elements) {
    if (e.dim != e.space.dim())
      fail("element " + e.id + ": recorded dim disagrees with its space");
    if (e.dim >= arr.ambient_.dim())
      fail("element " + e.id + ": dim must be smaller than the ambient's");
    if (!arr.elements_.emplace(e.id, std::move(e)).second)
      fail("duplicate element id " + e.id);
  }
  arr.meet_ = std::move(meet);
  arr.check_consistency();
  return arr;
}

const ElementDescriptor& Arrangement::at(const ElementId& id) const {
  auto it = elements_.find(id);
  if (it == elements_.end()) fail("unknown element id " + id);
  return it->second;
}

std::optional<ElementId> Arrangement::meet(const ElementId& a,
                                           const ElementId& b) const {
  at(a);
  at(b);
  if (a == b) return a;
  auto it = meet_.find(key(a, b));
  if (it == meet_.end()) fail("meet table missing pair (" + a + ", " + b + ")");
  return it->second;
}

bool Arrangement::leq(const ElementId& a, const ElementId& b) const {
  auto m = meet(a, b);
  return m && *m == a;
}

int Arrangement::codim(const ElementId& id) const {
  return ambient_.dim() - at(id).dim;
}

void Arrangement::check_consistency() const {
  // Table keys are canonical, complete, and land in the element set.
  for (const auto& [pair, value] : meet_) {
    const auto& [a, b] = pair;
    if (!(a < b)) fail("meet table key (" + a + ", " + b + ") not canonical");
    if (!contains(a) || !contains(b))
      fail("meet table mentions unknown elements (" + a + ", " + b + ")");
    if (value) {
      if (!contains(*value))
        fail("meet(" + a + ", " + b + ") = " + *value + " is not an element");
      int md = at(*value).dim;
      if (md > std::min(at(a).dim, at(b).dim))
        fail("meet(" + a + ", " + b + ") has dim exceeding min dim");
    }
  }
  std::vector<ElementId> ids;
  ids.reserve(elements_.size());
  for (const auto& [id, e] : elements_) ids.push_back(id);
  for (size_t i = 0; i < ids.size(); ++i)
    for (size_t j = i + 1; j < ids.size(); ++j)
      if (!meet_.count(key(ids[i], ids[j])))
        fail("meet table missing pair (" + ids[i] + ", " + ids[j] + ")");

  // meet(a, b) <= a: meeting with either argument reproduces the meet.
  for (const auto& [pair, value] : meet_) {
    if (!value) continue;
    const auto& [a, b] = pair;
    for (const ElementId& side : {a, b}) {
      auto m = *value == side ? std::optional<ElementId>(side)
                              : meet_.at(key(*value, side));
      if (!m || *m != *value)
        fail("meet(" + a + ", " + b + ") = " + *value +
             " is not below both arguments");
    }
  }

  // Associativity as a partial operation (empty treated as absorbing).
  // Cubic sweep, so only run it at desk scale.
  if (ids.size() > 128) return;
  auto meet_opt = [&](const std::optional<ElementId>& x,
                      const ElementId& y) -> std::optional<ElementId> {
    if (!x) return std::nullopt;
    if (*x == y) return y;
    return meet_.at(key(*x, y));
  };
  for (const ElementId& a : ids)
    for (const ElementId& b : ids)
      for (const ElementId& c : ids) {
        auto ab = a == b ? std::optional<ElementId>(a) : meet_.at(key(a, b));
        auto bc = b == c ? std::optional<ElementId>(b) : meet_.at(key(b, c));
        if (meet_opt(ab, c) != meet_opt(bc, a))
          fail("meet table not associative on (" + a + ", " + b + ", " + c + ")");
      }
}

Arrangement close_under_meet(const Space& ambient,
                             const std::vector<ElementDescriptor>& generators,
                             const MeetOracle& oracle) {
  std::map<ElementId, ElementDescriptor> elements;
  MeetTable table;
  std::deque<ElementId> fresh;

  auto add_element = [&](const ElementDescriptor& e, const std::string& context) {
    auto it = elements.find(e.id);
    if (it != elements.end()) {
      if (it->second.dim != e.dim || !(it->second.space == e.space))
        fail("oracle inconsistency at " + context + ": id " + e.id +
             " reused with different content");
      return;
    }
    if (e.dim != e.space.dim())
      fail("element " + e.id + ": recorded dim disagrees with its space");
    if (elements.size() >= kMaxClosureElements)
      fail("meet closure did not terminate within the element budget");
    elements.emplace(e.id, e);
    fresh.push_back(e.id);
  };

  for (const ElementDescriptor& g : generators) add_element(g, "generators");

  while (!fresh.empty()) {
    ElementId a = fresh.front();
    fresh.pop_front();
    // Pair the new element against everything present (including itself's
    // earlier peers); meets of two fresh elements are handled when the
    // second one is drained.
    std::vector<ElementId> others;
    for (const auto& [id, e] : elements) others.push_back(id);
    for (const ElementId& b : others) {
      if (b == a || table.count(key(a, b))) continue;
      const ElementDescriptor& ea = elements.at(a);
      const ElementDescriptor& eb = elements.at(b);
      auto m1 = oracle(ea, eb);
      auto m2 = oracle(eb, ea);
      std::string context = "(" + a + ", " + b + ")";
      if (m1.has_value() != m2.has_value() ||
          (m1 && (m1->id != m2->id)))
        fail("oracle not commutative on " + context);
      if (!m1) {
        table[key(a, b)] = std::nullopt;
        continue;
      }
      if (m1->dim > std::min(ea.dim, eb.dim))
        fail("oracle meet dim exceeds min dim on " + context);
      add_element(*m1, context);
      table[key(a, b)] = m1->id;
    }
  }

  std::vector<ElementDescriptor> flat;
  flat.reserve(elements.size());
  for (const auto& [id, e] : elements) flat.push_back(e);
  return Arrangement::from_tables(ambient, std::move(flat), std::move(table));
}

std::vector<const ValidationCheck*> ValidationReport::violations() const {
  std::vector<const ValidationCheck*> out;
  for (const ValidationCheck& c : checks)
    if (!c.intersection_ok || !c.transversality_ok) out.push_back(&c);
  return out;
}

ValidationReport is_building_set(const Arrangement& arr,
                                 const std::vector<ElementId>& members) {
  std::set<ElementId> member_set(members.begin(), members.end());
  for (const ElementId& m : members)
    if (!arr.contains(m)) fail("member " + m + " is not an arrangement element");

  ValidationReport report;
  for (const auto& [id, e] : arr.elements()) {
    if (member_set.count(id)) continue;
    ValidationCheck check;
    check.element = id;

    // Inclusion-minimal members containing this element.
    std::vector<ElementId> containing;
    for (const ElementId& g : member_set)
      if (arr.leq(id, g)) containing.push_back(g);
    std::vector<ElementId> minimal;
    for (const ElementId& g : containing) {
      bool is_minimal = true;
      for (const ElementId& h : containing)
        if (h != g && arr.leq(h, g)) { is_minimal = false; break; }
      if (is_minimal) minimal.push_back(g);
    }

    std::ostringstream detail;
    if (minimal.empty()) {
      check.intersection_ok = false;
      check.transversality_ok = false;
      detail << "no members contain " << id;
    } else {
      std::optional<ElementId> acc = minimal.front();
      for (size_t i = 1; i < minimal.size() && acc; ++i)
        acc = arr.meet(*acc, minimal[i]);
      if (!acc || *acc != id) {
        check.intersection_ok = false;
        detail << "meet of minimal members {";
        for (size_t i = 0; i < minimal.size(); ++i)
          detail << (i ? ", " : "") << minimal[i];
        detail << "} is " << (acc ? *acc : std::string("empty")) << ", not " << id
               << "; ";
      }
      int codim_sum = 0;
      for (const ElementId& g : minimal) codim_sum += arr.codim(g);
      if (codim_sum != arr.codim(id)) {
        check.transversality_ok = false;
        detail << "codim " << arr.codim(id) << " but the minimal members' codims sum to "
               << codim_sum;
      }
    }
    check.detail = detail.str();
    if (!check.intersection_ok || !check.transversality_ok) report.valid = false;
    report.checks.push_back(std::move(check));
  }
  return report;
}

std::vector<ElementId> inclusion_order(const BuildingSet& bs) {
  const Arrangement& arr = bs.arrangement;
  std::vector<ElementId> order = bs.members;
  for (const ElementId& m : order) arr.at(m);
  std::sort(order.begin(), order.end(),
            [&](const ElementId& a, const ElementId& b) {
              const ElementDescriptor& ea = arr.at(a);
              const ElementDescriptor& eb = arr.at(b);
              if (ea.dim != eb.dim) return ea.dim < eb.dim;
              if (ea.origin != eb.origin) return ea.origin < eb.origin;
              return a < b;
            });
  // A dimension sort is inclusion-compatible only when strict inclusion
  // strictly drops dimension; anything else is malformed input.
  for (size_t i = 0; i < order.size(); ++i)
    for (size_t j = i + 1; j < order.size(); ++j)
      if (order[i] != order[j] && arr.leq(order[j], order[i]))
        fail("inclusion order violation: " + order[j] + " < " + order[i] +
             " but dims do not separate them");
  return order;
}

std::set<ElementId> meet_closure(const Arrangement& arr,
                                 const std::vector<ElementId>& seed) {
  std::set<ElementId> closed(seed.begin(), seed.end());
  for (const ElementId& id : closed) arr.at(id);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<ElementId> snapshot(closed.begin(), closed.end());
    for (size_t i = 0; i < snapshot.size(); ++i)
      for (size_t j = i + 1; j < snapshot.size(); ++j) {
        auto m = arr.meet(snapshot[i], snapshot[j]);
        if (m && closed.insert(*m).second) grew = true;
      }
  }
  return closed;
}

}  // namespace wonder
