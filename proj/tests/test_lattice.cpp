#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "wonder/lattice.hpp"
#include "wonder/space.hpp"
#include "testutil.hpp"

using namespace wonder;

namespace {

// Hand-rolled diagonal fixtures over a dim-1 atom, with a partition join
// oracle local to the tests.
Space base_atom() { return atom("X", 1, Tristate::Unknown, Tristate::Unknown); }

Space power(int k) {
  Space x = base_atom();
  Space acc = x;
  for (int i = 1; i < k; ++i) acc = product(acc, x);
  return acc;
}

struct DiagonalOracle {
  int n;
  std::map<ElementId, testutil::Blocks> partitions;

  ElementDescriptor descriptor(const testutil::Blocks& full_blocks) {
    // full_blocks covers {1..n} including singletons
    ElementId id = testutil::partition_oracle_id(full_blocks);
    partitions[id] = full_blocks;
    return make_element(id, power(testutil::block_count(full_blocks)), id);
  }

  ElementDescriptor from_subset(std::vector<int> subset) {
    testutil::Blocks blocks{subset};
    std::set<int> used(subset.begin(), subset.end());
    for (int i = 1; i <= n; ++i)
      if (!used.count(i)) blocks.push_back({i});
    std::sort(blocks.begin(), blocks.end());
    return descriptor(blocks);
  }

  MeetOracle oracle() {
    return [this](const ElementDescriptor& a, const ElementDescriptor& b)
               -> std::optional<ElementDescriptor> {
      const testutil::Blocks& pa = partitions.at(a.id);
      const testutil::Blocks& pb = partitions.at(b.id);
      // join via repeated merging of overlapping blocks
      testutil::Blocks blocks = pa;
      for (const auto& block : pb) blocks.push_back(block);
      bool merged = true;
      while (merged) {
        merged = false;
        for (size_t i = 0; i < blocks.size() && !merged; ++i)
          for (size_t j = i + 1; j < blocks.size() && !merged; ++j) {
            std::set<int> u(blocks[i].begin(), blocks[i].end());
            bool overlap = std::any_of(blocks[j].begin(), blocks[j].end(),
                                       [&](int v) { return u.count(v) > 0; });
            if (!overlap) continue;
            for (int v : blocks[j]) u.insert(v);
            blocks[i].assign(u.begin(), u.end());
            blocks.erase(blocks.begin() + j);
            merged = true;
          }
      }
      for (auto& b2 : blocks) std::sort(b2.begin(), b2.end());
      std::sort(blocks.begin(), blocks.end());
      return descriptor(blocks);
    };
  }
};

}  // namespace

TEST_CASE("closure of the three diagonals in X^3 adds the small diagonal") {
  DiagonalOracle d{3, {}};
  std::vector<ElementDescriptor> gens = {d.from_subset({1, 2}), d.from_subset({1, 3}),
                                         d.from_subset({2, 3})};
  Arrangement arr = close_under_meet(power(3), gens, d.oracle());
  CHECK(arr.size() == 4);
  CHECK(arr.contains("D1.2.3"));
  CHECK(arr.meet("D1.2", "D1.3") == ElementId("D1.2.3"));
  CHECK(arr.at("D1.2.3").dim == 1);
  CHECK(arr.at("D1.2").dim == 2);
}

TEST_CASE("closure of a single diagonal is itself") {
  DiagonalOracle d{2, {}};
  std::vector<ElementDescriptor> gens = {d.from_subset({1, 2})};
  Arrangement arr = close_under_meet(power(2), gens, d.oracle());
  CHECK(arr.size() == 1);
  CHECK(arr.contains("D1.2"));
}

TEST_CASE("closing a closed arrangement is the identity") {
  DiagonalOracle d{4, {}};
  std::vector<ElementDescriptor> gens;
  for (const auto& blocks : testutil::nontrivial_partitions_oracle(4))
    gens.push_back(d.descriptor(blocks));
  Arrangement arr = close_under_meet(power(4), gens, d.oracle());
  CHECK(arr.size() == gens.size());

  std::vector<ElementDescriptor> again;
  for (const auto& [id, e] : arr.elements()) again.push_back(e);
  Arrangement arr2 = close_under_meet(power(4), again, d.oracle());
  CHECK(arr2.size() == arr.size());
  for (const auto& [id, e] : arr.elements()) CHECK(arr2.contains(id));
  CHECK(arr2.table() == arr.table());
}

TEST_CASE("oracle inconsistencies are reported with the offending pair") {
  Space amb = power(3);
  auto el = [&](const char* id, int k) { return make_element(id, power(k), id); };

  SUBCASE("non-commutative oracle") {
    MeetOracle bad = [&](const ElementDescriptor& a, const ElementDescriptor& b)
        -> std::optional<ElementDescriptor> {
      if (a.id < b.id) return el("M", 1);
      return std::nullopt;
    };
    CHECK_THROWS_WITH_AS(
        close_under_meet(amb, {el("A", 2), el("B", 2)}, bad),
        "oracle not commutative on (A, B)", std::invalid_argument);
  }

  SUBCASE("meet dim exceeding min dim") {
    MeetOracle bad = [&](const ElementDescriptor&, const ElementDescriptor&)
        -> std::optional<ElementDescriptor> { return el("M", 3); };
    CHECK_THROWS_WITH_AS(
        close_under_meet(amb, {el("A", 1), el("B", 1)}, bad),
        "oracle meet dim exceeds min dim on (A, B)", std::invalid_argument);
  }

  SUBCASE("id reused with different content") {
    MeetOracle bad = [&](const ElementDescriptor&, const ElementDescriptor&)
        -> std::optional<ElementDescriptor> { return el("A", 1); };
    CHECK_THROWS_AS(close_under_meet(amb, {el("A", 2), el("B", 2)}, bad),
                    std::invalid_argument);
  }
}

TEST_CASE("from_tables validates the meet table") {
  Space amb = power(3);
  auto el = [&](const char* id, int k) { return make_element(id, power(k), id); };

  SUBCASE("missing pair") {
    CHECK_THROWS_AS(
        Arrangement::from_tables(amb, {el("A", 1), el("B", 1)}, MeetTable{}),
        std::invalid_argument);
  }
  SUBCASE("meet value outside the element set") {
    MeetTable t;
    t[meet_key("A", "B")] = ElementId("C");
    CHECK_THROWS_AS(Arrangement::from_tables(amb, {el("A", 1), el("B", 1)}, t),
                    std::invalid_argument);
  }
  SUBCASE("meet not below both arguments") {
    MeetTable t;
    t[meet_key("A", "B")] = ElementId("C");
    t[meet_key("A", "C")] = std::nullopt;  // contradicts C <= A
    t[meet_key("B", "C")] = ElementId("C");
    CHECK_THROWS_AS(
        Arrangement::from_tables(amb, {el("A", 2), el("B", 2), el("C", 1)}, t),
        std::invalid_argument);
  }
  SUBCASE("element at ambient dimension") {
    CHECK_THROWS_AS(Arrangement::from_tables(amb, {el("A", 3)}, MeetTable{}),
                    std::invalid_argument);
  }
}

TEST_CASE("building-set validation: transversality failure names the meet") {
  // two triple diagonals of X^4 whose meet is the small diagonal
  Space amb = power(4);
  std::vector<ElementDescriptor> elements = {
      make_element("D1.2.3", power(2), "D1.2.3"),
      make_element("D1.2.4", power(2), "D1.2.4"),
      make_element("D1.2.3.4", power(1), "D1.2.3.4"),
  };
  MeetTable t;
  t[meet_key("D1.2.3", "D1.2.4")] = ElementId("D1.2.3.4");
  t[meet_key("D1.2.3", "D1.2.3.4")] = ElementId("D1.2.3.4");
  t[meet_key("D1.2.4", "D1.2.3.4")] = ElementId("D1.2.3.4");
  Arrangement arr = Arrangement::from_tables(amb, elements, t);

  ValidationReport report = is_building_set(arr, {"D1.2.3", "D1.2.4"});
  CHECK_FALSE(report.valid);
  REQUIRE(report.violations().size() == 1);
  const ValidationCheck* v = report.violations().front();
  CHECK(v->element == "D1.2.3.4");
  CHECK(v->intersection_ok);        // the meet really is the small diagonal
  CHECK_FALSE(v->transversality_ok);  // codim 3 vs 2 + 2

  SUBCASE("the full arrangement as members is vacuously valid") {
    ValidationReport all =
        is_building_set(arr, {"D1.2.3", "D1.2.4", "D1.2.3.4"});
    CHECK(all.valid);
    CHECK(all.checks.empty());
  }
}

TEST_CASE("inclusion order respects containment and is deterministic") {
  DiagonalOracle d{3, {}};
  std::vector<ElementDescriptor> gens = {d.from_subset({1, 2}),
                                         d.from_subset({1, 2, 3})};
  Arrangement arr = close_under_meet(power(3), gens, d.oracle());
  BuildingSet bs{arr, {"D1.2", "D1.2.3"}};
  std::vector<ElementId> order = inclusion_order(bs);
  REQUIRE(order.size() == 2);
  CHECK(order[0] == "D1.2.3");  // smaller dimension first
  CHECK(order[1] == "D1.2");

  BuildingSet single{arr, {"D1.2"}};
  CHECK(inclusion_order(single) == std::vector<ElementId>{"D1.2"});
}

TEST_CASE("inclusion order puts points before lines before planes") {
  // spans of subsets of 5 general points in projective 3-space,
  // including the divisorial spans of triples
  std::map<ElementId, std::vector<int>> spans;
  auto descriptor = [&](const std::vector<int>& s) {
    std::string id = "S";
    for (size_t i = 0; i < s.size(); ++i) id += (i ? "." : "") + std::to_string(s[i]);
    spans[id] = s;
    int dim = static_cast<int>(s.size()) - 1;
    Space space = dim == 0 ? point() : projective_space(dim);
    return make_element(id, space, id);
  };
  std::vector<ElementDescriptor> gens;
  for (int mask = 1; mask < 32; ++mask) {
    std::vector<int> s;
    for (int i = 0; i < 5; ++i)
      if (mask & (1 << i)) s.push_back(i + 1);
    if (s.size() <= 3) gens.push_back(descriptor(s));
  }
  REQUIRE(gens.size() == 25);
  MeetOracle oracle = [&](const ElementDescriptor& a, const ElementDescriptor& b)
      -> std::optional<ElementDescriptor> {
    std::vector<int> inter;
    std::set_intersection(spans.at(a.id).begin(), spans.at(a.id).end(),
                          spans.at(b.id).begin(), spans.at(b.id).end(),
                          std::back_inserter(inter));
    if (inter.empty()) return std::nullopt;
    return descriptor(inter);
  };
  Arrangement arr = close_under_meet(projective_space(3), gens, oracle);
  std::vector<ElementId> members;
  for (const ElementDescriptor& g : gens) members.push_back(g.id);
  std::sort(members.begin(), members.end());
  std::vector<ElementId> order = inclusion_order(BuildingSet{arr, members});
  REQUIRE(order.size() == 25);
  for (int i = 0; i < 5; ++i) CHECK(arr.at(order[i]).dim == 0);
  for (int i = 5; i < 15; ++i) CHECK(arr.at(order[i]).dim == 1);
  for (int i = 15; i < 25; ++i) CHECK(arr.at(order[i]).dim == 2);
}

TEST_CASE("meet closure of a seed set") {
  DiagonalOracle d{3, {}};
  std::vector<ElementDescriptor> gens = {d.from_subset({1, 2}), d.from_subset({1, 3}),
                                         d.from_subset({2, 3})};
  Arrangement arr = close_under_meet(power(3), gens, d.oracle());
  auto closed = meet_closure(arr, {"D1.2", "D1.3"});
  CHECK(closed == std::set<ElementId>{"D1.2", "D1.3", "D1.2.3"});
  CHECK(meet_closure(arr, {"D1.2"}) == std::set<ElementId>{"D1.2"});
}
