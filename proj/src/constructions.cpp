#include "wonder/constructions.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "wonder/errors.hpp"

namespace wonder {

namespace {

// A set partition of {1..n}, keeping only the blocks of size >= 2 (the
// singletons impose no condition on a polydiagonal). Blocks and their
// contents are sorted.
struct Partition {
  int n = 0;
  std::vector<std::vector<int>> blocks;

  bool trivial() const { return blocks.empty(); }
  int block_count() const {  // including singletons
    int covered = 0;
    for (const auto& b : blocks) covered += static_cast<int>(b.size());
    return n - covered + static_cast<int>(blocks.size());
  }
};

Partition canonical(int n, std::vector<std::vector<int>> blocks) {
  Partition p;
  p.n = n;
  for (auto& b : blocks) {
    std::sort(b.begin(), b.end());
    if (b.size() >= 2) p.blocks.push_back(std::move(b));
  }
  std::sort(p.blocks.begin(), p.blocks.end());
  return p;
}

// Finest common coarsening of two partitions; the polydiagonal of the
// join is the intersection of the two polydiagonals.
Partition join(const Partition& a, const Partition& b) {
  std::vector<int> parent(a.n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int x, int y) { parent[find(x)] = find(y); };
  for (const Partition* p : {&a, &b})
    for (const auto& block : p->blocks)
      for (size_t i = 1; i < block.size(); ++i) unite(block[0], block[i]);
  std::map<int, std::vector<int>> groups;
  for (int x = 1; x <= a.n; ++x) groups[find(x)].push_back(x);
  std::vector<std::vector<int>> blocks;
  for (auto& [root, members] : groups) blocks.push_back(std::move(members));
  return canonical(a.n, std::move(blocks));
}

std::string partition_id(const Partition& p) {
  std::ostringstream out;
  out << "D";
  for (size_t b = 0; b < p.blocks.size(); ++b) {
    if (b) out << "|";
    for (size_t i = 0; i < p.blocks[b].size(); ++i) {
      if (i) out << ".";
      out << p.blocks[b][i];
    }
  }
  return out.str();
}

std::string partition_origin(const Partition& p) {
  std::ostringstream out;
  out << "Δ";
  for (const auto& block : p.blocks) {
    out << "{";
    for (size_t i = 0; i < block.size(); ++i) {
      if (i) out << ",";
      out << block[i];
    }
    out << "}";
  }
  return out.str();
}

// All partitions of {1..n} with at least one block of size >= 2, via
// restricted growth strings.
std::vector<Partition> nontrivial_partitions(int n) {
  std::vector<Partition> out;
  std::vector<int> rgs(n, 0);
  auto emit = [&]() {
    int k = *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<std::vector<int>> blocks(k);
    for (int i = 0; i < n; ++i) blocks[rgs[i]].push_back(i + 1);
    Partition p = canonical(n, std::move(blocks));
    if (!p.trivial()) out.push_back(std::move(p));
  };
  std::function<void(int, int)> rec = [&](int i, int max_used) {
    if (i == n) { emit(); return; }
    for (int v = 0; v <= max_used + 1; ++v) {
      rgs[i] = v;
      rec(i + 1, std::max(max_used, v));
    }
  };
  rec(0, -1);
  return out;
}

// Shared across a generator call so equal powers reuse one expression.
struct PowerCache {
  Space x;
  std::vector<Space> powers;  // powers[k] = X^k, index 0 unused

  const Space& get(int k) {
    while (static_cast<int>(powers.size()) <= k) {
      if (powers.size() < 2)
        powers.resize(2, x);
      else
        powers.push_back(product(powers.back(), x));
    }
    return powers[k];
  }
};

BuildingSet diagonal_building_set(const Space& x, int n, bool all_polydiagonals,
                                  const char* caller) {
  if (n < 2)
    throw std::invalid_argument(std::string(caller) + ": n must be >= 2");
  if (x.is_empty() || x.dim() < 1)
    throw std::invalid_argument(std::string(caller) +
                                ": base must be nonempty of dimension >= 1");

  auto cache = std::make_shared<PowerCache>();
  cache->x = x;
  auto known = std::make_shared<std::map<ElementId, Partition>>();

  auto descriptor = [cache, known](const Partition& p) {
    ElementId id = partition_id(p);
    known->emplace(id, p);
    return make_element(id, cache->get(p.block_count()), partition_origin(p));
  };

  std::vector<ElementDescriptor> generators;
  for (const Partition& p : nontrivial_partitions(n)) {
    if (!all_polydiagonals && p.blocks.size() != 1) continue;
    generators.push_back(descriptor(p));
  }

  MeetOracle oracle = [known, descriptor](const ElementDescriptor& a,
                                          const ElementDescriptor& b)
      -> std::optional<ElementDescriptor> {
    const Partition& pa = known->at(a.id);
    const Partition& pb = known->at(b.id);
    return descriptor(join(pa, pb));  // diagonals always intersect
  };

  BuildingSet bs;
  std::vector<ElementId> members;
  for (const ElementDescriptor& g : generators) members.push_back(g.id);
  std::sort(members.begin(), members.end());
  bs.arrangement = close_under_meet(cache->get(n), generators, oracle);
  bs.members = std::move(members);
  return bs;
}

}  // namespace

Space pow_space(const Space& x, int k) {
  if (k < 1) throw std::invalid_argument("pow_space: k must be >= 1");
  Space acc = x;
  for (int i = 1; i < k; ++i) acc = product(acc, x);
  return acc;
}

BuildingSet fm_building_set(const Space& x, int n) {
  return diagonal_building_set(x, n, /*all_polydiagonals=*/false, "fm_building_set");
}

BuildingSet ulyanov_building_set(const Space& x, int n) {
  return diagonal_building_set(x, n, /*all_polydiagonals=*/true,
                               "ulyanov_building_set");
}

namespace {

std::string span_id(const std::vector<int>& s) {
  std::ostringstream out;
  out << "S";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out << ".";
    out << s[i];
  }
  return out.str();
}

std::string span_origin(const std::vector<int>& s) {
  std::ostringstream out;
  out << "span{";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out << ",";
    out << s[i];
  }
  out << "}";
  return out.str();
}

}  // namespace

BuildingSet kapranov_m0n(int n) {
  if (n < 5 || n > 6)
    throw UnsupportedRangeError(
        "kapranov_m0n supports 5 <= n <= 6: for n >= 7 spans of disjoint index "
        "sets can meet outside the span lattice");
  const int points = n - 1;        // labeled points in P^{n-3}
  const int ambient_dim = n - 3;
  const int max_size = n - 4;      // span sizes allowed as members

  auto known = std::make_shared<std::map<ElementId, std::vector<int>>>();
  auto descriptor = [known](const std::vector<int>& s) {
    ElementId id = span_id(s);
    known->emplace(id, s);
    int dim = static_cast<int>(s.size()) - 1;
    Space space = dim == 0 ? point() : projective_space(dim);
    return make_element(id, space, span_origin(s));
  };

  std::vector<ElementDescriptor> generators;
  for (int mask = 1; mask < (1 << points); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < points; ++i)
      if (mask & (1 << i)) s.push_back(i + 1);
    if (static_cast<int>(s.size()) <= max_size) generators.push_back(descriptor(s));
  }

  MeetOracle oracle = [known, descriptor, ambient_dim](
                          const ElementDescriptor& a, const ElementDescriptor& b)
      -> std::optional<ElementDescriptor> {
    const std::vector<int>& sa = known->at(a.id);
    const std::vector<int>& sb = known->at(b.id);
    std::vector<int> inter;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                          std::back_inserter(inter));
    if (!inter.empty()) return descriptor(inter);
    int expected = static_cast<int>(sa.size()) - 1 +
                   static_cast<int>(sb.size()) - 1 - ambient_dim;
    if (expected >= 0)
      throw UnsupportedRangeError("kapranov spans " + a.id + ", " + b.id +
                                  " meet outside the span lattice");
    return std::nullopt;
  };

  BuildingSet bs;
  std::vector<ElementId> members;
  for (const ElementDescriptor& g : generators) members.push_back(g.id);
  std::sort(members.begin(), members.end());
  bs.arrangement = close_under_meet(projective_space(ambient_dim), generators, oracle);
  bs.members = std::move(members);
  return bs;
}

Space realize_tower(const TowerDescription& tower) {
  Space acc = tower.base;
  for (const TowerStep& step : tower.steps)
    for (const Space& center : step.centers) {
      int codim = acc.dim() - center.dim();
      acc = blow_up(acc, center, codim);
    }
  return acc;
}

Space m0_space(int j) {
  if (j < 3) throw std::invalid_argument("m0_space: j must be >= 3");
  if (j == 3) return point();
  if (j == 4) return projective_space(1);
  if (j > 6)
    throw UnsupportedRangeError(
        "m0_space is grounded through j = 6; larger towers need an explicit "
        "center configuration");
  return realize_tower(keel_tower(j - 1));
}

StagedCenterConfig default_keel_config(int n) {
  // Desk-scale stage data, pinned by the Poincare cross-checks against
  // the Kapranov construction rather than asserted.
  if (n == 4) return StagedCenterConfig{{{"B2", {{3, 3, 3}}}}};
  if (n == 5) return StagedCenterConfig{{{"B2", {{3, 4, 10}}}, {"B3", {}}}};
  throw UnsupportedRangeError(
      "keel_tower has built-in center configurations for n in {4, 5} only");
}

TowerDescription keel_tower(int n) {
  if (n < 4) throw std::invalid_argument("keel_tower: n must be >= 4");
  std::map<int, Space> m0;
  for (int j = 3; j <= n; ++j) m0.emplace(j, m0_space(j));
  return keel_tower(n, m0, default_keel_config(n));
}

TowerDescription keel_tower(int n, const std::map<int, Space>& m0_atoms,
                            const StagedCenterConfig& config) {
  if (n < 4) throw std::invalid_argument("keel_tower: n must be >= 4");
  auto m0 = [&](int j) -> const Space& {
    auto it = m0_atoms.find(j);
    if (it == m0_atoms.end())
      throw std::invalid_argument("keel_tower: missing atom for M0," +
                                  std::to_string(j));
    return it->second;
  };
  if (static_cast<int>(config.stages.size()) != n - 3)
    throw std::invalid_argument("keel_tower: expected " + std::to_string(n - 3) +
                                " stages of centers");

  TowerDescription tower;
  tower.base = product(m0(n), m0(4));
  for (const auto& [label, specs] : config.stages) {
    TowerStep step;
    step.label = label;
    for (const CenterSpec& spec : specs) {
      if (spec.count < 0 || spec.i < 3 || spec.j < 3)
        throw std::invalid_argument("keel_tower: malformed center spec");
      for (int c = 0; c < spec.count; ++c)
        step.centers.push_back(product(m0(spec.i), m0(spec.j)));
    }
    tower.steps.push_back(std::move(step));
  }
  return tower;
}

TowerDescription tdn_tower(int d, int n) {
  return tdn_tower(d, n, StagedCenterConfig{});
}

TowerDescription tdn_tower(int d, int n, const StagedCenterConfig& config) {
  if (d < 1 || n < 2) throw std::invalid_argument("tdn_tower: need d >= 1, n >= 2");
  // Base cases carry no blowup stages of their own.
  if (n == 2) {
    if (!config.stages.empty())
      throw std::invalid_argument("tdn_tower: the n = 2 base case takes no centers");
    return TowerDescription{projective_space(d - 1), {}};
  }
  if (d == 1) {
    if (!config.stages.empty())
      throw std::invalid_argument(
          "tdn_tower: the d = 1 tower is grounded in moduli of pointed rational "
          "curves and takes no centers");
    if (n > 5)
      throw UnsupportedRangeError(
          "tdn_tower with d = 1 is grounded through n = 5");
    return TowerDescription{m0_space(n + 1), {}};
  }

  // dim T_{d,n} = d(n-1) - 1; the bundle rank d+1 realizes the step
  // dim T_{d,n} = dim T_{d,n-1} + d.
  TowerDescription tower;
  tower.base = proj_bundle(realize_tower(tdn_tower(d, n - 1)), d + 1);
  for (const auto& [label, specs] : config.stages) {
    TowerStep step;
    step.label = label;
    for (const CenterSpec& spec : specs) {
      if (spec.count < 0 || spec.i < 2 || spec.j < 2 || spec.i >= n || spec.j >= n)
        throw std::invalid_argument("tdn_tower: malformed center spec");
      for (int c = 0; c < spec.count; ++c)
        step.centers.push_back(product(realize_tower(tdn_tower(d, spec.i)),
                                       realize_tower(tdn_tower(d, spec.j))));
    }
    tower.steps.push_back(std::move(step));
  }
  return tower;
}

}  // namespace wonder
