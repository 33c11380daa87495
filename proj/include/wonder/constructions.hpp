#ifndef WONDER_CONSTRUCTIONS_HPP
#define WONDER_CONSTRUCTIONS_HPP

#include <map>
#include <string>
#include <vector>

#include "wonder/blowup.hpp"
#include "wonder/lattice.hpp"
#include "wonder/space.hpp"

namespace wonder {

// X^k as a left fold of products.
Space pow_space(const Space& x, int k);

// Diagonals of X^n: members are the loci where the coordinates indexed
// by one subset S (|S| >= 2) agree; the meet closure adds all
// polydiagonals. Requires n >= 2 and dim(x) >= 1.
BuildingSet fm_building_set(const Space& x, int n);

// All polydiagonals of X^n as members; the arrangement equals the
// member set.
BuildingSet ulyanov_building_set(const Space& x, int n);

// n-1 labeled general points in P^{n-3}; members are the spans of index
// subsets of size <= n-4 (points for n=5, points and lines for n=6).
// Supported for 5 <= n <= 6: beyond that, spans with disjoint index sets
// can intersect outside the span lattice and the meet rule breaks down.
BuildingSet kapranov_m0n(int n);

// Blowup tower presentation: a base space and staged center lists. Each
// step blows up a disjoint union of centers, folded one at a time.
struct TowerStep {
  std::string label;
  std::vector<Space> centers;
};

struct TowerDescription {
  Space base;
  std::vector<TowerStep> steps;
};

// Folds the tower into a single space expression.
Space realize_tower(const TowerDescription& tower);

// Center species for one tower stage: `count` copies of
// M0,i x M0,j (Keel) or T_{d,i} x T_{d,j} (trees).
struct CenterSpec {
  int i = 0;
  int j = 0;
  int count = 0;
};

struct StagedCenterConfig {
  std::vector<std::pair<std::string, std::vector<CenterSpec>>> stages;
};

// The moduli space of stable (j)-pointed rational curves as a space
// expression: a point for j = 3, P^1 for j = 4, and the realized Keel
// tower beyond (supported through j = 6).
Space m0_space(int j);

// Keel's tower for M0,n+1: base M0,n x P^1 and n-3 blowup stages whose
// center lists come from `config`. The built-in configurations cover
// n in {4, 5} and are pinned by the Poincare cross-checks.
StagedCenterConfig default_keel_config(int n);
TowerDescription keel_tower(int n);
TowerDescription keel_tower(int n, const std::map<int, Space>& m0_atoms,
                            const StagedCenterConfig& config);

// Tower for the space of stable n-pointed rooted trees of projective
// d-spaces: grounded in T_{d,2} = P^{d-1}, T_{1,3} = P^1 and
// T_{1,n} = M0,n+1; for n >= 3 a rank-(d+1) projective bundle over
// T_{d,n-1} followed by configured blowups (default: none).
TowerDescription tdn_tower(int d, int n);
TowerDescription tdn_tower(int d, int n, const StagedCenterConfig& config);

}  // namespace wonder

#endif
