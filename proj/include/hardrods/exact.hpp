#pragma once
#include <vector>

#include "hardrods/geometry.hpp"
#include "hardrods/poly.hpp"

namespace hardrods {

enum class RegionConstraint : uint8_t {
    Open,            // both orientations everywhere
    OrientationOnly, // all rods share one orientation
    BoundaryBand     // rods near the region complement are forced to q
};

// A finite ensemble of candidate rods. Two membership conventions coexist:
//   contain=true : physical boxes; rod bodies stay inside `sites`.
//   contain=false: sub-regions of a larger system; the reference site must lie
//                  in `sites`, bodies may overhang.
// Rods whose body touches an exclusion site are forbidden in either mode.
struct RegionSpec {
    std::vector<Site> sites;
    RegionConstraint constraint = RegionConstraint::Open;
    Orientation q = Orientation::H;
    std::vector<Site> exclusions;
    bool contain = false;

    static RegionSpec box(int w, int h, Boundary bc = Boundary::Open);
    static RegionSpec tile_union(const std::vector<TileIndex>& tiles, int ell,
                                 RegionConstraint c = RegionConstraint::OrientationOnly,
                                 Orientation q = Orientation::H);
};

struct EnumBudget {
    long long limit = 1'000'000'000;
    long long used = 0;
};

// Candidate rods of a spec after all static filters, in canonical order.
std::vector<Rod> candidate_rods(const RegionSpec& spec, const ModelParams& p);

// Exact partition polynomial: sum over hard-core-compatible subsets of the
// candidate rods, coefficient n = number of configurations with n rods.
// Recursion on the overlap graph with component factorization; every visited
// node costs one unit of budget (BudgetExceeded past the limit).
PolyZ partition_exact(const RegionSpec& spec, const ModelParams& p,
                      EnumBudget* budget = nullptr);

// Rods of length k packed inside a 1d segment of L cells.
// N_L = N_{L-1} + z N_{L-k}, N_L = 1 for 0 <= L < k.
PolyZ transfer_1d(int L, int k);

// Packings of reference sites on a line, gap >= k, restricted to `allowed`.
PolyZ line_packing(const std::vector<char>& allowed, int k);

// Single-orientation partition function of a tile union, factorized over
// lattice lines (rows for H, columns for V). Matches partition_exact on the
// same spec; used as the fast route and as one side of the dual-route check.
PolyZ restricted_partition_factorized(const std::vector<TileIndex>& tiles, Orientation q,
                                      const ModelParams& p);

// Conditioned sub-region ensemble: labels within the boundary band of the
// tile union are forced to q. Fictitious labels of empty tiles net out to
// weight one per tile, so this reduces to a plain constrained rod sum.
PolyZ conditioned_partition(const std::vector<TileIndex>& tiles, Orientation q,
                            const ModelParams& p, EnumBudget* budget = nullptr);

// Conditioned ensemble of the full params.L box (contained rods). Requires
// the box side to pave into smoothing squares.
PolyZ conditioned_box(const ModelParams& p, EnumBudget* budget = nullptr);

// Conditioned sub-region ensemble with frozen rods: any candidate touching a
// frozen site is forbidden.
PolyZ frozen_partition(const std::vector<TileIndex>& tiles, Orientation q,
                       const ModelParams& p, const std::vector<Site>& frozen_sites,
                       EnumBudget* budget = nullptr);

// All sites of a tile union.
std::vector<Site> tile_sites(const std::vector<TileIndex>& tiles, int ell);

// Tiles of the union whose coarse distance to the union's complement is
// <= kBoundaryBand (they carry the forced label in conditioned ensembles).
std::vector<TileIndex> band_tiles(const std::vector<TileIndex>& tiles);

} // namespace hardrods
