#pragma once
#include <vector>

#include "hardrods/exact.hpp"
#include "hardrods/geometry.hpp"

namespace hardrods {

// Largest multiset the exact coefficient routine accepts (3^n subset scan).
constexpr int kMayerCap = 8;

// Exact cluster coefficient of a rod multiset:
//   0 for the empty multiset, 1 for a single rod, otherwise
//   (1/R!) * sum over connected spanning edge subsets of (-1)^{#edges},
// which vanishes when the overlap graph is disconnected. R! is the product
// of the multiplicities' factorials. SizeLimit above kMayerCap rods.
Rat mayer_coefficient(const std::vector<Rod>& rods, int k);

// index = order in z; [0] is always 0
using TruncatedSeries = std::vector<Rat>;

// Connected multisets over a fixed rod universe, grouped by size. Multisets
// are sorted id vectors into `universe`; grown one overlapping rod at a time
// from the seeds with canonical dedup, so each connected multiset whose
// support meets a seed appears exactly once per size level.
struct ConnectedSets {
    std::vector<Rod> universe;
    std::vector<std::vector<std::vector<int>>> by_size; // [m][i] -> sorted ids
};
ConnectedSets enumerate_connected_multisets(const std::vector<Rod>& universe, int k,
                                            int m_max, const std::vector<int>& seeds);

// Log of the single-orientation partition function of a tile union as a
// truncated activity series: coefficient m = sum of cluster coefficients of
// connected m-multisets with reference sites in the union. Agrees with the
// Taylor series of log restricted_partition_factorized order by order.
TruncatedSeries truncated_log_restricted(const std::vector<TileIndex>& tiles, Orientation q,
                                         const ModelParams& p, int m_max);

// Absolute pinned sums S_m = z^m * sum |phi^T| over connected m-multisets
// containing the rod with reference site x0, plus the decay diagnostics.
struct PinnedReport {
    std::vector<int> orders;
    std::vector<Rat> sums;
    std::vector<double> ratios;  // S_{m+1}/S_m
    double c_measured = 0.0;     // max ratio / (z k)
};
PinnedReport pinned_sum(Site x0, Orientation q, int m_max, const ModelParams& p);

// Largest coordinate difference covered by the multiset's occupied sites.
int support_span(const std::vector<Rod>& rods, int k);

} // namespace hardrods
