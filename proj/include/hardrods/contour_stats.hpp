#pragma once
#include <string>
#include <utility>
#include <vector>

#include "hardrods/coarse.hpp"
#include "hardrods/exact.hpp"
#include "hardrods/geometry.hpp"
#include "hardrods/rational.hpp"

namespace hardrods {

// Decay constant of the contour suppression targets.
constexpr double kC0 = 5e-4;
// Scale exponent of the cross-interaction decay (zk)^alpha.
constexpr double kAlpha = 0.25;

struct BoundCertificate {
    std::string name;
    double value = 0.0;
    double target = 0.0;
    std::vector<std::pair<std::string, double>> data;
    double margin() const { return target - value; }
    bool pass() const { return margin() >= 0.0; }
};

// Bare spin-and-rod weight of a contour: (-1)^{#0 tiles} z^{#rods}.
// Occupied and fictitiously labeled tiles carry weight one each.
Rat phi_bar(const Contour& c, const ModelParams& p);

// Bare contour activity: phi_bar / Z^q(support) times, per hole, the ratio
// of the frozen-interior to the q-conditioned-interior partition function.
Rat zeta0(const Contour& c, Orientation q, const ModelParams& p, EnumBudget* budget = nullptr);

struct ZetaReport {
    Rat bare;                  // zeta0
    std::vector<Rat> exponent; // [m] = order-m term of the subtracted series
    double value = 0.0;        // bare * exp(-sum of exponent)
    double measured_C = 0.0;   // growth constant vs |bare| e^{C zk^2 |support| (zk)^alpha}
    int m_max = 0;
};

// Dressed contour activity, truncated at multisets of m_max rods. The
// exponent series sums phi^T(R) z^{|R|} sum_Delta F_Delta(R) over connected
// q-oriented multisets; its order-one term is a sum of indicators and is
// always >= 0, so the first-order truncation already suppresses the bare
// value.
ZetaReport zeta(const Contour& c, Orientation q, const ModelParams& p, int m_max,
                EnumBudget* budget = nullptr);

// Per-tile ledger factor: 1 for an occupied-or-labeled tile, minus the
// reciprocal single-tile partition function for an empty-labeled tile.
Rat tile_factor(int spin, const ModelParams& p);

struct DominoReport {
    Rat value;             // exact pair factor, normalized by Z^q of the pair
    Rat untypical_first;   // pair sum restricted to first-tile-untypical
    Rat untypical_second;  // and to second-tile-untypical
    bool split_covers = false; // every compatible pair had an untypical side
    Rat half_ratio;        // Z^q(far half of a tile) / Z^q(tile)
    double measured_Cprime = 0.0; // from value <= 2 e^{C' zk^2 zk} e^{-z l^2/2}
    double bound = 0.0;           // that right-hand side with the measured C'
};

// Exact factor of an adjacent opposite-label tile pair: the cross-compatible
// double sum over per-tile rod configurations divided by Z^q of the pair.
// axis is the direction along which the two tiles are adjacent; first is the
// label of the lower/left tile. For even rod length the two label orders
// differ (the reference-site convention is not reflection-covariant), so the
// ledger picks the factor matching the actual labels. A tile-side state
// space above ~2e8 pairs raises BudgetExceeded. "Untypical" means no
// reference site in the floor(l/2) rows/columns nearest the partner tile;
// two typical halves always collide, which is what makes the factor small.
DominoReport domino_factor(const ModelParams& p, Orientation q, Orientation axis,
                           int first = +1);

struct LedgerUnit {
    std::vector<TileIndex> tiles;
    int kind = 0; // 0: empty-label single, 1: +- single, 2: domino
};

struct PeierlsReport {
    int n_zero = 0, n_domino = 0, n_pm = 0, n_squares = 0;
    bool counting_ok = false; // 64 (n_zero + n_domino) >= |support|
    Rat kappa;                // prod Z^q(unit) / Z^q(support), >= 1
    Rat exact_value;          // kappa * prod |unit factors|
    double value = 0.0;
    BoundCertificate two_c0;  // vs e^{-2 c0 zk^2 |support|}
    BoundCertificate one_c0;  // vs e^{-c0 zk^2 |support|}
    double structure_C = 0.0; // from value = e^{-z l^2 (1 - C zk)(n_zero + n_domino/2)}
    std::vector<LedgerUnit> units;
};

// Certified upper bound on the restricted contour sum via a greedy partition
// of the support into empty-label singles, opposite-pair dominoes, and
// plain singles. Every smoothing square of the support must meet a bad
// sampling square (NoBadStructure otherwise); the greedy witness scan then
// guarantees the 1/64 counting bound. kappa restores the dropped cross
// constraints exactly, so value really bounds the normalized sum.
PeierlsReport peierls_ledger(const Contour& c, Orientation q, const ModelParams& p);

struct RatioReport {
    Rat ratio;          // Z(X|+) / Z(X|-) at the model activity
    bool square = false;
    bool exact_one = false; // the two conditioned polynomials are identical
    int perimeter_tiles = 0;
    double deviation = 0.0;  // |ln ratio|
    double measured_C1 = 0.0; // deviation / (perimeter zk^2 zk)
    BoundCertificate cert;
};

// Two-sided boundary-dependence check of the conditioned partition function
// on a tile union X. Square regions must give exactly one (quarter turn).
RatioReport ratio_check(const std::vector<TileIndex>& X, const ModelParams& p,
                        EnumBudget* budget = nullptr);

struct PolymerReport {
    double A = 0.0, D = 0.0;  // per-tile contour cost and chain cost
    double eps1 = 0.0, eps2 = 0.0, eps = 0.0;
    bool geometric = false;   // consecutive bound ratios <= eps
    std::vector<BoundCertificate> per_size; // |X'| = 1..n
};

// Certified arithmetic chain for the reorganized polymer activity of a
// D-connected tile union with n_tiles tiles: every tile is a contour tile
// (cost A, including the factor-6 label count), a contour tile with an
// attached connector (A*D), or a pure connector tile (D); subtracting D^n
// removes the contour-free term. At zero activity every polymer activity
// vanishes identically (the conditioned sum has a single term), reported as
// value 0. Cprime scales the connector weight and is measured elsewhere.
PolymerReport polymer_bound(int n_tiles, double z, double k, double Cprime = 1.0);
PolymerReport polymer_bound(const std::vector<TileIndex>& X, const ModelParams& p,
                            double Cprime = 1.0);

struct InteractionReport {
    Rat W; // truncated interaction sum
    // per ordered peel-tile collection (>= 2 tiles, one row/column): its
    // signed collection value; W == -sum of these
    std::vector<std::pair<std::vector<TileIndex>, Rat>> collections;
    double measured_Cprime = 0.0; // from |F(Y)| <= C' zk^2 (zk)^{alpha diam'}
    int m_max = 0;
};

// Interaction between the contours of one exterior: connected q-oriented
// multisets crossing at least two peel tiles whose tiles share a row (q=H)
// or column (q=V), weighted by 1-h per such line with h crossed tiles.
InteractionReport interaction_W(const std::vector<Contour>& contours, Orientation q,
                                const ModelParams& p, int m_max);

} // namespace hardrods
