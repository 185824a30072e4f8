#pragma once
#include <cstdint>
#include <vector>

#include "hardrods/geometry.hpp"

namespace hardrods {

// Tile labels on the T x T coarse grid: +1 (horizontal), -1 (vertical),
// 0 (empty under the "zero" policy).
struct SpinConfig {
    int T = 0;
    std::vector<int8_t> s;

    SpinConfig() = default;
    explicit SpinConfig(int t, int8_t fill = 0) : T(t), s(size_t(t) * t, fill) {}
    int8_t at(const TileIndex& t) const { return s[size_t(t.ty) * T + t.tx]; }
    int8_t& at(const TileIndex& t) { return s[size_t(t.ty) * T + t.tx]; }
    bool in_grid(const TileIndex& t) const {
        return t.tx >= 0 && t.tx < T && t.ty >= 0 && t.ty < T;
    }
};

enum class LabelPolicy {
    Zero,          // empty tiles get 0
    MatchNeighbor  // empty tiles copy the nearest occupied tile's label
                   // (breadth-first from occupied tiles; +1 wins ties; an
                   // entirely empty grid becomes +1). Fixture construction only.
};

// Coarse labels of a rod configuration in the params box. Rods in one tile
// must share an orientation (MixedTile) and reference sites must be in-box.
SpinConfig spins_from_config(const std::vector<Rod>& rods, const ModelParams& p,
                             LabelPolicy policy = LabelPolicy::Zero);

// Sampling square with corner xi: tiles xi + {0,1}^2, clipped to the grid.
// Returns +1/-1 when every existing tile carries that label, 0 otherwise.
int classify_sampling_square(const SpinConfig& sigma, const TileIndex& corner);

std::vector<TileIndex> sampling_square_tiles(const TileIndex& corner, int T);

// Corners of bad sampling squares (scan range [-1, T-1]^2).
std::vector<TileIndex> bad_sampling_corners(const SpinConfig& sigma);

// B: every tile of a bad sampling square.
std::vector<TileIndex> bad_region_tiles(const SpinConfig& sigma);

// B-bar: union of the aligned 4x4-tile smoothing squares meeting B.
std::vector<TileIndex> smoothed_bad_tiles(const SpinConfig& sigma);

struct ContourHole {
    std::vector<TileIndex> tiles;
    std::vector<TileIndex> peel; // contour peel tiles inside this hole
    int m_int = 0;
};

// One connected component of the smoothed bad region together with the data
// the weight computations need.
struct Contour {
    std::vector<TileIndex> support; // sorted tile set, union of smoothing squares
    std::vector<int8_t> sigma;      // parallel to support
    std::vector<Rod> rods;          // rods whose tile lies in the support
    int m_ext = 0;                  // uniform label of the exterior peel
    std::vector<TileIndex> peel;    // tiles at coarse distance exactly 1
    std::vector<TileIndex> ext_peel;
    std::vector<ContourHole> holes;

    int8_t sigma_at(const TileIndex& t) const;
    bool in_support(const TileIndex& t) const;
    bool in_ext_peel(const TileIndex& t) const;
    int zeros() const;
};

// Decomposes sigma into contours. Preconditions: sigma matches the rods,
// the box paves into smoothing squares, and sigma lies in the q-boundary
// class (tiles within the band carry label q), else NotInThetaQ. A peel
// component with a nonuniform or zero label raises NonUniformPeel.
std::vector<Contour> extract_contours(const SpinConfig& sigma, const std::vector<Rod>& rods,
                                      Orientation q, const ModelParams& p);

// Tiles holding rods that can shield the peel tile `delta` along the rod
// direction: delta itself plus its coarse-distance-1 row (q=+) or column
// (q=-) neighbors at taxi distance exactly 2 from the support.
std::vector<TileIndex> a_set(const Contour& c, const TileIndex& delta, Orientation q, int T);

// Support tiles within coarse distance 2 of `delta`.
std::vector<TileIndex> c_set(const Contour& c, const TileIndex& delta);

// Crossing indicators for a rod multiset R against the contour at peel tile
// delta. f: R reaches both the shield zone and the support's vicinity.
// g: R touches a frozen contour rod and both memberships hold split-wise.
// F: f on hole peels, f OR g on the exterior peel.
bool f_delta(const TileIndex& delta, const std::vector<Rod>& R, const Contour& c,
             Orientation q, const ModelParams& p, int T);
bool g_delta(const TileIndex& delta, const std::vector<Rod>& R, const Contour& c,
             Orientation q, const ModelParams& p, int T);
bool F_delta(const TileIndex& delta, const std::vector<Rod>& R, const Contour& c,
             Orientation q, const ModelParams& p, int T);

// Aligned smoothing-square corners covering the tile set (corners at
// multiples of 4).
std::vector<TileIndex> smoothing_corners_of(const std::vector<TileIndex>& tiles);

// Random spin grid in the q-boundary class: a q sea with up to n_islands
// small (at most 3x3 tile) patches of labels from {-q spin, 0}, placed well
// inside the band and pairwise separated, so every resulting contour has
// exterior label q. Deterministic in seed.
SpinConfig random_theta_fixture(const ModelParams& p, Orientation q, int n_islands,
                                uint64_t seed);

} // namespace hardrods
