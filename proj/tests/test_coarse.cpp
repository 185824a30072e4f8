#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>

#include "doctest.h"
#include "hardrods/coarse.hpp"
#include "hardrods/errors.hpp"
#include "hardrods/rational.hpp"

using namespace hardrods;

namespace {

Rod hrod(int x, int y) { return Rod{Orientation::H, {x, y}}; }
Rod vrod(int x, int y) { return Rod{Orientation::V, {x, y}}; }

bool has_tile(const std::vector<TileIndex>& v, TileIndex t) {
    return std::find(v.begin(), v.end(), t) != v.end();
}

} // namespace

TEST_CASE("spins from a rod configuration") {
    ModelParams p = ModelParams::make(4, rat_parse("1/10"), 16, Boundary::Open); // ell=2, T=8
    SpinConfig s = spins_from_config({hrod(5, 5), vrod(1, 14)}, p);
    CHECK(s.T == 8);
    CHECK(s.at({2, 2}) == 1);
    CHECK(s.at({0, 7}) == -1);
    int nonzero = 0;
    for (int8_t v : s.s) nonzero += (v != 0);
    CHECK(nonzero == 2);

    CHECK_THROWS_AS(spins_from_config({hrod(5, 5), vrod(4, 4)}, p), MixedTile);
    CHECK_THROWS_AS(spins_from_config({hrod(16, 0)}, p), ConfigError);
    // same tile, same orientation is fine
    CHECK_NOTHROW(spins_from_config({hrod(5, 5), hrod(4, 4)}, p));
}

TEST_CASE("match-neighbor label policy") {
    ModelParams p = ModelParams::make(2, rat_parse("1/10"), 8, Boundary::Open); // ell=1, T=8
    SpinConfig all_empty = spins_from_config({}, p, LabelPolicy::MatchNeighbor);
    for (int8_t v : all_empty.s) CHECK(v == 1);

    SpinConfig one = spins_from_config({vrod(0, 0)}, p, LabelPolicy::MatchNeighbor);
    for (int8_t v : one.s) CHECK(v == -1);

    SpinConfig two = spins_from_config({hrod(0, 0), vrod(7, 7)}, p, LabelPolicy::MatchNeighbor);
    CHECK(two.at({2, 2}) == 1);
    CHECK(two.at({5, 5}) == -1);
    CHECK(two.at({3, 4}) == 1); // tie at taxi distance 7 from both seeds resolves to +1
    CHECK(two.at({4, 3}) == 1);
}

TEST_CASE("sampling square classification") {
    SpinConfig s(8, 1);
    CHECK(classify_sampling_square(s, {3, 3}) == 1);
    CHECK(classify_sampling_square(s, {-1, -1}) == 1); // single clipped tile
    CHECK(classify_sampling_square(s, {7, 3}) == 1);   // two clipped tiles
    CHECK(sampling_square_tiles({-1, -1}, 8).size() == 1);
    CHECK(sampling_square_tiles({-1, 3}, 8).size() == 2);
    CHECK(sampling_square_tiles({3, 3}, 8).size() == 4);

    s.at({4, 4}) = 0;
    CHECK(classify_sampling_square(s, {3, 3}) == 0);
    CHECK(classify_sampling_square(s, {4, 4}) == 0);
    CHECK(classify_sampling_square(s, {2, 2}) == 1);

    s.at({4, 4}) = -1;
    CHECK(classify_sampling_square(s, {3, 3}) == 0); // mixed labels
    s.at({4, 4}) = 1;

    SpinConfig m(8, -1);
    CHECK(classify_sampling_square(m, {0, 0}) == -1);
}

TEST_CASE("bad region and smoothing") {
    // One empty tile in the interior of a 12x12 grid.
    SpinConfig s(12, 1);
    s.at({5, 5}) = 0;
    std::vector<TileIndex> bad = bad_sampling_corners(s);
    CHECK(bad.size() == 4);
    CHECK(has_tile(bad, {4, 4}));
    CHECK(has_tile(bad, {5, 5}));

    std::vector<TileIndex> B = bad_region_tiles(s);
    CHECK(B.size() == 9); // tiles [4..6]^2
    for (const TileIndex& t : B) {
        CHECK(t.tx >= 4);
        CHECK(t.tx <= 6);
        CHECK(t.ty >= 4);
        CHECK(t.ty <= 6);
    }

    std::vector<TileIndex> bb = smoothed_bad_tiles(s);
    CHECK(bb.size() == 16); // single aligned 4x4 block [4..7]^2
    for (const TileIndex& t : bb) {
        CHECK(t.tx >= 4);
        CHECK(t.tx <= 7);
        CHECK(t.ty >= 4);
        CHECK(t.ty <= 7);
    }

    SpinConfig odd(10, 1);
    odd.at({5, 5}) = 0;
    CHECK_THROWS_AS(smoothed_bad_tiles(odd), DivisibilityError);

    SpinConfig clean(12, 1);
    CHECK(bad_sampling_corners(clean).empty());
    CHECK(smoothed_bad_tiles(clean).empty());
}

TEST_CASE("single island contour") {
    ModelParams p = ModelParams::make(2, rat_parse("1/10"), 12, Boundary::Open); // ell=1, T=12
    SpinConfig s(12, 1);
    s.at({5, 5}) = 0;

    std::vector<Contour> cs = extract_contours(s, {}, Orientation::H, p);
    REQUIRE(cs.size() == 1);
    const Contour& c = cs[0];
    CHECK(c.support.size() == 16);
    CHECK(c.in_support({4, 4}));
    CHECK(c.in_support({7, 7}));
    CHECK_FALSE(c.in_support({3, 4}));
    CHECK(c.sigma_at({5, 5}) == 0);
    CHECK(c.sigma_at({4, 4}) == 1);
    CHECK(c.zeros() == 1);
    CHECK(c.rods.empty());
    CHECK(c.m_ext == 1);
    CHECK(c.holes.empty());
    CHECK(c.peel.size() == 16); // edge-adjacent ring, no corners
    CHECK(c.ext_peel.size() == 16);
    CHECK(has_tile(c.peel, {3, 4}));
    CHECK(has_tile(c.peel, {8, 7}));
    CHECK_FALSE(has_tile(c.peel, {3, 3}));
    CHECK(c.in_ext_peel({3, 4}));
    CHECK_THROWS_AS(c.sigma_at({0, 0}), ConfigError);

    // Boundary class violations.
    CHECK_THROWS_AS(extract_contours(s, {}, Orientation::V, p), NotInThetaQ);
    SpinConfig bad_band(12, 1);
    bad_band.at({0, 0}) = -1;
    CHECK_THROWS_AS(extract_contours(bad_band, {}, Orientation::H, p), NotInThetaQ);

    // Spin grid must match the rods.
    CHECK_THROWS_AS(extract_contours(s, {vrod(2, 2)}, Orientation::H, p), ConfigError);

    // Uniform configuration has no contours.
    SpinConfig clean(12, 1);
    CHECK(extract_contours(clean, {}, Orientation::H, p).empty());
}

TEST_CASE("contour with a hole") {
    ModelParams p = ModelParams::make(2, rat_parse("1/10"), 28, Boundary::Open); // ell=1, T=28
    SpinConfig s(28, 1);
    for (int ty = 8; ty <= 19; ++ty)
        for (int tx = 8; tx <= 19; ++tx) s.at({tx, ty}) = -1;
    std::vector<Rod> rods = {vrod(12, 12), hrod(2, 2), vrod(8, 8)};

    std::vector<Contour> cs = extract_contours(s, rods, Orientation::H, p);
    REQUIRE(cs.size() == 1);
    const Contour& c = cs[0];
    CHECK(c.support.size() == 384); // 24 smoothing squares in a ring
    CHECK(c.m_ext == 1);
    REQUIRE(c.holes.size() == 1);
    const ContourHole& h = c.holes[0];
    CHECK(h.tiles.size() == 16); // the central block [12..15]^2
    CHECK(h.m_int == -1);
    CHECK(h.peel.size() == 12);
    CHECK(has_tile(h.tiles, {12, 12}));
    CHECK(has_tile(h.tiles, {15, 15}));
    CHECK_FALSE(c.in_support({12, 12}));
    CHECK(c.in_support({8, 8}));
    CHECK(c.in_support({4, 4}));
    CHECK(c.in_support({23, 23}));

    // The rod in the hole and the rod in the sea stay outside; the rod on the
    // ring is kept.
    REQUIRE(c.rods.size() == 1);
    CHECK(c.rods[0].c == Site{8, 8});

    // peel = exterior ring + hole ring
    CHECK(c.peel.size() == c.ext_peel.size() + h.peel.size());
    for (const TileIndex& t : h.peel) CHECK_FALSE(c.in_ext_peel(t));
}

TEST_CASE("shield and vicinity tile sets") {
    ModelParams p = ModelParams::make(2, rat_parse("1/10"), 12, Boundary::Open);
    SpinConfig s(12, 1);
    s.at({5, 5}) = 0;
    Contour c = extract_contours(s, {}, Orientation::H, p)[0]; // support [4..7]^2

    std::vector<TileIndex> a_side_h = a_set(c, {3, 5}, Orientation::H, 12);
    REQUIRE(a_side_h.size() == 2);
    CHECK(has_tile(a_side_h, {2, 5}));
    CHECK(has_tile(a_side_h, {3, 5}));

    std::vector<TileIndex> a_side_v = a_set(c, {3, 5}, Orientation::V, 12);
    REQUIRE(a_side_v.size() == 1); // both column neighbors are peel tiles
    CHECK(has_tile(a_side_v, {3, 5}));

    std::vector<TileIndex> a_corner_v = a_set(c, {3, 4}, Orientation::V, 12);
    REQUIRE(a_corner_v.size() == 2);
    CHECK(has_tile(a_corner_v, {3, 3}));

    std::vector<TileIndex> cs = c_set(c, {3, 5});
    REQUIRE(cs.size() == 4);
    CHECK(has_tile(cs, {4, 4}));
    CHECK(has_tile(cs, {4, 5}));
    CHECK(has_tile(cs, {4, 6}));
    CHECK(has_tile(cs, {5, 5}));

    // Shield sets at distinct peel tiles of the same row do not overlap badly:
    // each contains its own tile.
    for (const TileIndex& d : c.ext_peel) {
        std::vector<TileIndex> a = a_set(c, d, Orientation::H, 12);
        CHECK(has_tile(a, d));
        for (const TileIndex& t : a) CHECK_FALSE(c.in_support(t));
    }
}

TEST_CASE("crossing indicators") {
    ModelParams p = ModelParams::make(2, rat_parse("1/10"), 12, Boundary::Open);
    SpinConfig s(12, 1);
    s.at({5, 5}) = 0;
    std::vector<Rod> grods = {hrod(4, 4)}; // contour rod on the ring
    Contour c = extract_contours(s, grods, Orientation::H, p)[0];
    REQUIRE(c.rods.size() == 1);

    TileIndex d{3, 4};
    CHECK_FALSE(f_delta(d, {}, c, Orientation::H, p, 12));
    CHECK_FALSE(g_delta(d, {}, c, Orientation::H, p, 12));

    // One rod in the shield zone only: f needs the vicinity too.
    std::vector<Rod> r1 = {hrod(2, 4)};
    CHECK_FALSE(f_delta(d, r1, c, Orientation::H, p, 12));
    // Add a rod whose tile lies in the support vicinity.
    std::vector<Rod> r2 = {hrod(2, 4), vrod(4, 5)};
    CHECK(f_delta(d, r2, c, Orientation::H, p, 12));
    CHECK(F_delta(d, r2, c, Orientation::H, p, 12));

    // g: rod overlaps the contour rod and sits in the shield zone.
    std::vector<Rod> r3 = {hrod(3, 4)}; // occupies (3,4),(4,4); gamma rod holds (4,4)
    CHECK(g_delta(d, r3, c, Orientation::H, p, 12));
    CHECK_FALSE(f_delta(d, r3, c, Orientation::H, p, 12));
    CHECK(F_delta(d, r3, c, Orientation::H, p, 12)); // exterior peel takes f or g

    // A rod overlapping the contour rod from a tile outside the shield zone
    // does not set g.
    std::vector<Rod> r4 = {vrod(4, 4)};
    CHECK_FALSE(g_delta(d, r4, c, Orientation::H, p, 12));
}

TEST_CASE("random boundary-class fixtures") {
    ModelParams p = ModelParams::make(2, rat_parse("1/10"), 32, Boundary::Open); // T=32
    for (uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        SpinConfig s = random_theta_fixture(p, Orientation::H, 3, seed);
        SpinConfig again = random_theta_fixture(p, Orientation::H, 3, seed);
        CHECK(s.s == again.s);

        std::vector<Contour> cs = extract_contours(s, {}, Orientation::H, p);
        std::vector<TileIndex> bad = bad_sampling_corners(s);
        std::vector<TileIndex> all_support;
        std::vector<std::vector<TileIndex>> peels;
        for (const Contour& c : cs) {
            CHECK(c.m_ext == 1);
            CHECK(c.support.size() % 16 == 0);
            // support is a union of aligned smoothing squares, and each of
            // them meets a bad sampling square
            for (const TileIndex& corner : smoothing_corners_of(c.support)) {
                bool met = false;
                for (int dy = 0; dy < 4 && !met; ++dy)
                    for (int dx = 0; dx < 4 && !met; ++dx) {
                        TileIndex t{corner.tx + dx, corner.ty + dy};
                        CHECK(c.in_support(t));
                        for (const TileIndex& b : bad)
                            if (std::abs(b.tx - t.tx) <= 1 && std::abs(b.ty - t.ty) <= 1 &&
                                t.tx - b.tx <= 1 && t.ty - b.ty <= 1) {
                                // t could belong to the square at corner b
                                if (t.tx >= b.tx && t.tx <= b.tx + 1 && t.ty >= b.ty &&
                                    t.ty <= b.ty + 1) {
                                    met = true;
                                    break;
                                }
                            }
                    }
                CHECK(met);
            }
            all_support.insert(all_support.end(), c.support.begin(), c.support.end());
            peels.push_back(c.peel);
        }
        // peels avoid every support and distinct peels are far apart
        TileSet supp(all_support.begin(), all_support.end());
        for (const std::vector<TileIndex>& pe : peels)
            for (const TileIndex& t : pe) CHECK_FALSE(supp.count(t));
        for (size_t i = 0; i < peels.size(); ++i)
            for (size_t j = i + 1; j < peels.size(); ++j)
                for (const TileIndex& a : peels[i])
                    for (const TileIndex& b : peels[j]) CHECK(dist2_tiles(a, b) > 2);
        // no bad sampling square contains a peel tile
        for (const std::vector<TileIndex>& pe : peels)
            for (const TileIndex& t : pe)
                for (const TileIndex& b : bad) {
                    bool inside = t.tx >= b.tx && t.tx <= b.tx + 1 && t.ty >= b.ty &&
                                  t.ty <= b.ty + 1;
                    CHECK_FALSE(inside);
                }
    }
}
