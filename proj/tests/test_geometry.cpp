#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "hardrods/geometry.hpp"

using namespace hardrods;

TEST_CASE("rod sites, odd k: symmetric around the reference site") {
    Rod r{Orientation::H, {5, 5}};
    auto s = sites_of_rod(r, 3);
    REQUIRE(s.size() == 3);
    CHECK(s[0] == Site{4, 5});
    CHECK(s[1] == Site{5, 5});
    CHECK(s[2] == Site{6, 5});
}

TEST_CASE("rod sites, even k: reference site left/below the midpoint") {
    auto s = sites_of_rod(Rod{Orientation::H, {5, 5}}, 4);
    REQUIRE(s.size() == 4);
    CHECK(s.front() == Site{4, 5});
    CHECK(s.back() == Site{7, 5});

    auto v = sites_of_rod(Rod{Orientation::V, {0, 0}}, 2);
    REQUIRE(v.size() == 2);
    CHECK(v[0] == Site{0, 0});
    CHECK(v[1] == Site{0, 1});
}

TEST_CASE("overlap matches brute-force site intersection") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coord(-6, 6), kdist(2, 6), odist(0, 1);
    for (int trial = 0; trial < 4000; ++trial) {
        int k = kdist(rng);
        Rod a{Orientation(odist(rng)), {coord(rng), coord(rng)}};
        Rod b{Orientation(odist(rng)), {coord(rng), coord(rng)}};
        auto sa = sites_of_rod(a, k);
        auto sb = sites_of_rod(b, k);
        std::set<Site> occ(sa.begin(), sa.end());
        bool brute = false;
        for (auto& s : sb) brute = brute || occ.count(s);
        CHECK(rods_overlap(a, b, k) == brute);
    }
}

TEST_CASE("tiles pave the box without overlap") {
    for (int k : {2, 3, 4, 5, 8}) {
        auto p = ModelParams::make(k, Rat(1, 10), 8 * ((k + 1) / 2));
        std::map<std::pair<int, int>, int> counts;
        for (int y = 0; y < p.L; ++y)
            for (int x = 0; x < p.L; ++x) {
                auto t = tile_of({x, y}, p.ell);
                CHECK(t.tx >= 0);
                CHECK(t.tx < p.tiles_per_side());
                counts[{t.tx, t.ty}]++;
            }
        for (auto& [t, c] : counts) CHECK(c == p.ell * p.ell);
        CHECK(int(counts.size()) == p.tiles_per_side() * p.tiles_per_side());
    }
}

TEST_CASE("floor division handles negatives") {
    CHECK(div_floor(-1, 2) == -1);
    CHECK(div_floor(-4, 2) == -2);
    CHECK(div_floor(3, 2) == 1);
    CHECK(tile_of({-1, -1}, 2) == TileIndex{-1, -1});
}

TEST_CASE("coarse distances") {
    CHECK(dist2_tiles({0, 0}, {1, 1}) == 2);
    CHECK(dist2_tiles({0, 0}, {1, 0}) == 1);
    CHECK(dist1_tiles({0, 0}, {2, -3}) == 5);
    CHECK(d_adjacent({0, 0}, {1, 1}));
    CHECK(!d_adjacent({0, 0}, {2, 1}));
    CHECK(ortho_adjacent({0, 0}, {0, 1}));
    CHECK(!ortho_adjacent({0, 0}, {1, 1}));
}

TEST_CASE("distance to grid complement") {
    int T = 8;
    CHECK(dist_to_grid_complement({0, 0}, T) == 1);
    CHECK(dist_to_grid_complement({3, 3}, T) == 4);
    CHECK(dist_to_grid_complement({7, 4}, T) == 1);
    CHECK(dist_to_grid_complement({4, 3}, T) == 4);
}

namespace {
// independent reference: repeated neighborhood expansion
std::vector<std::vector<TileIndex>> brute_components(const std::vector<TileIndex>& tiles,
                                                     bool diagonal) {
    std::set<TileIndex> left(tiles.begin(), tiles.end());
    std::vector<std::vector<TileIndex>> comps;
    while (!left.empty()) {
        std::vector<TileIndex> comp{*left.begin()};
        left.erase(left.begin());
        bool grew = true;
        while (grew) {
            grew = false;
            for (auto it = left.begin(); it != left.end();) {
                bool adj = false;
                for (auto& c : comp) {
                    long d2 = dist2_tiles(*it, c);
                    if (diagonal ? d2 <= 2 : d2 == 1) { adj = true; break; }
                }
                if (adj) {
                    comp.push_back(*it);
                    it = left.erase(it);
                    grew = true;
                } else {
                    ++it;
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(comp);
    }
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return comps;
}
} // namespace

TEST_CASE("connected components match brute force on random tile sets") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coord(0, 9);
    for (int trial = 0; trial < 300; ++trial) {
        std::set<TileIndex> set;
        int n = 1 + trial % 30;
        for (int i = 0; i < n; ++i) set.insert({coord(rng), coord(rng)});
        std::vector<TileIndex> tiles(set.begin(), set.end());
        CHECK(d_connected_components(tiles) == brute_components(tiles, true));
        CHECK(ortho_connected_components(tiles) == brute_components(tiles, false));
    }
}

TEST_CASE("diagonal-only contact merges under d-connectivity, splits under ortho") {
    std::vector<TileIndex> tiles{{0, 0}, {1, 1}};
    CHECK(d_connected_components(tiles).size() == 1);
    CHECK(ortho_connected_components(tiles).size() == 2);
}

TEST_CASE("model params derive the tile side and validate") {
    auto p = ModelParams::make(5, Rat(1, 100), 24);
    CHECK(p.ell == 3);
    CHECK_THROWS_AS(ModelParams::make(1, Rat(1, 10)), ConfigError);
    CHECK_THROWS_AS(ModelParams::make(4, Rat(1, 10), 2).require_paving(), DivisibilityError);
    CHECK_NOTHROW(ModelParams::make(4, Rat(1, 10), 16).require_paving());
}

TEST_CASE("rational literals parse exactly") {
    CHECK(rat_parse("0.0625") == Rat(1, 16));
    CHECK(rat_parse("1/20") == Rat(1, 20));
    CHECK(rat_parse("-0.5") == Rat(-1, 2));
    CHECK(rat_parse("3") == Rat(3));
    CHECK(rat_to_string(Rat(-1000, 2197)) == "-1000/2197");
    CHECK(rat_to_string(Rat(4, 2)) == "2");
    CHECK_THROWS_AS(rat_parse("1/0"), ConfigError);
}
