#include "hardrods/geometry.hpp"

namespace hardrods {

namespace {

std::vector<std::vector<TileIndex>> components_impl(std::vector<TileIndex> tiles,
                                                    bool diagonal) {
    std::sort(tiles.begin(), tiles.end());
    tiles.erase(std::unique(tiles.begin(), tiles.end()), tiles.end());
    const int n = int(tiles.size());
    std::unordered_map<TileIndex, int, TileHash> idx;
    idx.reserve(n * 2);
    for (int i = 0; i < n; ++i) idx[tiles[i]] = i;

    UnionFind uf(n);
    for (int i = 0; i < n; ++i) {
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                if (!diagonal && dx != 0 && dy != 0) continue;
                auto it = idx.find({tiles[i].tx + dx, tiles[i].ty + dy});
                if (it != idx.end()) uf.unite(i, it->second);
            }
    }
    std::unordered_map<int, std::vector<TileIndex>> groups;
    for (int i = 0; i < n; ++i) groups[uf.find(i)].push_back(tiles[i]);
    std::vector<std::vector<TileIndex>> out;
    out.reserve(groups.size());
    for (auto& [root, g] : groups) {
        std::sort(g.begin(), g.end());
        out.push_back(std::move(g));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

} // namespace

std::vector<std::vector<TileIndex>> d_connected_components(std::vector<TileIndex> tiles) {
    return components_impl(std::move(tiles), true);
}

std::vector<std::vector<TileIndex>> ortho_connected_components(std::vector<TileIndex> tiles) {
    return components_impl(std::move(tiles), false);
}

} // namespace hardrods
