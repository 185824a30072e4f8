#pragma once
#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hardrods/errors.hpp"
#include "hardrods/rational.hpp"

namespace hardrods {

enum class Orientation : uint8_t { H = 0, V = 1 };

inline Orientation other(Orientation o) {
    return o == Orientation::H ? Orientation::V : Orientation::H;
}
inline char orient_char(Orientation o) { return o == Orientation::H ? 'h' : 'v'; }

// Spin of the orientation used as a magnetization label: H -> +1, V -> -1.
inline int spin_of(Orientation o) { return o == Orientation::H ? +1 : -1; }
inline Orientation orient_of_spin(int s) {
    if (s == +1) return Orientation::H;
    if (s == -1) return Orientation::V;
    throw ConfigError("spin 0 has no orientation");
}

struct Site {
    int x = 0, y = 0;
    friend bool operator==(const Site& a, const Site& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator<(const Site& a, const Site& b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
    }
};

struct SiteHash {
    size_t operator()(const Site& s) const {
        return std::hash<uint64_t>()((uint64_t(uint32_t(s.x)) << 32) | uint32_t(s.y));
    }
};
using SiteSet = std::unordered_set<Site, SiteHash>;

struct Rod {
    Orientation o = Orientation::H;
    Site c; // reference site: the occupied site nearest the geometric center,
            // taken from the left (H) or from below (V) when k is even
    friend bool operator==(const Rod& a, const Rod& b) { return a.o == b.o && a.c == b.c; }
    friend bool operator<(const Rod& a, const Rod& b) {
        if (a.o != b.o) return a.o < b.o;
        return a.c < b.c;
    }
};

// Occupied-site offsets around the reference site: c-a .. c+b along the axis.
inline int rod_back(int k) { return (k - 1) / 2; }
inline int rod_front(int k) { return k / 2; }

inline std::vector<Site> sites_of_rod(const Rod& r, int k) {
    std::vector<Site> s;
    s.reserve(k);
    int a = rod_back(k), b = rod_front(k);
    if (r.o == Orientation::H)
        for (int d = -a; d <= b; ++d) s.push_back({r.c.x + d, r.c.y});
    else
        for (int d = -a; d <= b; ++d) s.push_back({r.c.x, r.c.y + d});
    return s;
}

// Hard-core check without materializing site lists.
inline bool rods_overlap(const Rod& r1, const Rod& r2, int k) {
    int a = rod_back(k), b = rod_front(k);
    if (r1.o == r2.o) {
        if (r1.o == Orientation::H)
            return r1.c.y == r2.c.y && std::abs(r1.c.x - r2.c.x) <= k - 1;
        return r1.c.x == r2.c.x && std::abs(r1.c.y - r2.c.y) <= k - 1;
    }
    const Rod& h = r1.o == Orientation::H ? r1 : r2;
    const Rod& v = r1.o == Orientation::H ? r2 : r1;
    return v.c.x >= h.c.x - a && v.c.x <= h.c.x + b &&
           h.c.y >= v.c.y - a && h.c.y <= v.c.y + b;
}

inline int div_floor(int a, int b) {
    int q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

struct TileIndex {
    int tx = 0, ty = 0;
    friend bool operator==(const TileIndex& a, const TileIndex& b) {
        return a.tx == b.tx && a.ty == b.ty;
    }
    friend bool operator<(const TileIndex& a, const TileIndex& b) {
        return a.ty != b.ty ? a.ty < b.ty : a.tx < b.tx;
    }
};
struct TileHash {
    size_t operator()(const TileIndex& t) const {
        return std::hash<uint64_t>()((uint64_t(uint32_t(t.tx)) << 32) | uint32_t(t.ty));
    }
};
using TileSet = std::unordered_set<TileIndex, TileHash>;

inline TileIndex tile_of(const Site& s, int ell) {
    return {div_floor(s.x, ell), div_floor(s.y, ell)};
}

// Distances between tiles are measured on the coarse grid: tile centers are
// ell apart, and the coarse unit is ell, so index differences carry the metric.
inline long dist2_tiles(const TileIndex& a, const TileIndex& b) {
    long dx = a.tx - b.tx, dy = a.ty - b.ty;
    return dx * dx + dy * dy;
}
inline int dist1_tiles(const TileIndex& a, const TileIndex& b) {
    return std::abs(a.tx - b.tx) + std::abs(a.ty - b.ty);
}
template <class TileRange>
inline long dist2_tile_to_set(const TileIndex& t, const TileRange& set) {
    long best = -1;
    for (const auto& u : set) {
        long d = dist2_tiles(t, u);
        if (best < 0 || d < best) best = d;
    }
    return best;
}
template <class TileRange>
inline int dist1_tile_to_set(const TileIndex& t, const TileRange& set) {
    int best = -1;
    for (const auto& u : set) {
        int d = dist1_tiles(t, u);
        if (best < 0 || d < best) best = d;
    }
    return best;
}

// Diagonal contact counts as connected (squared center distance <= 2).
inline bool d_adjacent(const TileIndex& a, const TileIndex& b) {
    return !(a == b) && dist2_tiles(a, b) <= 2;
}
inline bool ortho_adjacent(const TileIndex& a, const TileIndex& b) {
    return dist2_tiles(a, b) == 1;
}

struct UnionFind {
    std::vector<int> parent, rank_;
    explicit UnionFind(int n) : parent(n), rank_(n, 0) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    }
    void unite(int a, int b) {
        a = find(a), b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }
};

// Maximal components under diagonal-inclusive adjacency, deterministic order:
// components sorted by their smallest tile, tiles sorted within.
std::vector<std::vector<TileIndex>> d_connected_components(std::vector<TileIndex> tiles);

// Same but with orthogonal adjacency only (used for region complements).
std::vector<std::vector<TileIndex>> ortho_connected_components(std::vector<TileIndex> tiles);

enum class Boundary : uint8_t { Open, Plus, Minus };

inline Orientation boundary_orientation(Boundary b) {
    if (b == Boundary::Plus) return Orientation::H;
    if (b == Boundary::Minus) return Orientation::V;
    throw ConfigError("open boundary has no forced orientation");
}

// Tiles this close (coarse distance) to the complement of the region carry
// the boundary label in conditioned ensembles.
constexpr int kBoundaryBand = 5;

struct ModelParams {
    int k = 2;   // rod length, >= 2
    int ell = 1; // coarse tile side = ceil(k/2)
    int L = 0;   // box side (sites); 0 when no box is involved
    Rat z = Rat(1, 10);
    Boundary bc = Boundary::Open;

    static ModelParams make(int k, const Rat& z, int L = 0, Boundary bc = Boundary::Open) {
        if (k < 2) throw ConfigError("rod length k must be >= 2");
        ModelParams p;
        p.k = k;
        p.ell = (k + 1) / 2;
        p.L = L;
        p.z = z;
        p.bc = bc;
        return p;
    }
    double z_d() const { return rat_double(z); }
    int tiles_per_side() const { return L / ell; }
    // Coarse structure needs a whole number of smoothing squares per side.
    void require_paving() const {
        if (L <= 0 || L % (4 * ell) != 0)
            throw DivisibilityError("box side " + std::to_string(L) +
                                    " is not a positive multiple of 4*ell = " +
                                    std::to_string(4 * ell));
    }
};

// Coarse distance from a tile to the complement of the T×T tile grid.
// The nearest outside tile sits straight across the closest edge.
inline int dist_to_grid_complement(const TileIndex& t, int T) {
    int d = std::min(std::min(t.tx + 1, T - t.tx), std::min(t.ty + 1, T - t.ty));
    return d;
}

} // namespace hardrods
