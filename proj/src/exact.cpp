#include "hardrods/exact.hpp"

#include <bit>
#include <map>

namespace hardrods {

RegionSpec RegionSpec::box(int w, int h, Boundary bc) {
    if (w <= 0 || h <= 0) throw ConfigError("box dimensions must be positive");
    RegionSpec s;
    s.sites.reserve(size_t(w) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) s.sites.push_back({x, y});
    s.contain = true;
    if (bc == Boundary::Open) {
        s.constraint = RegionConstraint::Open;
    } else {
        s.constraint = RegionConstraint::BoundaryBand;
        s.q = boundary_orientation(bc);
    }
    return s;
}

RegionSpec RegionSpec::tile_union(const std::vector<TileIndex>& tiles, int ell,
                                  RegionConstraint c, Orientation q) {
    RegionSpec s;
    s.sites = tile_sites(tiles, ell);
    s.constraint = c;
    s.q = q;
    s.contain = false;
    return s;
}

std::vector<Site> tile_sites(const std::vector<TileIndex>& tiles, int ell) {
    std::vector<TileIndex> t = tiles;
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    std::vector<Site> out;
    out.reserve(t.size() * size_t(ell) * ell);
    for (const auto& tt : t)
        for (int dy = 0; dy < ell; ++dy)
            for (int dx = 0; dx < ell; ++dx)
                out.push_back({tt.tx * ell + dx, tt.ty * ell + dy});
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<TileIndex> band_tiles(const std::vector<TileIndex>& tiles) {
    TileSet set(tiles.begin(), tiles.end());
    std::vector<TileIndex> out;
    for (const auto& t : tiles) {
        bool band = false;
        for (int dy = -kBoundaryBand; dy <= kBoundaryBand && !band; ++dy)
            for (int dx = -kBoundaryBand; dx <= kBoundaryBand && !band; ++dx) {
                if (dx * dx + dy * dy > kBoundaryBand * kBoundaryBand) continue;
                if (!set.count({t.tx + dx, t.ty + dy})) band = true;
            }
        if (band) out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Tile-aligned decomposition of a site set; ConfigError when a tile is only
// partially covered (the band constraint is a coarse notion).
std::vector<TileIndex> tiles_of_region(const std::vector<Site>& sites, int ell,
                                       const SiteSet& site_set) {
    TileSet tset;
    for (const auto& s : sites) tset.insert(tile_of(s, ell));
    for (const auto& t : tset)
        for (int dy = 0; dy < ell; ++dy)
            for (int dx = 0; dx < ell; ++dx)
                if (!site_set.count({t.tx * ell + dx, t.ty * ell + dy}))
                    throw ConfigError("band constraint needs a tile-aligned region");
    std::vector<TileIndex> tiles(tset.begin(), tset.end());
    std::sort(tiles.begin(), tiles.end());
    return tiles;
}

struct DynBits {
    std::vector<uint64_t> w;
    explicit DynBits(int n = 0) : w((n + 63) / 64, 0) {}
    void set(int i) { w[i >> 6] |= uint64_t(1) << (i & 63); }
    void reset(int i) { w[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    bool none() const {
        for (auto x : w)
            if (x) return false;
        return true;
    }
    int first() const {
        for (size_t j = 0; j < w.size(); ++j)
            if (w[j]) return int(j * 64 + std::countr_zero(w[j]));
        return -1;
    }
    long count_and(const DynBits& o) const {
        long c = 0;
        for (size_t j = 0; j < w.size(); ++j) c += std::popcount(w[j] & o.w[j]);
        return c;
    }
    friend DynBits operator&(const DynBits& a, const DynBits& b) {
        DynBits r = a;
        for (size_t j = 0; j < r.w.size(); ++j) r.w[j] &= b.w[j];
        return r;
    }
    DynBits and_not(const DynBits& o) const {
        DynBits r = *this;
        for (size_t j = 0; j < r.w.size(); ++j) r.w[j] &= ~o.w[j];
        return r;
    }
    bool operator==(const DynBits& o) const { return w == o.w; }
};

class IndepPoly {
  public:
    IndepPoly(const std::vector<Rod>& rods, int k, EnumBudget* budget)
        : n_(int(rods.size())), budget_(budget) {
        adj_.assign(n_, DynBits(n_));
        for (int i = 0; i < n_; ++i) {
            adj_[i].set(i); // closed neighborhood
            for (int j = i + 1; j < n_; ++j)
                if (rods_overlap(rods[i], rods[j], k)) {
                    adj_[i].set(j);
                    adj_[j].set(i);
                }
        }
    }

    PolyZ run() {
        DynBits all(n_);
        for (int i = 0; i < n_; ++i) all.set(i);
        return rec(all);
    }

  private:
    void charge() {
        if (budget_ && ++budget_->used > budget_->limit)
            throw BudgetExceeded("enumeration exceeded " +
                                 std::to_string(budget_->limit) + " nodes");
    }

    DynBits component_of(const DynBits& live, int start) const {
        DynBits comp(n_);
        comp.set(start);
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            DynBits nb = adj_[v] & live;
            for (size_t j = 0; j < nb.w.size(); ++j) {
                uint64_t m = nb.w[j] & ~comp.w[j];
                while (m) {
                    int u = int(j * 64 + std::countr_zero(m));
                    m &= m - 1;
                    comp.set(u);
                    stack.push_back(u);
                }
            }
        }
        return comp;
    }

    PolyZ rec(const DynBits& live) {
        charge();
        int v0 = live.first();
        if (v0 < 0) return PolyZ::one();
        DynBits comp = component_of(live, v0);
        if (!(comp == live)) return rec(comp) * rec(live.and_not(comp));
        // connected: branch on a max-degree vertex
        int pivot = v0;
        long best = -1;
        for (size_t j = 0; j < live.w.size(); ++j) {
            uint64_t m = live.w[j];
            while (m) {
                int v = int(j * 64 + std::countr_zero(m));
                m &= m - 1;
                long d = adj_[v].count_and(live);
                if (d > best) {
                    best = d;
                    pivot = v;
                }
            }
        }
        DynBits without = live;
        without.reset(pivot);
        PolyZ skip = rec(without);
        PolyZ take = rec(live.and_not(adj_[pivot]));
        return skip + take.shifted();
    }

    int n_;
    EnumBudget* budget_;
    std::vector<DynBits> adj_;
};

} // namespace

std::vector<Rod> candidate_rods(const RegionSpec& spec, const ModelParams& p) {
    SiteSet region(spec.sites.begin(), spec.sites.end());
    SiteSet excl(spec.exclusions.begin(), spec.exclusions.end());

    TileSet band;
    if (spec.constraint == RegionConstraint::BoundaryBand) {
        auto tiles = tiles_of_region(spec.sites, p.ell, region);
        auto bt = band_tiles(tiles);
        band.insert(bt.begin(), bt.end());
    }

    std::vector<Site> sorted = spec.sites;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::vector<Rod> out;
    for (const auto& c : sorted) {
        for (Orientation o : {Orientation::H, Orientation::V}) {
            if (spec.constraint == RegionConstraint::OrientationOnly && o != spec.q) continue;
            if (spec.constraint == RegionConstraint::BoundaryBand && o != spec.q &&
                band.count(tile_of(c, p.ell)))
                continue;
            Rod r{o, c};
            bool ok = true;
            for (const auto& s : sites_of_rod(r, p.k)) {
                if (spec.contain && !region.count(s)) { ok = false; break; }
                if (!excl.empty() && excl.count(s)) { ok = false; break; }
            }
            if (ok) out.push_back(r);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

PolyZ partition_exact(const RegionSpec& spec, const ModelParams& p, EnumBudget* budget) {
    auto rods = candidate_rods(spec, p);
    PolyZ result = IndepPoly(rods, p.k, budget).run();
    result.trim();
    // hard-core bound: a contained configuration holds at most |X|/k rods
    if (spec.contain && result.degree() > int(spec.sites.size()) / p.k)
        throw ConfigError("degree above the hard-core packing bound");
    return result;
}

PolyZ transfer_1d(int L, int k) {
    if (L < 0) throw ConfigError("segment length must be >= 0");
    if (k < 2) throw ConfigError("rod length k must be >= 2");
    std::vector<PolyZ> N(std::max(L + 1, k));
    for (int i = 0; i < k && i < int(N.size()); ++i) N[i] = PolyZ::one();
    for (int i = k; i <= L; ++i) N[i] = N[i - 1] + N[i - k].shifted();
    return N[L];
}

PolyZ line_packing(const std::vector<char>& allowed, int k) {
    const int m = int(allowed.size());
    std::vector<PolyZ> f(m + 1);
    f[0] = PolyZ::one(); // f[i] covers positions < i
    for (int i = 1; i <= m; ++i) {
        f[i] = f[i - 1];
        if (allowed[i - 1]) {
            const PolyZ& prev = (i - k >= 0) ? f[i - k] : f[0];
            f[i] += prev.shifted();
        }
    }
    return f[m];
}

PolyZ restricted_partition_factorized(const std::vector<TileIndex>& tiles, Orientation q,
                                      const ModelParams& p) {
    auto sites = tile_sites(tiles, p.ell);
    if (sites.empty()) return PolyZ::one();
    // group reference sites by the lattice line they slide along
    std::map<int, std::vector<int>> lines; // line coordinate -> positions
    for (const auto& s : sites) {
        if (q == Orientation::H)
            lines[s.y].push_back(s.x);
        else
            lines[s.x].push_back(s.y);
    }
    PolyZ total = PolyZ::one();
    for (auto& [line, pos] : lines) {
        std::sort(pos.begin(), pos.end());
        int lo = pos.front(), hi = pos.back();
        std::vector<char> allowed(hi - lo + 1, 0);
        for (int x : pos) allowed[x - lo] = 1;
        total = total * line_packing(allowed, p.k);
    }
    total.trim();
    return total;
}

PolyZ conditioned_partition(const std::vector<TileIndex>& tiles, Orientation q,
                            const ModelParams& p, EnumBudget* budget) {
    RegionSpec spec = RegionSpec::tile_union(tiles, p.ell, RegionConstraint::BoundaryBand, q);
    return partition_exact(spec, p, budget);
}

PolyZ conditioned_box(const ModelParams& p, EnumBudget* budget) {
    p.require_paving();
    RegionSpec spec = RegionSpec::box(p.L, p.L, p.bc);
    if (p.bc == Boundary::Open)
        throw ConfigError("conditioned box needs a +/- boundary");
    return partition_exact(spec, p, budget);
}

PolyZ frozen_partition(const std::vector<TileIndex>& tiles, Orientation q,
                       const ModelParams& p, const std::vector<Site>& frozen_sites,
                       EnumBudget* budget) {
    RegionSpec spec = RegionSpec::tile_union(tiles, p.ell, RegionConstraint::BoundaryBand, q);
    spec.exclusions = frozen_sites;
    return partition_exact(spec, p, budget);
}

} // namespace hardrods
