#include "hardrods/mayer.hpp"

#include <array>
#include <bit>
#include <map>
#include <set>

namespace hardrods {

Rat mayer_coefficient(const std::vector<Rod>& rods, int k) {
    const int n = int(rods.size());
    if (n == 0) return Rat(0);
    if (n > kMayerCap)
        throw SizeLimit("multiset size " + std::to_string(n) + " above cap " +
                        std::to_string(kMayerCap));
    if (n == 1) return Rat(1);

    std::array<uint32_t, kMayerCap> adj{}; // open neighborhoods
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rods_overlap(rods[i], rods[j], k)) {
                adj[i] |= 1u << j;
                adj[j] |= 1u << i;
            }

    const uint32_t full = (1u << n) - 1;
    // indep[S]: no overlap edge inside S, so the edge-subset sum over S is 1
    std::vector<char> indep(full + 1, 1);
    for (uint32_t S = 1; S <= full; ++S) {
        int top = 31 - std::countl_zero(S);
        uint32_t rest = S & ~(1u << top);
        indep[S] = indep[rest] && (adj[top] & S) == 0;
    }
    // C[S]: signed count of connected spanning edge subsets of S, from
    // C[S] = indep[S] - sum over proper T containing min(S) of C[T]*indep[S\T]
    std::vector<long long> C(full + 1, 0);
    for (uint32_t S = 1; S <= full; ++S) {
        uint32_t v = S & (~S + 1);
        long long acc = indep[S] ? 1 : 0;
        for (uint32_t T = (S - 1) & S; T; T = (T - 1) & S) {
            if (!(T & v)) continue;
            if (indep[S & ~T]) acc -= C[T];
        }
        C[S] = acc;
    }

    Int rfact = 1;
    std::map<Rod, int> mult;
    for (const auto& r : rods) ++mult[r];
    for (const auto& [r, m] : mult)
        for (int i = 2; i <= m; ++i) rfact *= i;

    Rat out(Int(long(C[full])), rfact);
    out.canonicalize();
    return out;
}

ConnectedSets enumerate_connected_multisets(const std::vector<Rod>& universe, int k,
                                            int m_max, const std::vector<int>& seeds) {
    ConnectedSets out;
    out.universe = universe;
    out.by_size.assign(m_max + 1, {});

    const int n = int(universe.size());
    std::vector<std::vector<int>> adj(n); // closed: a rod overlaps itself
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j)
            if (rods_overlap(universe[i], universe[j], k)) {
                adj[i].push_back(j);
                if (j != i) adj[j].push_back(i);
            }
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());

    std::set<std::vector<int>> level;
    for (int s : seeds) level.insert({s});
    if (m_max >= 1)
        out.by_size[1].assign(level.begin(), level.end());

    for (int m = 2; m <= m_max; ++m) {
        std::set<std::vector<int>> next;
        for (const auto& ms : level) {
            std::set<int> ext;
            for (int id : ms) ext.insert(adj[id].begin(), adj[id].end());
            for (int e : ext) {
                std::vector<int> grown = ms;
                grown.insert(std::upper_bound(grown.begin(), grown.end(), e), e);
                next.insert(std::move(grown));
            }
        }
        out.by_size[m].assign(next.begin(), next.end());
        level = std::move(next);
    }
    return out;
}

TruncatedSeries truncated_log_restricted(const std::vector<TileIndex>& tiles, Orientation q,
                                         const ModelParams& p, int m_max) {
    auto spec = RegionSpec::tile_union(tiles, p.ell, RegionConstraint::OrientationOnly, q);
    auto universe = candidate_rods(spec, p);
    std::vector<int> seeds(universe.size());
    for (size_t i = 0; i < seeds.size(); ++i) seeds[i] = int(i);
    auto sets = enumerate_connected_multisets(universe, p.k, m_max, seeds);

    TruncatedSeries series(m_max + 1, Rat(0));
    std::vector<Rod> rods;
    for (int m = 1; m <= m_max; ++m)
        for (const auto& ms : sets.by_size[m]) {
            rods.clear();
            for (int id : ms) rods.push_back(universe[id]);
            series[m] += mayer_coefficient(rods, p.k);
        }
    return series;
}

int support_span(const std::vector<Rod>& rods, int k) {
    int xlo = INT32_MAX, xhi = INT32_MIN, ylo = INT32_MAX, yhi = INT32_MIN;
    for (const auto& r : rods)
        for (const auto& s : sites_of_rod(r, k)) {
            xlo = std::min(xlo, s.x);
            xhi = std::max(xhi, s.x);
            ylo = std::min(ylo, s.y);
            yhi = std::max(yhi, s.y);
        }
    if (rods.empty()) return 0;
    return std::max(xhi - xlo, yhi - ylo);
}

PinnedReport pinned_sum(Site x0, Orientation q, int m_max, const ModelParams& p) {
    // window large enough for any connected multiset of m_max rods through x0
    const int radius = m_max * p.k;
    std::vector<Rod> universe;
    int anchor = -1;
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx) {
            Rod r{q, {x0.x + dx, x0.y + dy}};
            if (dx == 0 && dy == 0) anchor = int(universe.size());
            universe.push_back(r);
        }
    auto sets = enumerate_connected_multisets(universe, p.k, m_max, {anchor});

    PinnedReport rep;
    std::vector<Rod> rods;
    Rat zpow = p.z;
    for (int m = 1; m <= m_max; ++m) {
        Rat sum(0);
        for (const auto& ms : sets.by_size[m]) {
            rods.clear();
            for (int id : ms) rods.push_back(universe[id]);
            // a connected m-multiset cannot span more than m*(k-1) sites
            int span = support_span(rods, p.k);
            if (span > m * (p.k - 1))
                throw ConfigError("connected multiset spans too far: " + std::to_string(span));
            Rat phi = mayer_coefficient(rods, p.k);
            sum += abs(phi);
        }
        rep.orders.push_back(m);
        rep.sums.push_back(sum * zpow);
        zpow *= p.z;
    }
    double zk = p.z_d() * p.k;
    for (size_t i = 0; i + 1 < rep.sums.size(); ++i) {
        double r = rat_double(rep.sums[i + 1]) / rat_double(rep.sums[i]);
        rep.ratios.push_back(r);
        rep.c_measured = std::max(rep.c_measured, r / zk);
    }
    return rep;
}

} // namespace hardrods
