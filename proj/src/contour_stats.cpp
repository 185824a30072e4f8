#include "hardrods/contour_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "hardrods/mayer.hpp"

namespace hardrods {

Rat phi_bar(const Contour& c, const ModelParams& p) {
    Rat w = rat_pow(p.z, (unsigned long)c.rods.size());
    if (c.zeros() % 2 != 0) w = -w;
    return w;
}

Rat zeta0(const Contour& c, Orientation q, const ModelParams& p, EnumBudget* budget) {
    Rat num = phi_bar(c, p);
    Rat den = restricted_partition_factorized(c.support, q, p).eval(p.z);
    Rat v = num / den;
    if (c.holes.empty()) return v;
    std::vector<Site> frozen;
    for (const Rod& r : c.rods)
        for (const Site& s : sites_of_rod(r, p.k)) frozen.push_back(s);
    for (const ContourHole& h : c.holes) {
        Orientation qi = orient_of_spin(h.m_int);
        Rat zi = frozen_partition(h.tiles, qi, p, frozen, budget).eval(p.z);
        Rat zq = conditioned_partition(h.tiles, q, p, budget).eval(p.z);
        v *= zi / zq;
    }
    return v;
}

namespace {

// Grid tiles within Chebyshev radius w of some base tile.
std::vector<TileIndex> window_tiles(const std::vector<TileIndex>& base, int w, int T) {
    std::vector<TileIndex> out;
    for (int ty = 0; ty < T; ++ty)
        for (int tx = 0; tx < T; ++tx) {
            TileIndex t{tx, ty};
            for (const TileIndex& b : base) {
                if (std::abs(t.tx - b.tx) <= w && std::abs(t.ty - b.ty) <= w) {
                    out.push_back(t);
                    break;
                }
            }
        }
    return out;
}

bool contained_in_box(const Rod& r, int k, int L) {
    int a = rod_back(k), b = rod_front(k);
    if (r.o == Orientation::H)
        return r.c.x - a >= 0 && r.c.x + b < L && r.c.y >= 0 && r.c.y < L;
    return r.c.y - a >= 0 && r.c.y + b < L && r.c.x >= 0 && r.c.x < L;
}

// q-oriented rods of the box whose reference site lies in the window around
// the base tiles. The radius covers every connected multiset of at most
// m_max rods that contains a shield-zone rod, so truncation loses nothing.
std::vector<Rod> cluster_universe(const std::vector<TileIndex>& base, int m_max,
                                  Orientation q, const ModelParams& p) {
    int T = p.tiles_per_side();
    int w = (m_max * p.k + p.ell - 1) / p.ell + 2;
    std::vector<Rod> uni;
    for (const Site& s : tile_sites(window_tiles(base, w, T), p.ell)) {
        Rod r{q, s};
        if (contained_in_box(r, p.k, p.L)) uni.push_back(r);
    }
    std::sort(uni.begin(), uni.end());
    return uni;
}

std::vector<int> seed_ids(const std::vector<Rod>& uni, const TileSet& a_tiles, int ell) {
    std::vector<int> seeds;
    for (size_t i = 0; i < uni.size(); ++i)
        if (a_tiles.count(tile_of(uni[i].c, ell))) seeds.push_back(int(i));
    return seeds;
}

} // namespace

ZetaReport zeta(const Contour& c, Orientation q, const ModelParams& p, int m_max,
                EnumBudget* budget) {
    if (m_max < 1) throw ConfigError("zeta needs m_max >= 1");
    p.require_paving();
    int T = p.tiles_per_side();

    ZetaReport rep;
    rep.m_max = m_max;
    rep.bare = zeta0(c, q, p, budget);

    std::vector<TileIndex> base = c.support;
    base.insert(base.end(), c.peel.begin(), c.peel.end());
    std::vector<Rod> uni = cluster_universe(base, m_max, q, p);

    TileSet a_tiles;
    for (const TileIndex& d : c.peel)
        for (const TileIndex& t : a_set(c, d, q, T)) a_tiles.insert(t);
    ConnectedSets cs =
        enumerate_connected_multisets(uni, p.k, m_max, seed_ids(uni, a_tiles, p.ell));

    rep.exponent.assign(size_t(m_max) + 1, Rat(0));
    for (int m = 1; m <= m_max; ++m) {
        Rat zm = rat_pow(p.z, (unsigned long)m);
        for (const auto& ids : cs.by_size[m]) {
            std::vector<Rod> R;
            R.reserve(ids.size());
            for (int id : ids) R.push_back(uni[id]);
            int hits = 0;
            for (const TileIndex& d : c.peel)
                if (F_delta(d, R, c, q, p, T)) ++hits;
            if (hits == 0) continue;
            rep.exponent[m] += mayer_coefficient(R, p.k) * zm * hits;
        }
    }

    Rat total = 0;
    for (const Rat& e : rep.exponent) total += e;
    rep.value = rat_double(rep.bare) * std::exp(-rat_double(total));
    double zk = p.z_d() * p.k, zk2 = p.z_d() * p.k * p.k;
    double growth = std::max(0.0, -rat_double(total));
    double denom = zk2 * double(c.support.size()) * std::pow(zk, kAlpha);
    rep.measured_C = denom > 0 ? growth / denom : 0.0;
    return rep;
}

Rat tile_factor(int spin, const ModelParams& p) {
    if (spin != 0) return Rat(1);
    Rat single = restricted_partition_factorized({TileIndex{0, 0}}, Orientation::H, p).eval(p.z);
    return Rat(-1) / single;
}

namespace {

// One tile's rod states: per line of the tile, either no reference site or
// one at a given offset. Same-orientation rods on distinct lines never
// collide, so every offset vector is internally valid.
struct TileStates {
    std::vector<std::vector<Rod>> rods; // state -> rod list
    std::vector<int> count;             // rods per state
    std::vector<bool> untypical;        // no reference site in the near half
};

// ox, oy: site origin of the tile. Orientation o fixes the line direction:
// H rods sit one per row, V rods one per column. near_lo/near_hi bound the
// near-half coordinate (x for H partner along x, etc.) in [near_lo, near_hi).
TileStates tile_states(int ox, int oy, Orientation o, int ell, bool near_is_x, int near_lo,
                       int near_hi) {
    TileStates ts;
    long total = 1;
    for (int i = 0; i < ell; ++i) total *= (ell + 1);
    ts.rods.reserve(total);
    std::vector<int> offs(ell, -1); // -1: empty line, else offset 0..ell-1
    for (long s = 0; s < total; ++s) {
        long v = s;
        for (int i = 0; i < ell; ++i) {
            offs[i] = int(v % (ell + 1)) - 1;
            v /= (ell + 1);
        }
        std::vector<Rod> rods;
        bool unty = true;
        for (int line = 0; line < ell; ++line) {
            if (offs[line] < 0) continue;
            Site c = o == Orientation::H ? Site{ox + offs[line], oy + line}
                                         : Site{ox + line, oy + offs[line]};
            int near_coord = near_is_x ? c.x : c.y;
            if (near_coord >= near_lo && near_coord < near_hi) unty = false;
            rods.push_back({o, c});
        }
        ts.count.push_back(int(rods.size()));
        ts.untypical.push_back(unty);
        ts.rods.push_back(std::move(rods));
    }
    return ts;
}

} // namespace

DominoReport domino_factor(const ModelParams& p, Orientation q, Orientation axis,
                           int first_spin) {
    int ell = p.ell, k = p.k;
    double states = std::pow(double(ell + 1), ell);
    if (states * states > 2e8)
        throw BudgetExceeded("domino state space (ell+1)^(2 ell) too large at ell = " +
                             std::to_string(ell));

    Orientation o1 = orient_of_spin(first_spin), o2 = other(o1);
    int h = ell / 2; // near-half width; two rods with near-half reference sites collide
    TileStates first, second;
    if (axis == Orientation::H) {
        // partner of the first tile sits at +x, of the second at -x
        first = tile_states(0, 0, o1, ell, true, ell - h, ell);
        second = tile_states(ell, 0, o2, ell, true, ell, ell + h);
    } else {
        first = tile_states(0, 0, o1, ell, false, ell - h, ell);
        second = tile_states(0, ell, o2, ell, false, ell, ell + h);
    }

    std::vector<Rat> zpow(size_t(2 * ell) + 1);
    zpow[0] = 1;
    for (size_t i = 1; i < zpow.size(); ++i) zpow[i] = zpow[i - 1] * p.z;

    DominoReport rep;
    rep.value = 0;
    rep.untypical_first = 0;
    rep.untypical_second = 0;
    rep.split_covers = true;
    for (size_t i = 0; i < first.rods.size(); ++i) {
        for (size_t j = 0; j < second.rods.size(); ++j) {
            bool ok = true;
            for (const Rod& r1 : first.rods[i]) {
                for (const Rod& r2 : second.rods[j])
                    if (rods_overlap(r1, r2, k)) {
                        ok = false;
                        break;
                    }
                if (!ok) break;
            }
            if (!ok) continue;
            const Rat& w = zpow[size_t(first.count[i] + second.count[j])];
            rep.value += w;
            if (first.untypical[i]) rep.untypical_first += w;
            if (second.untypical[j]) rep.untypical_second += w;
            if (!first.untypical[i] && !second.untypical[j]) rep.split_covers = false;
        }
    }

    std::vector<TileIndex> pair{TileIndex{0, 0},
                                axis == Orientation::H ? TileIndex{1, 0} : TileIndex{0, 1}};
    Rat zq = restricted_partition_factorized(pair, q, p).eval(p.z);
    rep.value /= zq;
    rep.untypical_first /= zq;
    rep.untypical_second /= zq;

    Rat half_num = Rat(1) + Rat(ell - h) * p.z;
    Rat half_den = Rat(1) + Rat(ell) * p.z;
    rep.half_ratio = rat_pow(half_num / half_den, (unsigned long)ell);

    double zd = p.z_d(), zk = zd * k, zk2 = zd * k * k;
    double v = rat_double(rep.value);
    rep.measured_Cprime =
        zk2 * zk > 0 ? std::max(0.0, (std::log(v) + zd * ell * ell / 2 - std::log(2.0)) /
                                         (zk2 * zk))
                     : 0.0;
    rep.bound = 2 * std::exp(rep.measured_Cprime * zk2 * zk - zd * ell * ell / 2);
    return rep;
}

namespace {

std::vector<TileIndex> square_tiles_of(const TileIndex& corner) {
    return {corner, {corner.tx + 1, corner.ty}, {corner.tx, corner.ty + 1},
            {corner.tx + 1, corner.ty + 1}};
}

// Bad sampling squares recoverable from the contour labels alone: corners
// whose four tiles all lie in the support without a uniform +-1 label.
// A bad square never straddles two contours (its tiles are D-adjacent).
std::vector<TileIndex> contour_bad_corners(const Contour& c) {
    int lox = c.support.front().tx, hix = lox, loy = c.support.front().ty, hiy = loy;
    for (const TileIndex& t : c.support) {
        lox = std::min(lox, t.tx);
        hix = std::max(hix, t.tx);
        loy = std::min(loy, t.ty);
        hiy = std::max(hiy, t.ty);
    }
    std::vector<TileIndex> out;
    for (int ty = loy - 1; ty <= hiy; ++ty)
        for (int tx = lox - 1; tx <= hix; ++tx) {
            bool inside = true, plus = false, minus = false, zero = false;
            for (const TileIndex& t : square_tiles_of({tx, ty})) {
                if (!c.in_support(t)) {
                    inside = false;
                    break;
                }
                int8_t s = c.sigma_at(t);
                (s == 0 ? zero : (s > 0 ? plus : minus)) = true;
            }
            if (!inside) continue;
            if (zero || (plus && minus)) out.push_back({tx, ty});
        }
    return out;
}

} // namespace

PeierlsReport peierls_ledger(const Contour& c, Orientation q, const ModelParams& p) {
    if (c.support.empty()) throw ConfigError("empty contour support");
    PeierlsReport rep;
    rep.n_zero = c.zeros();

    std::vector<TileIndex> blocks = smoothing_corners_of(c.support);
    std::sort(blocks.begin(), blocks.end());
    rep.n_squares = int(blocks.size());
    std::vector<TileIndex> bad = contour_bad_corners(c);

    TileSet used;
    std::set<TileIndex> covered;
    std::vector<LedgerUnit> dominoes;
    auto cover = [&](const TileIndex& corner) {
        for (const TileIndex& b : smoothing_corners_of(square_tiles_of(corner)))
            covered.insert(b);
    };
    for (const TileIndex& blk : blocks) {
        if (covered.count(blk)) continue;
        std::vector<TileIndex> cands;
        for (const TileIndex& xi : bad)
            if (xi.tx >= blk.tx - 1 && xi.tx <= blk.tx + 3 && xi.ty >= blk.ty - 1 &&
                xi.ty <= blk.ty + 3)
                cands.push_back(xi);
        if (cands.empty())
            throw NoBadStructure("smoothing square (" + std::to_string(blk.tx) + "," +
                                 std::to_string(blk.ty) + ") meets no bad sampling square");
        bool resolved = false;
        for (const TileIndex& xi : cands) { // an empty-labeled tile is its own unit
            for (const TileIndex& t : square_tiles_of(xi))
                if (c.sigma_at(t) == 0) {
                    used.insert(t);
                    cover(xi);
                    resolved = true;
                    break;
                }
            if (resolved) break;
        }
        if (!resolved) // re-charge a unit already in the ledger
            for (const TileIndex& xi : cands) {
                for (const TileIndex& t : square_tiles_of(xi))
                    if (used.count(t)) {
                        cover(xi);
                        resolved = true;
                        break;
                    }
                if (resolved) break;
            }
        if (!resolved) // mixed square with no empty tile: take an opposite pair
            for (const TileIndex& xi : cands) {
                auto tiles = square_tiles_of(xi);
                for (size_t a = 0; a < tiles.size() && !resolved; ++a)
                    for (size_t b = a + 1; b < tiles.size() && !resolved; ++b) {
                        if (!ortho_adjacent(tiles[a], tiles[b])) continue;
                        int sa = c.sigma_at(tiles[a]), sb = c.sigma_at(tiles[b]);
                        if (sa == 0 || sa != -sb) continue;
                        if (used.count(tiles[a]) || used.count(tiles[b])) continue;
                        used.insert(tiles[a]);
                        used.insert(tiles[b]);
                        dominoes.push_back({{tiles[a], tiles[b]}, 2});
                        cover(xi);
                        resolved = true;
                    }
                if (resolved) break;
            }
        if (!resolved)
            throw NoBadStructure("no usable witness near smoothing square (" +
                                 std::to_string(blk.tx) + "," + std::to_string(blk.ty) + ")");
    }

    rep.n_domino = int(dominoes.size());
    rep.n_pm = int(c.support.size()) - rep.n_zero - 2 * rep.n_domino;
    rep.counting_ok = 64 * (rep.n_zero + rep.n_domino) >= int(c.support.size());

    TileSet in_domino;
    for (const LedgerUnit& d : dominoes)
        for (const TileIndex& t : d.tiles) in_domino.insert(t);

    // kappa * prod(unit factors), all exact: dropping the cross constraints
    // between units multiplies the restricted sum by kappa >= 1.
    Rat single = restricted_partition_factorized({TileIndex{0, 0}}, q, p).eval(p.z);
    Rat z_support = restricted_partition_factorized(c.support, q, p).eval(p.z);
    Rat prod_units = 1, prod_factors = 1;
    std::map<int, Rat> domino_cache; // axis -> pair factor
    for (size_t i = 0; i < c.support.size(); ++i) {
        const TileIndex& t = c.support[i];
        if (in_domino.count(t)) continue;
        prod_units *= single;
        if (c.sigma[i] == 0) {
            prod_factors /= single; // |tile factor| of an empty label
            rep.units.push_back({{t}, 0});
        } else {
            rep.units.push_back({{t}, 1});
        }
    }
    for (const LedgerUnit& d : dominoes) {
        // tiles are sorted, so tiles[0] is the left/bottom one
        Orientation axis = d.tiles[0].tx != d.tiles[1].tx ? Orientation::H : Orientation::V;
        int first = c.sigma_at(d.tiles[0]);
        prod_units *= restricted_partition_factorized(d.tiles, q, p).eval(p.z);
        int key = 2 * int(axis) + (first > 0 ? 1 : 0);
        auto it = domino_cache.find(key);
        if (it == domino_cache.end())
            it = domino_cache.emplace(key, domino_factor(p, q, axis, first).value).first;
        prod_factors *= it->second;
        rep.units.push_back(d);
    }
    rep.kappa = prod_units / z_support;
    rep.exact_value = rep.kappa * prod_factors;
    rep.value = rat_double(rep.exact_value);

    double zk2 = p.z_d() * p.k * p.k, n = double(c.support.size());
    rep.two_c0.name = "peierls-two-c0";
    rep.two_c0.value = rep.value;
    rep.two_c0.target = std::exp(-2 * kC0 * zk2 * n);
    rep.one_c0.name = "peierls-one-c0";
    rep.one_c0.value = rep.value;
    rep.one_c0.target = std::exp(-kC0 * zk2 * n);
    for (auto* cert : {&rep.two_c0, &rep.one_c0}) {
        cert->data = {{"tiles", n},
                      {"zeros", double(rep.n_zero)},
                      {"dominoes", double(rep.n_domino)},
                      {"kappa", rat_double(rep.kappa)},
                      {"zk2", zk2}};
    }

    double m = rep.n_zero + rep.n_domino / 2.0;
    double zl2 = p.z_d() * p.ell * p.ell, zk = p.z_d() * p.k;
    rep.structure_C =
        (m > 0 && rep.value > 0 && zl2 > 0 && zk > 0)
            ? (1.0 + std::log(rep.value) / (zl2 * m)) / zk
            : 0.0;
    return rep;
}

RatioReport ratio_check(const std::vector<TileIndex>& X, const ModelParams& p,
                        EnumBudget* budget) {
    if (X.empty()) throw ConfigError("empty tile union");
    RatioReport rep;
    PolyZ zp = conditioned_partition(X, Orientation::H, p, budget);
    PolyZ zm = conditioned_partition(X, Orientation::V, p, budget);
    rep.exact_one = zp == zm;
    rep.ratio = zp.eval(p.z) / zm.eval(p.z);

    int lox = X.front().tx, hix = lox, loy = X.front().ty, hiy = loy;
    for (const TileIndex& t : X) {
        lox = std::min(lox, t.tx);
        hix = std::max(hix, t.tx);
        loy = std::min(loy, t.ty);
        hiy = std::max(hiy, t.ty);
    }
    rep.square = (hix - lox == hiy - loy) &&
                 (long long)(hix - lox + 1) * (hiy - loy + 1) == (long long)X.size();

    TileSet in(X.begin(), X.end());
    for (const TileIndex& t : X) {
        TileIndex nb[4] = {{t.tx + 1, t.ty}, {t.tx - 1, t.ty}, {t.tx, t.ty + 1},
                           {t.tx, t.ty - 1}};
        for (const TileIndex& u : nb)
            if (!in.count(u)) {
                ++rep.perimeter_tiles;
                break;
            }
    }

    rep.deviation = rep.exact_one ? 0.0 : std::abs(std::log(rat_double(rep.ratio)));
    double zk = p.z_d() * p.k, zk2 = p.z_d() * p.k * p.k;
    double scale = zk2 * zk * rep.perimeter_tiles;
    rep.measured_C1 = scale > 0 ? rep.deviation / scale : 0.0;
    rep.cert.name = "ratio-boundary";
    rep.cert.value = rep.deviation;
    rep.cert.target = scale; // reference constant 1
    rep.cert.data = {{"perimeter", double(rep.perimeter_tiles)},
                     {"measured_C1", rep.measured_C1},
                     {"square", rep.square ? 1.0 : 0.0}};
    return rep;
}

PolymerReport polymer_bound(int n_tiles, double z, double k, double Cprime) {
    if (n_tiles < 1) throw ConfigError("polymer bound needs at least one tile");
    PolymerReport rep;
    double zk = z * k, zk2 = z * k * k;
    if (z <= 0) {
        // no rods: the conditioned sums are single-term and every activity is 0
        rep.eps1 = 1.0;
        rep.eps = 1.0;
        rep.geometric = true;
        for (int n = 1; n <= n_tiles; ++n) {
            BoundCertificate cert;
            cert.name = "polymer-" + std::to_string(n);
            cert.value = 0.0;
            cert.target = 1.0;
            rep.per_size.push_back(cert);
        }
        return rep;
    }

    double t = std::pow(zk, 1.0 / 8.0);
    double S = t < 1 ? 1.0 / ((1 - t) * (1 - t)) - 1.0
                     : std::numeric_limits<double>::infinity();
    rep.A = 6 * std::exp(-kC0 * zk2 / 2);
    rep.D = std::pow(zk, 1.0 / 16.0) *
            (1 + std::exp(-kC0 * zk2 / 2 + Cprime * zk2 * std::pow(zk, kAlpha) * S));
    rep.eps1 = std::exp(-kC0 * zk2 / 6);
    rep.eps2 = std::pow(zk, 1.0 / 32.0);
    rep.eps = std::max(rep.eps1, rep.eps2);

    double unit = rep.A + rep.A * rep.D + rep.D;
    std::vector<double> bounds(size_t(n_tiles) + 1, 0.0);
    for (int n = 1; n <= n_tiles; ++n) {
        bounds[n] = std::pow(unit, n) - std::pow(rep.D, n);
        if (std::isnan(bounds[n])) // divergent chain (t >= 1 or overflow): honest failure
            bounds[n] = std::numeric_limits<double>::infinity();
        BoundCertificate cert;
        cert.name = "polymer-" + std::to_string(n);
        cert.value = bounds[n];
        cert.target = rep.eps1 * std::pow(rep.eps, n - 1);
        cert.data = {{"A", rep.A}, {"D", rep.D}, {"t", t}, {"chain_sum", S}};
        rep.per_size.push_back(cert);
    }
    rep.geometric = true;
    for (int n = 1; n < n_tiles; ++n)
        if (!(bounds[n + 1] <= rep.eps * bounds[n])) rep.geometric = false;
    return rep;
}

PolymerReport polymer_bound(const std::vector<TileIndex>& X, const ModelParams& p,
                            double Cprime) {
    return polymer_bound(int(X.size()), p.z_d(), double(p.k), Cprime);
}

InteractionReport interaction_W(const std::vector<Contour>& contours, Orientation q,
                                const ModelParams& p, int m_max) {
    if (m_max < 1) throw ConfigError("interaction needs m_max >= 1");
    p.require_paving();
    int T = p.tiles_per_side();

    InteractionReport rep;
    rep.m_max = m_max;
    rep.W = 0;

    std::vector<std::pair<int, TileIndex>> deltas; // (contour, exterior peel tile)
    std::vector<TileIndex> base;
    for (size_t ci = 0; ci < contours.size(); ++ci) {
        for (const TileIndex& d : contours[ci].ext_peel) deltas.push_back({int(ci), d});
        base.insert(base.end(), contours[ci].support.begin(), contours[ci].support.end());
        base.insert(base.end(), contours[ci].ext_peel.begin(), contours[ci].ext_peel.end());
    }
    if (deltas.empty()) return rep;

    std::vector<Rod> uni = cluster_universe(base, m_max, q, p);
    TileSet a_tiles;
    for (const auto& [ci, d] : deltas)
        for (const TileIndex& t : a_set(contours[ci], d, q, T)) a_tiles.insert(t);
    ConnectedSets cs =
        enumerate_connected_multisets(uni, p.k, m_max, seed_ids(uni, a_tiles, p.ell));

    std::map<std::vector<TileIndex>, Rat> fy;
    for (int m = 1; m <= m_max; ++m) {
        Rat zm = rat_pow(p.z, (unsigned long)m);
        for (const auto& ids : cs.by_size[m]) {
            std::vector<Rod> R;
            R.reserve(ids.size());
            for (int id : ids) R.push_back(uni[id]);
            std::map<int, std::vector<TileIndex>> lines; // row (q=H) / column (q=V) -> hits
            for (const auto& [ci, d] : deltas)
                if (F_delta(d, R, contours[ci], q, p, T))
                    lines[q == Orientation::H ? d.ty : d.tx].push_back(d);
            if (lines.empty()) continue;
            Rat w; // weight of R, computed lazily: most multisets miss every tile
            bool have_w = false;
            for (auto& [line, hits] : lines) {
                (void)line;
                if (!have_w) {
                    w = mayer_coefficient(R, p.k) * zm;
                    have_w = true;
                }
                rep.W += w * (1 - int(hits.size()));
                if (hits.size() < 2) continue;
                std::sort(hits.begin(), hits.end());
                int hn = int(hits.size());
                for (int mask = 1; mask < (1 << hn); ++mask) {
                    int bits = __builtin_popcount(unsigned(mask));
                    if (bits < 2) continue;
                    std::vector<TileIndex> Y;
                    for (int b = 0; b < hn; ++b)
                        if (mask & (1 << b)) Y.push_back(hits[b]);
                    fy[Y] += (bits % 2 == 0 ? w : -w);
                }
            }
        }
    }

    double zk = p.z_d() * p.k, zk2 = p.z_d() * p.k * p.k;
    for (auto& [Y, v] : fy) {
        rep.collections.push_back({Y, v});
        long d2 = 0;
        for (size_t a = 0; a < Y.size(); ++a)
            for (size_t b = a + 1; b < Y.size(); ++b) d2 = std::max(d2, dist2_tiles(Y[a], Y[b]));
        double diam = std::sqrt(double(d2));
        double denom = zk2 * std::pow(zk, kAlpha * diam);
        if (denom > 0)
            rep.measured_Cprime =
                std::max(rep.measured_Cprime, std::abs(rat_double(v)) / denom);
    }
    return rep;
}

} // namespace hardrods
