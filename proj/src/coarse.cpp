#include "hardrods/coarse.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <stdexcept>

#include "hardrods/errors.hpp"

namespace hardrods {

namespace {

std::vector<TileIndex> sorted_unique(std::vector<TileIndex> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace

SpinConfig spins_from_config(const std::vector<Rod>& rods, const ModelParams& p,
                             LabelPolicy policy) {
    const int T = p.tiles_per_side();
    SpinConfig sigma(T, 0);
    for (const Rod& r : rods) {
        if (r.c.x < 0 || r.c.x >= p.L || r.c.y < 0 || r.c.y >= p.L)
            throw ConfigError("rod reference site outside the box");
        TileIndex t = tile_of(r.c, p.ell);
        int8_t sp = int8_t(spin_of(r.o));
        int8_t& cur = sigma.at(t);
        if (cur != 0 && cur != sp)
            throw MixedTile("tile holds rods of both orientations");
        cur = sp;
    }
    if (policy == LabelPolicy::MatchNeighbor) {
        std::deque<TileIndex> frontier;
        for (int ty = 0; ty < T; ++ty)
            for (int tx = 0; tx < T; ++tx)
                if (sigma.at({tx, ty}) != 0) frontier.push_back({tx, ty});
        if (frontier.empty()) {
            std::fill(sigma.s.begin(), sigma.s.end(), int8_t(1));
            return sigma;
        }
        // Layered flood so ties at equal distance resolve toward +1.
        while (!frontier.empty()) {
            std::vector<TileIndex> reached;
            for (const TileIndex& t : frontier) {
                const int8_t sp = sigma.at(t);
                const TileIndex nb[4] = {{t.tx + 1, t.ty}, {t.tx - 1, t.ty},
                                         {t.tx, t.ty + 1}, {t.tx, t.ty - 1}};
                for (const TileIndex& n : nb) {
                    if (!sigma.in_grid(n)) continue;
                    int8_t& cur = sigma.at(n);
                    if (cur == 0) {
                        cur = sp;
                        reached.push_back(n);
                    } else if (cur == -1 && sp == 1 &&
                               std::find(reached.begin(), reached.end(), n) != reached.end()) {
                        cur = 1;
                    }
                }
            }
            frontier.assign(reached.begin(), reached.end());
        }
    }
    return sigma;
}

std::vector<TileIndex> sampling_square_tiles(const TileIndex& corner, int T) {
    std::vector<TileIndex> out;
    for (int dy = 0; dy <= 1; ++dy)
        for (int dx = 0; dx <= 1; ++dx) {
            TileIndex t{corner.tx + dx, corner.ty + dy};
            if (t.tx >= 0 && t.tx < T && t.ty >= 0 && t.ty < T) out.push_back(t);
        }
    return out;
}

int classify_sampling_square(const SpinConfig& sigma, const TileIndex& corner) {
    int label = 0;
    bool first = true;
    for (const TileIndex& t : sampling_square_tiles(corner, sigma.T)) {
        int v = sigma.at(t);
        if (v == 0) return 0;
        if (first) {
            label = v;
            first = false;
        } else if (v != label) {
            return 0;
        }
    }
    return first ? 0 : label;
}

std::vector<TileIndex> bad_sampling_corners(const SpinConfig& sigma) {
    std::vector<TileIndex> out;
    for (int cy = -1; cy < sigma.T; ++cy)
        for (int cx = -1; cx < sigma.T; ++cx)
            if (classify_sampling_square(sigma, {cx, cy}) == 0) out.push_back({cx, cy});
    return out;
}

std::vector<TileIndex> bad_region_tiles(const SpinConfig& sigma) {
    std::vector<TileIndex> out;
    for (const TileIndex& c : bad_sampling_corners(sigma))
        for (const TileIndex& t : sampling_square_tiles(c, sigma.T)) out.push_back(t);
    return sorted_unique(std::move(out));
}

std::vector<TileIndex> smoothing_corners_of(const std::vector<TileIndex>& tiles) {
    std::vector<TileIndex> out;
    for (const TileIndex& t : tiles)
        out.push_back({4 * div_floor(t.tx, 4), 4 * div_floor(t.ty, 4)});
    return sorted_unique(std::move(out));
}

std::vector<TileIndex> smoothed_bad_tiles(const SpinConfig& sigma) {
    if (sigma.T % 4 != 0)
        throw DivisibilityError("grid side is not a multiple of the smoothing square side");
    std::vector<TileIndex> out;
    for (const TileIndex& c : smoothing_corners_of(bad_region_tiles(sigma)))
        for (int dy = 0; dy < 4; ++dy)
            for (int dx = 0; dx < 4; ++dx) out.push_back({c.tx + dx, c.ty + dy});
    return sorted_unique(std::move(out));
}

int8_t Contour::sigma_at(const TileIndex& t) const {
    auto it = std::lower_bound(support.begin(), support.end(), t);
    if (it == support.end() || !(*it == t))
        throw ConfigError("tile outside the contour support");
    return sigma[size_t(it - support.begin())];
}

bool Contour::in_support(const TileIndex& t) const {
    return std::binary_search(support.begin(), support.end(), t);
}

bool Contour::in_ext_peel(const TileIndex& t) const {
    return std::binary_search(ext_peel.begin(), ext_peel.end(), t);
}

int Contour::zeros() const {
    int n = 0;
    for (int8_t v : sigma)
        if (v == 0) ++n;
    return n;
}

std::vector<Contour> extract_contours(const SpinConfig& sigma, const std::vector<Rod>& rods,
                                      Orientation q, const ModelParams& p) {
    p.require_paving();
    const int T = p.tiles_per_side();
    if (sigma.T != T) throw ConfigError("spin grid does not match the box");

    // sigma must be the coarse image of the rods.
    {
        SpinConfig check = spins_from_config(rods, p, LabelPolicy::Zero);
        for (int ty = 0; ty < T; ++ty)
            for (int tx = 0; tx < T; ++tx) {
                int8_t have = sigma.at({tx, ty});
                int8_t want = check.at({tx, ty});
                if (want != 0 && have != want)
                    throw ConfigError("spin grid disagrees with the rod configuration");
                if (want == 0 && have != 0 && std::abs(have) != 1)
                    throw ConfigError("spin labels must lie in {-1,0,+1}");
            }
    }

    const int8_t qspin = int8_t(spin_of(q));
    for (int ty = 0; ty < T; ++ty)
        for (int tx = 0; tx < T; ++tx)
            if (dist_to_grid_complement({tx, ty}, T) <= kBoundaryBand &&
                sigma.at({tx, ty}) != qspin)
                throw NotInThetaQ("boundary band tile does not carry the boundary label");

    std::vector<Contour> out;
    std::vector<TileIndex> bbar = smoothed_bad_tiles(sigma);
    if (bbar.empty()) return out;

    TileSet bbar_set(bbar.begin(), bbar.end());
    for (const std::vector<TileIndex>& comp : d_connected_components(bbar)) {
        Contour c;
        c.support = comp; // already sorted
        TileSet supp(comp.begin(), comp.end());
        c.sigma.reserve(comp.size());
        for (const TileIndex& t : comp) c.sigma.push_back(sigma.at(t));
        for (const Rod& r : rods)
            if (supp.count(tile_of(r.c, p.ell))) c.rods.push_back(r);

        // Complement components relative to this contour alone.
        std::vector<TileIndex> rest;
        rest.reserve(size_t(T) * T - comp.size());
        for (int ty = 0; ty < T; ++ty)
            for (int tx = 0; tx < T; ++tx)
                if (!supp.count({tx, ty})) rest.push_back({tx, ty});

        std::vector<TileIndex> peel;
        for (const TileIndex& t : rest) {
            const TileIndex nb[4] = {{t.tx + 1, t.ty}, {t.tx - 1, t.ty},
                                     {t.tx, t.ty + 1}, {t.tx, t.ty - 1}};
            for (const TileIndex& n : nb)
                if (supp.count(n)) {
                    peel.push_back(t);
                    break;
                }
        }
        c.peel = sorted_unique(std::move(peel));

        int exterior_seen = 0;
        for (const std::vector<TileIndex>& cc : ortho_connected_components(rest)) {
            bool touches_border = false;
            for (const TileIndex& t : cc)
                if (t.tx == 0 || t.ty == 0 || t.tx == T - 1 || t.ty == T - 1) {
                    touches_border = true;
                    break;
                }
            TileSet in_cc(cc.begin(), cc.end());
            std::vector<TileIndex> cc_peel;
            for (const TileIndex& t : c.peel)
                if (in_cc.count(t)) cc_peel.push_back(t);
            int label = 0;
            bool uniform = !cc_peel.empty();
            for (const TileIndex& t : cc_peel) {
                int v = sigma.at(t);
                if (v == 0 || (label != 0 && v != label)) {
                    uniform = false;
                    break;
                }
                label = v;
            }
            if (touches_border) {
                ++exterior_seen;
                if (!uniform) throw NonUniformPeel("exterior peel is not uniformly labeled");
                c.m_ext = label;
                c.ext_peel = cc_peel;
            } else {
                if (!uniform) throw NonUniformPeel("hole peel is not uniformly labeled");
                ContourHole h;
                h.tiles = cc;
                h.peel = cc_peel;
                h.m_int = label;
                c.holes.push_back(h);
            }
        }
        if (exterior_seen != 1)
            throw ConfigError("contour complement has no unique exterior");

        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const Contour& a, const Contour& b) {
        return a.support.front() < b.support.front();
    });
    return out;
}

std::vector<TileIndex> a_set(const Contour& c, const TileIndex& delta, Orientation q, int T) {
    std::vector<TileIndex> out{delta};
    for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            TileIndex n{delta.tx + dx, delta.ty + dy};
            if (n.tx < 0 || n.tx >= T || n.ty < 0 || n.ty >= T) continue;
            if (q == Orientation::H && n.ty != delta.ty) continue;
            if (q == Orientation::V && n.tx != delta.tx) continue;
            if (dist1_tile_to_set(n, c.support) == 2) out.push_back(n);
        }
    return sorted_unique(std::move(out));
}

std::vector<TileIndex> c_set(const Contour& c, const TileIndex& delta) {
    std::vector<TileIndex> out;
    for (const TileIndex& t : c.support)
        if (dist2_tiles(t, delta) <= 4) out.push_back(t);
    return out; // support is sorted
}

namespace {

bool any_center_in(const std::vector<Rod>& rods, const std::vector<TileIndex>& tiles, int ell) {
    for (const Rod& r : rods)
        if (std::binary_search(tiles.begin(), tiles.end(), tile_of(r.c, ell))) return true;
    return false;
}

} // namespace

bool f_delta(const TileIndex& delta, const std::vector<Rod>& R, const Contour& c,
             Orientation q, const ModelParams& p, int T) {
    return any_center_in(R, a_set(c, delta, q, T), p.ell) &&
           any_center_in(R, c_set(c, delta), p.ell);
}

bool g_delta(const TileIndex& delta, const std::vector<Rod>& R, const Contour& c,
             Orientation q, const ModelParams& p, int T) {
    if (!any_center_in(R, a_set(c, delta, q, T), p.ell)) return false;
    std::vector<TileIndex> cs = c_set(c, delta);
    bool hit = false;
    for (const Rod& g : c.rods) {
        if (!std::binary_search(cs.begin(), cs.end(), tile_of(g.c, p.ell))) continue;
        for (const Rod& r : R)
            if (rods_overlap(r, g, p.k)) {
                hit = true;
                break;
            }
        if (hit) break;
    }
    return hit;
}

bool F_delta(const TileIndex& delta, const std::vector<Rod>& R, const Contour& c,
             Orientation q, const ModelParams& p, int T) {
    bool f = f_delta(delta, R, c, q, p, T);
    if (!c.in_ext_peel(delta)) return f;
    return f || g_delta(delta, R, c, q, p, T);
}

SpinConfig random_theta_fixture(const ModelParams& p, Orientation q, int n_islands,
                                uint64_t seed) {
    p.require_paving();
    const int T = p.tiles_per_side();
    const int8_t qspin = int8_t(spin_of(q));
    SpinConfig sigma(T, qspin);
    const int lo = kBoundaryBand + 1;     // first tile outside the band
    const int hi = T - kBoundaryBand - 1; // last tile outside the band
    if (hi - lo < 2) return sigma;        // no room for islands
    std::mt19937_64 rng(seed);
    auto pick = [&](int a, int b) { return int(rng() % uint64_t(b - a + 1)) + a; };
    std::vector<TileIndex> corners;
    for (int attempt = 0; attempt < 200 * n_islands && int(corners.size()) < n_islands;
         ++attempt) {
        TileIndex c{pick(lo, hi - 2), pick(lo, hi - 2)};
        bool far = true;
        for (const TileIndex& o : corners)
            if (std::max(std::abs(c.tx - o.tx), std::abs(c.ty - o.ty)) < 12) far = false;
        if (far) corners.push_back(c);
    }
    for (const TileIndex& c : corners) {
        int w = pick(1, 3), h = pick(1, 3);
        for (int dy = 0; dy < h; ++dy)
            for (int dx = 0; dx < w; ++dx) {
                TileIndex t{std::min(c.tx + dx, hi), std::min(c.ty + dy, hi)};
                sigma.at(t) = (rng() & 1) ? int8_t(-qspin) : int8_t(0);
            }
    }
    return sigma;
}

} // namespace hardrods
