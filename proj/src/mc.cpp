#include "hardrods/mc.hpp"

#include <cassert>
#include <cmath>

#include "hardrods/errors.hpp"

namespace hardrods {

void McConfig::validate() const {
    if (params.k < 2) throw ConfigError("rod length k must be >= 2");
    if (box_w() < 1 || box_h() < 1) throw ConfigError("mc box is empty");
    if (sweeps < 0 || burn_in < 0) throw ConfigError("negative sweep count");
    if (thinning < 1) throw ConfigError("thinning must be >= 1");
    if (replicas < 1) throw ConfigError("replicas must be >= 1");
    if (w_insert < 0 || w_delete < 0 || w_translate < 0 ||
        w_insert + w_delete + w_translate <= 0)
        throw ConfigError("move weights must be nonnegative with positive sum");
    if (w_insert != w_delete)
        throw ConfigError("insert and delete weights must be equal");
    if (rat_double(params.z) < 0) throw ConfigError("activity must be nonnegative");
    if (params.bc != Boundary::Open) {
        if ((width != 0 && width != params.L) || (height != 0 && height != params.L))
            throw ConfigError("boundary conditions need the square params box");
        params.require_paving();
    }
}

double order_parameter(const McSample& s) {
    int n = s.n_h + s.n_v;
    if (n == 0) return 0.0;
    return double(s.n_h - s.n_v) / double(n);
}

RodSampler::RodSampler(const McConfig& cfg, int replica) {
    cfg.validate();
    w_ = cfg.box_w();
    h_ = cfg.box_h();
    k_ = cfg.params.k;
    a_ = rod_back(k_);
    b_ = rod_front(k_);
    ell_ = cfg.params.ell;
    bc_ = cfg.params.bc;
    z_ = cfg.params.z_d();
    double ws = cfg.w_insert + cfg.w_delete + cfg.w_translate;
    thr_insert_ = cfg.w_insert / ws;
    thr_delete_ = (cfg.w_insert + cfg.w_delete) / ws;
    occ_.assign(size_t(w_) * h_, -1);
    if (bc_ != Boundary::Open) {
        int T = cfg.params.tiles_per_side();
        band_blocked_.assign(size_t(w_) * h_, 0);
        for (int y = 0; y < h_; ++y)
            for (int x = 0; x < w_; ++x) {
                TileIndex t{x / ell_, y / ell_};
                if (dist_to_grid_complement(t, T) <= kBoundaryBand)
                    band_blocked_[size_t(y) * w_ + x] = 1;
            }
    }
    uint64_t s = cfg.seed;
    for (int r = 0; r <= replica; ++r) stream_seed_ = splitmix64_next(s);
    rng_.seed(stream_seed_);
}

uint64_t RodSampler::uniform_below(uint64_t n) {
    unsigned __int128 m = (unsigned __int128)next_u64() * n;
    uint64_t lo = (uint64_t)m;
    if (lo < n) {
        uint64_t t = (0 - n) % n;
        while (lo < t) {
            m = (unsigned __int128)next_u64() * n;
            lo = (uint64_t)m;
        }
    }
    return (uint64_t)(m >> 64);
}

double RodSampler::uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

bool RodSampler::contained(const Rod& r) const {
    if (r.o == Orientation::H)
        return r.c.x - a_ >= 0 && r.c.x + b_ < w_ && r.c.y >= 0 && r.c.y < h_;
    return r.c.y - a_ >= 0 && r.c.y + b_ < h_ && r.c.x >= 0 && r.c.x < w_;
}

bool RodSampler::band_ok(const Rod& r) const {
    if (bc_ == Boundary::Open || r.o == boundary_orientation(bc_)) return true;
    return !band_blocked_[size_t(r.c.y) * w_ + r.c.x];
}

bool RodSampler::placeable(const Rod& r) const {
    if (!contained(r) || !band_ok(r)) return false;
    size_t base = size_t(r.c.y) * w_ + r.c.x;
    if (r.o == Orientation::H) {
        for (int d = -a_; d <= b_; ++d)
            if (occ_[base + d] >= 0) return false;
    } else {
        for (int d = -a_; d <= b_; ++d)
            if (occ_[base + size_t(d) * w_] >= 0) return false;
    }
    return true;
}

void RodSampler::put(const Rod& r) {
    int idx = int(rods_.size());
    rods_.push_back(r);
    for (const Site& s : sites_of_rod(r, k_)) occ_[size_t(s.y) * w_ + s.x] = idx;
    (r.o == Orientation::H ? n_h_ : n_v_)++;
}

void RodSampler::remove_at(int idx) {
    const Rod r = rods_[idx];
    for (const Site& s : sites_of_rod(r, k_)) occ_[size_t(s.y) * w_ + s.x] = -1;
    (r.o == Orientation::H ? n_h_ : n_v_)--;
    int last = int(rods_.size()) - 1;
    if (idx != last) {
        rods_[idx] = rods_[last];
        for (const Site& s : sites_of_rod(rods_[idx], k_))
            occ_[size_t(s.y) * w_ + s.x] = idx;
    }
    rods_.pop_back();
}

void RodSampler::try_insert() {
    ++proposed_insert;
    uint64_t slots = 2 * uint64_t(w_) * h_;
    uint64_t slot = uniform_below(slots);
    int site = int(slot >> 1);
    Rod r{slot & 1 ? Orientation::V : Orientation::H, {site % w_, site / w_}};
    if (!placeable(r)) return;
    double p = z_ * double(slots) / double(rods_.size() + 1);
    if (p < 1.0 && uniform01() >= p) return;
    put(r);
    ++accepted_insert;
}

void RodSampler::try_delete() {
    ++proposed_delete;
    size_t n = rods_.size();
    if (n == 0) return;
    int idx = int(uniform_below(n));
    double zs = z_ * 2.0 * double(w_) * double(h_);
    if (zs > 0) {
        double p = double(n) / zs;
        if (p < 1.0 && uniform01() >= p) return;
    }
    remove_at(idx);
    ++accepted_delete;
}

void RodSampler::try_translate() {
    ++proposed_translate;
    size_t n = rods_.size();
    if (n == 0) return;
    int idx = int(uniform_below(n));
    int dir = next_u64() & 1 ? 1 : -1;
    Rod moved = rods_[idx];
    Site vacated = moved.c, entered = moved.c;
    if (moved.o == Orientation::H) {
        vacated.x += dir > 0 ? -a_ : b_;
        entered.x += dir > 0 ? b_ + 1 : -(a_ + 1);
        moved.c.x += dir;
    } else {
        vacated.y += dir > 0 ? -a_ : b_;
        entered.y += dir > 0 ? b_ + 1 : -(a_ + 1);
        moved.c.y += dir;
    }
    if (!contained(moved) || !band_ok(moved)) return;
    if (occ_[size_t(entered.y) * w_ + entered.x] >= 0) return;
    occ_[size_t(vacated.y) * w_ + vacated.x] = -1;
    occ_[size_t(entered.y) * w_ + entered.x] = idx;
    rods_[idx] = moved;
    ++accepted_translate;
}

void RodSampler::attempt() {
    double u = uniform01();
    if (u < thr_insert_)
        try_insert();
    else if (u < thr_delete_)
        try_delete();
    else
        try_translate();
}

void RodSampler::sweep() {
    long n = long(w_) * h_;
    for (long i = 0; i < n; ++i) attempt();
    assert(valid());
}

bool RodSampler::valid() const {
    std::vector<int> occ(size_t(w_) * h_, -1);
    int nh = 0, nv = 0;
    for (size_t i = 0; i < rods_.size(); ++i) {
        const Rod& r = rods_[i];
        if (!contained(r) || !band_ok(r)) return false;
        for (const Site& s : sites_of_rod(r, k_)) {
            size_t j = size_t(s.y) * w_ + s.x;
            if (occ[j] >= 0) return false; // hard-core violation
            occ[j] = int(i);
        }
        (r.o == Orientation::H ? nh : nv)++;
    }
    if (nh != n_h_ || nv != n_v_) return false;
    return occ == occ_;
}

McSample RodSampler::sample(bool keep_rods) const {
    McSample s;
    s.n_h = n_h_;
    s.n_v = n_v_;
    if (keep_rods) s.rods = rods_;
    return s;
}

McResult mc_run(const McConfig& cfg) {
    cfg.validate();
    McResult res;
    res.cfg = cfg;
    std::vector<AutocorrReport> rep_n, rep_nh, rep_nv, rep_order;
    long long pi = 0, ai = 0, pd = 0, ad = 0, pt = 0, at = 0;
    res.replica_offset.push_back(0);
    for (int r = 0; r < cfg.replicas; ++r) {
        RodSampler chain(cfg, r);
        res.stats.replica_seeds.push_back(chain.stream_seed());
        for (long s = 0; s < cfg.burn_in; ++s) chain.sweep();
        std::vector<double> sn, snh, snv, sorder;
        for (long s = 0; s < cfg.sweeps; ++s) {
            chain.sweep();
            if ((s + 1) % cfg.thinning != 0) continue;
            McSample smp = chain.sample(cfg.keep_rods);
            sn.push_back(smp.n());
            snh.push_back(smp.n_h);
            snv.push_back(smp.n_v);
            sorder.push_back(order_parameter(smp));
            res.samples.push_back(std::move(smp));
        }
        res.replica_offset.push_back(res.samples.size());
        rep_n.push_back(autocorrelation(sn));
        rep_nh.push_back(autocorrelation(snh));
        rep_nv.push_back(autocorrelation(snv));
        rep_order.push_back(autocorrelation(sorder));
        pi += chain.proposed_insert, ai += chain.accepted_insert;
        pd += chain.proposed_delete, ad += chain.accepted_delete;
        pt += chain.proposed_translate, at += chain.accepted_translate;
    }
    res.stats.n_rods = combine_replicas(rep_n);
    res.stats.n_h = combine_replicas(rep_nh);
    res.stats.n_v = combine_replicas(rep_nv);
    res.stats.order = combine_replicas(rep_order);
    res.stats.accept_insert = pi ? double(ai) / double(pi) : 0;
    res.stats.accept_delete = pd ? double(ad) / double(pd) : 0;
    res.stats.accept_translate = pt ? double(at) / double(pt) : 0;
    return res;
}

namespace {

void require_rods(const McResult& res) {
    if (!res.cfg.keep_rods)
        throw ConfigError("spatial estimators need keep_rods samples");
}

// Per-replica indicator means reduced with autocorrelation errors.
template <class Pred>
AutocorrReport indicator_estimate(const McResult& res, Pred&& pred) {
    std::vector<AutocorrReport> reps;
    for (int r = 0; r + 1 < int(res.replica_offset.size()); ++r) {
        auto [lo, hi] = res.replica_range(r);
        std::vector<double> series;
        series.reserve(hi - lo);
        for (std::size_t i = lo; i < hi; ++i)
            series.push_back(pred(res.samples[i]) ? 1.0 : 0.0);
        reps.push_back(autocorrelation(series));
    }
    return combine_replicas(reps);
}

} // namespace

ChiEstimate estimate_chi(const McResult& res, const TileIndex& xi0, Orientation q) {
    require_rods(res);
    int ell = res.cfg.params.ell;
    int x0 = xi0.tx * ell, y0 = xi0.ty * ell;
    auto center_in = [&](const Rod& r) {
        return r.c.x >= x0 && r.c.x < x0 + ell && r.c.y >= y0 && r.c.y < y0 + ell;
    };
    Orientation wrong = other(q);
    AutocorrReport hit = indicator_estimate(res, [&](const McSample& s) {
        for (const Rod& r : s.rods)
            if (r.o == wrong && center_in(r)) return true;
        return false;
    });
    AutocorrReport empty = indicator_estimate(res, [&](const McSample& s) {
        for (const Rod& r : s.rods)
            if (center_in(r)) return false;
        return true;
    });
    ChiEstimate e;
    e.value = hit.mean;
    e.error = hit.stderr_mean;
    e.empty_fraction = empty.mean;
    e.n = hit.n;
    return e;
}

AutocorrReport estimate_density(const McResult& res, const Site& x) {
    require_rods(res);
    return indicator_estimate(res, [&](const McSample& s) {
        for (const Rod& r : s.rods)
            if (r.c == x) return true;
        return false;
    });
}

PairEstimate estimate_pair(const McResult& res, const Site& x, const Site& y) {
    require_rods(res);
    auto at = [](const McSample& s, const Site& p) {
        for (const Rod& r : s.rods)
            if (r.c == p) return true;
        return false;
    };
    AutocorrReport both =
        indicator_estimate(res, [&](const McSample& s) { return at(s, x) && at(s, y); });
    PairEstimate e;
    e.mean = both.mean;
    e.error = both.stderr_mean;
    e.connected = both.mean - estimate_density(res, x).mean * estimate_density(res, y).mean;
    return e;
}

DecayFit pair_decay(const McResult& res, const Site& x0, Orientation axis, int rmax) {
    DecayFit fit;
    for (int r = 1; r <= rmax; ++r) {
        Site y = x0;
        (axis == Orientation::H ? y.x : y.y) += r;
        fit.r.push_back(r);
        fit.corr.push_back(estimate_pair(res, x0, y).connected);
    }
    // least squares on ln(corr) over the positive entries
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < fit.corr.size(); ++i) {
        if (fit.corr[i] <= 0) continue;
        double lx = fit.r[i], ly = std::log(fit.corr[i]);
        sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
        ++m;
    }
    if (m >= 2) {
        double denom = double(m) * sxx - sx * sx;
        if (denom > 0) {
            double slope = (double(m) * sxy - sx * sy) / denom;
            if (slope < 0) {
                fit.xi_fit = -1.0 / slope;
                fit.ok = true;
            }
        }
    }
    return fit;
}

} // namespace hardrods
