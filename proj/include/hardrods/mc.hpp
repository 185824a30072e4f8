#pragma once
#include <cstdint>
#include <random>
#include <vector>

#include "hardrods/geometry.hpp"
#include "hardrods/stats.hpp"

namespace hardrods {

// Grand-canonical chain settings. The box is width x height sites (0 means
// params.L); a non-open boundary needs the square paved box so the band
// constraint is well defined.
struct McConfig {
    ModelParams params;
    int width = 0, height = 0;
    long sweeps = 1000;
    long burn_in = 100;
    long thinning = 1;
    uint64_t seed = 1;
    double w_insert = 1.0;
    double w_delete = 1.0; // must equal w_insert (insert/delete pairing)
    double w_translate = 1.0;
    int replicas = 1;
    bool keep_rods = true; // retain rod lists per sample (spatial estimators)

    int box_w() const { return width > 0 ? width : params.L; }
    int box_h() const { return height > 0 ? height : params.L; }
    void validate() const;
};

struct McSample {
    int n_h = 0, n_v = 0;
    std::vector<Rod> rods;
    int n() const { return n_h + n_v; }
};

// (N_H - N_V) / (N_H + N_V); an empty configuration counts as 0.
double order_parameter(const McSample& s);

inline uint64_t splitmix64_next(uint64_t& s) {
    uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Single-replica Metropolis chain over hard-rod configurations, stationary
// for z^n on the constraint set (hard core, containment, boundary band).
class RodSampler {
  public:
    RodSampler(const McConfig& cfg, int replica = 0);

    void attempt(); // one proposed move
    void sweep();   // box_w*box_h attempts; asserts chain validity in debug
    bool valid() const;

    const std::vector<Rod>& rods() const { return rods_; }
    McSample sample(bool keep_rods) const;
    int n_h() const { return n_h_; }
    int n_v() const { return n_v_; }
    uint64_t stream_seed() const { return stream_seed_; }

    long long proposed_insert = 0, accepted_insert = 0;
    long long proposed_delete = 0, accepted_delete = 0;
    long long proposed_translate = 0, accepted_translate = 0;

  private:
    int w_, h_, k_, a_, b_, ell_;
    Boundary bc_;
    double z_;
    double thr_insert_, thr_delete_; // cumulative move-type thresholds
    std::vector<int> occ_;           // site -> rod index, -1 empty
    std::vector<char> band_blocked_; // site blocked for the off-boundary orientation
    std::vector<Rod> rods_;
    int n_h_ = 0, n_v_ = 0;
    uint64_t stream_seed_;
    std::mt19937_64 rng_;

    uint64_t next_u64() { return rng_(); }
    uint64_t uniform_below(uint64_t n);
    double uniform01();
    bool placeable(const Rod& r) const;
    bool contained(const Rod& r) const;
    bool band_ok(const Rod& r) const;
    void put(const Rod& r);
    void remove_at(int idx);
    void try_insert();
    void try_delete();
    void try_translate();
};

struct SampleStats {
    AutocorrReport n_rods, n_h, n_v, order;
    double accept_insert = 0, accept_delete = 0, accept_translate = 0;
    std::vector<uint64_t> replica_seeds;
};

struct McResult {
    McConfig cfg;
    std::vector<McSample> samples;           // replicas concatenated
    std::vector<std::size_t> replica_offset; // start index per replica, plus end
    SampleStats stats;

    // [begin, end) sample range of one replica
    std::pair<std::size_t, std::size_t> replica_range(int r) const {
        return {replica_offset[r], replica_offset[r + 1]};
    }
};

McResult mc_run(const McConfig& cfg);

// Strict-disorder witness: fraction of samples with at least one rod of
// orientation opposite to q centered in tile xi0. Empty means no rod center
// in the tile; that fraction is reported separately.
struct ChiEstimate {
    double value = 0, error = 0;
    double empty_fraction = 0;
    std::size_t n = 0;
};
ChiEstimate estimate_chi(const McResult& res, const TileIndex& xi0, Orientation q);

// Mean of the center indicator n_x.
AutocorrReport estimate_density(const McResult& res, const Site& x);

// Mean of n_x n_y with the connected part subtracted off the marginal means.
struct PairEstimate {
    double mean = 0, error = 0;
    double connected = 0;
};
PairEstimate estimate_pair(const McResult& res, const Site& x, const Site& y);

// Connected correlations along an axis from x0 and an exponential fit
// ln|corr| ~ const - r/xi over the positive entries.
struct DecayFit {
    std::vector<int> r;
    std::vector<double> corr;
    double xi_fit = 0;
    bool ok = false;
};
DecayFit pair_decay(const McResult& res, const Site& x0, Orientation axis, int rmax);

} // namespace hardrods
