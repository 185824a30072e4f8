#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardrods/acceptance.hpp"
#include "hardrods/contour_stats.hpp"
#include "hardrods/exact.hpp"
#include "hardrods/mayer.hpp"
#include "hardrods/mc.hpp"
#include "hardrods/poly.hpp"
#include "hardrods/snapshot.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using namespace hardrods;

namespace {

constexpr const char* kVersion = "1.0.0";

// every flag a run can see, serialized into every output
struct RunConfig {
    std::string command;
    int k = 2;
    std::string z = "1/10";
    int L = 0;
    std::string bc = "open";
    long sweeps = 10000;
    long burn_in = 1000;
    long thinning = 1;
    uint64_t seed = 1;
    int replicas = 1;
    long long budget = 1'000'000'000;
    int mmax = 4;
    std::string out = "out";
    std::string region; // WxH
    std::string square; // NxM-tiles
    std::string input;  // snapshot path
    std::string policy = "zero";
    long snapshots = 0; // write every Nth retained sample
};

ordered_json config_json(const RunConfig& rc) {
    ordered_json j;
    j["version"] = kVersion;
    j["command"] = rc.command;
    j["k"] = rc.k;
    j["z"] = rc.z;
    j["L"] = rc.L;
    j["bc"] = rc.bc;
    j["sweeps"] = rc.sweeps;
    j["burn_in"] = rc.burn_in;
    j["thinning"] = rc.thinning;
    j["seed"] = rc.seed;
    j["replicas"] = rc.replicas;
    j["budget"] = rc.budget;
    j["mmax"] = rc.mmax;
    j["out"] = rc.out;
    if (!rc.region.empty()) j["region"] = rc.region;
    if (!rc.square.empty()) j["square"] = rc.square;
    if (!rc.input.empty()) j["in"] = rc.input;
    if (rc.command == "contours") j["policy"] = rc.policy;
    if (rc.snapshots > 0) j["snapshots"] = rc.snapshots;
    return j;
}

std::string csv_header(const RunConfig& rc) {
    std::ostringstream os;
    os << "# hardrods " << kVersion << "\n# ";
    ordered_json j = config_json(rc);
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == "version") continue;
        if (!first) os << " ";
        first = false;
        if (it->is_string())
            os << it.key() << "=" << it->get<std::string>();
        else
            os << it.key() << "=" << it->dump();
    }
    os << "\n";
    return os.str();
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path.string());
    f << content;
}

void write_json(const fs::path& path, const ordered_json& j) {
    write_file(path, j.dump(2) + "\n");
}

std::string num(double v, int prec = 12) {
    std::ostringstream os;
    os.precision(prec);
    os << v;
    return os.str();
}

std::pair<int, int> parse_dims(const std::string& text, const char* what) {
    std::string t = text;
    if (auto pos = t.find("-tiles"); pos != std::string::npos) t = t.substr(0, pos);
    auto x = t.find('x');
    if (x == std::string::npos) throw ConfigError(std::string(what) + " wants WxH, got " + text);
    int w, h;
    try {
        w = std::stoi(t.substr(0, x));
        h = std::stoi(t.substr(x + 1));
    } catch (const std::exception&) {
        throw ConfigError(std::string(what) + " wants WxH, got " + text);
    }
    if (w < 1 || h < 1) throw ConfigError(std::string(what) + " must be positive, got " + text);
    return {w, h};
}

std::vector<TileIndex> tile_rect(int w, int h) {
    std::vector<TileIndex> tiles;
    for (int ty = 0; ty < h; ++ty)
        for (int tx = 0; tx < w; ++tx) tiles.push_back({tx, ty});
    return tiles;
}

// static polyline plot; callers wrap it in try/catch so a plotting problem
// never fails the run
std::string line_plot_svg(const std::string& title,
                          const std::vector<std::pair<std::string, std::vector<double>>>& series,
                          const std::string& xlabel) {
    const int W = 640, H = 360, ml = 60, mr = 20, mt = 36, mb = 44;
    double ymin = 0, ymax = 1;
    size_t n = 0;
    bool any = false;
    for (const auto& [name, ys] : series)
        for (double v : ys) {
            if (!any) ymin = ymax = v, any = true;
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
            n = std::max(n, ys.size());
        }
    if (!any || n < 2) throw ConfigError("nothing to plot");
    if (ymax == ymin) ymax = ymin + 1;
    const char* colors[4] = {"#4878a8", "#d08848", "#58a068", "#b05868"};
    auto X = [&](double i) { return ml + i * (W - ml - mr) / double(n - 1); };
    auto Y = [&](double v) { return H - mb - (v - ymin) * (H - mt - mb) / (ymax - ymin); };
    std::ostringstream s;
    s << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    s << "<rect width='" << W << "' height='" << H << "' fill='white'/>\n";
    s << "<text x='" << W / 2 << "' y='20' text-anchor='middle' font-size='14'>" << title
      << "</text>\n";
    s << "<line x1='" << ml << "' y1='" << H - mb << "' x2='" << W - mr << "' y2='" << H - mb
      << "' stroke='black'/>\n";
    s << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << H - mb
      << "' stroke='black'/>\n";
    char buf[64];
    snprintf(buf, sizeof buf, "%.4g", ymin);
    s << "<text x='" << ml - 6 << "' y='" << H - mb << "' text-anchor='end' font-size='11'>"
      << buf << "</text>\n";
    snprintf(buf, sizeof buf, "%.4g", ymax);
    s << "<text x='" << ml - 6 << "' y='" << mt + 8 << "' text-anchor='end' font-size='11'>"
      << buf << "</text>\n";
    s << "<text x='" << (ml + W - mr) / 2 << "' y='" << H - 10
      << "' text-anchor='middle' font-size='12'>" << xlabel << "</text>\n";
    int ci = 0;
    int legend_y = mt + 6;
    for (const auto& [name, ys] : series) {
        const char* color = colors[ci++ % 4];
        s << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
        for (size_t i = 0; i < ys.size(); ++i) {
            snprintf(buf, sizeof buf, "%.2f,%.2f ", X(double(i)), Y(ys[i]));
            s << buf;
        }
        s << "'/>\n";
        s << "<text x='" << W - mr - 4 << "' y='" << legend_y
          << "' text-anchor='end' font-size='11' fill='" << color << "'>" << name
          << "</text>\n";
        legend_y += 14;
    }
    s << "</svg>\n";
    return s.str();
}

std::string tile_map_svg(const SpinConfig& sc, const std::vector<Contour>& cs) {
    int T = sc.T;
    int cell = std::max(4, 640 / std::max(T, 1));
    int W = T * cell;
    std::ostringstream s;
    s << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << W << "'>\n";
    for (int ty = 0; ty < T; ++ty)
        for (int tx = 0; tx < T; ++tx) {
            int v = sc.at({tx, ty});
            const char* fill = v > 0 ? "#7aa6d6" : v < 0 ? "#e0a368" : "#f2f2f2";
            s << "<rect x='" << tx * cell << "' y='" << (T - 1 - ty) * cell << "' width='"
              << cell << "' height='" << cell << "' fill='" << fill
              << "' stroke='#cccccc' stroke-width='0.5'/>\n";
        }
    for (const Contour& c : cs) {
        TileSet supp(c.support.begin(), c.support.end());
        for (const TileIndex& t : c.support) {
            int x0 = t.tx * cell, y0 = (T - 1 - t.ty) * cell;
            const TileIndex nb[4] = {{t.tx - 1, t.ty}, {t.tx + 1, t.ty},
                                     {t.tx, t.ty + 1}, {t.tx, t.ty - 1}};
            const int seg[4][4] = {{x0, y0, x0, y0 + cell},
                                   {x0 + cell, y0, x0 + cell, y0 + cell},
                                   {x0, y0, x0 + cell, y0},
                                   {x0, y0 + cell, x0 + cell, y0 + cell}};
            for (int e = 0; e < 4; ++e)
                if (!supp.count(nb[e]))
                    s << "<line x1='" << seg[e][0] << "' y1='" << seg[e][1] << "' x2='"
                      << seg[e][2] << "' y2='" << seg[e][3]
                      << "' stroke='black' stroke-width='2'/>\n";
        }
    }
    s << "</svg>\n";
    return s.str();
}

void try_plot(const fs::path& path, const std::function<std::string()>& make) {
    try {
        write_file(path, make());
    } catch (const std::exception& e) {
        std::cerr << "plot skipped (" << path.string() << "): " << e.what() << "\n";
    }
}

ordered_json cert_json(const BoundCertificate& cert) {
    ordered_json j;
    j["name"] = cert.name;
    j["value"] = num(cert.value);
    j["target"] = num(cert.target);
    j["margin"] = num(cert.margin());
    j["pass"] = cert.pass();
    for (const auto& [key, val] : cert.data) j[key] = num(val);
    return j;
}

int cmd_exact(const RunConfig& rc) {
    ModelParams p = ModelParams::make(rc.k, rat_parse(rc.z));
    std::string region = rc.region;
    if (region.empty()) {
        if (rc.L <= 0) throw ConfigError("exact needs --region WxH or --L");
        region = std::to_string(rc.L) + "x" + std::to_string(rc.L);
    }
    auto [w, h] = parse_dims(region, "--region");
    EnumBudget budget{rc.budget, 0};
    PolyZ zp = partition_exact(RegionSpec::box(w, h, boundary_parse(rc.bc)), p, &budget);
    ordered_json j;
    j["config"] = config_json(rc);
    std::string poly = "[";
    for (size_t i = 0; i < zp.c.size(); ++i) poly += (i ? ", " : "") + zp.c[i].get_str();
    poly += "]";
    j["polynomial"] = poly;
    j["coefficients"] = zp.coeff_strings();
    j["degree"] = zp.degree();
    j["value_at_z"] = zp.eval(p.z).get_str();
    j["budget_used"] = budget.used;
    write_json(fs::path(rc.out) / "exact.json", j);
    std::cout << "Z(" << w << "x" << h << ", k=" << rc.k << ") = " << poly << "\n";
    return 0;
}

int cmd_series(const RunConfig& rc) {
    if (rc.mmax < 1 || rc.mmax > kMayerCap)
        throw ConfigError("--mmax must be between 1 and " + std::to_string(kMayerCap));
    ModelParams p = ModelParams::make(rc.k, rat_parse(rc.z));
    auto [w, h] = parse_dims(rc.region.empty() ? "2x2" : rc.region, "--region");
    std::vector<TileIndex> tiles = tile_rect(w, h);
    EnumBudget budget{rc.budget, 0};
    std::ostringstream csv;
    csv << csv_header(rc) << "orientation,order,cluster_series,exact_log,equal\n";
    bool all_equal = true;
    for (Orientation q : {Orientation::H, Orientation::V}) {
        TruncatedSeries series = truncated_log_restricted(tiles, q, p, rc.mmax);
        auto spec = RegionSpec::tile_union(tiles, p.ell, RegionConstraint::OrientationOnly, q);
        std::vector<Rat> taylor = log_taylor(partition_exact(spec, p, &budget), rc.mmax);
        for (int m = 1; m <= rc.mmax; ++m) {
            bool eq = series[m] == taylor[m];
            all_equal = all_equal && eq;
            csv << orient_char(q) << "," << m << "," << series[m].get_str() << ","
                << taylor[m].get_str() << "," << (eq ? 1 : 0) << "\n";
        }
    }
    write_file(fs::path(rc.out) / "series.csv", csv.str());
    std::cout << (all_equal ? "series agrees with the exact log through order "
                            : "series regression DISAGREES at order <= ")
              << rc.mmax << " on " << w << "x" << h << " tiles\n";
    return all_equal ? 0 : 1;
}

int cmd_contours(const RunConfig& rc) {
    if (rc.input.empty()) throw ConfigError("contours needs --in <snapshot>");
    std::ifstream f(rc.input, std::ios::binary);
    if (!f) throw ConfigError("cannot read " + rc.input);
    std::stringstream buf;
    buf << f.rdbuf();
    Snapshot snap = decode_snapshot(buf.str());
    if (snap.w != snap.h) throw ConfigError("contours need a square snapshot box");
    Boundary bc = snap.bc != Boundary::Open ? snap.bc : boundary_parse(rc.bc);
    if (bc == Boundary::Open)
        throw ConfigError("contours need plus or minus boundary (snapshot or --bc)");
    ModelParams p = ModelParams::make(snap.k, snap.z, snap.w, bc);
    p.require_paving();
    LabelPolicy policy;
    if (rc.policy == "zero") policy = LabelPolicy::Zero;
    else if (rc.policy == "match-neighbor") policy = LabelPolicy::MatchNeighbor;
    else throw ConfigError("--policy must be zero or match-neighbor");
    SpinConfig sc = spins_from_config(snap.rods, p, policy);
    Orientation q = boundary_orientation(bc);
    std::vector<Contour> cs = extract_contours(sc, snap.rods, q, p);

    ordered_json j;
    j["config"] = config_json(rc);
    j["tiles_per_side"] = sc.T;
    j["contour_count"] = cs.size();
    ordered_json arr = ordered_json::array();
    for (const Contour& c : cs) {
        ordered_json cj;
        cj["support_tiles"] = c.support.size();
        cj["zeros"] = c.zeros();
        cj["m_ext"] = c.m_ext;
        ordered_json supp = ordered_json::array();
        for (size_t i = 0; i < c.support.size(); ++i)
            supp.push_back({c.support[i].tx, c.support[i].ty, int(c.sigma[i])});
        cj["support"] = supp; // tx, ty, sigma triples
        ordered_json rods = ordered_json::array();
        for (const Rod& r : c.rods)
            rods.push_back({std::string(1, orient_char(r.o)), r.c.x, r.c.y});
        cj["rods"] = rods;
        cj["ext_peel_tiles"] = c.ext_peel.size();
        ordered_json holes = ordered_json::array();
        for (const ContourHole& hole : c.holes)
            holes.push_back({{"tiles", hole.tiles.size()}, {"m_int", hole.m_int}});
        cj["holes"] = holes;
        arr.push_back(cj);
    }
    j["contours"] = arr;
    write_json(fs::path(rc.out) / "contours.json", j);
    try_plot(fs::path(rc.out) / "tile_map.svg", [&] { return tile_map_svg(sc, cs); });
    std::cout << cs.size() << " contour(s) extracted from " << rc.input << "\n";
    return 0;
}

int cmd_peierls(const RunConfig& rc) {
    ModelParams base = ModelParams::make(rc.k, rat_parse(rc.z));
    std::ostringstream csv;
    csv << csv_header(rc)
        << "contour,support_tiles,zeros,dominoes,singles,kappa,value,target_2c0,margin,pass\n";
    std::vector<double> sizes, margins;
    auto ledger_row = [&](const std::string& name, const Contour& c, const ModelParams& p) {
        PeierlsReport r = peierls_ledger(c, boundary_orientation(Boundary::Plus), p);
        csv << name << "," << c.support.size() << "," << r.n_zero << "," << r.n_domino << ","
            << r.n_pm << "," << num(rat_double(r.kappa)) << "," << num(r.two_c0.value) << ","
            << num(r.two_c0.target) << "," << num(r.two_c0.margin()) << ","
            << (r.two_c0.pass() ? 1 : 0) << "\n";
        sizes.push_back(double(c.support.size()));
        margins.push_back(r.two_c0.margin());
    };
    if (!rc.input.empty()) {
        std::ifstream f(rc.input, std::ios::binary);
        if (!f) throw ConfigError("cannot read " + rc.input);
        std::stringstream buf;
        buf << f.rdbuf();
        Snapshot snap = decode_snapshot(buf.str());
        Boundary bc = snap.bc != Boundary::Open ? snap.bc : Boundary::Plus;
        ModelParams p = ModelParams::make(snap.k, snap.z, snap.w, bc);
        p.require_paving();
        SpinConfig sc = spins_from_config(snap.rods, p, LabelPolicy::Zero);
        std::vector<Contour> cs = extract_contours(sc, snap.rods, boundary_orientation(bc), p);
        for (size_t i = 0; i < cs.size(); ++i)
            ledger_row("snapshot-" + std::to_string(i), cs[i], p);
    } else {
        // minimal contours: 1..4 aligned smoothing squares, one defect each
        ModelParams p = ModelParams::make(rc.k, base.z, 24 * base.ell, Boundary::Open);
        int T = p.tiles_per_side();
        const TileIndex zeros[4] = {{9, 9}, {13, 9}, {9, 13}, {13, 13}};
        for (int n = 1; n <= 4; ++n) {
            SpinConfig sc(T, +1);
            for (int i = 0; i < n; ++i) sc.at(zeros[i]) = 0;
            auto cs = extract_contours(sc, {}, Orientation::H, p);
            if (cs.size() != 1) throw ConfigError("minimal contour scan split unexpectedly");
            ledger_row(std::to_string(n) + "-squares", cs[0], p);
        }
    }
    write_file(fs::path(rc.out) / "peierls.csv", csv.str());
    try_plot(fs::path(rc.out) / "margins.svg", [&] {
        return line_plot_svg("certificate margin vs support tiles", {{"margin", margins}},
                             "contours, increasing support");
    });
    bool all_pass = true;
    for (double m : margins) all_pass = all_pass && m > 0;
    std::cout << margins.size() << " contour certificate(s), "
              << (all_pass ? "all margins positive" : "some margins negative (reported)")
              << "\n";
    return 0;
}

int cmd_ratio(const RunConfig& rc) {
    std::string square = rc.square.empty() ? "8x8-tiles" : rc.square;
    auto [w, h] = parse_dims(square, "--square");
    ModelParams p = ModelParams::make(rc.k, rat_parse(rc.z));
    EnumBudget budget{rc.budget, 0};
    RatioReport r = ratio_check(tile_rect(w, h), p, &budget);
    ordered_json j;
    j["config"] = config_json(rc);
    j["ratio"] = r.ratio.get_str();
    j["square"] = r.square;
    j["exact_one"] = r.exact_one;
    j["perimeter_tiles"] = r.perimeter_tiles;
    j["deviation"] = num(r.deviation);
    j["measured_C1"] = num(r.measured_C1);
    j["certificate"] = cert_json(r.cert);
    write_json(fs::path(rc.out) / "ratio.json", j);
    std::cout << "Z(X|+)/Z(X|-) = " << r.ratio.get_str() << " on " << w << "x" << h
              << " tiles\n";
    return 0;
}

int cmd_mc(const RunConfig& rc) {
    McConfig cfg;
    cfg.params = ModelParams::make(rc.k, rat_parse(rc.z), rc.L, boundary_parse(rc.bc));
    cfg.sweeps = rc.sweeps;
    cfg.burn_in = rc.burn_in;
    cfg.thinning = rc.thinning;
    cfg.seed = rc.seed;
    cfg.replicas = rc.replicas;
    McResult res = mc_run(cfg);

    std::ostringstream trace;
    trace << csv_header(rc) << "replica,sample,n_h,n_v,order\n";
    for (int r = 0; r + 1 < int(res.replica_offset.size()); ++r) {
        auto [lo, hi] = res.replica_range(r);
        for (std::size_t i = lo; i < hi; ++i)
            trace << r << "," << i - lo << "," << res.samples[i].n_h << ","
                  << res.samples[i].n_v << "," << num(order_parameter(res.samples[i])) << "\n";
    }
    write_file(fs::path(rc.out) / "mc_trace.csv", trace.str());

    std::ostringstream sum;
    sum << csv_header(rc) << "observable,mean,stderr,tau_int,window,samples\n";
    auto row = [&](const char* name, const AutocorrReport& a) {
        sum << name << "," << num(a.mean) << "," << num(a.stderr_mean) << "," << num(a.tau_int)
            << "," << a.window << "," << a.n << "\n";
    };
    row("n_rods", res.stats.n_rods);
    row("n_h", res.stats.n_h);
    row("n_v", res.stats.n_v);
    row("order", res.stats.order);
    Site center{cfg.box_w() / 2, cfg.box_h() / 2};
    row("density_center", estimate_density(res, center));
    if (cfg.params.bc != Boundary::Open) {
        int tc = cfg.params.tiles_per_side() / 2;
        ChiEstimate chi = estimate_chi(res, {tc, tc}, boundary_orientation(cfg.params.bc));
        sum << "chi_center," << num(chi.value) << "," << num(chi.error) << ",,," << chi.n
            << "\n";
        sum << "empty_tile_center," << num(chi.empty_fraction) << ",,,," << chi.n << "\n";
    }
    sum << "accept_insert," << num(res.stats.accept_insert) << ",,,,\n";
    sum << "accept_delete," << num(res.stats.accept_delete) << ",,,,\n";
    sum << "accept_translate," << num(res.stats.accept_translate) << ",,,,\n";
    std::ostringstream seeds;
    for (size_t i = 0; i < res.stats.replica_seeds.size(); ++i)
        seeds << (i ? " " : "") << res.stats.replica_seeds[i];
    sum << "# replica_streams " << seeds.str() << "\n";
    write_file(fs::path(rc.out) / "mc_summary.csv", sum.str());

    if (rc.snapshots > 0) {
        long idx = 0, written = 0;
        for (const McSample& s : res.samples) {
            if (idx++ % rc.snapshots != 0) continue;
            Snapshot snap;
            snap.k = rc.k;
            snap.w = cfg.box_w();
            snap.h = cfg.box_h();
            snap.bc = cfg.params.bc;
            snap.z = cfg.params.z;
            snap.rods = s.rods;
            char name[32];
            snprintf(name, sizeof name, "sample_%06ld.txt", written++);
            write_file(fs::path(rc.out) / "snapshots" / name, encode_snapshot(snap));
        }
        std::cout << written << " snapshot(s) written\n";
    }

    try_plot(fs::path(rc.out) / "mc_trace.svg", [&] {
        std::vector<double> n_series, order_series;
        for (const McSample& s : res.samples) {
            n_series.push_back(s.n());
            order_series.push_back(order_parameter(s));
        }
        return line_plot_svg("chain trace", {{"n_rods", n_series}, {"order", order_series}},
                             "retained sample");
    });
    std::cout << "<n> = " << num(res.stats.n_rods.mean, 6) << " +- "
              << num(res.stats.n_rods.stderr_mean, 3) << ", order = "
              << num(res.stats.order.mean, 6) << " +- "
              << num(res.stats.order.stderr_mean, 3) << " (" << res.samples.size()
              << " samples)\n";
    return 0;
}

int cmd_check(const RunConfig& rc) {
    std::vector<CriterionResult> results = run_acceptance(std::cout);
    ordered_json j;
    j["config"] = config_json(rc);
    ordered_json arr = ordered_json::array();
    for (const CriterionResult& r : results) {
        ordered_json cj;
        cj["name"] = r.name;
        cj["pass"] = r.pass;
        cj["gating"] = r.gating;
        cj["seconds"] = num(r.seconds, 4);
        cj["detail"] = r.detail;
        arr.push_back(cj);
    }
    j["criteria"] = arr;
    bool green = acceptance_green(results);
    j["green"] = green;
    write_json(fs::path(rc.out) / "check.json", j);
    return green ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig rc;
    CLI::App app{"hard-rod lattice gas laboratory"};
    app.fallthrough(true);
    app.set_config("--config", "", "key=value file; command-line flags win");
    app.add_option("--k", rc.k, "rod length")->check(CLI::Range(2, 1000));
    app.add_option("--z", rc.z, "activity, exact decimal or fraction");
    app.add_option("--L", rc.L, "box side in sites");
    app.add_option("--bc", rc.bc, "boundary: open, plus or minus");
    app.add_option("--sweeps", rc.sweeps, "measurement sweeps");
    app.add_option("--burn-in", rc.burn_in, "discarded warmup sweeps");
    app.add_option("--thinning", rc.thinning, "record every Nth sweep");
    app.add_option("--seed", rc.seed, "RNG seed");
    app.add_option("--replicas", rc.replicas, "independent chains");
    app.add_option("--budget", rc.budget, "enumeration budget");
    app.add_option("--out", rc.out, "output directory");
    app.add_option("--mmax", rc.mmax, "series truncation order");

    auto* c_exact = app.add_subcommand("exact", "exact partition polynomial of a box");
    c_exact->add_option("--region", rc.region, "box WxH in sites");
    auto* c_series = app.add_subcommand("series", "cluster series vs exact log");
    c_series->add_option("--region", rc.region, "tile union WxH in tiles");
    auto* c_contours = app.add_subcommand("contours", "contour decomposition of a snapshot");
    c_contours->add_option("--in", rc.input, "rodsnap snapshot file")->required();
    c_contours->add_option("--policy", rc.policy, "empty-tile label policy: zero, match-neighbor");
    auto* c_peierls = app.add_subcommand("peierls", "contour suppression certificates");
    c_peierls->add_option("--in", rc.input, "optional snapshot to ledger");
    auto* c_ratio = app.add_subcommand("ratio", "boundary-flip ratio of a tile rectangle");
    c_ratio->add_option("--square", rc.square, "tile rectangle, e.g. 8x8-tiles");
    app.add_subcommand("mc", "grand-canonical sampling run");
    app.add_subcommand("check", "full oracle/property suite");
    app.require_subcommand(1);
    app.get_subcommand("mc")->add_option("--snapshots", rc.snapshots,
                                         "write every Nth retained sample");

    try {
        app.parse(argc, argv);
        std::string cmd = app.get_subcommands().front()->get_name();
        rc.command = cmd;
        if (cmd == "exact") return cmd_exact(rc);
        if (cmd == "series") return cmd_series(rc);
        if (cmd == "contours") return cmd_contours(rc);
        if (cmd == "peierls") return cmd_peierls(rc);
        if (cmd == "ratio") return cmd_ratio(rc);
        if (cmd == "mc") return cmd_mc(rc);
        if (cmd == "check") return cmd_check(rc);
        throw ConfigError("unknown command " + cmd);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
