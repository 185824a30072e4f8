#include "hardrods/snapshot.hpp"

#include <algorithm>
#include <sstream>

#include "hardrods/errors.hpp"

namespace hardrods {

std::string boundary_name(Boundary bc) {
    switch (bc) {
        case Boundary::Open: return "open";
        case Boundary::Plus: return "plus";
        case Boundary::Minus: return "minus";
    }
    throw ConfigError("unknown boundary value");
}

Boundary boundary_parse(const std::string& name) {
    if (name == "open") return Boundary::Open;
    if (name == "plus") return Boundary::Plus;
    if (name == "minus") return Boundary::Minus;
    throw ConfigError("boundary must be open, plus or minus: " + name);
}

namespace {

std::vector<char> paint_grid(const Snapshot& s) {
    std::vector<char> grid(size_t(s.w) * s.h, '.');
    for (const Rod& r : s.rods) {
        char c = orient_char(r.o);
        for (const Site& site : sites_of_rod(r, s.k)) {
            if (site.x < 0 || site.x >= s.w || site.y < 0 || site.y >= s.h)
                throw ConfigError("rod leaves the snapshot box");
            char& cell = grid[size_t(site.y) * s.w + site.x];
            if (cell != '.') throw ConfigError("rods overlap in snapshot");
            cell = c;
        }
    }
    return grid;
}

} // namespace

std::string encode_snapshot(const Snapshot& s) {
    if (s.k < 2) throw ConfigError("rod length k must be >= 2");
    if (s.w <= 0 || s.h <= 0) throw ConfigError("snapshot box is empty");
    std::vector<char> grid = paint_grid(s);
    std::ostringstream out;
    out << "rodsnap 1\n";
    out << "k=" << s.k << " w=" << s.w << " h=" << s.h << " bc=" << boundary_name(s.bc)
        << " z=" << s.z.get_str() << "\n";
    for (int y = 0; y < s.h; ++y) {
        int x = 0;
        while (x < s.w) {
            char c = grid[size_t(y) * s.w + x];
            int run = 1;
            while (x + run < s.w && grid[size_t(y) * s.w + x + run] == c) ++run;
            out << run << c;
            x += run;
        }
        out << "\n";
    }
    return out.str();
}

Snapshot decode_snapshot(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "rodsnap 1")
        throw ConfigError("not a rodsnap snapshot");
    if (!std::getline(in, line)) throw ConfigError("snapshot header truncated");
    Snapshot s;
    bool got_k = false, got_w = false, got_h = false, got_bc = false, got_z = false;
    std::istringstream hdr(line);
    std::string tok;
    while (hdr >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw ConfigError("bad snapshot header token: " + tok);
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "k") s.k = std::stoi(val), got_k = true;
        else if (key == "w") s.w = std::stoi(val), got_w = true;
        else if (key == "h") s.h = std::stoi(val), got_h = true;
        else if (key == "bc") s.bc = boundary_parse(val), got_bc = true;
        else if (key == "z") s.z = rat_parse(val), got_z = true;
        else throw ConfigError("unknown snapshot header key: " + key);
    }
    if (!(got_k && got_w && got_h && got_bc && got_z))
        throw ConfigError("snapshot header is missing a field");
    if (s.k < 2 || s.w <= 0 || s.h <= 0) throw ConfigError("bad snapshot dimensions");

    std::vector<char> grid(size_t(s.w) * s.h, '.');
    for (int y = 0; y < s.h; ++y) {
        if (!std::getline(in, line)) throw ConfigError("snapshot rows truncated");
        int x = 0;
        size_t i = 0;
        while (i < line.size()) {
            size_t j = i;
            while (j < line.size() && std::isdigit((unsigned char)line[j])) ++j;
            if (j == i || j == line.size()) throw ConfigError("bad run token in row");
            int run = std::stoi(line.substr(i, j - i));
            char c = line[j];
            if (run < 1 || (c != '.' && c != 'h' && c != 'v'))
                throw ConfigError("bad run token in row");
            if (x + run > s.w) throw ConfigError("row overflows snapshot width");
            std::fill_n(grid.begin() + size_t(y) * s.w + x, run, c);
            x += run;
            i = j + 1;
        }
        if (x != s.w) throw ConfigError("row does not fill snapshot width");
    }

    // maximal runs of rod cells decompose uniquely into k-blocks left to right
    int back = rod_back(s.k);
    for (int y = 0; y < s.h; ++y)
        for (int x = 0; x < s.w;) {
            if (grid[size_t(y) * s.w + x] != 'h') {
                ++x;
                continue;
            }
            int run = 0;
            while (x + run < s.w && grid[size_t(y) * s.w + x + run] == 'h') ++run;
            if (run % s.k != 0)
                throw ConfigError("horizontal run of " + std::to_string(run) +
                                  " cells is not whole rods");
            for (int r = 0; r < run / s.k; ++r)
                s.rods.push_back({Orientation::H, {x + r * s.k + back, y}});
            x += run;
        }
    for (int x = 0; x < s.w; ++x)
        for (int y = 0; y < s.h;) {
            if (grid[size_t(y) * s.w + x] != 'v') {
                ++y;
                continue;
            }
            int run = 0;
            while (y + run < s.h && grid[size_t(y + run) * s.w + x] == 'v') ++run;
            if (run % s.k != 0)
                throw ConfigError("vertical run of " + std::to_string(run) +
                                  " cells is not whole rods");
            for (int r = 0; r < run / s.k; ++r)
                s.rods.push_back({Orientation::V, {x, y + r * s.k + back}});
            y += run;
        }
    std::sort(s.rods.begin(), s.rods.end());
    return s;
}

} // namespace hardrods
