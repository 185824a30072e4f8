#pragma once
#include <string>
#include <vector>

#include "hardrods/geometry.hpp"

namespace hardrods {

// A full rod configuration with the parameters needed to reread it.
struct Snapshot {
    int k = 2, w = 0, h = 0;
    Boundary bc = Boundary::Open;
    Rat z = Rat(0);
    std::vector<Rod> rods;
};

std::string boundary_name(Boundary bc);
Boundary boundary_parse(const std::string& name);

// Run-length text: a "rodsnap 1" header, one k/w/h/bc/z line, then h rows
// (y = 0 first) of <count><char> tokens over '.', 'h', 'v'.
std::string encode_snapshot(const Snapshot& s);

// Inverse of encode_snapshot. Every maximal run of rod cells must split into
// whole rods, else ConfigError.
Snapshot decode_snapshot(const std::string& text);

} // namespace hardrods
