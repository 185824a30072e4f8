#pragma once
#include <string>
#include <vector>

#include "hardrods/rational.hpp"

namespace hardrods {

// Partition polynomial in the activity z with exact integer coefficients.
// coeff[n] counts configurations with n rods.
struct PolyZ {
    std::vector<Int> c;

    PolyZ() = default;
    explicit PolyZ(const Int& c0) : c{c0} {}
    static PolyZ one() { return PolyZ(Int(1)); }
    static PolyZ zero() { return PolyZ(); }

    int degree() const { return int(c.size()) - 1; }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    const Int& coeff(size_t n) const {
        static const Int z0 = 0;
        return n < c.size() ? c[n] : z0;
    }

    PolyZ& operator+=(const PolyZ& o) {
        if (o.c.size() > c.size()) c.resize(o.c.size(), 0);
        for (size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
        return *this;
    }
    friend PolyZ operator+(PolyZ a, const PolyZ& b) { return a += b; }

    friend PolyZ operator*(const PolyZ& a, const PolyZ& b) {
        if (a.c.empty() || b.c.empty()) return zero();
        PolyZ r;
        r.c.assign(a.c.size() + b.c.size() - 1, Int(0));
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i] == 0) continue;
            for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
        }
        return r;
    }

    // Multiply by z: one extra rod.
    PolyZ shifted() const {
        PolyZ r;
        r.c.assign(c.size() + 1, Int(0));
        for (size_t i = 0; i < c.size(); ++i) r.c[i + 1] = c[i];
        return r;
    }

    friend bool operator==(const PolyZ& a, const PolyZ& b) {
        PolyZ x = a, y = b;
        x.trim();
        y.trim();
        return x.c == y.c;
    }

    Rat eval(const Rat& z) const {
        Rat acc = 0;
        for (size_t i = c.size(); i-- > 0;) acc = acc * z + Rat(c[i]);
        return acc;
    }
    double eval_d(double z) const {
        double acc = 0;
        for (size_t i = c.size(); i-- > 0;) acc = acc * z + c[i].get_d();
        return acc;
    }

    PolyZ derivative() const {
        if (c.size() <= 1) return zero();
        PolyZ r;
        r.c.resize(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) r.c[i - 1] = c[i] * long(i);
        return r;
    }

    PolyZ pow(int e) const {
        PolyZ r = one();
        for (int i = 0; i < e; ++i) r = r * (*this);
        return r;
    }

    std::vector<std::string> coeff_strings() const {
        std::vector<std::string> out;
        out.reserve(c.size());
        for (const auto& x : c) out.push_back(x.get_str());
        return out;
    }
};

// First `order`+1 Taylor coefficients of log P around z=0; requires P(0)=1.
// From P'/P = (log P)': m*c_m = m*a_m - sum_{j=1..m-1} j*c_j*a_{m-j}.
inline std::vector<Rat> log_taylor(const PolyZ& p, int order) {
    if (p.c.empty() || p.c[0] != 1)
        throw ConfigError("log series needs constant term 1");
    std::vector<Rat> lc(order + 1, Rat(0));
    for (int m = 1; m <= order; ++m) {
        Rat acc = Rat(p.coeff(m)) * m;
        for (int j = 1; j < m; ++j) acc -= Rat(j) * lc[j] * Rat(p.coeff(m - j));
        lc[m] = acc / m;
    }
    return lc;
}

// <n> = z Z'(z)/Z(z).
inline Rat mean_rod_count(const PolyZ& zpoly, const Rat& z) {
    Rat num = zpoly.derivative().eval(z) * z;
    Rat den = zpoly.eval(z);
    if (den == 0) throw ConfigError("partition function vanished");
    return num / den;
}

} // namespace hardrods
