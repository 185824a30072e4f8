#pragma once
#include <gmpxx.h>
#include <string>

#include "hardrods/errors.hpp"

namespace hardrods {

using Int = mpz_class;
using Rat = mpq_class;

// "p/q" (or plain "p" when q == 1), canonical form.
inline std::string rat_to_string(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

// Parses "p/q", an integer, or a plain decimal like "0.0625" into an exact rational.
inline Rat rat_parse(const std::string& s) {
    if (s.empty()) throw ConfigError("empty rational literal");
    // explicit base 10: the auto-detecting constructor reads leading zeros as octal
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Int num(s.substr(0, slash), 10), den(s.substr(slash + 1), 10);
        if (den == 0) throw ConfigError("zero denominator: " + s);
        Rat r(num, den);
        r.canonicalize();
        return r;
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rat(Int(s, 10));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    Int num(digits, 10);
    Int den = 1;
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline double rat_double(const Rat& r) { return r.get_d(); }

// b^e with b canonical; gcd(n,d)=1 implies gcd(n^e,d^e)=1, so no re-canonicalization.
inline Rat rat_pow(const Rat& b, unsigned long e) {
    Rat r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(b.get_mpq_t()), e);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(b.get_mpq_t()), e);
    return r;
}

} // namespace hardrods
