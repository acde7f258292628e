#pragma once

#include "qgt/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

namespace qgt {

using i128 = __int128;
using u128 = unsigned __int128;

inline i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw CapError("integer overflow in exact arithmetic");
    return r;
}

inline i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw CapError("integer overflow in exact arithmetic");
    return r;
}

inline u128 gcd_u128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline i128 gcd_i128(i128 a, i128 b) {
    u128 ua = a < 0 ? u128(-(a + 1)) + 1 : u128(a);
    u128 ub = b < 0 ? u128(-(b + 1)) + 1 : u128(b);
    return i128(gcd_u128(ua, ub));
}

inline std::string to_string_i128(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 u = neg ? u128(-(v + 1)) + 1 : u128(v);
    std::string s;
    while (u != 0) {
        s.push_back(char('0' + int(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

/* Parses an optionally signed decimal integer; rejects anything else. */
inline i128 parse_i128(const std::string& s) {
    if (s.empty()) throw ValidationError("empty integer literal");
    size_t k = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        k = 1;
    }
    if (k == s.size()) throw ValidationError("bad integer literal '" + s + "'");
    i128 v = 0;
    for (; k < s.size(); ++k) {
        if (s[k] < '0' || s[k] > '9') throw ValidationError("bad integer literal '" + s + "'");
        v = checked_add(checked_mul(v, 10), s[k] - '0');
    }
    return neg ? -v : v;
}

} // namespace qgt
