#pragma once

#include "qgt/int128.hpp"

#include <string>

namespace qgt {

enum class FieldKind { Rationals, Prime };

struct FieldDescriptor {
    FieldKind kind = FieldKind::Rationals;
    long long p = 0; // characteristic, Prime only

    bool operator==(const FieldDescriptor&) const = default;
};

/* One scalar type for both fields.  Over Q: num/den fully reduced, den > 0.
 * Over GF(p): num in [0,p), den == 1.  All arithmetic goes through Field so
 * the representation invariants hold everywhere. */
struct Scalar {
    i128 num = 0;
    i128 den = 1;

    bool is_zero() const { return num == 0; }
    bool operator==(const Scalar& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
};

class Field {
public:
    explicit Field(FieldDescriptor d) : d_(d) {
        if (d_.kind == FieldKind::Prime) {
            if (d_.p < 2) throw ValidationError("field characteristic must be a prime >= 2");
            for (long long q = 2; q * q <= d_.p; ++q)
                if (d_.p % q == 0) throw ValidationError("field characteristic must be prime, got " + std::to_string(d_.p));
        }
    }

    const FieldDescriptor& descriptor() const { return d_; }

    Scalar zero() const { return {0, 1}; }
    Scalar one() const { return {1, 1}; }

    Scalar from_long(long long v) const { return reduce(v, 1); }
    Scalar from_fraction(i128 num, i128 den) const { return reduce(num, den); }

    Scalar add(const Scalar& a, const Scalar& b) const {
        if (d_.kind == FieldKind::Prime) return {(a.num + b.num) % d_.p, 1};
        return reduce(checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
                      checked_mul(a.den, b.den));
    }

    Scalar neg(const Scalar& a) const {
        if (d_.kind == FieldKind::Prime) return {a.num == 0 ? 0 : d_.p - a.num, 1};
        return {-a.num, a.den};
    }

    Scalar sub(const Scalar& a, const Scalar& b) const { return add(a, neg(b)); }

    Scalar mul(const Scalar& a, const Scalar& b) const {
        if (d_.kind == FieldKind::Prime) return {(a.num * b.num) % d_.p, 1};
        return reduce(checked_mul(a.num, b.num), checked_mul(a.den, b.den));
    }

    Scalar inv(const Scalar& a) const {
        if (a.is_zero()) throw ValidationError("division by zero");
        if (d_.kind == FieldKind::Prime) return {inv_mod(a.num, d_.p), 1};
        return reduce(a.den, a.num);
    }

    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

    /* "3", "-2", "4/7"; residues are reduced mod p over GF(p). */
    Scalar parse(const std::string& text) const {
        auto slash = text.find('/');
        if (slash == std::string::npos) return reduce(parse_i128(text), 1);
        return reduce(parse_i128(text.substr(0, slash)), parse_i128(text.substr(slash + 1)));
    }

    std::string to_string(const Scalar& a) const {
        if (a.den == 1) return to_string_i128(a.num);
        return to_string_i128(a.num) + "/" + to_string_i128(a.den);
    }

private:
    Scalar reduce(i128 num, i128 den) const {
        if (den == 0) throw ValidationError("zero denominator");
        if (d_.kind == FieldKind::Prime) {
            i128 p = d_.p;
            i128 n = num % p;
            if (n < 0) n += p;
            i128 dmod = den % p;
            if (dmod < 0) dmod += p;
            if (dmod == 0) throw ValidationError("denominator vanishes in GF(" + std::to_string(d_.p) + ")");
            return {(n * inv_mod(dmod, p)) % p, 1};
        }
        if (den < 0) {
            num = -num;
            den = -den;
        }
        if (num == 0) return {0, 1};
        i128 g = gcd_i128(num, den);
        return {num / g, den / g};
    }

    static i128 inv_mod(i128 a, i128 p) {
        i128 t = 0, nt = 1, r = p, nr = a % p;
        while (nr != 0) {
            i128 q = r / nr;
            i128 tmp = t - q * nt;
            t = nt; nt = tmp;
            tmp = r - q * nr;
            r = nr; nr = tmp;
        }
        if (r != 1) throw ValidationError("not invertible mod p");
        return t < 0 ? t + p : t;
    }

    FieldDescriptor d_;
};

inline std::string field_to_string(const FieldDescriptor& d) {
    return d.kind == FieldKind::Rationals ? "Q" : "GF(" + std::to_string(d.p) + ")";
}

} // namespace qgt
