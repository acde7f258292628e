#include "doctest.h"

#include "qgt/field.hpp"
#include "qgt/linalg.hpp"

#include <random>

using namespace qgt;

namespace {

Scalar rnd_scalar(const Field& F, std::mt19937_64& rng) {
    if (F.descriptor().kind == FieldKind::Prime)
        return F.from_long((long long)(rng() % (unsigned long long)F.descriptor().p));
    long long num = (long long)(rng() % 19) - 9;
    long long den = 1 + (long long)(rng() % 6);
    return F.from_fraction(num, den);
}

Mat rnd_mat(const Field& F, std::mt19937_64& rng, size_t r, size_t c) {
    Mat m(r, Vec(c, F.zero()));
    for (auto& row : m)
        for (auto& x : row)
            if (rng() % 3 != 0) x = rnd_scalar(F, rng);
    return m;
}

Vec mat_row_apply(const Vec& x, const Mat& m, const Field& F) {
    size_t cols = m.empty() ? 0 : m[0].size();
    Vec out(cols, F.zero());
    for (size_t r = 0; r < x.size(); ++r)
        for (size_t c = 0; c < cols; ++c) out[c] = F.add(out[c], F.mul(x[r], m[r][c]));
    return out;
}

} // namespace

TEST_CASE("rationals arithmetic and parsing") {
    Field F(FieldDescriptor{FieldKind::Rationals, 0});
    CHECK(F.parse("4/7") == F.from_fraction(4, 7));
    CHECK(F.parse("-2") == F.from_long(-2));
    CHECK(F.parse("6/4") == F.from_fraction(3, 2));
    CHECK(F.to_string(F.parse("-6/4")) == "-3/2");
    CHECK(F.add(F.parse("1/2"), F.parse("1/3")) == F.parse("5/6"));
    CHECK(F.mul(F.parse("2/3"), F.parse("9/4")) == F.parse("3/2"));
    CHECK(F.inv(F.parse("-2/5")) == F.parse("-5/2"));
    CHECK_THROWS_AS(F.inv(F.zero()), ValidationError);
    CHECK_THROWS_AS((void)F.from_fraction(1, 0), ValidationError);
}

TEST_CASE("prime field arithmetic") {
    CHECK_THROWS_AS(Field(FieldDescriptor{FieldKind::Prime, 6}), ValidationError);
    CHECK_THROWS_AS(Field(FieldDescriptor{FieldKind::Prime, 1}), ValidationError);
    Field F(FieldDescriptor{FieldKind::Prime, 7});
    CHECK(F.parse("10") == F.from_long(3));
    CHECK(F.parse("-1") == F.from_long(6));
    CHECK(F.parse("1/2") == F.from_long(4)); // 2*4 = 8 = 1 mod 7
    for (long long a = 1; a < 7; ++a)
        CHECK(F.mul(F.from_long(a), F.inv(F.from_long(a))) == F.one());
    CHECK(field_to_string(F.descriptor()) == "GF(7)");
}

TEST_CASE("field laws on random elements") {
    for (FieldDescriptor d : {FieldDescriptor{FieldKind::Rationals, 0},
                              FieldDescriptor{FieldKind::Prime, 5},
                              FieldDescriptor{FieldKind::Prime, 2}}) {
        Field F(d);
        std::mt19937_64 rng(99);
        for (int t = 0; t < 200; ++t) {
            Scalar a = rnd_scalar(F, rng), b = rnd_scalar(F, rng), c = rnd_scalar(F, rng);
            CHECK(F.add(a, b) == F.add(b, a));
            CHECK(F.mul(a, b) == F.mul(b, a));
            CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
            CHECK(F.add(a, F.neg(a)).is_zero());
            if (!b.is_zero()) CHECK(F.mul(F.div(a, b), b) == a);
        }
    }
}

TEST_CASE("overflow in exact arithmetic is a capped failure") {
    i128 big = i128(1) << 100;
    CHECK_THROWS_AS((void)checked_mul(big, big), CapError);
    CHECK(to_string_i128(parse_i128("-123456789012345678")) == "-123456789012345678");
}

TEST_CASE("rref shape and rank") {
    Field F(FieldDescriptor{FieldKind::Prime, 5});
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        Mat m = rnd_mat(F, rng, r, c);
        Mat work = m;
        auto piv = rref(work, F);
        CHECK(work.size() == piv.size());
        CHECK(int(piv.size()) == rank(m, F));
        for (size_t i = 1; i < piv.size(); ++i) CHECK(piv[i - 1] < piv[i]);
        // pivot columns carry exactly one 1
        for (size_t i = 0; i < piv.size(); ++i) {
            CHECK(work[i][size_t(piv[i])] == F.one());
            for (size_t j = 0; j < work.size(); ++j)
                if (j != i) CHECK(work[j][size_t(piv[i])].is_zero());
        }
        // rref is idempotent
        Mat again = work;
        rref(again, F);
        CHECK(again == work);
    }
}

TEST_CASE("left kernel annihilates and has complementary dimension") {
    for (FieldDescriptor d :
         {FieldDescriptor{FieldKind::Rationals, 0}, FieldDescriptor{FieldKind::Prime, 7}}) {
        Field F(d);
        std::mt19937_64 rng(13);
        for (int t = 0; t < 40; ++t) {
            size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
            Mat m = rnd_mat(F, rng, r, c);
            Mat k = left_kernel(m, F);
            CHECK(int(k.size()) == int(r) - rank(m, F));
            for (const auto& x : k) CHECK(is_zero_vec(mat_row_apply(x, m, F)));
            if (!k.empty()) CHECK(rank(k, F) == int(k.size()));
        }
    }
}

TEST_CASE("left kernel of a zero-column matrix is everything") {
    Field F(FieldDescriptor{FieldKind::Prime, 5});
    Mat m(3, Vec{});
    Mat k = left_kernel(m, F);
    CHECK(k.size() == 3);
}

TEST_CASE("solve_in_span recovers combinations and rejects outsiders") {
    Field F(FieldDescriptor{FieldKind::Rationals, 0});
    std::mt19937_64 rng(21);
    for (int t = 0; t < 40; ++t) {
        size_t n = 1 + rng() % 4, c = 2 + rng() % 5;
        Mat rows = rnd_mat(F, rng, n, c);
        Vec target(c, F.zero());
        std::vector<Scalar> coeffs;
        for (size_t i = 0; i < n; ++i) {
            Scalar x = rnd_scalar(F, rng);
            coeffs.push_back(x);
            for (size_t j = 0; j < c; ++j) target[j] = F.add(target[j], F.mul(x, rows[i][j]));
        }
        auto sol = solve_in_span(rows, target, F);
        REQUIRE(sol.has_value());
        // any solution must reproduce the target
        Vec back(c, F.zero());
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < c; ++j) back[j] = F.add(back[j], F.mul((*sol)[i], rows[i][j]));
        CHECK(back == target);
    }
    // outside the span: rows live in the first coordinate only
    Mat rows{{F.one(), F.zero()}};
    CHECK_FALSE(solve_in_span(rows, Vec{F.zero(), F.one()}, F).has_value());
    CHECK(solve_in_span(rows, Vec{F.from_long(3), F.zero()}, F).has_value());
}
