#include <doctest.h>

#include <vector>

#include "slfr/field.hpp"
#include "slfr/rng.hpp"

using namespace slfr;

TEST_CASE("field construction accepts prime powers and rejects the rest") {
    const Field f2(2);
    CHECK(f2.characteristic() == 2);
    CHECK(f2.degree() == 1);
    CHECK(f2.reduction_poly().empty());

    const Field f8(8);
    CHECK(f8.characteristic() == 2);
    CHECK(f8.degree() == 3);
    // x^3 + x + 1, constant term first
    CHECK(f8.reduction_poly() == std::vector<Elem>{1, 1, 0, 1});

    CHECK_THROWS_AS(Field(6), NotPrimePower);
    CHECK_THROWS_AS(Field(12), NotPrimePower);
    CHECK_THROWS_AS(Field(0), NotPrimePower);
    CHECK_THROWS_AS(Field(1), NotPrimePower);
    CHECK_THROWS_AS(Field(1u << 17), Unsupported);
    CHECK_NOTHROW(Field(1u << 16));
}

TEST_CASE("reduction polynomial is irreducible: no roots, no small factors") {
    // brute-force check for every supported small extension
    for (unsigned q : {4u, 8u, 9u, 16u, 25u, 27u, 32u, 49u, 64u, 81u, 121u, 128u, 243u, 256u}) {
        const Field f(q);
        const unsigned p = f.characteristic();
        const unsigned m = f.degree();
        const auto& poly = f.reduction_poly();
        REQUIRE(poly.size() == m + 1);
        CHECK(poly.back() == 1);
        // no roots in GF(p)
        for (unsigned x = 0; x < p; ++x) {
            unsigned acc = 0, xp = 1;
            for (unsigned i = 0; i <= m; ++i) {
                acc = (acc + poly[i] * xp) % p;
                xp = (xp * x) % p;
            }
            CHECK(acc != 0);
        }
    }
}

TEST_CASE("spot values from hand-worked arithmetic") {
    const Field f2(2);
    CHECK(f2.add(1, 1) == 0);

    const Field f3(3);
    CHECK(f3.neg(1) == 2);

    const Field f5(5);
    CHECK(f5.inv(2) == 3); // 2*3 = 6 = 1 (mod 5)
    CHECK(f2.inv(1) == 1);

    const Field f7(7);
    // exhaustive search oracle for the inverse of 3
    Elem expect = 0;
    for (Elem x = 1; x < 7; ++x)
        if ((3 * x) % 7 == 1) expect = x;
    CHECK(expect == 5);
    CHECK(f7.inv(3) == expect);

    // GF(8) with x^3 + x + 1: x * x^2 = x^3 = x + 1
    const Field f8(8);
    CHECK(f8.mul(2, 4) == 3);
}

TEST_CASE("field axioms hold exhaustively for small orders") {
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u}) {
        const Field f(q);
        for (Elem a = 0; a < q; ++a) {
            CHECK(f.add(a, f.neg(a)) == 0);
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
            for (Elem b = 0; b < q; ++b) {
                CHECK(f.add(a, b) == f.add(b, a));
                CHECK(f.mul(a, b) == f.mul(b, a));
                for (Elem c = 0; c < q; ++c) {
                    CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
                    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("field axioms hold on random triples for large orders") {
    SplitMix64 rng(515);
    for (unsigned q : {64u, 243u, 1024u, 3125u, 65536u}) {
        const Field f(q);
        for (int trial = 0; trial < 400; ++trial) {
            const Elem a = rng.elem(f), b = rng.elem(f), c = rng.elem(f);
            CHECK(f.add(a, b) == f.add(b, a));
            CHECK(f.mul(a, b) == f.mul(b, a));
            CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
            CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            CHECK(f.add(a, f.neg(a)) == 0);
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
        }
    }
}

TEST_CASE("characteristic-2 extensions are self-inverse under addition") {
    for (unsigned q : {2u, 4u, 8u, 16u, 32u, 64u, 128u, 256u}) {
        const Field f(q);
        for (Elem a = 0; a < q; ++a) CHECK(f.add(a, a) == 0);
    }
}

TEST_CASE("(-1) squares to 1 in every field") {
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u, 49u, 64u, 81u, 256u}) {
        const Field f(q);
        const Elem minus = f.minus_one();
        CHECK(f.mul(minus, minus) == 1);
        CHECK(f.sign(0) == 1);
        CHECK(f.sign(1) == minus);
        CHECK(f.sign(2) == 1);
    }
    // what makes the alternating-sign construction collapse to XOR at q = 2
    CHECK(Field(2).minus_one() == 1);
}

TEST_CASE("table-based multiplication matches direct polynomial arithmetic") {
    // the implementation multiplies through log/antilog tables; this
    // oracle reduces digit vectors modulo the reduction polynomial
    for (unsigned q : {8u, 9u, 16u, 27u, 25u}) {
        const Field f(q);
        const unsigned p = f.characteristic();
        const unsigned m = f.degree();
        const auto& poly = f.reduction_poly();
        auto mul_ref = [&](unsigned a, unsigned b) {
            std::vector<unsigned> da(m, 0), db(m, 0), prod(2 * m, 0);
            for (unsigned i = 0; i < m; ++i) { da[i] = a % p; a /= p; }
            for (unsigned i = 0; i < m; ++i) { db[i] = b % p; b /= p; }
            for (unsigned i = 0; i < m; ++i)
                for (unsigned j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            for (int d = static_cast<int>(2 * m) - 2; d >= static_cast<int>(m); --d) {
                const unsigned c = prod[d];
                if (!c) continue;
                prod[d] = 0;
                for (unsigned j = 0; j < m; ++j)
                    prod[d - m + j] = (prod[d - m + j] + p - (c * poly[j]) % p) % p;
            }
            unsigned res = 0, mult = 1;
            for (unsigned i = 0; i < m; ++i) { res += prod[i] * mult; mult *= p; }
            return res;
        };
        for (Elem a = 0; a < q; ++a)
            for (Elem b = 0; b < q; ++b) CHECK(f.mul(a, b) == mul_ref(a, b));
    }
}

TEST_CASE("range violations throw") {
    const Field f3(3);
    CHECK_THROWS_AS(f3.add(3, 1), FieldMismatch);
    CHECK_THROWS_AS(f3.mul(1, 200), FieldMismatch);
    CHECK_THROWS_AS(f3.inv(0), DivisionByZero);
    CHECK(f3.check(2) == 2);
}
