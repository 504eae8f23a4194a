#include <set>
#include <stdexcept>

#include "doctest.h"
#include "hosc/hamming.hpp"
#include "hosc/rng.hpp"

using namespace hosc;

TEST_CASE("affine table entries invert correctly") {
    for (int rm1 = 3; rm1 <= 16; ++rm1) {
        const AffineParams p = affine_table_entry(rm1);
        const std::uint32_t mask = (1u << rm1) - 1;
        CHECK(((p.a * p.a_inv) & mask) == 1);
    }
    CHECK(affine_table_entry(6).a == 3);
    CHECK(affine_table_entry(6).b == 3);
    CHECK(affine_table_entry(6).a_inv == 43);
    CHECK(affine_table_entry(8).a == 9);
    CHECK(affine_table_entry(8).b == 11);
}

TEST_CASE("tau bijection and inverse") {
    for (int rm1 = 3; rm1 <= 11; ++rm1) {
        for (const ExtHammingSpec& spec :
             {affine_spec(rm1 + 1), boolean_spec(rm1 + 1), natural_spec(rm1 + 1)}) {
            const int size = 1 << rm1;
            std::vector<char> seen(size, 0);
            for (int j = 0; j < size; ++j) {
                const std::uint32_t t = tau(spec, j);
                REQUIRE(t < static_cast<std::uint32_t>(size));
                REQUIRE(!seen[t]);
                seen[t] = 1;
                REQUIRE(tau_inv(spec, t) == static_cast<std::uint32_t>(j));
            }
        }
    }
}

TEST_CASE("boolean map worked example for r-1 = 6") {
    const ExtHammingSpec spec = boolean_spec(7);
    // (b0..b5) -> (b0, b1, b2+b0b1, b3+b0b1, b4+b0b1b2, b5+(1+b0)b1b2)
    auto ref = [](std::uint32_t j) {
        const int b0 = j & 1, b1 = (j >> 1) & 1, b2 = (j >> 2) & 1;
        const int b3 = (j >> 3) & 1, b4 = (j >> 4) & 1, b5 = (j >> 5) & 1;
        return static_cast<std::uint32_t>(b0 | (b1 << 1) | ((b2 ^ (b0 & b1)) << 2) |
                                          ((b3 ^ (b0 & b1)) << 3) | ((b4 ^ (b0 & b1 & b2)) << 4) |
                                          ((b5 ^ ((1 ^ b0) & b1 & b2)) << 5));
    };
    for (std::uint32_t j = 0; j < 64; ++j) CHECK(tau(spec, j) == ref(j));
}

TEST_CASE("printed 7x7 tail matrix is reproduced bit-exactly and invertible") {
    const ExtHammingSpec spec = boolean_spec(7);
    const auto rows = matrix_rows(spec, 57, 7);
    const std::vector<std::vector<int>> printed = {
        {1, 1, 1, 1, 1, 0, 1}, {1, 1, 1, 1, 1, 1, 0}, {1, 1, 0, 1, 1, 1, 0},
        {0, 0, 1, 1, 1, 1, 0}, {0, 1, 1, 0, 0, 1, 1}, {1, 0, 1, 0, 1, 0, 1},
        {1, 1, 1, 1, 1, 1, 1},
    };
    CHECK(rows == printed);
    CHECK(systematize_check(spec));
}

TEST_CASE("natural columns reproduce the parent matrix layout") {
    const ExtHammingSpec spec = natural_spec(4);
    CHECK(column(spec, 2) == 5);
    const auto rows = matrix_rows(spec, 2, 1);
    CHECK(rows == std::vector<std::vector<int>>{{0}, {1}, {0}, {1}});
    CHECK(column(spec, 0) == 1);
    CHECK(column(spec, 7) == 15);
    CHECK_THROWS_AS(column(spec, 8), std::out_of_range);
    // All columns odd and distinct.
    std::set<std::uint32_t> cols;
    for (int j = 0; j < spec.length(); ++j) {
        const std::uint32_t c = column(spec, j);
        CHECK((c & 1) == 1);
        CHECK(cols.insert(c).second);
    }
}

TEST_CASE("affine r-1=3 identity-like case") {
    const ExtHammingSpec spec = affine_spec(4);  // a=1, b=1
    CHECK(tau(spec, 0) == 1);
    CHECK(column(spec, 0) == 2 * 1 + 1);
}

TEST_CASE("systematize checks") {
    for (int rm1 = 3; rm1 <= 16; ++rm1) {
        CHECK(systematize_check(affine_spec(rm1 + 1)));
        CHECK(systematize_check(boolean_spec(rm1 + 1)));
    }
    // The natural order fails for r-1 = 4 (dependent tail columns).
    CHECK_FALSE(systematize_check(natural_spec(5)));
    // Shortening does not change the tail.
    CHECK(systematize_check(affine_spec(9, 21)));
}

TEST_CASE("find_affine") {
    const auto [a, b] = find_affine(5);
    CHECK(systematize_check(affine_spec_with(5, a, b)));
    CHECK(systematize_check(affine_spec_with(9, 9, 11)));
    CHECK(find_affine(4) == std::pair<std::uint32_t, std::uint32_t>{1, 1});
}

TEST_CASE("syndrome of error sets") {
    const ExtHammingSpec spec = affine_spec(8);
    CHECK(syndrome_of(spec, {}) == 0);
    for (int j : {0, 5, 100}) CHECK(syndrome_of(spec, {j}) == column(spec, j));
    // Even-size sets have even overall parity (lowest bit clear).
    Rng rng(3);
    for (int trial = 0; trial < 1000; ++trial) {
        std::set<int> errs;
        while (errs.size() < 4) errs.insert(static_cast<int>(rng.below(spec.length())));
        CHECK((syndrome_of(spec, errs) & 1) == 0);
    }
}

TEST_CASE("single-error decode is exact, exhaustive r-1 in 3..11") {
    for (int rm1 = 3; rm1 <= 11; ++rm1) {
        for (const ExtHammingSpec& spec : {affine_spec(rm1 + 1), boolean_spec(rm1 + 1)}) {
            for (int j = 0; j < spec.length(); ++j) {
                const DecodeResult res = decode(spec, syndrome_of(spec, {j}));
                REQUIRE(res.kind == DecodeKind::Correct);
                REQUIRE(res.position == j);
            }
        }
    }
    CHECK(decode(affine_spec(8), 0) == DecodeResult{DecodeKind::NoError, -1});
}

TEST_CASE("single-error decode with shortening") {
    const ExtHammingSpec spec = affine_spec(9, 21);  // the (235, 226) component
    REQUIRE(spec.length() == 235);
    for (int j = 0; j < spec.length(); ++j) {
        const DecodeResult res = decode(spec, syndrome_of(spec, {j}));
        REQUIRE(res.kind == DecodeKind::Correct);
        REQUIRE(res.position == j);
    }
}

TEST_CASE("weight-2 errors are detected, exhaustive r-1 <= 8") {
    for (int rm1 : {3, 6, 8}) {
        const ExtHammingSpec spec = affine_spec(rm1 + 1);
        for (int a = 0; a < spec.length(); ++a)
            for (int b = a + 1; b < spec.length(); ++b) {
                const DecodeResult res = decode(spec, syndrome_of(spec, {a, b}));
                REQUIRE(res.kind == DecodeKind::Detected);
            }
    }
}

TEST_CASE("weight-2 errors are detected, sampled for larger r") {
    Rng rng(17);
    for (int rm1 : {9, 10, 11}) {
        const ExtHammingSpec spec = affine_spec(rm1 + 1);
        for (int trial = 0; trial < 100000; ++trial) {
            const int a = static_cast<int>(rng.below(spec.length()));
            int b = static_cast<int>(rng.below(spec.length()));
            while (b == a) b = static_cast<int>(rng.below(spec.length()));
            REQUIRE(decode(spec, syndrome_of(spec, {a, b})).kind == DecodeKind::Detected);
        }
    }
}

TEST_CASE("shortening shifts columns") {
    Rng rng(23);
    const int s = 21;
    const ExtHammingSpec s0 = affine_spec(9, 0);
    const ExtHammingSpec ss = affine_spec(9, s);
    for (int trial = 0; trial < 1000; ++trial) {
        const int j = static_cast<int>(rng.below(ss.length()));
        CHECK(column(ss, j) == column(s0, j + s));
    }
}

TEST_CASE("systematic encoding") {
    Rng rng(29);
    for (const ExtHammingSpec& spec : {affine_spec(8), affine_spec(9, 21), boolean_spec(7)}) {
        const int k = spec.dimension();
        // All-zero info gives all-zero parity.
        const auto zero = encode_parity(spec, std::vector<std::uint8_t>(k, 0));
        for (auto b : zero) CHECK(b == 0);

        for (int trial = 0; trial < 200; ++trial) {
            std::vector<std::uint8_t> info(k);
            for (auto& b : info) b = rng.below(2);
            const auto parity = encode_parity(spec, info);
            std::set<int> support;
            for (int j = 0; j < k; ++j)
                if (info[j]) support.insert(j);
            for (int u = 0; u < spec.r; ++u)
                if (parity[u]) support.insert(k + u);
            REQUIRE(syndrome_of(spec, support) == 0);
        }

        // A single info bit wants parity T^{-1} * column(p).
        std::vector<std::uint8_t> info(k, 0);
        info[k / 2] = 1;
        const auto parity = encode_parity(spec, info);
        std::uint32_t syn = column(spec, k / 2);
        for (int u = 0; u < spec.r; ++u)
            if (parity[u]) syn ^= column(spec, k + u);
        CHECK(syn == 0);
    }
    CHECK_THROWS_AS(encode_parity(natural_spec(5), std::vector<std::uint8_t>(11, 0)),
                    std::invalid_argument);
}

TEST_CASE("odd weight-3 errors decode to some correction or detection") {
    // Miscorrections must be allowed to occur; with no shortening every
    // odd syndrome maps to a valid position, so weight-3 always corrects.
    const ExtHammingSpec spec = affine_spec(8);
    Rng rng(31);
    int miscorrections = 0;
    for (int trial = 0; trial < 20000; ++trial) {
        std::set<int> errs;
        while (errs.size() < 3) errs.insert(static_cast<int>(rng.below(spec.length())));
        const DecodeResult res = decode(spec, syndrome_of(spec, errs));
        REQUIRE(res.kind == DecodeKind::Correct);
        if (!errs.count(res.position)) ++miscorrections;
    }
    CHECK(miscorrections > 0);
}
