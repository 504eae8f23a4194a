#include <stdexcept>
#include <set>

#include "doctest.h"
#include "hosc/dts_catalog.hpp"
#include "hosc/rng.hpp"

using namespace hosc;

TEST_CASE("optimal Golomb rulers") {
    CHECK(optimal_golomb_ruler(2) == Ruler{0, 1});
    CHECK(optimal_golomb_ruler(4) == Ruler{0, 1, 4, 6});
    CHECK(optimal_golomb_ruler(5) == Ruler{0, 1, 4, 9, 11});
    for (int order = 1; order <= 10; ++order) CHECK(is_golomb(optimal_golomb_ruler(order)));
    CHECK(optimal_golomb_ruler(10).length() == 55);
    CHECK_THROWS_AS(optimal_golomb_ruler(11), std::invalid_argument);
}

TEST_CASE("skolem okeefe small table") {
    CHECK(skolem_okeefe(2) == Dts{{Ruler{0, 2, 7}, Ruler{0, 3, 4}}});
    CHECK(skolem_okeefe(3) == Dts{{Ruler{0, 3, 10}, Ruler{0, 6, 8}, Ruler{0, 4, 5}}});
}

TEST_CASE("skolem okeefe L=8 family") {
    const Dts d = skolem_okeefe(8);
    CHECK(is_dts(d));
    CHECK(scope(d) == 24);
    CHECK(sum_of_lengths(d) == 150);
}

TEST_CASE("skolem okeefe meets both bounds for L = 1..500") {
    for (int L = 1; L <= 500; ++L) {
        const Dts d = skolem_okeefe(L);
        REQUIRE(d.L() == L);
        REQUIRE(is_dts(d));
        const BoundPair b = lower_bounds(L, 2);
        REQUIRE(scope(d) == b.scope_lb);
        REQUIRE(sum_of_lengths(d) == b.sum_lb);
    }
}

TEST_CASE("catalog lookup") {
    const auto d63 = catalog_lookup(6, 3);
    REQUIRE(d63.has_value());
    CHECK(d63->L() == 6);
    CHECK(scope(*d63) == 36);
    CHECK(sum_of_lengths(*d63) == 186);

    const auto d54 = catalog_lookup(5, 4);
    REQUIRE(d54.has_value());
    CHECK(scope(*d54) == 51);
    CHECK(sum_of_lengths(*d54) == 233);

    const auto d12 = catalog_lookup(12, 4);
    REQUIRE(d12.has_value());
    CHECK(is_perfect(*d12));
    CHECK(scope(*d12) == 120);

    const auto d13 = catalog_lookup(13, 4);
    REQUIRE(d13.has_value());
    CHECK(scope(*d13) == 131);

    CHECK_FALSE(catalog_lookup(16, 3).has_value());
    CHECK_FALSE(catalog_lookup(9, 4).has_value());
    CHECK_FALSE(catalog_lookup(2, 1).has_value());

    // The (4,4) Pareto pair: scope-optimal entry plus the sum-optimal twin.
    const auto d44 = catalog_lookup(4, 4);
    REQUIRE(d44.has_value());
    CHECK(scope(*d44) == 41);
    CHECK(sum_of_lengths(*d44) == 153);
    const auto d44b = catalog_pareto_alternate(4, 4);
    REQUIRE(d44b.has_value());
    CHECK(scope(*d44b) == 42);
    CHECK(sum_of_lengths(*d44b) == 150);
    CHECK_FALSE(catalog_pareto_alternate(5, 4).has_value());
}

TEST_CASE("catalog verification and checksum") {
    const CatalogVerification v = verify_catalog();
    for (const auto& msg : v.messages) MESSAGE(msg);
    CHECK(v.ok());
    CHECK(v.entries == 7 + 15 + 10 + 2);
    CHECK(catalog_checksum() == 0x5edbd97ddbc358a2ull);
}

TEST_CASE("affine group structure") {
    const auto g2 = affine_group(2);
    REQUIRE(g2.size() == 2);
    CHECK(g2.perms[0] == std::vector<int>{0, 1});
    CHECK(g2.perms[1] == std::vector<int>{1, 0});

    const auto g4 = affine_group(4);
    REQUIRE(g4.size() == 12);
    CHECK(g4.perms[2] == std::vector<int>{2, 3, 0, 1});

    // Sharp 2-transitivity, exhaustive for every supported degree.
    for (int degree : {2, 3, 4, 5}) {
        const auto g = affine_group(degree);
        REQUIRE(g.size() == degree * (degree - 1));
        for (int w = 0; w < degree; ++w)
            for (int x = 0; x < degree; ++x) {
                if (w == x) continue;
                for (int y = 0; y < degree; ++y)
                    for (int z = 0; z < degree; ++z) {
                        if (y == z) continue;
                        int count = 0;
                        for (const auto& p : g.perms)
                            if (p[w] == y && p[x] == z) ++count;
                        CHECK(count == 1);
                    }
            }
    }
    CHECK_THROWS_AS(affine_group(6), std::invalid_argument);
}

TEST_CASE("combining construction") {
    const Dts base{{Ruler{0, 1, 4, 6}}};
    const Dts z = combine(base, base);
    CHECK(z.L() == 14);
    CHECK(is_perfect(z));
    CHECK(sum_of_lengths(z) == 1020);
    CHECK(predicted_combined_sum(1, 3, 6, 6) == 1020);
    CHECK(predicted_combined_sum(1, 1, 1, 1) == 10);

    const Dts z53 = combine(*catalog_lookup(4, 3), base);
    CHECK(z53.L() == 53);
    CHECK(is_perfect(z53));
    CHECK(sum_of_lengths(z53) ==
          predicted_combined_sum(1, 3, sum_of_lengths(*catalog_lookup(4, 3)), 6));

    const Dts imperfect{{Ruler{0, 2, 5}, Ruler{0, 6, 7}}};
    CHECK_THROWS_AS(combine(imperfect, base), std::invalid_argument);
}

TEST_CASE("combine sum matches prediction over random perfect catalog pairs") {
    // Perfect entries small enough to combine quickly.
    std::vector<Dts> pool;
    pool.push_back(Dts{{Ruler{0, 1}}});                       // (1,1)
    pool.push_back(Dts{{Ruler{0, 1}, Ruler{0, 2}}});          // (2,1)
    pool.push_back(Dts{{Ruler{0, 1}, Ruler{0, 2}, Ruler{0, 3}}});
    pool.push_back(*catalog_lookup(1, 2));
    pool.push_back(*catalog_lookup(4, 2));
    pool.push_back(*catalog_lookup(5, 2));
    pool.push_back(*catalog_lookup(1, 3));
    pool.push_back(*catalog_lookup(4, 3));
    pool.push_back(*catalog_lookup(5, 3));
    pool.push_back(*catalog_lookup(6, 3));
    pool.push_back(*catalog_lookup(6, 4));

    Rng rng(99);
    int done = 0;
    while (done < 20) {
        const Dts& X = pool[rng.below(pool.size())];
        const Dts& Y = pool[rng.below(pool.size())];
        if (X.M() != Y.M()) continue;
        REQUIRE(is_perfect(X));
        REQUIRE(is_perfect(Y));
        const Dts z = combine(X, Y);
        CHECK(is_perfect(z));
        CHECK(sum_of_lengths(z) ==
              predicted_combined_sum(Y.L(), X.M(), sum_of_lengths(X), sum_of_lengths(Y)));
        ++done;
    }
}

TEST_CASE("embedded M=3 and M=4 tables against bounds") {
    for (int L = 6; L <= 15; ++L) {
        const auto d = catalog_lookup(L, 3);
        REQUIRE(d.has_value());
        const BoundPair b = lower_bounds(L, 3);
        CHECK(scope(*d) == b.scope_lb);
        CHECK(sum_of_lengths(*d) == b.sum_lb);
    }
    for (int L : {5, 6, 7, 8, 10}) {
        const auto d = catalog_lookup(L, 4);
        REQUIRE(d.has_value());
        const BoundPair b = lower_bounds(L, 4);
        CHECK(scope(*d) == b.scope_lb);
        CHECK(sum_of_lengths(*d) == b.sum_lb);
    }
    // Exceptional small cases: recorded optima, above the bounds.
    for (int L : {2, 3, 4, 5}) {
        const auto d = catalog_lookup(L, 3);
        REQUIRE(d.has_value());
        const BoundPair b = lower_bounds(L, 3);
        CHECK(scope(*d) >= b.scope_lb);
        CHECK(sum_of_lengths(*d) >= b.sum_lb);
        CHECK(is_dts(*d));
    }
}

TEST_CASE("every catalog entry is a valid DTS meeting the bounds") {
    for (int M : {2, 3, 4})
        for (int L = 1; L <= 15; ++L) {
            const auto d = catalog_lookup(L, M);
            if (!d) continue;
            CHECK(is_dts(*d));
            const BoundPair b = lower_bounds(L, M);
            CHECK(scope(*d) >= b.scope_lb);
            CHECK(sum_of_lengths(*d) >= b.sum_lb);
        }
}
