#include <stdexcept>
#include <algorithm>
#include <set>

#include "doctest.h"
#include "hosc/rng.hpp"
#include "hosc/rulers.hpp"

using namespace hosc;

namespace {

// Independent oracle: all-pairs difference comparison, O((L(M+1))^4).
bool is_dts_brute_force(const Dts& dts) {
    std::vector<int> diffs;
    for (const Ruler& r : dts.rulers)
        for (size_t a = 0; a < r.marks.size(); ++a)
            for (size_t b = a + 1; b < r.marks.size(); ++b)
                diffs.push_back(std::abs(r.marks[b] - r.marks[a]));
    for (size_t x = 0; x < diffs.size(); ++x) {
        if (diffs[x] == 0) return false;
        for (size_t y = x + 1; y < diffs.size(); ++y)
            if (diffs[x] == diffs[y]) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("normalize sorts and shifts") {
    CHECK(normalize(Ruler{6, 4, 1, 0}) == Ruler{0, 1, 4, 6});
    CHECK(normalize(Ruler{0, 1, 4, 6}) == Ruler{0, 1, 4, 6});
    CHECK(normalize(Ruler{5, 7, 10}) == Ruler{0, 2, 5});
    CHECK(normalize(normalize(Ruler{9, 2, 30})) == normalize(Ruler{9, 2, 30}));
    CHECK_THROWS_AS(normalize(Ruler{1, 1, 2}), std::invalid_argument);
}

TEST_CASE("distance sets") {
    CHECK(distance_set(Ruler{0, 1, 3}) == std::set<int>{1, 2, 3});
    CHECK(distance_set(Ruler{0, 2, 5}) == std::set<int>{2, 3, 5});
    CHECK(distance_set(Ruler{0, 6, 7}) == std::set<int>{1, 6, 7});
    CHECK(distance_set(Ruler{0, 1}) == std::set<int>{1});
    CHECK_THROWS_AS(distance_set(Ruler{0, 1, 2}), std::invalid_argument);
}

TEST_CASE("golomb and dts predicates") {
    CHECK(is_golomb(Ruler{0, 1, 4, 9, 11}));
    CHECK_FALSE(is_golomb(Ruler{0, 1, 2}));
    CHECK(is_dts(Dts{{Ruler{0, 2, 5}, Ruler{0, 6, 7}}}));
    CHECK_FALSE(is_dts(Dts{{Ruler{0, 1, 3}, Ruler{0, 2, 3}}}));
}

TEST_CASE("scope, sum, perfect") {
    const Dts ex3{{Ruler{0, 2, 5}, Ruler{0, 6, 7}}};
    CHECK(scope(ex3) == 7);
    CHECK(sum_of_lengths(ex3) == 12);
    const Dts alt{{Ruler{0, 3, 4}, Ruler{0, 2, 7}}};
    CHECK(scope(alt) == 7);
    CHECK(sum_of_lengths(alt) == 11);
    CHECK(is_perfect(Dts{{Ruler{0, 1, 4, 6}}}));
    CHECK(scope(Dts{{Ruler{0, 1, 4, 6}}}) == 6);
    CHECK_FALSE(is_perfect(ex3));
}

TEST_CASE("lower bounds") {
    CHECK(lower_bounds(6, 3).scope_lb == 36);
    CHECK(lower_bounds(6, 3).sum_lb == 186);
    CHECK(lower_bounds(2, 2).scope_lb == 7);
    CHECK(lower_bounds(2, 2).sum_lb == 11);
    CHECK(lower_bounds(5, 4).scope_lb == 51);
    CHECK(lower_bounds(5, 4).sum_lb == 233);
    CHECK(lower_bounds(1, 1).scope_lb == 1);
    CHECK_THROWS_AS(lower_bounds(3, 5), std::invalid_argument);
}

TEST_CASE("uniform ruler worked example") {
    const Dts ex3{{Ruler{0, 6, 7}, Ruler{0, 2, 5}}};
    const UniformRuler u = uniform_ruler(ex3);
    CHECK(u.marks == std::vector<int>{0, 1, 5, 11, 12, 14});

    const UniformRuler classical = uniform_ruler(Dts{{Ruler{0, 1}}});
    CHECK(classical.marks == std::vector<int>{0, 1});

    const UniformRuler tdzc = uniform_ruler(Dts{{Ruler{0, 2}, Ruler{0, 1}}});
    CHECK(tdzc.marks == std::vector<int>{0, 1, 3, 4});

    CHECK_THROWS_AS(uniform_ruler(Dts{{Ruler{1, 2}}}), std::invalid_argument);
}

TEST_CASE("uniform ruler properties") {
    Rng rng(7);
    const Dts dts{{Ruler{0, 6, 7}, Ruler{0, 2, 5}}};
    const UniformRuler u = uniform_ruler(dts);
    const int L = dts.L();

    std::vector<int> residue_count(L, 0);
    for (int m : u.marks) ++residue_count[m % L];
    for (int c : residue_count) CHECK(c == dts.M() + 1);

    // Inverting the assignment reconstructs the DTS.
    Dts rebuilt;
    rebuilt.rulers.assign(L, Ruler{});
    for (size_t pos = 0; pos < u.marks.size(); ++pos) {
        auto [l, k] = u.assignment[pos];
        CHECK(u.marks[pos] == L * dts.rulers[l].marks[k] + l);
        rebuilt.rulers[l].marks.push_back((u.marks[pos] - l) / L);
    }
    for (auto& r : rebuilt.rulers) std::sort(r.marks.begin(), r.marks.end());
    CHECK(rebuilt == dts);
}

TEST_CASE("golomb distance count invariant") {
    Rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const int M = 1 + static_cast<int>(rng.below(4));
        Ruler r{0};
        int mark = 0;
        for (int k = 0; k < M; ++k) {
            mark += 1 + static_cast<int>(rng.below(40));
            r.marks.push_back(mark);
        }
        if (is_golomb(r))
            CHECK(static_cast<int>(distance_set(r).size()) == (M + 1) * M / 2);
    }
}

TEST_CASE("is_dts agrees with brute force on random instances") {
    Rng rng(2024);
    int checked = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        const int L = 1 + static_cast<int>(rng.below(6));
        const int M = 1 + static_cast<int>(rng.below(4));
        Dts d;
        for (int l = 0; l < L; ++l) {
            Ruler r{0};
            int mark = 0;
            for (int k = 0; k < M; ++k) {
                mark += 1 + static_cast<int>(rng.below(12));
                r.marks.push_back(mark);
            }
            d.rulers.push_back(r);
        }
        CHECK(is_dts(d) == is_dts_brute_force(d));
        ++checked;
    }
    CHECK(checked == 3000);
}

TEST_CASE("dts text format round trip") {
    const Dts d{{Ruler{0, 2, 5}, Ruler{0, 6, 7}}};
    const std::string text = "# a comment\n0 2 5\n\n0 6 7 # trailing comment\n";
    CHECK(parse_dts_text(text) == d);
    CHECK(parse_dts_text(format_dts_text(d)) == d);
    CHECK_THROWS_WITH_AS(parse_dts_text("0 1\n0 x 2\n"),
                         doctest::Contains("line 2"), std::invalid_argument);
}
