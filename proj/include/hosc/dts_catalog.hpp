#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hosc/rulers.hpp"

namespace hosc {

// Group of permutations of [degree] in which every ordered pair of
// distinct elements maps to every other such pair exactly once.
// Realized by the invertible affine maps x -> a*x + b of F_degree.
struct Sharply2TransitiveGroup {
    int degree = 0;
    std::vector<std::vector<int>> perms;  // M(M+1) permutations of [degree]

    int size() const { return static_cast<int>(perms.size()); }
};

// Optimal Golomb ruler of the given order (1..10).
Ruler optimal_golomb_ruler(int order);

// Scope- and sum-of-lengths-optimal (L,2)-DTS for any L >= 1: small table
// for L <= 7, Skolem / O'Keefe parametric families beyond.
Dts skolem_okeefe(int L);

// Embedded optimum tables: M=2 (all L, via skolem_okeefe), M=3 (L <= 15),
// M=4 (L <= 10 except 9, plus the perfect (12,4) and minimum-scope (13,4)).
// For (4,4) returns the scope-optimal entry of the printed Pareto pair;
// the sum-optimal twin is available via catalog_pareto_alternate.
std::optional<Dts> catalog_lookup(int L, int M);
std::optional<Dts> catalog_pareto_alternate(int L, int M);

Sharply2TransitiveGroup affine_group(int degree);

// Combining construction for perfect DTSs: output is a perfect
// (L1*L2*M(M+1) + L1 + L2, M)-DTS with rulers normalized, ordered as
// Y, scaled X, then the cross terms in (i, j, k) lexicographic order.
Dts combine(const Dts& X, const Dts& Y);

// Sum-of-lengths of combine(X, Y) given the input sums.
long long predicted_combined_sum(long long L2, long long M, long long S1, long long S2);

// FNV-1a over the flattened embedded tables; frozen in tests.
std::uint64_t catalog_checksum();

struct CatalogVerification {
    int entries = 0;
    int failures = 0;
    std::vector<std::string> messages;
    bool ok() const { return failures == 0; }
};

// Revalidates every embedded entry: DTS property plus the recorded
// scope / sum-of-lengths values.
CatalogVerification verify_catalog();

}  // namespace hosc
