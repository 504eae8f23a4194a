#include "hosc/dts_catalog.hpp"

#include <algorithm>
#include <stdexcept>

namespace hosc {

#include "dts_catalog_data.inc"

// Optimal Golomb rulers of order 1..10.
static const std::vector<std::vector<int>> kOptimalGolomb = {
    {0},
    {0, 1},
    {0, 1, 3},
    {0, 1, 4, 6},
    {0, 1, 4, 9, 11},
    {0, 1, 4, 10, 12, 17},
    {0, 1, 4, 10, 18, 23, 25},
    {0, 1, 4, 9, 15, 22, 32, 34},
    {0, 1, 5, 12, 25, 27, 35, 41, 44},
    {0, 1, 6, 10, 23, 26, 34, 41, 53, 55},
};

Ruler optimal_golomb_ruler(int order) {
    if (order < 1 || order > static_cast<int>(kOptimalGolomb.size()))
        throw std::invalid_argument("optimal_golomb_ruler: order must be in 1..10");
    return Ruler(kOptimalGolomb[order - 1]);
}

static Dts table_to_dts(const std::vector<std::vector<int>>& t) {
    Dts d;
    d.rulers.reserve(t.size());
    for (const auto& row : t) d.rulers.emplace_back(row);
    return d;
}

Dts skolem_okeefe(int L) {
    if (L < 1) throw std::invalid_argument("skolem_okeefe: L must be positive");
    if (L <= 7) return table_to_dts(kTablesM2[L - 1]);

    Dts d;
    auto add = [&d](int a, int b) { d.rulers.push_back(Ruler{0, a, b}); };
    const int m = L / 4;
    switch (L % 4) {
        case 0:  // Skolem, L = 4m with m > 1
            add(4 * m - 1, 10 * m);
            add(2 * m - 1, 8 * m - 1);
            add(1, 5 * m + 1);
            for (int i = 0; i <= 2 * m - 1; ++i) add(4 * m - 2 * i, 12 * m - i);
            for (int i = 1; i <= m - 1; ++i) add(4 * m - 1 - 2 * i, 8 * m - 1 - i);
            for (int i = 0; i <= m - 3; ++i) add(2 * m - 3 - 2 * i, 7 * m - 1 - i);
            break;
        case 1:  // Skolem, L = 4m+1 with m > 1
            add(4 * m + 1, 10 * m + 3);
            add(2 * m - 1, 8 * m + 2);
            add(1, 5 * m + 3);
            for (int i = 0; i <= 2 * m - 1; ++i) add(4 * m - 2 * i, 12 * m + 3 - i);
            for (int i = 1; i <= m; ++i) add(4 * m + 1 - 2 * i, 8 * m + 2 - i);
            for (int i = 1; i <= m - 2; ++i) add(2 * m - 1 - 2 * i, 7 * m + 2 - i);
            break;
        case 2:  // O'Keefe, L = 4m+2 with m > 1
            add(4 * m + 1, 10 * m + 4);
            add(2 * m + 1, 10 * m + 5);
            add(4 * m + 2, 12 * m + 7);
            add(1, 11 * m + 6);
            for (int i = 1; i <= 2 * m; ++i) add(4 * m + 2 - 2 * i, 8 * m + 4 - i);
            for (int i = 1; i <= m - 1; ++i) add(4 * m + 1 - 2 * i, 12 * m + 6 - i);
            for (int i = 1; i <= m - 1; ++i) add(2 * m + 1 - 2 * i, 11 * m + 5 - i);
            break;
        default:  // O'Keefe, L = 4m+3 with m > 1
            add(2 * m + 3, 7 * m + 6);
            add(1, 5 * m + 5);
            add(2 * m + 1, 8 * m + 6);
            add(4 * m + 2, 10 * m + 8);
            add(4 * m + 3, 12 * m + 10);
            for (int i = 1; i <= 2 * m; ++i) add(4 * m + 2 - 2 * i, 12 * m + 9 - i);
            for (int i = 1; i <= m - 1; ++i) add(4 * m + 3 - 2 * i, 8 * m + 6 - i);
            for (int i = 1; i <= m - 1; ++i) add(2 * m + 1 - 2 * i, 7 * m + 6 - i);
            break;
    }
    return d;
}

std::optional<Dts> catalog_lookup(int L, int M) {
    if (L < 1) return std::nullopt;
    switch (M) {
        case 2:
            return skolem_okeefe(L);
        case 3:
            if (L <= 15) return table_to_dts(kTablesM3[L - 1]);
            return std::nullopt;
        case 4:
            if (L <= 4) return table_to_dts(kTablesM4[L - 1]);
            if (L <= 8) return table_to_dts(kTablesM4[L]);  // offset by the Pareto twin
            if (L == 10) return table_to_dts(kTablesM4[9]);
            if (L == 12) return table_to_dts(kPerfect12_4);
            if (L == 13) return table_to_dts(kMinScope13_4);
            return std::nullopt;
        default:
            return std::nullopt;
    }
}

std::optional<Dts> catalog_pareto_alternate(int L, int M) {
    if (L == 4 && M == 4) return table_to_dts(kTablesM4[4]);
    return std::nullopt;
}

Sharply2TransitiveGroup affine_group(int degree) {
    Sharply2TransitiveGroup g;
    g.degree = degree;
    if (degree == 4) {
        for (size_t c = 0; c < kAffineArrayF4[0].size(); ++c) {
            std::vector<int> p(4);
            for (int i = 0; i < 4; ++i) p[i] = kAffineArrayF4[i][c];
            g.perms.push_back(std::move(p));
        }
        return g;
    }
    if (degree != 2 && degree != 3 && degree != 5)
        throw std::invalid_argument("affine_group: degree must be a prime power in {2,3,4,5}");
    for (int a = 1; a < degree; ++a)
        for (int b = 0; b < degree; ++b) {
            std::vector<int> p(degree);
            for (int x = 0; x < degree; ++x) p[x] = (a * x + b) % degree;
            g.perms.push_back(std::move(p));
        }
    return g;
}

Dts combine(const Dts& X_in, const Dts& Y_in) {
    const Dts X = normalize(X_in);
    const Dts Y = normalize(Y_in);
    if (X.M() != Y.M()) throw std::invalid_argument("combine: degree mismatch");
    const int M = X.M();
    if (!is_perfect(X) || !is_perfect(Y))
        throw std::invalid_argument("combine: inputs must be perfect DTSs");
    const Sharply2TransitiveGroup g = affine_group(M + 1);

    const long long L2 = Y.L();
    const long long scale = L2 * M * (M + 1) + 1;

    Dts z;
    for (const Ruler& y : Y.rulers) z.rulers.push_back(y);
    for (const Ruler& x : X.rulers) {
        Ruler s;
        for (int v : x.marks) s.marks.push_back(static_cast<int>(scale * v));
        z.rulers.push_back(std::move(s));
    }
    for (const Ruler& x : X.rulers)
        for (const Ruler& y : Y.rulers)
            for (const auto& rho : g.perms) {
                Ruler w;
                for (int v = 0; v <= M; ++v)
                    w.marks.push_back(static_cast<int>(scale * x.marks[v]) + y.marks[rho[v]]);
                z.rulers.push_back(normalize(w));
            }
    return z;
}

long long predicted_combined_sum(long long L2, long long M, long long S1, long long S2) {
    const long long f = L2 * M * (M + 1) + 1;
    return f * f * S1 + S2;
}

static void fnv_accumulate(std::uint64_t& h, int v) {
    auto u = static_cast<std::uint32_t>(v);
    for (int b = 0; b < 4; ++b) {
        h ^= (u >> (8 * b)) & 0xff;
        h *= 0x100000001b3ull;
    }
}

std::uint64_t catalog_checksum() {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const auto* group : {&kTablesM2, &kTablesM3, &kTablesM4})
        for (const auto& table : *group)
            for (const auto& row : table)
                for (int v : row) fnv_accumulate(h, v);
    for (const auto* table : {&kPerfect12_4, &kMinScope13_4, &kAffineArrayF4})
        for (const auto& row : *table)
            for (int v : row) fnv_accumulate(h, v);
    return h;
}

CatalogVerification verify_catalog() {
    CatalogVerification out;
    auto check = [&out](const std::string& name, const Dts& d, long long want_scope,
                        long long want_sum) {
        ++out.entries;
        if (!is_dts(d)) {
            ++out.failures;
            out.messages.push_back(name + ": not a valid DTS");
            return;
        }
        if (scope(d) != want_scope || sum_of_lengths(d) != want_sum) {
            ++out.failures;
            out.messages.push_back(name + ": scope/sum mismatch");
        }
    };

    // Recorded optima for the small cases where the bounds are not attained.
    for (int L = 1; L <= 7; ++L) {
        const auto b = lower_bounds(L, 2);
        check("(L=" + std::to_string(L) + ",M=2)", table_to_dts(kTablesM2[L - 1]), b.scope_lb,
              b.sum_lb);
    }
    static const long long m3_opt[][2] = {{6, 6},    {13, 24},  {19, 50},  {24, 85},  {30, 131},
                                          {36, 186}, {42, 252}, {48, 328}, {54, 414}, {60, 510},
                                          {66, 616}, {72, 732}, {78, 858}, {84, 994}, {90, 1140}};
    for (int L = 1; L <= 15; ++L)
        check("(L=" + std::to_string(L) + ",M=3)", table_to_dts(kTablesM3[L - 1]), m3_opt[L - 1][0],
              m3_opt[L - 1][1]);
    static const long long m4_opt[][3] = {{1, 11, 11},  {2, 22, 40},  {3, 32, 88},  {4, 41, 153},
                                          {4, 42, 150}, {5, 51, 233}, {6, 60, 333}, {7, 71, 452},
                                          {8, 80, 588}, {10, 100, 915}};
    for (int i = 0; i < 10; ++i)
        check("(L=" + std::to_string(m4_opt[i][0]) + ",M=4)#" + std::to_string(i),
              table_to_dts(kTablesM4[i]), m4_opt[i][1], m4_opt[i][2]);
    check("(L=12,M=4)", table_to_dts(kPerfect12_4), 120, 1350);
    check("(L=13,M=4)", table_to_dts(kMinScope13_4), 131, 1599);

    if (catalog_checksum() != 0x5edbd97ddbc358a2ull) {
        ++out.failures;
        out.messages.push_back("catalog checksum mismatch");
    }
    return out;
}

}  // namespace hosc
