#include "hosc/hamming.hpp"

#include <stdexcept>

namespace hosc {

namespace {

struct AffineRow {
    int r_minus_1;
    std::uint32_t a, b, a_inv;
};

const AffineRow kAffineTable[] = {
    {3, 1, 1, 1},       {4, 3, 0, 11},      {5, 3, 0, 11},     {6, 3, 3, 43},
    {7, 5, 5, 77},      {8, 9, 11, 57},     {9, 19, 19, 27},   {10, 27, 27, 531},
    {11, 53, 53, 541},  {12, 89, 89, 2025}, {13, 163, 170, 4875},
    {14, 301, 308, 13989}, {15, 553, 553, 14873}, {16, 1065, 1155, 55321},
};

}  // namespace

AffineParams affine_table_entry(int r_minus_1) {
    for (const AffineRow& row : kAffineTable)
        if (row.r_minus_1 == r_minus_1) return AffineParams{row.a, row.b, row.a_inv};
    throw std::invalid_argument("affine_table_entry: r-1 must be in 3..16");
}

const std::vector<BooleanRow>& boolean_table() {
    static const std::vector<BooleanRow> rows = {
        {2, 0}, {2, 0}, {3, 0}, {3, 1}, {3, 2}, {2, 0}, {4, 0},
        {4, 1}, {4, 2}, {4, 3}, {4, 4}, {4, 5}, {4, 6}, {3, 0},
    };  // bit indices 2..15
    return rows;
}

static void check_r(int r) {
    if (r < 4 || r > 17) throw std::invalid_argument("ExtHammingSpec: r-1 must be in 3..16");
}

ExtHammingSpec natural_spec(int r, int shortening) {
    check_r(r);
    ExtHammingSpec s;
    s.r = r;
    s.shortening = shortening;
    s.perm = HammingPerm::natural;
    return s;
}

ExtHammingSpec affine_spec(int r, int shortening) {
    check_r(r);
    ExtHammingSpec s;
    s.r = r;
    s.shortening = shortening;
    s.perm = HammingPerm::affine;
    s.affine = affine_table_entry(r - 1);
    return s;
}

ExtHammingSpec affine_spec_with(int r, std::uint32_t a, std::uint32_t b, int shortening) {
    check_r(r);
    if ((a & 1) == 0) throw std::invalid_argument("affine_spec_with: a must be odd");
    ExtHammingSpec s;
    s.r = r;
    s.shortening = shortening;
    s.perm = HammingPerm::affine;
    const std::uint32_t mask = (1u << (r - 1)) - 1;
    std::uint32_t inv = 1;
    while (((inv * a) & mask) != 1) inv += 2;
    s.affine = AffineParams{a & mask, b & mask, inv & mask};
    return s;
}

ExtHammingSpec boolean_spec(int r, int shortening) {
    check_r(r);
    ExtHammingSpec s;
    s.r = r;
    s.shortening = shortening;
    s.perm = HammingPerm::boolean_fn;
    return s;
}

namespace {

std::uint32_t boolean_forward(int width, std::uint32_t j) {
    const auto& rows = boolean_table();
    std::uint32_t c = j & 3;  // bits 0 and 1 pass through
    for (int i = 2; i < width; ++i) {
        const BooleanRow& row = rows[i - 2];
        std::uint32_t prod = 1;
        for (int u = 0; u < row.d; ++u) prod &= ((row.smask >> u) ^ (j >> u)) & 1;
        c |= (((j >> i) & 1) ^ prod) << i;
    }
    return c;
}

std::uint32_t boolean_inverse(int width, std::uint32_t c) {
    const auto& rows = boolean_table();
    std::uint32_t b = c & 3;
    for (int i = 2; i < width; ++i) {
        const BooleanRow& row = rows[i - 2];
        std::uint32_t prod = 1;
        for (int u = 0; u < row.d; ++u) prod &= ((row.smask >> u) ^ (b >> u)) & 1;
        b |= (((c >> i) & 1) ^ prod) << i;
    }
    return b;
}

}  // namespace

std::uint32_t tau(const ExtHammingSpec& spec, std::uint32_t j) {
    const std::uint32_t mask = (1u << (spec.r - 1)) - 1;
    const std::uint32_t shifted = (j + static_cast<std::uint32_t>(spec.shortening)) & mask;
    switch (spec.perm) {
        case HammingPerm::natural: return shifted;
        case HammingPerm::affine:
            return (spec.affine.a * shifted + spec.affine.b) & mask;
        case HammingPerm::boolean_fn: return boolean_forward(spec.r - 1, shifted);
    }
    return shifted;
}

std::uint32_t tau_inv(const ExtHammingSpec& spec, std::uint32_t j) {
    const std::uint32_t mask = (1u << (spec.r - 1)) - 1;
    std::uint32_t base;
    switch (spec.perm) {
        case HammingPerm::natural: base = j & mask; break;
        case HammingPerm::affine:
            base = (spec.affine.a_inv * (j - spec.affine.b)) & mask;
            break;
        case HammingPerm::boolean_fn: base = boolean_inverse(spec.r - 1, j & mask); break;
    }
    return (base - static_cast<std::uint32_t>(spec.shortening)) & mask;
}

std::uint32_t column(const ExtHammingSpec& spec, int j) {
    if (j < 0 || j >= spec.length()) throw std::out_of_range("column: position out of range");
    return 2 * tau(spec, static_cast<std::uint32_t>(j)) + 1;
}

std::uint32_t syndrome_of(const ExtHammingSpec& spec, const std::set<int>& error_positions) {
    std::uint32_t s = 0;
    for (int j : error_positions) s ^= column(spec, j);
    return s;
}

DecodeResult decode(const ExtHammingSpec& spec, std::uint32_t syndrome) {
    if (syndrome == 0) return {DecodeKind::NoError, -1};
    if ((syndrome & 1) == 0) return {DecodeKind::Detected, -1};
    const std::uint32_t loc = syndrome >> 1;
    const std::uint32_t cand = tau_inv(spec, loc);
    if (cand < static_cast<std::uint32_t>(spec.length()))
        return {DecodeKind::Correct, static_cast<int>(cand)};
    return {DecodeKind::Detected, -1};  // points into the shortened prefix
}

bool systematize_check(const ExtHammingSpec& spec) {
    const int n = spec.length();
    const int r = spec.r;
    if (n < r) return false;
    std::vector<std::uint32_t> cols(r);
    for (int u = 0; u < r; ++u) cols[u] = column(spec, n - r + u);
    // Gaussian elimination over F_2 on r columns of r bits.
    int rank = 0;
    for (int bit = r - 1; bit >= 0 && rank < r; --bit) {
        int pivot = -1;
        for (int u = rank; u < r; ++u)
            if ((cols[u] >> bit) & 1) {
                pivot = u;
                break;
            }
        if (pivot < 0) continue;
        std::swap(cols[rank], cols[pivot]);
        for (int u = 0; u < r; ++u)
            if (u != rank && ((cols[u] >> bit) & 1)) cols[u] ^= cols[rank];
        ++rank;
    }
    return rank == r;
}

std::pair<std::uint32_t, std::uint32_t> find_affine(int r) {
    check_r(r);
    const std::uint32_t size = 1u << (r - 1);
    for (std::uint32_t a = 1; a < size; a += 2)
        for (std::uint32_t b = 0; b < size; ++b) {
            ExtHammingSpec s = affine_spec_with(r, a, b, 0);
            if (systematize_check(s)) return {a, b};
        }
    throw std::runtime_error("find_affine: search exhausted");
}

std::vector<std::uint8_t> encode_parity(const ExtHammingSpec& spec,
                                        const std::vector<std::uint8_t>& info_bits) {
    const int n = spec.length();
    const int r = spec.r;
    if (static_cast<int>(info_bits.size()) != n - r)
        throw std::invalid_argument("encode_parity: info size mismatch");
    if (!systematize_check(spec))
        throw std::invalid_argument("encode_parity: spec is not systematizable");

    std::uint32_t s = 0;
    for (int j = 0; j < n - r; ++j)
        if (info_bits[j]) s ^= column(spec, j);

    // Solve T * p = s by elimination with an identity tag.
    std::vector<std::uint32_t> cols(r), tag(r);
    for (int u = 0; u < r; ++u) {
        cols[u] = column(spec, n - r + u);
        tag[u] = 1u << u;
    }
    std::vector<std::uint8_t> parity(r, 0);
    for (int bit = r - 1; bit >= 0; --bit) {
        int pivot = -1;
        for (int u = 0; u < r; ++u)
            if ((cols[u] >> bit) & 1) {
                pivot = u;
                break;
            }
        if (pivot < 0) continue;  // unreachable once systematize_check passed
        // Reduce other columns and the target in lockstep.
        for (int u = 0; u < r; ++u)
            if (u != pivot && ((cols[u] >> bit) & 1)) {
                cols[u] ^= cols[pivot];
                tag[u] ^= tag[pivot];
            }
        if ((s >> bit) & 1) {
            s ^= cols[pivot];
            for (int u = 0; u < r; ++u)
                if ((tag[pivot] >> u) & 1) parity[u] ^= 1;
        }
        cols[pivot] = 0;  // retire the pivot
        tag[pivot] = 0;
    }
    return parity;
}

std::vector<std::vector<int>> matrix_rows(const ExtHammingSpec& spec, int first_col, int ncols) {
    std::vector<std::vector<int>> rows(spec.r, std::vector<int>(ncols, 0));
    for (int c = 0; c < ncols; ++c) {
        const std::uint32_t v = column(spec, first_col + c);
        for (int bit = 0; bit < spec.r; ++bit)
            rows[spec.r - 1 - bit][c] = (v >> bit) & 1;
    }
    return rows;
}

}  // namespace hosc
