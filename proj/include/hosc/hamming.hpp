#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace hosc {

// Systematizing permutation families for extended Hamming parity-check
// matrices: affine maps a*j + b over Z_{2^(r-1)}, the Boolean-function
// maps of the gate-level construction, or the natural (identity) order.
enum class HammingPerm { natural, affine, boolean_fn };

struct AffineParams {
    std::uint32_t a = 1;
    std::uint32_t b = 0;
    std::uint32_t a_inv = 1;
};

// Single-error-correcting double-error-detecting extended Hamming
// component, shortened in the first s positions of a 2^(r-1) parent.
struct ExtHammingSpec {
    int r = 4;          // parity bits
    int shortening = 0; // s
    HammingPerm perm = HammingPerm::natural;
    AffineParams affine;
    int t = 1;          // carried so complexity metrics stay parametric

    int parent_length() const { return 1 << (r - 1); }
    int length() const { return parent_length() - shortening; }
    int dimension() const { return length() - r; }
};

enum class DecodeKind { NoError, Correct, Detected };

struct DecodeResult {
    DecodeKind kind = DecodeKind::NoError;
    int position = -1;  // set for Correct

    bool operator==(const DecodeResult&) const = default;
};

// Table of systematizing affine permutation parameters, r-1 in {3..16}.
AffineParams affine_table_entry(int r_minus_1);

// Boolean-map parameter rows (d, s-mask) for bit indices i in {2..15}.
struct BooleanRow {
    int d;
    std::uint32_t smask;
};
const std::vector<BooleanRow>& boolean_table();

ExtHammingSpec natural_spec(int r, int shortening = 0);
ExtHammingSpec affine_spec(int r, int shortening = 0);          // Table-driven a, b
ExtHammingSpec affine_spec_with(int r, std::uint32_t a, std::uint32_t b, int shortening = 0);
ExtHammingSpec boolean_spec(int r, int shortening = 0);

// Forward / inverse systematizing permutation on the parent index set
// [2^(r-1)], with the shortening shift folded in (affine: b -> b + a*s).
std::uint32_t tau(const ExtHammingSpec& spec, std::uint32_t j);
std::uint32_t tau_inv(const ExtHammingSpec& spec, std::uint32_t j);

// Parity-check column at position j of the (permuted, shortened) code as
// an r-bit integer: bit 0 is the all-ones (overall parity) row and bits
// r-1..1 are the error-location field, most significant at the top of
// the printed matrix.
std::uint32_t column(const ExtHammingSpec& spec, int j);

std::uint32_t syndrome_of(const ExtHammingSpec& spec, const std::set<int>& error_positions);

DecodeResult decode(const ExtHammingSpec& spec, std::uint32_t syndrome);

// True iff the last r columns form an invertible r x r matrix over F_2.
bool systematize_check(const ExtHammingSpec& spec);

// Lexicographic search over odd a, then b, for a systematizing affine pair.
std::pair<std::uint32_t, std::uint32_t> find_affine(int r);

// Parity bits making (info | parity) a codeword; requires a
// systematizable spec.
std::vector<std::uint8_t> encode_parity(const ExtHammingSpec& spec,
                                        const std::vector<std::uint8_t>& info_bits);

// Rows of the parity-check matrix restricted to the given columns, as
// printed (top row first).
std::vector<std::vector<int>> matrix_rows(const ExtHammingSpec& spec, int first_col, int ncols);

}  // namespace hosc
