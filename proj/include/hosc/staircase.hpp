#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "hosc/hamming.hpp"
#include "hosc/nets.hpp"
#include "hosc/rulers.hpp"

namespace hosc {

// Square bit matrix with machine-word-packed rows.
struct Block {
    int side = 0;
    int words_per_row = 0;
    std::vector<std::uint64_t> words;

    Block() = default;
    explicit Block(int s)
        : side(s), words_per_row((s + 63) / 64),
          words(static_cast<size_t>(s) * words_per_row, 0) {}

    bool get(int i, int j) const {
        return (words[static_cast<size_t>(i) * words_per_row + (j >> 6)] >> (j & 63)) & 1;
    }
    void set(int i, int j, bool v) {
        auto& w = words[static_cast<size_t>(i) * words_per_row + (j >> 6)];
        const std::uint64_t m = std::uint64_t{1} << (j & 63);
        w = v ? (w | m) : (w & ~m);
    }
    bool all_zero() const {
        for (auto w : words)
            if (w) return false;
        return true;
    }
    bool operator==(const Block&) const = default;
};

struct ComponentSource {
    HammingPerm perm = HammingPerm::affine;
    std::optional<ExtHammingSpec> explicit_spec;  // overrides the auto-sized component
};

// A higher-order staircase code: (L,M)-DTS, (M+1, S/L)-net, component
// code, and the derived L-uniform ruler and permutation assignment.
struct CodeSpec {
    int L = 1;
    int M = 1;
    int Sp = 1;  // block sidelength S/L
    int C = 1;
    Dts dts;  // normalized, rulers descending by length
    UniformRuler uniform;
    NetFamily net;
    ExtHammingSpec component;
    std::vector<int> perm_assign;  // position k' -> net permutation index k

    int S() const { return L * Sp; }
    int K() const { return L * (M + 1); }
    int span_length() const { return (M + 1) * S(); }
    int max_delay() const { return uniform.marks.back(); }
    double rate() const { return 1.0 - static_cast<double>(component.r) / S(); }
};

CodeSpec build_spec(int L, int M, int Sp, int C, const Dts& dts, NetVariant net_variant,
                    const ComponentSource& component = {});

// Testing backdoor: assembles a spec without the DTS validity check so
// deliberately broken inputs can be fed to the scattering verifier.
CodeSpec build_spec_unchecked(int L, int M, int Sp, int C, const Dts& dts,
                              NetVariant net_variant, const ComponentSource& component = {});

struct VarRef {
    int chain;
    long long block;  // block index n
    int row;
    int col;
    bool operator==(const VarRef&) const = default;
};

// The (M+1)S variables of the span-n constraint on row i_prime of the
// given chain, ordered left to right (descending delay, then column).
std::vector<VarRef> constraint_support(const CodeSpec& spec, long long n, int i_prime,
                                       int chain = 0);

// Per-chain, per-residue ring buffers of past blocks.
struct EncoderState {
    std::vector<std::vector<std::deque<Block>>> buffers;  // [chain][residue]
    long long rect = 0;                                    // next rectangle; span n = L*rect

    const Block& past_block(const CodeSpec& spec, int chain, int residue, int depth) const {
        return buffers[chain][residue][depth - 1];
    }
};

EncoderState make_encoder_state(const CodeSpec& spec);

// info[c] holds Sp x (S-r) bits row-major for chain c. Returns the L new
// blocks per chain (block n-L+1+u at index u) and advances the state.
std::vector<std::vector<Block>> encode_rectangle(const CodeSpec& spec, EncoderState& state,
                                                 const std::vector<std::vector<std::uint8_t>>& info);

struct MemoryMetrics {
    long long encode_bits;
    long long decode_bits;
};
MemoryMetrics memory_metrics(const CodeSpec& spec);

// Exhaustive pairwise check that constraints within a window of the
// given number of spans share at most one variable.
bool check_scattering(const CodeSpec& spec, int window_spans);

int stall_bound(int M, int t);

// Constraint span in the worked-example notation, e.g.
// (B^pi_{n-14} | B^T_{n-12} | B^pi_{n-11} | B^T_{n-5} | B_{n-1} | B_n).
std::string span_layout_string(const CodeSpec& spec);

std::string code_spec_to_json(const CodeSpec& spec);
CodeSpec code_spec_from_json(const std::string& json_text);

}  // namespace hosc
