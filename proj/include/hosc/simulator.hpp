#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "hosc/rng.hpp"
#include "hosc/staircase.hpp"

namespace hosc {

// Sliding-window simulation parameters. A frame is F rectangles; the
// information portion of the last W is zero and only parity is sent.
struct SimConfig {
    int W = 16;
    int I = 1;
    long long F = 64;
    std::uint64_t seed = 1;
    long long min_bits = 1'000'000;
    long long min_errors = 0;
    long long max_bits = 0;  // 0: stop at min_bits regardless of errors
    int threads = 1;
};

struct FrameStats {
    std::uint64_t counted_bits = 0;
    std::uint64_t bit_errors = 0;
};

// Bernoulli(eps) error positions over [0, n_bits) via geometric jumps.
std::vector<long long> sample_errors(double eps, long long n_bits, Rng& rng);

struct ErrorPos {
    int chain;
    long long rect;
    long long bit;  // row-major over the rectangle: i * (L*Sp) + u*Sp + j
};

// Syndrome-domain decoder state for one frame of one code. Reusable
// across frames; owns no shared mutable state.
class FrameSim {
  public:
    FrameSim(const CodeSpec& spec, const SimConfig& cfg);

    // One terminated frame over a BSC(eps); residual errors are counted
    // on the rectangles that exit the window (the first F - W).
    FrameStats run_channel_frame(double eps, std::uint64_t frame_seed);

    // One frame with an explicit error pattern instead of channel noise.
    FrameStats run_pattern_frame(const std::vector<ErrorPos>& errors);

    // Transmitted-bit count of rectangle v (all chains).
    long long transmitted_bits(long long v) const;

    // Debug oracle: recomputes every syndrome from the outstanding-error
    // state and compares with the table.
    bool syndromes_consistent() const;

    const CodeSpec& spec() const { return spec_; }

  private:
    void reset();
    void toggle(int chain, long long block, int i, int j);
    void apply_syndrome_updates(int chain, long long block, int i, int j);
    void inject(int chain, long long rect, long long bit);
    bool sweep_window(long long v);  // one iteration; true if anything changed
    void decode_position(long long v);
    FrameStats finish();

    CodeSpec spec_;
    SimConfig cfg_;

    // Derived constants.
    int K_, L_, Sp_, C_, r_, span_len_;
    long long F_;
    int group_cols_;  // L * Sp
    long long rect_words_;

    // Per-k' tables.
    std::vector<int> d_;        // uniform marks
    std::vector<int> perm_;     // k' -> k
    std::vector<std::vector<std::pair<int, int>>> residue_kp_;  // m%L -> (k', d-L+1)
    std::vector<std::uint32_t> columns_;     // component columns
    std::vector<std::uint32_t> candidate_;   // syndrome location -> corrected position
    std::vector<Mat2> fwd_, inv_;            // net matrices mod Sp

    // Frame state.
    std::vector<std::uint64_t> errors_;      // [v][c] bit matrices, flattened
    std::vector<std::uint32_t> syndromes_;   // [v][c][i']
    std::vector<std::int32_t> span_nonzero_; // per span v
    std::unordered_set<std::uint64_t> phantom_;  // flips landing before the frame
};

struct PointReport {
    double gap_db = 0.0;
    double epsilon = 0.0;
    std::uint64_t bits = 0;
    std::uint64_t bit_errors = 0;
    double ber = 0.0;  // 1/bits when no errors were observed
    long long frames = 0;
    std::uint64_t seed = 0;
    double wall_s = 0.0;
};

struct SweepPoint {
    double gap_db = 0.0;   // NaN allowed when epsilon given directly
    double epsilon = 0.0;  // resolved before simulation
};

struct SimReport {
    std::vector<PointReport> points;
    std::string csv() const;
};

// Frames are independent work units; the committed frame prefix makes the
// report identical for any worker count.
SimReport run_campaign(const CodeSpec& spec, const std::vector<SweepPoint>& sweep,
                       const SimConfig& cfg);

struct ComplexityMetrics {
    long long latency_bits;
    long long decodings_per_iter;
    long long score;
};
ComplexityMetrics complexity_metrics(const CodeSpec& spec, const SimConfig& cfg);

}  // namespace hosc
