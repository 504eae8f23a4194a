#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hosc/rulers.hpp"
#include "hosc/wide_bitset.hpp"

namespace hosc {

// Per-ruler bitset state for the fast conditional mark insertion step.
struct RulerState {
    WideBitset nat_ruler;   // set of marks; always contains 0
    WideBitset rev_ruler;   // contains i iff nat_ruler contains largest_mark - i
    WideBitset distances;   // this ruler's distance set
    int largest_mark = 0;
    int mark_count = 1;

    RulerState() {
        nat_ruler = WideBitset::one();
        rev_ruler = WideBitset::one();
    }
};

struct SearchState {
    std::vector<RulerState> rulers;
    WideBitset used_distances;  // union of all rulers' distance sets
    int width;                  // logical N; marks must stay below it

    SearchState(int L, int N = WideBitset::capacity());

    // Algorithm-1 fast conditional mark insertion. Returns true and
    // updates the mirrored structures on success; leaves the state
    // untouched on a bisection or distance collision.
    bool try_insert_mark(int ruler_index, int mark);

    // Removes a non-zero mark, rebuilding the ruler's mirrored
    // structures and the global distance union.
    void delete_mark(int ruler_index, int mark);

    // Resets a ruler to the singleton {0}.
    void delete_ruler(int ruler_index);

    Dts to_dts() const;

  private:
    void rebuild_ruler(int ruler_index, const std::vector<int>& marks);
    void rebuild_used_distances();
};

// Gaussian model for the i-th mark of a ruler, i in [M+1].
struct MarkModel {
    std::vector<double> mean;
    std::vector<double> variance;

    int order() const { return static_cast<int>(mean.size()); }
};

// Per-index sample statistics over the rulers of the given DTSs,
// scaled by (scale, scale^2). With sum_threshold set, only samples
// whose sum-of-lengths falls below it are kept.
MarkModel fit_mark_model(const std::vector<Dts>& samples, double scale,
                         std::optional<double> sum_threshold = std::nullopt);

enum class SearchObjective { scope, scope_then_sum };

struct SearchParams {
    int L = 1;
    int M = 1;
    int max_scope = 0;
    SearchObjective objective = SearchObjective::scope;
    std::optional<MarkModel> model;
    std::uint64_t seed = 1;
    long long budget = 50'000'000;  // insertion attempts
    int attempts_per_mark = 200;    // A: failures before deleting a mark
    int deletions_per_ruler = 20;   // B: deletions before dropping a ruler
    int restart_after_deletions = 50;  // full restart cadence; 0 disables
    int threads = 1;
};

// Stochastic local search; returns the first DTS with scope <= max_scope
// (under scope_then_sum, the best sum found within budget). Deterministic
// given (seed, threads).
std::optional<Dts> search_dts(const SearchParams& params);

// The three-step pipeline: uniform-model warmup at a relaxed scope,
// model refit, then the target search (iterated with decreasing sum
// targets under scope_then_sum).
std::optional<Dts> search_dts_with_model_pipeline(const SearchParams& params);

}  // namespace hosc
