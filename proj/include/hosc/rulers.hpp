#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace hosc {

// Ordered set of distinct integer marks (d_0,...,d_M); order = M+1.
// Normalized form: strictly increasing with d_0 = 0.
struct Ruler {
    std::vector<int> marks;

    Ruler() = default;
    explicit Ruler(std::vector<int> m) : marks(std::move(m)) {}
    Ruler(std::initializer_list<int> m) : marks(m) {}

    int order() const { return static_cast<int>(marks.size()); }
    // Largest mark of a normalized ruler.
    int length() const { return marks.empty() ? 0 : marks.back(); }
    bool operator==(const Ruler&) const = default;
};

// L Golomb rulers of order M+1 with pairwise disjoint distance sets.
struct Dts {
    std::vector<Ruler> rulers;

    Dts() = default;
    explicit Dts(std::vector<Ruler> r) : rulers(std::move(r)) {}
    Dts(std::initializer_list<Ruler> r) : rulers(r) {}

    int L() const { return static_cast<int>(rulers.size()); }
    int M() const { return rulers.empty() ? 0 : rulers.front().order() - 1; }
    bool operator==(const Dts&) const = default;
};

// Order-L(M+1) ruler with marks {L*d_k^(l) + l}; assignment maps each
// position k' to the base-ruler pair (l, k) it came from.
struct UniformRuler {
    int L = 0;
    int M = 0;
    std::vector<int> marks;
    std::vector<std::pair<int, int>> assignment;  // position -> (l, k)
};

// Sort followed by subtraction of the least mark. Throws on duplicates.
Ruler normalize(const Ruler& ruler);
Dts normalize(const Dts& dts);

// Set of positive differences of a normalized Golomb ruler; throws
// when a difference repeats.
std::set<int> distance_set(const Ruler& ruler);

bool is_golomb(const Ruler& ruler);
bool is_dts(const Dts& dts);

int scope(const Dts& dts);
long long sum_of_lengths(const Dts& dts);
bool is_perfect(const Dts& dts);
bool is_perfect(const Ruler& ruler);

// Paper lower-bound pair (scope, sum-of-lengths) for M in {1,2,3,4}.
struct BoundPair {
    long long scope_lb;
    long long sum_lb;
};
BoundPair lower_bounds(int L, int M);

// Builds the L-uniform ruler from a normalized DTS, respecting the
// caller-provided ruler order. With canonicalize set, rulers are first
// sorted descending by length (ties kept in input order) so that the
// largest uniform mark is L*d_M^(0).
UniformRuler uniform_ruler(const Dts& dts, bool canonicalize = false);

// Rulers reordered descending by length, stable on ties.
Dts sorted_descending_by_length(const Dts& dts);

// DTS text format: one ruler per line, space-separated marks, '#' comments.
Dts parse_dts_text(std::istream& in);
Dts parse_dts_text(const std::string& text);
std::string format_dts_text(const Dts& dts);

}  // namespace hosc
