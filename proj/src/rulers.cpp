#include "hosc/rulers.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hosc {

Ruler normalize(const Ruler& ruler) {
    Ruler out = ruler;
    std::sort(out.marks.begin(), out.marks.end());
    if (std::adjacent_find(out.marks.begin(), out.marks.end()) != out.marks.end())
        throw std::invalid_argument("invalid ruler: duplicate marks");
    if (!out.marks.empty()) {
        const int lo = out.marks.front();
        for (int& m : out.marks) m -= lo;
    }
    return out;
}

Dts normalize(const Dts& dts) {
    Dts out;
    out.rulers.reserve(dts.rulers.size());
    for (const Ruler& r : dts.rulers) out.rulers.push_back(normalize(r));
    return out;
}

std::set<int> distance_set(const Ruler& ruler) {
    std::set<int> out;
    const auto& m = ruler.marks;
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = i + 1; j < m.size(); ++j) {
            const int d = std::abs(m[j] - m[i]);
            if (d == 0 || !out.insert(d).second)
                throw std::invalid_argument("not a Golomb ruler: repeated difference");
        }
    return out;
}

bool is_golomb(const Ruler& ruler) {
    std::set<int> seen;
    const auto& m = ruler.marks;
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = i + 1; j < m.size(); ++j) {
            const int d = std::abs(m[j] - m[i]);
            if (d == 0 || !seen.insert(d).second) return false;
        }
    return true;
}

bool is_dts(const Dts& dts) {
    std::set<int> seen;
    for (const Ruler& r : dts.rulers) {
        const auto& m = r.marks;
        for (size_t i = 0; i < m.size(); ++i)
            for (size_t j = i + 1; j < m.size(); ++j) {
                const int d = std::abs(m[j] - m[i]);
                if (d == 0 || !seen.insert(d).second) return false;
            }
    }
    return true;
}

static int ruler_span(const Ruler& r) {
    if (r.marks.empty()) return 0;
    auto [lo, hi] = std::minmax_element(r.marks.begin(), r.marks.end());
    return *hi - *lo;
}

int scope(const Dts& dts) {
    int s = 0;
    for (const Ruler& r : dts.rulers) s = std::max(s, ruler_span(r));
    return s;
}

long long sum_of_lengths(const Dts& dts) {
    long long s = 0;
    for (const Ruler& r : dts.rulers) s += ruler_span(r);
    return s;
}

bool is_perfect(const Dts& dts) {
    if (!is_dts(dts)) return false;
    const long long L = dts.L();
    const long long M = dts.M();
    const long long target = L * (M + 1) * M / 2;
    if (scope(dts) != target) return false;
    // Scope equal to the trivial bound forces distances {1,...,target}.
    return true;
}

bool is_perfect(const Ruler& ruler) { return is_perfect(Dts{{ruler}}); }

BoundPair lower_bounds(int L, int M) {
    if (L < 1) throw std::invalid_argument("lower_bounds: L must be positive");
    const long long Ll = L;
    switch (M) {
        case 1:
            return {Ll, Ll * (Ll + 1) / 2};
        case 2: {
            const long long threeL = 3 * Ll;
            if (L % 4 == 0 || L % 4 == 1)
                return {threeL, threeL * (threeL + 1) / 4};
            return {threeL + 1, ((threeL - 1) * threeL + 2 * (threeL + 1)) / 4};
        }
        case 3:
            return {6 * Ll, 5 * Ll * Ll + Ll};
        case 4: {
            if (L % 2 == 0) return {10 * Ll, (18 * Ll * Ll + 3 * Ll) / 2};
            return {10 * Ll + 1, (18 * Ll * Ll + 3 * Ll + 1) / 2};
        }
        default:
            throw std::invalid_argument("lower_bounds: unsupported M (need 1..4)");
    }
}

Dts sorted_descending_by_length(const Dts& dts) {
    Dts out = dts;
    std::stable_sort(out.rulers.begin(), out.rulers.end(),
                     [](const Ruler& a, const Ruler& b) { return ruler_span(a) > ruler_span(b); });
    return out;
}

UniformRuler uniform_ruler(const Dts& dts, bool canonicalize) {
    Dts src = canonicalize ? sorted_descending_by_length(dts) : dts;
    const int L = src.L();
    const int M = src.M();
    if (L == 0) throw std::invalid_argument("uniform_ruler: empty DTS");
    for (const Ruler& r : src.rulers) {
        if (r.order() != M + 1)
            throw std::invalid_argument("uniform_ruler: rulers of unequal order");
        if (r.marks.empty() || r.marks.front() != 0 ||
            !std::is_sorted(r.marks.begin(), r.marks.end()))
            throw std::invalid_argument("uniform_ruler: DTS must be normalized");
    }

    std::vector<std::pair<int, std::pair<int, int>>> entries;  // mark -> (l, k)
    entries.reserve(static_cast<size_t>(L) * (M + 1));
    for (int l = 0; l < L; ++l)
        for (int k = 0; k <= M; ++k)
            entries.push_back({L * src.rulers[l].marks[k] + l, {l, k}});
    std::sort(entries.begin(), entries.end());

    UniformRuler out;
    out.L = L;
    out.M = M;
    out.marks.reserve(entries.size());
    out.assignment.reserve(entries.size());
    for (const auto& [mark, lk] : entries) {
        out.marks.push_back(mark);
        out.assignment.push_back(lk);
    }
    return out;
}

Dts parse_dts_text(std::istream& in) {
    Dts out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<int> marks;
        long long v;
        while (ls >> v) {
            if (v < 0 || v > 0x7fffffff)
                throw std::invalid_argument("DTS parse error at line " +
                                            std::to_string(lineno) + ": mark out of range");
            marks.push_back(static_cast<int>(v));
        }
        if (!ls.eof()) {
            std::string tok;
            ls.clear();
            ls >> tok;
            throw std::invalid_argument("DTS parse error at line " + std::to_string(lineno) +
                                        ": bad token '" + tok + "'");
        }
        if (!marks.empty()) out.rulers.emplace_back(std::move(marks));
    }
    return out;
}

Dts parse_dts_text(const std::string& text) {
    std::istringstream in(text);
    return parse_dts_text(in);
}

std::string format_dts_text(const Dts& dts) {
    std::ostringstream out;
    for (const Ruler& r : dts.rulers) {
        for (size_t i = 0; i < r.marks.size(); ++i) {
            if (i) out << ' ';
            out << r.marks[i];
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace hosc
