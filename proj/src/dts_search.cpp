#include "hosc/dts_search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "hosc/rng.hpp"

namespace hosc {

SearchState::SearchState(int L, int N) : rulers(L), width(N) {
    if (L < 1) throw std::invalid_argument("SearchState: L must be positive");
    if (N < 2 || N > WideBitset::capacity())
        throw std::invalid_argument("SearchState: width exceeds bitset capacity");
}

bool SearchState::try_insert_mark(int ruler_index, int mark) {
    if (mark < 0 || mark >= width)
        throw std::out_of_range("try_insert_mark: mark exceeds configured width");
    RulerState& r = rulers[ruler_index];

    WideBitset left, right;
    if (mark > r.largest_mark) {
        left = r.rev_ruler << (mark - r.largest_mark);
    } else {
        left = r.rev_ruler >> (r.largest_mark - mark);
        right = r.nat_ruler >> mark;
    }
    const WideBitset bisection = left & right;
    const WideBitset distances = left | right;
    const WideBitset intersection = used_distances & distances;
    if (bisection.any() || intersection.any()) return false;

    r.nat_ruler.set(mark);
    if (mark > r.largest_mark) {
        r.rev_ruler = left | WideBitset::one();
        r.largest_mark = mark;
    } else {
        r.rev_ruler.set(r.largest_mark - mark);
    }
    used_distances |= distances;
    r.distances |= distances;
    ++r.mark_count;
    return true;
}

void SearchState::rebuild_ruler(int ruler_index, const std::vector<int>& marks) {
    RulerState fresh;
    for (size_t i = 0; i < marks.size(); ++i) {
        const int m = marks[i];
        if (m == 0) continue;
        fresh.nat_ruler.set(m);
        fresh.largest_mark = std::max(fresh.largest_mark, m);
        ++fresh.mark_count;
    }
    fresh.rev_ruler = WideBitset::zero();
    for (int m : marks) fresh.rev_ruler.set(fresh.largest_mark - m);
    for (size_t i = 0; i < marks.size(); ++i)
        for (size_t j = i + 1; j < marks.size(); ++j)
            fresh.distances.set(std::abs(marks[j] - marks[i]));
    rulers[ruler_index] = fresh;
}

void SearchState::rebuild_used_distances() {
    used_distances = WideBitset::zero();
    for (const RulerState& r : rulers) used_distances |= r.distances;
}

void SearchState::delete_mark(int ruler_index, int mark) {
    if (mark == 0) throw std::invalid_argument("delete_mark: mark 0 is structural");
    RulerState& r = rulers[ruler_index];
    if (!r.nat_ruler.test(mark)) throw std::invalid_argument("delete_mark: mark not present");
    std::vector<int> marks;
    for (int m = 0; m <= r.largest_mark; ++m)
        if (r.nat_ruler.test(m) && m != mark) marks.push_back(m);
    rebuild_ruler(ruler_index, marks);
    rebuild_used_distances();
}

void SearchState::delete_ruler(int ruler_index) {
    rulers[ruler_index] = RulerState();
    rebuild_used_distances();
}

Dts SearchState::to_dts() const {
    Dts d;
    for (const RulerState& r : rulers) {
        Ruler out;
        for (int m = 0; m <= r.largest_mark; ++m)
            if (r.nat_ruler.test(m)) out.marks.push_back(m);
        d.rulers.push_back(std::move(out));
    }
    return d;
}

MarkModel fit_mark_model(const std::vector<Dts>& samples, double scale,
                         std::optional<double> sum_threshold) {
    std::vector<const Dts*> kept;
    for (const Dts& s : samples)
        if (!sum_threshold || static_cast<double>(sum_of_lengths(s)) < *sum_threshold)
            kept.push_back(&s);
    if (kept.size() < 2)
        throw std::invalid_argument("fit_mark_model: fewer than 2 samples after filtering");

    const int order = kept.front()->rulers.front().order();
    MarkModel model;
    model.mean.assign(order, 0.0);
    model.variance.assign(order, 0.0);
    std::vector<long long> n(order, 0);
    for (const Dts* s : kept)
        for (const Ruler& r : s->rulers)
            for (int i = 0; i < order; ++i) {
                model.mean[i] += r.marks[i];
                ++n[i];
            }
    for (int i = 0; i < order; ++i) model.mean[i] /= static_cast<double>(n[i]);
    for (const Dts* s : kept)
        for (const Ruler& r : s->rulers)
            for (int i = 0; i < order; ++i) {
                const double d = r.marks[i] - model.mean[i];
                model.variance[i] += d * d;
            }
    for (int i = 0; i < order; ++i) {
        model.variance[i] /= static_cast<double>(n[i]);
        model.mean[i] *= scale;
        model.variance[i] *= scale * scale;
    }
    return model;
}

namespace {

int sample_mark(Rng& rng, const std::optional<MarkModel>& model, int index, int max_scope) {
    if (model && index < model->order()) {
        const double sigma = std::sqrt(std::max(0.0, model->variance[index]));
        for (int tries = 0; tries < 64; ++tries) {
            const double v = model->mean[index] + sigma * rng.normal();
            const long long m = std::llround(v);
            if (m >= 1 && m <= max_scope) return static_cast<int>(m);
        }
    }
    return 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_scope)));
}

// One seeded run; returns the first full DTS with scope <= max_scope
// found within the attempt budget.
std::optional<Dts> run_single(const SearchParams& p, std::uint64_t seed, long long budget,
                              const std::atomic<bool>* stop) {
    const int order = p.M + 1;
    SearchState state(p.L);
    Rng rng(seed);

    std::vector<int> failures(p.L, 0);
    std::vector<int> deletions(p.L, 0);
    int filled = 0;           // rulers with all M+1 marks
    long long ruler_dels = 0;  // since the last full restart

    for (long long attempt = 0; attempt < budget; ++attempt) {
        if (stop && ((attempt & 1023) == 0) && stop->load(std::memory_order_relaxed))
            return std::nullopt;

        // Least-filled unfilled ruler, ties broken uniformly; keeps the
        // sampled mark index aligned with the model's sorted-mark index.
        int idx = -1, best = order + 1, ties = 0;
        for (int l = 0; l < p.L; ++l) {
            const int c = state.rulers[l].mark_count;
            if (c == order) continue;
            if (c < best) {
                best = c;
                ties = 1;
                idx = l;
            } else if (c == best && static_cast<int>(rng.below(++ties)) == 0) {
                idx = l;
            }
        }

        const int mark = sample_mark(rng, p.model, state.rulers[idx].mark_count, p.max_scope);
        if (state.try_insert_mark(idx, mark)) {
            failures[idx] = 0;
            if (state.rulers[idx].mark_count == order) {
                deletions[idx] = 0;  // progress = the ruler completed
                ++filled;
                if (filled == p.L) return state.to_dts();
            }
            continue;
        }

        if (++failures[idx] < p.attempts_per_mark) continue;
        failures[idx] = 0;
        RulerState& r = state.rulers[idx];
        if (r.mark_count > 1) {
            // Delete one uniformly random non-zero mark.
            int nth = static_cast<int>(rng.below(static_cast<std::uint64_t>(r.mark_count - 1)));
            int victim = -1;
            for (int m = 1; m <= r.largest_mark && victim < 0; ++m)
                if (r.nat_ruler.test(m) && nth-- == 0) victim = m;
            state.delete_mark(idx, victim);
        }
        if (++deletions[idx] >= p.deletions_per_ruler) {
            deletions[idx] = 0;
            // The obstruction is the distances held by the other rulers:
            // drop the least-filled one with deletable marks, falling back
            // to a restart of the stuck ruler itself.
            int least = -1;
            for (int l = 0; l < p.L; ++l) {
                if (l == idx || state.rulers[l].mark_count < 2) continue;
                if (least < 0 || state.rulers[l].mark_count < state.rulers[least].mark_count)
                    least = l;
            }
            if (least < 0) least = idx;
            if (state.rulers[least].mark_count == order) --filled;
            state.delete_ruler(least);

            if (p.restart_after_deletions > 0 &&
                ++ruler_dels >= p.restart_after_deletions) {
                ruler_dels = 0;
                state = SearchState(p.L);
                std::fill(failures.begin(), failures.end(), 0);
                std::fill(deletions.begin(), deletions.end(), 0);
                filled = 0;
            }
        }
    }
    return std::nullopt;
}

std::optional<Dts> better_sum(std::optional<Dts> a, std::optional<Dts> b) {
    if (!a) return b;
    if (!b) return a;
    return sum_of_lengths(*a) <= sum_of_lengths(*b) ? a : b;
}

}  // namespace

std::optional<Dts> search_dts(const SearchParams& p) {
    if (p.max_scope < 1 || p.max_scope >= WideBitset::capacity())
        throw std::invalid_argument("search_dts: max_scope must be in [1, N)");
    const long long floor_scope = lower_bounds(p.L, p.M).scope_lb;
    if (p.max_scope < floor_scope) return std::nullopt;  // infeasible by the trivial bound

    const int workers = std::max(1, p.threads);
    auto worker_budget = [&](int) { return std::max<long long>(1, p.budget / workers); };

    if (p.objective == SearchObjective::scope) {
        if (workers == 1) return run_single(p, mix_seed(p.seed, 0), p.budget, nullptr);
        std::atomic<bool> stop{false};
        std::vector<std::optional<Dts>> results(workers);
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                results[w] = run_single(p, mix_seed(p.seed, w), worker_budget(w), &stop);
                if (results[w]) stop.store(true, std::memory_order_relaxed);
            });
        for (auto& t : pool) t.join();
        for (auto& r : results)
            if (r) return r;
        return std::nullopt;
    }

    // scope_then_sum: iterated search accepting only strictly better sums.
    auto run_sum_worker = [&](std::uint64_t seed, long long budget) -> std::optional<Dts> {
        std::optional<Dts> best;
        long long used = 0;
        std::uint64_t restart = 0;
        while (used < budget) {
            SearchParams q = p;
            q.threads = 1;
            auto found = run_single(q, mix_seed(seed, 0x5c0be, restart++),
                                    std::min<long long>(budget - used, budget / 8 + 1), nullptr);
            used += budget / 8 + 1;
            if (found && (!best || sum_of_lengths(*found) < sum_of_lengths(*best))) best = found;
        }
        return best;
    };
    if (workers == 1) return run_sum_worker(p.seed, p.budget);
    std::vector<std::optional<Dts>> results(workers);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back(
            [&, w] { results[w] = run_sum_worker(mix_seed(p.seed, w), worker_budget(w)); });
    for (auto& t : pool) t.join();
    std::optional<Dts> best;
    for (auto& r : results) best = better_sum(best, r);
    return best;
}

std::optional<Dts> search_dts_with_model_pipeline(const SearchParams& p) {
    // Warmup at a relaxed scope with the uniform model.
    const int relaxed = std::max(p.max_scope + 2, (p.max_scope * 5 + 3) / 4);
    SearchParams warm = p;
    warm.max_scope = std::min(relaxed, WideBitset::capacity() - 1);
    warm.model.reset();
    warm.objective = SearchObjective::scope;
    warm.threads = 1;

    std::vector<Dts> samples;
    Rng seeds(mix_seed(p.seed, 0x3a17));
    for (int i = 0; i < 20; ++i) {
        warm.seed = seeds.next();
        warm.budget = std::max<long long>(1000, p.budget / 200);
        if (auto d = search_dts(warm)) samples.push_back(*d);
    }

    SearchParams main = p;
    if (samples.size() >= 2) {
        const double scale = static_cast<double>(p.max_scope) / warm.max_scope;
        main.model = fit_mark_model(samples, scale);
    }

    if (p.objective == SearchObjective::scope) return search_dts(main);

    // Third step for the sum objective: gather at-target samples and
    // refit on the below-average half.
    SearchParams gather = main;
    gather.objective = SearchObjective::scope;
    gather.threads = 1;
    std::vector<Dts> at_target;
    for (int i = 0; i < 20; ++i) {
        gather.seed = seeds.next();
        gather.budget = std::max<long long>(1000, p.budget / 100);
        if (auto d = search_dts(gather)) at_target.push_back(*d);
    }
    if (at_target.size() >= 4) {
        double mean_sum = 0;
        for (const Dts& d : at_target) mean_sum += static_cast<double>(sum_of_lengths(d));
        mean_sum /= static_cast<double>(at_target.size());
        try {
            main.model = fit_mark_model(at_target, 1.0, mean_sum);
        } catch (const std::invalid_argument&) {
            // Not enough below-average samples; keep the warmup model.
        }
    }
    return search_dts(main);
}

}  // namespace hosc
