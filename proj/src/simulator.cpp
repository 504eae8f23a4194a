#include "hosc/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstring>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace hosc {

std::vector<long long> sample_errors(double eps, long long n_bits, Rng& rng) {
    std::vector<long long> out;
    if (eps <= 0.0) return out;
    if (eps >= 1.0) throw std::invalid_argument("sample_errors: eps must be in (0, 1)");
    long long pos = -1;
    for (;;) {
        pos += 1 + rng.geometric(eps);
        if (pos >= n_bits) break;
        out.push_back(pos);
    }
    return out;
}

FrameSim::FrameSim(const CodeSpec& spec, const SimConfig& cfg) : spec_(spec), cfg_(cfg) {
    K_ = spec.K();
    L_ = spec.L;
    Sp_ = spec.Sp;
    C_ = spec.C;
    r_ = spec.component.r;
    span_len_ = spec.span_length();
    F_ = cfg.F;
    group_cols_ = L_ * Sp_;
    if (cfg.W < 1 || cfg.I < 1 || cfg.F <= cfg.W)
        throw std::invalid_argument("FrameSim: need W >= 1, I >= 1, F > W");
    if (static_cast<long long>(cfg.W) * L_ <= spec.max_delay())
        throw std::invalid_argument("FrameSim: window shorter than the constraint span");
    if (spec.max_delay() >= 8192 || Sp_ > 4096)
        throw std::invalid_argument("FrameSim: spec exceeds simulator index packing limits");

    d_ = spec.uniform.marks;
    perm_ = spec.perm_assign;
    residue_kp_.assign(L_, {});
    for (int kp = 0; kp < K_; ++kp) {
        // Constraint span v needs L*v = (block) + d[kp] in paper indexing;
        // internally v = (m + d[kp] - L + 1) / L when the residue matches.
        const int rho = ((L_ - 1 - d_[kp]) % L_ + L_) % L_;
        residue_kp_[rho].push_back({kp, d_[kp] - L_ + 1});
    }
    for (const auto& lst : residue_kp_)
        if (static_cast<int>(lst.size()) != spec.M + 1)
            throw std::logic_error("FrameSim: ruler is not L-uniform");

    columns_.resize(span_len_);
    for (int p = 0; p < span_len_; ++p) columns_[p] = column(spec.component, p);
    const int parent = spec.component.parent_length();
    candidate_.resize(parent);
    for (int loc = 0; loc < parent; ++loc)
        candidate_[loc] = tau_inv(spec.component, static_cast<std::uint32_t>(loc));

    fwd_.resize(spec.net.mats.size());
    inv_.resize(spec.net.mats.size());
    for (size_t k = 0; k < spec.net.mats.size(); ++k) {
        fwd_[k] = spec.net.mats[k];
        inv_[k] = spec.net.inv_mats[k];
    }

    rect_words_ = (static_cast<long long>(Sp_) * group_cols_ + 63) / 64;
    errors_.assign(static_cast<size_t>(F_) * C_ * rect_words_, 0);
    syndromes_.assign(static_cast<size_t>(F_) * C_ * Sp_, 0);
    span_nonzero_.assign(static_cast<size_t>(F_), 0);
}

void FrameSim::reset() {
    std::fill(errors_.begin(), errors_.end(), 0);
    std::fill(syndromes_.begin(), syndromes_.end(), 0);
    std::fill(span_nonzero_.begin(), span_nonzero_.end(), 0);
    phantom_.clear();
}

long long FrameSim::transmitted_bits(long long v) const {
    const long long per_chain = (v < F_ - cfg_.W)
                                    ? static_cast<long long>(Sp_) * group_cols_
                                    : static_cast<long long>(Sp_) * r_;
    return per_chain * C_;
}

void FrameSim::apply_syndrome_updates(int chain, long long block, int i, int j) {
    const int rho = static_cast<int>(((block % L_) + L_) % L_);
    for (const auto& [kp, dadj] : residue_kp_[rho]) {
        const long long v = (block + dadj) / L_;
        if (v < 0 || v >= F_) continue;
        const int cons_chain = (kp < L_) ? chain : (chain + 1) % C_;
        const int k = perm_[kp];
        const Mat2& m = inv_[k];
        const int Sq = Sp_;
        const int ip = static_cast<int>((static_cast<long long>(m.a) * i + static_cast<long long>(m.c) * j) % Sq);
        const int jp = static_cast<int>((static_cast<long long>(m.b) * i + static_cast<long long>(m.d) * j) % Sq);
        const size_t idx = (static_cast<size_t>(v) * C_ + cons_chain) * Sp_ + ip;
        const std::uint32_t before = syndromes_[idx];
        const std::uint32_t after = before ^ columns_[(K_ - 1 - kp) * Sp_ + jp];
        syndromes_[idx] = after;
        if (before == 0 && after != 0) ++span_nonzero_[v];
        if (before != 0 && after == 0) --span_nonzero_[v];
    }
}

void FrameSim::toggle(int chain, long long block, int i, int j) {
    if (block < 0) {
        // Flip landed in the all-zero history before the frame.
        const std::uint64_t key = ((static_cast<std::uint64_t>(chain) * 8192 +
                                    static_cast<std::uint64_t>(-block)) *
                                       4096 +
                                   i) *
                                      4096 +
                                  j;
        if (!phantom_.insert(key).second) phantom_.erase(key);
    } else {
        const long long v = block / L_;
        const long long u = block % L_;
        const long long bit = static_cast<long long>(i) * group_cols_ + u * Sp_ + j;
        auto& word = errors_[(static_cast<size_t>(v) * C_ + chain) * rect_words_ + (bit >> 6)];
        word ^= std::uint64_t{1} << (bit & 63);
    }
    apply_syndrome_updates(chain, block, i, j);
}

void FrameSim::inject(int chain, long long rect, long long bit) {
    const int i = static_cast<int>(bit / group_cols_);
    const long long g = bit % group_cols_;
    toggle(chain, rect * L_ + g / Sp_, i, static_cast<int>(g % Sp_));
}

bool FrameSim::sweep_window(long long v) {
    bool changed = false;
    const long long lo = std::max<long long>(0, v - cfg_.W + 1);
    for (long long vp = lo; vp <= v; ++vp) {
        if (span_nonzero_[vp] == 0) continue;
        for (int c = 0; c < C_; ++c) {
            const size_t base = (static_cast<size_t>(vp) * C_ + c) * Sp_;
            for (int ip = 0; ip < Sp_; ++ip) {
                const std::uint32_t s = syndromes_[base + ip];
                if (s == 0 || (s & 1) == 0) continue;  // clean or detected-only
                const std::uint32_t cand = candidate_[s >> 1];
                if (cand >= static_cast<std::uint32_t>(span_len_)) continue;  // shortened region
                const int sigma = static_cast<int>(cand) / Sp_;
                const int jp = static_cast<int>(cand) % Sp_;
                const int kp = K_ - 1 - sigma;
                const int k = perm_[kp];
                const Mat2& m = fwd_[k];
                const int i = static_cast<int>(
                    (static_cast<long long>(m.a) * ip + static_cast<long long>(m.c) * jp) % Sp_);
                const int j = static_cast<int>(
                    (static_cast<long long>(m.b) * ip + static_cast<long long>(m.d) * jp) % Sp_);
                const long long block = vp * L_ + L_ - 1 - d_[kp];
                const int var_chain = (kp < L_) ? c : (c + C_ - 1) % C_;
                toggle(var_chain, block, i, j);
                changed = true;
            }
        }
    }
    return changed;
}

void FrameSim::decode_position(long long v) {
    for (int it = 0; it < cfg_.I; ++it)
        if (!sweep_window(v)) break;
}

FrameStats FrameSim::finish() {
    FrameStats st;
    for (long long v = 0; v < F_ - cfg_.W; ++v) {
        st.counted_bits += static_cast<std::uint64_t>(Sp_) * group_cols_ * C_;
        for (int c = 0; c < C_; ++c) {
            const size_t base = (static_cast<size_t>(v) * C_ + c) * rect_words_;
            for (long long w = 0; w < rect_words_; ++w)
                st.bit_errors += __builtin_popcountll(errors_[base + w]);
        }
    }
    return st;
}

FrameStats FrameSim::run_channel_frame(double eps, std::uint64_t frame_seed) {
    reset();
    Rng rng(frame_seed);
    for (long long v = 0; v < F_; ++v) {
        for (int c = 0; c < C_; ++c) {
            if (v < F_ - cfg_.W) {
                const long long nbits = static_cast<long long>(Sp_) * group_cols_;
                long long pos = -1;
                if (eps > 0.0)
                    for (;;) {
                        pos += 1 + rng.geometric(eps);
                        if (pos >= nbits) break;
                        inject(c, v, pos);
                    }
            } else {
                // Termination rectangle: only the r parity columns exist.
                const long long nbits = static_cast<long long>(Sp_) * r_;
                long long pos = -1;
                if (eps > 0.0)
                    for (;;) {
                        pos += 1 + rng.geometric(eps);
                        if (pos >= nbits) break;
                        const long long i = pos / r_;
                        const long long g = group_cols_ - r_ + pos % r_;
                        inject(c, v, i * group_cols_ + g);
                    }
            }
        }
        decode_position(v);
    }
    return finish();
}

FrameStats FrameSim::run_pattern_frame(const std::vector<ErrorPos>& errors) {
    reset();
    for (const ErrorPos& e : errors) inject(e.chain, e.rect, e.bit);
    for (long long v = 0; v < F_; ++v) decode_position(v);
    return finish();
}

bool FrameSim::syndromes_consistent() const {
    std::vector<std::uint32_t> fresh(syndromes_.size(), 0);
    auto fold = [&](int chain, long long block, int i, int j) {
        const int rho = static_cast<int>(((block % L_) + L_) % L_);
        for (const auto& [kp, dadj] : residue_kp_[rho]) {
            const long long v = (block + dadj) / L_;
            if (v < 0 || v >= F_) continue;
            const int cons_chain = (kp < L_) ? chain : (chain + 1) % C_;
            const int k = perm_[kp];
            const Mat2& m = inv_[k];
            const int ip = static_cast<int>(
                (static_cast<long long>(m.a) * i + static_cast<long long>(m.c) * j) % Sp_);
            const int jp = static_cast<int>(
                (static_cast<long long>(m.b) * i + static_cast<long long>(m.d) * j) % Sp_);
            fresh[(static_cast<size_t>(v) * C_ + cons_chain) * Sp_ + ip] ^=
                columns_[(K_ - 1 - kp) * Sp_ + jp];
        }
    };
    for (long long v = 0; v < F_; ++v)
        for (int c = 0; c < C_; ++c) {
            const size_t base = (static_cast<size_t>(v) * C_ + c) * rect_words_;
            for (long long w = 0; w < rect_words_; ++w) {
                std::uint64_t bits = errors_[base + w];
                while (bits) {
                    const int b = __builtin_ctzll(bits);
                    bits &= bits - 1;
                    const long long flat = w * 64 + b;
                    const int i = static_cast<int>(flat / group_cols_);
                    const long long g = flat % group_cols_;
                    fold(c, v * L_ + g / Sp_, i, static_cast<int>(g % Sp_));
                }
            }
        }
    for (std::uint64_t key : phantom_) {
        const int j = static_cast<int>(key % 4096);
        const int i = static_cast<int>((key / 4096) % 4096);
        const long long block = -static_cast<long long>((key / 4096 / 4096) % 8192);
        const int chain = static_cast<int>(key / 4096 / 4096 / 8192);
        fold(chain, block, i, j);
    }
    return fresh == syndromes_;
}

SimReport run_campaign(const CodeSpec& spec, const std::vector<SweepPoint>& sweep,
                       const SimConfig& cfg) {
    SimReport report;
    const int workers = std::max(1, cfg.threads);
    const long long min_bits = std::max<long long>(1, cfg.min_bits);
    const long long max_bits_eff = std::max(cfg.max_bits > 0 ? cfg.max_bits : min_bits, min_bits);

    for (size_t pi = 0; pi < sweep.size(); ++pi) {
        const auto t0 = std::chrono::steady_clock::now();
        const double eps = sweep[pi].epsilon;

        std::mutex mu;
        std::vector<FrameStats> done;     // per frame index
        std::vector<char> present;
        long long committed = 0;          // frames merged into totals
        std::uint64_t tot_bits = 0, tot_errs = 0;
        std::atomic<long long> next{0};
        std::atomic<bool> stop{false};

        auto stop_rule = [&]() {
            return tot_bits >= static_cast<std::uint64_t>(min_bits) &&
                   (tot_errs >= static_cast<std::uint64_t>(cfg.min_errors) ||
                    tot_bits >= static_cast<std::uint64_t>(max_bits_eff));
        };

        auto worker = [&]() {
            FrameSim sim(spec, cfg);
            for (;;) {
                if (stop.load(std::memory_order_relaxed)) return;
                const long long f = next.fetch_add(1);
                const FrameStats st =
                    sim.run_channel_frame(eps, mix_seed(cfg.seed, pi, static_cast<std::uint64_t>(f)));
                std::lock_guard<std::mutex> lk(mu);
                if (static_cast<long long>(done.size()) <= f) {
                    done.resize(f + 1);
                    present.resize(f + 1, 0);
                }
                done[f] = st;
                present[f] = 1;
                while (committed < static_cast<long long>(done.size()) && present[committed] &&
                       !stop_rule()) {
                    tot_bits += done[committed].counted_bits;
                    tot_errs += done[committed].bit_errors;
                    ++committed;
                }
                if (stop_rule()) stop.store(true, std::memory_order_relaxed);
            }
        };

        if (workers == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        }

        PointReport pr;
        pr.gap_db = sweep[pi].gap_db;
        pr.epsilon = eps;
        pr.bits = tot_bits;
        pr.bit_errors = tot_errs;
        pr.ber = tot_errs > 0 ? static_cast<double>(tot_errs) / static_cast<double>(tot_bits)
                              : 1.0 / static_cast<double>(tot_bits);
        pr.frames = committed;
        pr.seed = cfg.seed;
        pr.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report.points.push_back(pr);
    }
    return report;
}

std::string SimReport::csv() const {
    std::ostringstream out;
    out << "gap_db,epsilon,bits,bit_errors,ber,frames,seed,wall_s\n";
    out.precision(12);
    for (const PointReport& p : points)
        out << p.gap_db << ',' << p.epsilon << ',' << p.bits << ',' << p.bit_errors << ','
            << p.ber << ',' << p.frames << ',' << p.seed << ',' << p.wall_s << '\n';
    return out.str();
}

ComplexityMetrics complexity_metrics(const CodeSpec& spec, const SimConfig& cfg) {
    const long long W = cfg.W, C = spec.C, Sp = spec.Sp, L = spec.L, I = cfg.I;
    const long long t = spec.component.t;
    return {W * C * Sp * Sp * L, W * C * Sp, I * W * C * Sp * t * t};
}

}  // namespace hosc
