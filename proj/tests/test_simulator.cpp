#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "hosc/channel.hpp"
#include "hosc/dts_catalog.hpp"
#include "hosc/simulator.hpp"

using namespace hosc;

namespace {

// Small generalized staircase code: L=1, M=3, S=25, extended Hamming
// (128 -> 100) component.
CodeSpec small_code() {
    return build_spec(1, 3, 25, 1, Dts{{optimal_golomb_ruler(4)}},
                      NetVariant::zmod_involution);
}

CodeSpec example3_code() {
    return build_spec(2, 2, 5, 1, Dts{{Ruler{0, 6, 7}, Ruler{0, 2, 5}}},
                      NetVariant::zmod_standard);
}

SimConfig small_cfg() {
    SimConfig cfg;
    cfg.W = 12;
    cfg.I = 20;
    cfg.F = 40;
    cfg.seed = 9;
    return cfg;
}

}  // namespace

TEST_CASE("sample_errors statistics") {
    Rng rng(123);
    const double eps = 1e-3;
    const long long n = 10'000'000;
    const auto errs = sample_errors(eps, n, rng);
    const double expect = eps * static_cast<double>(n);
    const double sigma = std::sqrt(expect * (1 - eps));
    CHECK(std::abs(static_cast<double>(errs.size()) - expect) < 3 * sigma);
    for (size_t i = 1; i < errs.size(); ++i) CHECK(errs[i] > errs[i - 1]);
    CHECK(errs.back() < n);

    // Gap distribution: geometric with parameter eps. Compare the
    // empirical CDF at a few quantiles.
    std::vector<long long> gaps;
    for (size_t i = 1; i < errs.size(); ++i) gaps.push_back(errs[i] - errs[i - 1] - 1);
    for (double q : {0.25, 0.5, 0.75}) {
        const long long cut = static_cast<long long>(std::log1p(-q) / std::log1p(-eps));
        double below = 0;
        for (long long g : gaps)
            if (g <= cut) ++below;
        below /= static_cast<double>(gaps.size());
        CHECK(std::abs(below - q) < 0.02);
    }

    Rng rng2(5);
    CHECK(sample_errors(1e-9, 100, rng2).empty());
}

TEST_CASE("noiseless frames are error free") {
    for (const CodeSpec& spec : {small_code(), example3_code()}) {
        SimConfig cfg = small_cfg();
        FrameSim sim(spec, cfg);
        const FrameStats st = sim.run_channel_frame(0.0, 1);
        CHECK(st.bit_errors == 0);
        CHECK(st.counted_bits ==
              static_cast<std::uint64_t>(cfg.F - cfg.W) * spec.C * spec.L * spec.Sp * spec.Sp);
    }
}

TEST_CASE("a single error anywhere is corrected with I = 1") {
    const CodeSpec spec = small_code();
    SimConfig cfg = small_cfg();
    cfg.I = 1;
    FrameSim sim(spec, cfg);
    Rng rng(77);
    for (int trial = 0; trial < 300; ++trial) {
        const long long rect = rng.below(cfg.F);
        const long long bit = rng.below(spec.Sp * spec.Sp);
        const FrameStats st = sim.run_pattern_frame({{0, rect, bit}});
        REQUIRE(st.bit_errors == 0);
    }
}

TEST_CASE("weight <= (M+1)t patterns decode to zero residual errors") {
    const CodeSpec spec = small_code();
    const SimConfig cfg = small_cfg();
    FrameSim sim(spec, cfg);
    Rng rng(4242);
    const int wmax = (spec.M + 1) * spec.component.t;
    for (int trial = 0; trial < 3000; ++trial) {
        std::vector<ErrorPos> pattern;
        const int w = 1 + static_cast<int>(rng.below(wmax));
        for (int e = 0; e < w; ++e)
            pattern.push_back({0, static_cast<long long>(rng.below(cfg.F)),
                               static_cast<long long>(rng.below(spec.Sp * spec.Sp))});
        const FrameStats st = sim.run_pattern_frame(pattern);
        REQUIRE(st.bit_errors == 0);
    }
}

TEST_CASE("exhaustive weight-2 patterns on a small config") {
    const CodeSpec spec = build_spec(1, 2, 5, 1, Dts{{Ruler{0, 1, 3}}},
                                     NetVariant::zmod_standard);
    SimConfig cfg;
    cfg.W = 6;
    cfg.I = 8;
    cfg.F = 14;
    FrameSim sim(spec, cfg);
    const long long bits_per_rect = spec.Sp * spec.Sp;
    const long long counted_rects = cfg.F - cfg.W;
    // All pairs within the counted region (errors beyond it are not
    // counted by construction, so pairs there are vacuous).
    for (long long a = 0; a < counted_rects * bits_per_rect; ++a)
        for (long long b = a + 1; b < counted_rects * bits_per_rect; ++b) {
            const FrameStats st = sim.run_pattern_frame(
                {{0, a / bits_per_rect, a % bits_per_rect},
                 {0, b / bits_per_rect, b % bits_per_rect}});
            REQUIRE(st.bit_errors == 0);
        }
}

TEST_CASE("syndrome table stays consistent under noise") {
    for (const CodeSpec& spec : {small_code(), example3_code()}) {
        SimConfig cfg = small_cfg();
        cfg.I = 2;
        FrameSim sim(spec, cfg);
        sim.run_channel_frame(0.02, 99);
        CHECK(sim.syndromes_consistent());
    }
}

TEST_CASE("multiply chained frames decode cleanly") {
    const Dts dts{{Ruler{0, 6, 7}, Ruler{0, 2, 5}}};
    const CodeSpec spec = build_spec(2, 2, 5, 2, dts, NetVariant::zmod_standard);
    SimConfig cfg;
    cfg.W = 10;
    cfg.I = 8;
    cfg.F = 30;
    FrameSim sim(spec, cfg);
    CHECK(sim.run_channel_frame(0.0, 3).bit_errors == 0);
    Rng rng(6);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<ErrorPos> pattern;
        for (int e = 0; e < 2; ++e)
            pattern.push_back({static_cast<int>(rng.below(2)),
                               static_cast<long long>(rng.below(cfg.F)),
                               static_cast<long long>(rng.below(spec.L * spec.Sp * spec.Sp))});
        REQUIRE(sim.run_pattern_frame(pattern).bit_errors == 0);
    }
    sim.run_channel_frame(0.02, 1234);
    CHECK(sim.syndromes_consistent());
}

TEST_CASE("campaign determinism across worker counts") {
    const CodeSpec spec = small_code();
    SimConfig cfg = small_cfg();
    cfg.I = 3;
    cfg.min_bits = 400'000;
    const std::vector<SweepPoint> sweep = {{0.0, 0.02}, {0.0, 0.03}};

    cfg.threads = 1;
    const SimReport a = run_campaign(spec, sweep, cfg);
    cfg.threads = 4;
    const SimReport b = run_campaign(spec, sweep, cfg);
    REQUIRE(a.points.size() == b.points.size());
    for (size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].bits == b.points[i].bits);
        CHECK(a.points[i].bit_errors == b.points[i].bit_errors);
        CHECK(a.points[i].frames == b.points[i].frames);
    }
}

TEST_CASE("waterfall: output BER decreases with gap") {
    const CodeSpec spec = small_code();
    SimConfig cfg = small_cfg();
    cfg.I = 4;
    cfg.W = 10;
    cfg.F = 60;
    cfg.min_bits = 2'000'000;
    cfg.threads = 2;
    const double R = spec.rate();
    std::vector<SweepPoint> sweep;
    for (double g : {0.5, 1.5, 2.5}) sweep.push_back({g, gap_to_epsilon(g, R)});
    const SimReport rep = run_campaign(spec, sweep, cfg);
    REQUIRE(rep.points.size() == 3);
    CHECK(rep.points[0].bit_errors > rep.points[1].bit_errors);
    CHECK(rep.points[1].bit_errors >= rep.points[2].bit_errors);
    // CSV emits one row per point plus the header.
    const std::string csv = rep.csv();
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("zero-error points report the upper-bound BER") {
    const CodeSpec spec = small_code();
    SimConfig cfg = small_cfg();
    cfg.min_bits = 100'000;
    const SimReport rep = run_campaign(spec, {{0.0, 0.0}}, cfg);
    REQUIRE(rep.points.size() == 1);
    CHECK(rep.points[0].bit_errors == 0);
    CHECK(rep.points[0].ber ==
          doctest::Approx(1.0 / static_cast<double>(rep.points[0].bits)));
}

TEST_CASE("complexity metrics reproduce the published comparison row") {
    const Dts d74 = *catalog_lookup(7, 4);
    const CodeSpec spec = build_spec(7, 4, 25, 1, d74, NetVariant::zmod_involution);
    SimConfig cfg;
    cfg.W = 162;
    cfg.I = 1;
    cfg.F = 1000;
    const ComplexityMetrics m = complexity_metrics(spec, cfg);
    CHECK(m.latency_bits == 708750);   // 7.1e5 at the table's precision
    CHECK(m.decodings_per_iter == 4050);
    CHECK(m.score == 4050);            // 4.1e3 at the table's precision

    SimConfig t9 = cfg;
    t9.I = 3;
    const CodeSpec classic = build_spec(1, 1, 25, 1, Dts{{Ruler{0, 1}}},
                                        NetVariant::zmod_standard);
    CHECK(complexity_metrics(classic, t9).score == 3 * 162 * 25);
}

TEST_CASE("window shorter than the constraint span is rejected") {
    const CodeSpec spec = example3_code();
    SimConfig cfg;
    cfg.W = 6;  // needs W*L > 14
    cfg.F = 40;
    CHECK_THROWS_AS(FrameSim(spec, cfg), std::invalid_argument);
}
