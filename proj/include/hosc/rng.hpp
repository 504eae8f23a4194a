#pragma once

#include <cmath>
#include <cstdint>

namespace hosc {

// splitmix64; used both as a generator step and as the seed-derivation
// mix so that per-frame and per-worker streams are decoupled.
inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ull * (a + 1)) ^ (0xc2b2ae3d27d4eb4full * (b + 1));
    splitmix64(x);
    return splitmix64(x);
}

// xoshiro256** with fully specified behaviour; std distributions are
// implementation-defined so all sampling here is hand-rolled.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        for (auto& si : s_) si = splitmix64(seed);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n), n > 0.
    std::uint64_t below(std::uint64_t n) {
        // Rejection-free for our purposes; bias is < 2^-64 * n.
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(next()) * n >> 64);
    }

    // Number of extra failures before the next success, success
    // probability p in (0, 1).
    long long geometric(double p) {
        const double u = 1.0 - uniform();  // (0, 1]
        return static_cast<long long>(std::floor(std::log(u) / std::log1p(-p)));
    }

    // Standard normal via Box-Muller (fresh pair each call, one used).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

}  // namespace hosc
