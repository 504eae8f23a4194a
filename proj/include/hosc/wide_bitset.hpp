#pragma once

#include <array>
#include <cstdint>
#include <cstddef>

#ifndef HOSC_WIDEBITSET_LIMBS
#define HOSC_WIDEBITSET_LIMBS 4
#endif

namespace hosc {

// Fixed-width bitset emulating single-integer shift/AND/OR semantics over
// 64-bit limbs. Limb count is a build-time constant; the logical width used
// by callers must stay below capacity().
struct WideBitset {
    static constexpr int limbs = HOSC_WIDEBITSET_LIMBS;
    static constexpr int capacity() { return 64 * limbs; }

    std::array<std::uint64_t, limbs> w{};

    static WideBitset zero() { return WideBitset{}; }

    static WideBitset one() {
        WideBitset b;
        b.w[0] = 1;
        return b;
    }

    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }

    void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }

    void clear(int i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    bool any() const {
        std::uint64_t acc = 0;
        for (int i = 0; i < limbs; ++i) acc |= w[i];
        return acc != 0;
    }

    bool operator==(const WideBitset&) const = default;

    WideBitset operator&(const WideBitset& o) const {
        WideBitset r;
        for (int i = 0; i < limbs; ++i) r.w[i] = w[i] & o.w[i];
        return r;
    }

    WideBitset operator|(const WideBitset& o) const {
        WideBitset r;
        for (int i = 0; i < limbs; ++i) r.w[i] = w[i] | o.w[i];
        return r;
    }

    WideBitset operator^(const WideBitset& o) const {
        WideBitset r;
        for (int i = 0; i < limbs; ++i) r.w[i] = w[i] ^ o.w[i];
        return r;
    }

    WideBitset& operator&=(const WideBitset& o) {
        for (int i = 0; i < limbs; ++i) w[i] &= o.w[i];
        return *this;
    }

    WideBitset& operator|=(const WideBitset& o) {
        for (int i = 0; i < limbs; ++i) w[i] |= o.w[i];
        return *this;
    }

    WideBitset operator~() const {
        WideBitset r;
        for (int i = 0; i < limbs; ++i) r.w[i] = ~w[i];
        return r;
    }

    WideBitset operator<<(int s) const {
        WideBitset r;
        if (s >= capacity()) return r;
        const int limb = s >> 6;
        const int bit = s & 63;
        if (bit == 0) {
            for (int i = limbs - 1; i >= limb; --i) r.w[i] = w[i - limb];
        } else {
            for (int i = limbs - 1; i >= limb; --i) {
                r.w[i] = w[i - limb] << bit;
                if (i - limb - 1 >= 0) r.w[i] |= w[i - limb - 1] >> (64 - bit);
            }
        }
        return r;
    }

    WideBitset operator>>(int s) const {
        WideBitset r;
        if (s >= capacity()) return r;
        const int limb = s >> 6;
        const int bit = s & 63;
        if (bit == 0) {
            for (int i = 0; i + limb < limbs; ++i) r.w[i] = w[i + limb];
        } else {
            for (int i = 0; i + limb < limbs; ++i) {
                r.w[i] = w[i + limb] >> bit;
                if (i + limb + 1 < limbs) r.w[i] |= w[i + limb + 1] << (64 - bit);
            }
        }
        return r;
    }

    int popcount() const {
        int n = 0;
        for (int i = 0; i < limbs; ++i) n += __builtin_popcountll(w[i]);
        return n;
    }

    // Index of the highest set bit, -1 when empty.
    int highest_bit() const {
        for (int i = limbs - 1; i >= 0; --i)
            if (w[i]) return 64 * i + 63 - __builtin_clzll(w[i]);
        return -1;
    }
};

}  // namespace hosc
