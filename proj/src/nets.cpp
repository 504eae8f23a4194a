#include "hosc/nets.hpp"

#include <numeric>
#include <stdexcept>

namespace hosc {

int RingSpec::add(int a, int b) const {
    if (kind == RingKind::field) return gf->add(a, b);
    return (a + b) % S;
}

int RingSpec::neg(int a) const {
    if (kind == RingKind::field) return gf->neg(a);
    return (S - a % S) % S;
}

int RingSpec::mul(int a, int b) const {
    if (kind == RingKind::field) return gf->mul(a, b);
    return static_cast<int>(static_cast<long long>(a) * b % S);
}

bool RingSpec::invertible(int a) const {
    if (S == 1) return true;  // zero ring
    if (kind == RingKind::field) return a % S != 0;
    return std::gcd(((a % S) + S) % S, S) == 1;
}

int RingSpec::inv(int a) const {
    if (S == 1) return 0;
    if (kind == RingKind::field) return gf->inv(a);
    a = ((a % S) + S) % S;
    for (int x = 1; x < S; ++x)
        if (static_cast<long long>(a) * x % S == 1) return x;
    throw std::domain_error("RingSpec: element not invertible");
}

std::string to_string(NetVariant v) {
    switch (v) {
        case NetVariant::zmod_standard: return "standard";
        case NetVariant::zmod_involution: return "involution";
        case NetVariant::field: return "field";
        case NetVariant::trivial: return "trivial";
    }
    return "?";
}

NetVariant net_variant_from_string(const std::string& s) {
    if (s == "standard") return NetVariant::zmod_standard;
    if (s == "involution") return NetVariant::zmod_involution;
    if (s == "field") return NetVariant::field;
    if (s == "trivial") return NetVariant::trivial;
    throw std::invalid_argument("unknown net variant: " + s);
}

std::pair<int, int> NetFamily::apply(int k, int i, int j) const {
    const Mat2& m = mats[k];
    return {ring.add(ring.mul(m.a, i), ring.mul(m.c, j)),
            ring.add(ring.mul(m.b, i), ring.mul(m.d, j))};
}

std::pair<int, int> NetFamily::invert(int k, int i, int j) const {
    const Mat2& m = inv_mats[k];
    return {ring.add(ring.mul(m.a, i), ring.mul(m.c, j)),
            ring.add(ring.mul(m.b, i), ring.mul(m.d, j))};
}

namespace {

Mat2 invert_mat(const RingSpec& ring, const Mat2& m) {
    const int det = ring.add(ring.mul(m.a, m.d), ring.neg(ring.mul(m.b, m.c)));
    if (!ring.invertible(det)) throw std::invalid_argument("net matrix not invertible");
    const int di = ring.inv(det);
    return Mat2{ring.mul(di, m.d), ring.mul(di, ring.neg(m.b)), ring.mul(di, ring.neg(m.c)),
                ring.mul(di, m.a)};
}

void finish_family(NetFamily& f) {
    f.inv_mats.clear();
    for (const Mat2& m : f.mats) f.inv_mats.push_back(invert_mat(f.ring, m));
}

}  // namespace

NetFamily zmod_family(int M, int S, NetVariant variant) {
    if (M < 1) throw std::invalid_argument("zmod_family: M must be positive");
    if (S < 2) throw std::invalid_argument("zmod_family: S must be at least 2");
    if (M > lpf(S))
        throw std::invalid_argument("zmod_family: net condition M <= lpf(S) violated");
    if (variant != NetVariant::zmod_standard && variant != NetVariant::zmod_involution)
        throw std::invalid_argument("zmod_family: variant must be standard or involution");

    NetFamily f;
    f.ring = RingSpec{RingKind::zmod, S, nullptr};
    f.variant = variant;
    f.mats.push_back(Mat2{});
    for (int z = 0; z < M; ++z) {
        if (variant == NetVariant::zmod_standard) {
            f.mats.push_back(Mat2{0, 1, 1, z % S});
        } else {
            const int mz = f.ring.neg(z % S);
            const int one_minus_z2 =
                f.ring.add(1, f.ring.neg(f.ring.mul(z % S, z % S)));
            f.mats.push_back(Mat2{mz, one_minus_z2, 1, z % S});
        }
    }
    finish_family(f);
    return f;
}

NetFamily fq_family(int M, int q) {
    if (M < 1) throw std::invalid_argument("fq_family: M must be positive");
    auto gf = std::make_shared<const GaloisField>(q);  // throws unless q is a prime power
    if (M > q) throw std::invalid_argument("fq_family: need M <= q");

    NetFamily f;
    f.ring = RingSpec{RingKind::field, q, gf};
    f.variant = NetVariant::field;
    f.mats.push_back(Mat2{});
    for (int k = 1; k <= M; ++k) {
        const int z = (k == 1) ? 0 : gf->alpha_pow(k - 2);  // 0, 1, alpha, alpha^2, ...
        f.mats.push_back(Mat2{0, 1, 1, z});
    }
    finish_family(f);
    return f;
}

NetFamily trivial_family(int M) {
    if (M < 0) throw std::invalid_argument("trivial_family: M must be nonnegative");
    NetFamily f;
    f.ring = RingSpec{RingKind::zmod, 1, nullptr};
    f.variant = NetVariant::trivial;
    f.mats.assign(M + 1, Mat2{0, 0, 0, 0});  // the zero ring; every map is the identity on (0,0)
    f.inv_mats = f.mats;
    return f;
}

NetFamily make_net(NetVariant variant, int M, int S) {
    switch (variant) {
        case NetVariant::zmod_standard:
        case NetVariant::zmod_involution:
            return zmod_family(M, S, variant);
        case NetVariant::field:
            return fq_family(M, S);
        case NetVariant::trivial:
            if (S != 1) throw std::invalid_argument("trivial net requires S = 1");
            return trivial_family(M);
    }
    throw std::logic_error("make_net: bad variant");
}

bool verify_net_brute_force(const NetFamily& family) {
    const int S = family.S();
    const int lines = (family.M() + 1) * S;
    // Line (k, i') = { pi_k(i', j') : j' }, stored as bitsets over S^2 points.
    const int words = (S * S + 63) / 64;
    std::vector<std::vector<std::uint64_t>> sets(lines, std::vector<std::uint64_t>(words, 0));
    for (int k = 0; k <= family.M(); ++k)
        for (int ip = 0; ip < S; ++ip)
            for (int jp = 0; jp < S; ++jp) {
                auto [i, j] = family.apply(k, ip, jp);
                const int pt = i * S + j;
                sets[k * S + ip][pt >> 6] |= std::uint64_t{1} << (pt & 63);
            }
    for (int u = 0; u < lines; ++u)
        for (int v = u + 1; v < lines; ++v) {
            if (S == 1) continue;  // repeated trivial partitions are admitted
            int common = 0;
            for (int w = 0; w < words; ++w)
                common += __builtin_popcountll(sets[u][w] & sets[v][w]);
            if (common > 1) return false;
        }
    return true;
}

bool verify_net(const NetFamily& family) {
    const int S = family.S();
    bool ok = true;
    for (size_t u = 0; u < family.mats.size() && ok; ++u)
        for (size_t v = u + 1; v < family.mats.size() && ok; ++v) {
            const Mat2& A = family.mats[u];
            const Mat2& B = family.mats[v];
            const int crit =
                family.ring.add(family.ring.mul(A.c, B.d), family.ring.neg(family.ring.mul(A.d, B.c)));
            if (!family.ring.invertible(crit)) ok = false;
        }
    if (S <= 64) {
        const bool brute = verify_net_brute_force(family);
        if (S > 1 && brute != ok)
            throw std::logic_error("verify_net: criterion and brute force disagree");
        return S == 1 ? true : brute;
    }
    return ok;
}

}  // namespace hosc
