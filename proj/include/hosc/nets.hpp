#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hosc/gf.hpp"

namespace hosc {

enum class RingKind { zmod, field };

struct RingSpec {
    RingKind kind = RingKind::zmod;
    int S = 1;
    std::shared_ptr<const GaloisField> gf;  // set for field rings

    int add(int a, int b) const;
    int neg(int a) const;
    int mul(int a, int b) const;
    bool invertible(int a) const;
    int inv(int a) const;
};

// Row-vector convention: (i,j) * [[a,b],[c,d]] = (a*i + c*j, b*i + d*j).
struct Mat2 {
    int a = 1, b = 0, c = 0, d = 1;
};

enum class NetVariant { zmod_standard, zmod_involution, field, trivial };

std::string to_string(NetVariant v);
NetVariant net_variant_from_string(const std::string& s);

// M+1 invertible 2x2 matrices over a finite ring, defining the
// intra-block permutations pi_k of [S] x [S]; pi_0 is the identity.
struct NetFamily {
    RingSpec ring;
    NetVariant variant = NetVariant::trivial;
    std::vector<Mat2> mats;
    std::vector<Mat2> inv_mats;

    int M() const { return static_cast<int>(mats.size()) - 1; }
    int S() const { return ring.S; }

    std::pair<int, int> apply(int k, int i, int j) const;
    std::pair<int, int> invert(int k, int i, int j) const;
};

// Example-1 family (standard) or Example-2 family (involution) over Z_S;
// requires M <= lpf(S).
NetFamily zmod_family(int M, int S, NetVariant variant = NetVariant::zmod_standard);

// Example-3 family over F_q with z in {0, 1, alpha, ..., alpha^(M-2)};
// requires q a prime power and M <= q.
NetFamily fq_family(int M, int q);

// M+1 copies of the identity permutation of [1] x [1].
NetFamily trivial_family(int M);

NetFamily make_net(NetVariant variant, int M, int S);

// Pairwise invertibility criterion c*d~ - d*c~; for S <= 64 additionally
// cross-checked against the line-intersection definition.
bool verify_net(const NetFamily& family);

// Direct net definition: every pair of distinct lines meets in <= 1 point.
bool verify_net_brute_force(const NetFamily& family);

}  // namespace hosc
