#include "hosc/staircase.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace hosc {

namespace {

ExtHammingSpec auto_component(int L, int M, int Sp, const ComponentSource& src) {
    if (src.explicit_spec) return *src.explicit_spec;
    const int n = (M + 1) * L * Sp;
    int rm1 = 1;
    while ((1 << rm1) < n) ++rm1;  // ceil(log2(n))
    const int r = rm1 + 1;
    const int shortening = (1 << rm1) - n;
    switch (src.perm) {
        case HammingPerm::affine: return affine_spec(r, shortening);
        case HammingPerm::boolean_fn: return boolean_spec(r, shortening);
        case HammingPerm::natural: return natural_spec(r, shortening);
    }
    throw std::logic_error("auto_component: bad perm");
}

CodeSpec assemble(int L, int M, int Sp, int C, const Dts& dts_in, NetVariant net_variant,
                  const ComponentSource& component, bool check_dts) {
    if (L < 1 || M < 1 || Sp < 1 || C < 1)
        throw std::invalid_argument("build_spec: parameters must be positive");
    if (dts_in.L() != L || dts_in.M() != M)
        throw std::invalid_argument("build_spec: DTS shape does not match (L, M)");
    if (check_dts && !is_dts(dts_in))
        throw std::invalid_argument("build_spec: invalid DTS (repeated distance)");

    CodeSpec spec;
    spec.L = L;
    spec.M = M;
    spec.Sp = Sp;
    spec.C = C;
    spec.dts = sorted_descending_by_length(normalize(dts_in));
    spec.uniform = uniform_ruler(spec.dts);
    spec.net = (Sp == 1) ? trivial_family(M) : make_net(net_variant, M, Sp);
    if (Sp > 1 && !verify_net(spec.net))
        throw std::invalid_argument("build_spec: permutations do not form a net");
    spec.component = auto_component(L, M, Sp, component);
    if (spec.component.length() != spec.span_length())
        throw std::invalid_argument("build_spec: component length mismatch");
    if (spec.component.r > spec.S())
        throw std::invalid_argument("build_spec: need r <= S");

    spec.perm_assign.reserve(spec.uniform.assignment.size());
    for (const auto& [l, k] : spec.uniform.assignment) spec.perm_assign.push_back(k);
    for (int kp = 0; kp < L; ++kp)
        if (spec.perm_assign[kp] != 0)
            throw std::logic_error("build_spec: first L permutations must be the identity");
    return spec;
}

}  // namespace

CodeSpec build_spec(int L, int M, int Sp, int C, const Dts& dts, NetVariant net_variant,
                    const ComponentSource& component) {
    return assemble(L, M, Sp, C, dts, net_variant, component, true);
}

CodeSpec build_spec_unchecked(int L, int M, int Sp, int C, const Dts& dts,
                              NetVariant net_variant, const ComponentSource& component) {
    return assemble(L, M, Sp, C, dts, net_variant, component, false);
}

std::vector<VarRef> constraint_support(const CodeSpec& spec, long long n, int i_prime,
                                       int chain) {
    if (n % spec.L != 0) throw std::invalid_argument("constraint_support: n must be in L*Z");
    const int K = spec.K();
    std::vector<VarRef> out;
    out.reserve(static_cast<size_t>(spec.span_length()));
    for (int sigma = 0; sigma < K; ++sigma) {
        const int kp = K - 1 - sigma;
        const int d = spec.uniform.marks[kp];
        const int k = spec.perm_assign[kp];
        const int var_chain = (kp < spec.L) ? chain : (chain + spec.C - 1) % spec.C;
        for (int jp = 0; jp < spec.Sp; ++jp) {
            auto [i, j] = spec.net.apply(k, i_prime, jp);
            out.push_back(VarRef{var_chain, n - d, i, j});
        }
    }
    return out;
}

EncoderState make_encoder_state(const CodeSpec& spec) {
    EncoderState st;
    st.buffers.assign(spec.C, std::vector<std::deque<Block>>(spec.L));
    for (int c = 0; c < spec.C; ++c)
        for (int l = 0; l < spec.L; ++l)
            st.buffers[c][l].assign(spec.dts.rulers[l].marks.back(), Block(spec.Sp));
    return st;
}

std::vector<std::vector<Block>> encode_rectangle(
    const CodeSpec& spec, EncoderState& state,
    const std::vector<std::vector<std::uint8_t>>& info) {
    const int K = spec.K();
    const int Sp = spec.Sp;
    const int group_cols = spec.L * Sp;
    const int r = spec.component.r;
    const int info_cols = group_cols - r;
    if (static_cast<int>(info.size()) != spec.C)
        throw std::invalid_argument("encode_rectangle: expected one info block per chain");
    for (const auto& blk : info)
        if (static_cast<int>(blk.size()) != Sp * info_cols)
            throw std::invalid_argument("encode_rectangle: info size mismatch");

    std::vector<std::vector<Block>> out(spec.C, std::vector<Block>(spec.L, Block(Sp)));
    for (int c = 0; c < spec.C; ++c) {
        const int src_chain = (c + spec.C - 1) % spec.C;
        for (int ip = 0; ip < Sp; ++ip) {
            std::uint32_t syn = 0;
            for (int sigma = 0; sigma < K - spec.L; ++sigma) {
                const int kp = K - 1 - sigma;
                const auto [l, k] = spec.uniform.assignment[kp];
                const int depth = spec.dts.rulers[l].marks[k];
                const Block& blk = state.past_block(spec, src_chain, l, depth);
                for (int jp = 0; jp < Sp; ++jp) {
                    auto [i, j] = spec.net.apply(k, ip, jp);
                    if (blk.get(i, j)) syn ^= column(spec.component, sigma * Sp + jp);
                }
            }
            const int base = (K - spec.L) * Sp;
            for (int g = 0; g < info_cols; ++g)
                if (info[c][static_cast<size_t>(ip) * info_cols + g])
                    syn ^= column(spec.component, base + g);

            // Older blocks are already folded into syn; solve T * p = syn
            // for the r parity bits of this row.
            std::vector<std::uint32_t> cols(r), tag(r);
            for (int u = 0; u < r; ++u) {
                cols[u] = column(spec.component, spec.component.length() - r + u);
                tag[u] = 1u << u;
            }
            std::vector<std::uint8_t> parity(r, 0);
            std::uint32_t s = syn;
            for (int bit = r - 1; bit >= 0; --bit) {
                int pivot = -1;
                for (int u = 0; u < r; ++u)
                    if ((cols[u] >> bit) & 1) {
                        pivot = u;
                        break;
                    }
                if (pivot < 0) continue;
                for (int u = 0; u < r; ++u)
                    if (u != pivot && ((cols[u] >> bit) & 1)) {
                        cols[u] ^= cols[pivot];
                        tag[u] ^= tag[pivot];
                    }
                if ((s >> bit) & 1) {
                    s ^= cols[pivot];
                    for (int u = 0; u < r; ++u)
                        if ((tag[pivot] >> u) & 1) parity[u] ^= 1;
                }
                cols[pivot] = 0;
                tag[pivot] = 0;
            }
            if (s != 0) throw std::logic_error("encode_rectangle: component not systematizable");

            // Lay the row out over the L new blocks: info then parity.
            for (int g = 0; g < group_cols; ++g) {
                const bool bit = (g < info_cols)
                                     ? info[c][static_cast<size_t>(ip) * info_cols + g] != 0
                                     : parity[g - info_cols] != 0;
                out[c][g / Sp].set(ip, g % Sp, bit);
            }
        }
    }

    // Advance the buffers; new block n-L+1+u lands in residue (-(n-L+1+u)) mod L.
    const long long n = spec.L * state.rect;
    for (int c = 0; c < spec.C; ++c)
        for (int u = 0; u < spec.L; ++u) {
            const long long m = n - spec.L + 1 + u;
            const int res = static_cast<int>(((-m) % spec.L + spec.L) % spec.L);
            auto& buf = state.buffers[c][res];
            buf.push_front(out[c][u]);
            while (static_cast<int>(buf.size()) >
                   spec.dts.rulers[res].marks.back())
                buf.pop_back();
        }
    ++state.rect;
    return out;
}

MemoryMetrics memory_metrics(const CodeSpec& spec) {
    long long sum = 0, maxlen = 0;
    for (const Ruler& r : spec.dts.rulers) {
        sum += r.length();
        maxlen = std::max<long long>(maxlen, r.length());
    }
    const long long block_bits = static_cast<long long>(spec.Sp) * spec.Sp;
    return {spec.C * block_bits * sum, spec.C * block_bits * (1 + spec.L * maxlen)};
}

bool check_scattering(const CodeSpec& spec, int window_spans) {
    if (window_spans < 2 * (spec.max_delay() + 1))
        throw std::invalid_argument("check_scattering: window must cover 2*(d_max+1) spans");
    const int Sp = spec.Sp;
    const long long n_constraints =
        static_cast<long long>(window_spans) * spec.C * Sp;

    // (variable, constraint) incidence over the window, then look for a
    // constraint pair meeting in two or more variables.
    std::vector<std::pair<std::uint64_t, std::uint32_t>> incidence;
    incidence.reserve(static_cast<size_t>(n_constraints) * spec.span_length());
    const long long block_offset = spec.max_delay() + spec.L;  // make block ids nonnegative
    for (int v = 0; v < window_spans; ++v)
        for (int c = 0; c < spec.C; ++c)
            for (int ip = 0; ip < Sp; ++ip) {
                const std::uint32_t cid =
                    static_cast<std::uint32_t>((static_cast<long long>(v) * spec.C + c) * Sp + ip);
                for (const VarRef& var :
                     constraint_support(spec, static_cast<long long>(v) * spec.L, ip, c)) {
                    const std::uint64_t key =
                        ((static_cast<std::uint64_t>(var.chain) * (window_spans * spec.L + block_offset + 1) +
                          static_cast<std::uint64_t>(var.block + block_offset)) *
                             Sp +
                         var.row) *
                            Sp +
                        var.col;
                    incidence.emplace_back(key, cid);
                }
            }
    std::sort(incidence.begin(), incidence.end());

    std::vector<std::uint64_t> pairs;
    for (size_t lo = 0; lo < incidence.size();) {
        size_t hi = lo;
        while (hi < incidence.size() && incidence[hi].first == incidence[lo].first) ++hi;
        for (size_t x = lo; x < hi; ++x)
            for (size_t y = x + 1; y < hi; ++y) {
                const std::uint64_t a = std::min(incidence[x].second, incidence[y].second);
                const std::uint64_t b = std::max(incidence[x].second, incidence[y].second);
                pairs.push_back(a * static_cast<std::uint64_t>(n_constraints) + b);
            }
        lo = hi;
    }
    std::sort(pairs.begin(), pairs.end());
    return std::adjacent_find(pairs.begin(), pairs.end()) == pairs.end();
}

int stall_bound(int M, int t) { return (M + 1) * t + 1; }

std::string span_layout_string(const CodeSpec& spec) {
    const bool pi1_is_transpose =
        spec.net.M() >= 1 && spec.net.mats[1].a == 0 && spec.net.mats[1].b == 1 &&
        spec.net.mats[1].c == 1 && spec.net.mats[1].d == 0;
    std::ostringstream out;
    out << "(";
    const int K = spec.K();
    for (int sigma = 0; sigma < K; ++sigma) {
        const int kp = K - 1 - sigma;
        const int d = spec.uniform.marks[kp];
        const int k = spec.perm_assign[kp];
        if (sigma) out << " | ";
        out << "B";
        if (k == 1 && pi1_is_transpose)
            out << "^T";
        else if (k == 2)
            out << "^pi";
        else if (k != 0)
            out << "^pi" << k;
        if (d == 0)
            out << "_n";
        else
            out << "_{n-" << d << "}";
    }
    out << ")";
    return out.str();
}

std::string code_spec_to_json(const CodeSpec& spec) {
    nlohmann::json j;
    j["L"] = spec.L;
    j["M"] = spec.M;
    j["Sp"] = spec.Sp;
    j["C"] = spec.C;
    j["dts"] = nlohmann::json::array();
    for (const Ruler& r : spec.dts.rulers) j["dts"].push_back(r.marks);
    j["net"] = {{"kind", spec.net.ring.kind == RingKind::field ? "field" : "zmod"},
                {"variant", to_string(spec.net.variant)}};
    const char* perm = spec.component.perm == HammingPerm::affine    ? "affine"
                       : spec.component.perm == HammingPerm::natural ? "natural"
                                                                     : "boolean";
    j["component"] = {{"r", spec.component.r},
                      {"shortening", spec.component.shortening},
                      {"perm", perm}};
    return j.dump(2);
}

CodeSpec code_spec_from_json(const std::string& json_text) {
    const nlohmann::json j = nlohmann::json::parse(json_text);
    Dts dts;
    for (const auto& row : j.at("dts")) dts.rulers.emplace_back(row.get<std::vector<int>>());
    const NetVariant variant = net_variant_from_string(j.at("net").at("variant").get<std::string>());
    ComponentSource src;
    const std::string perm = j.at("component").at("perm").get<std::string>();
    src.perm = perm == "affine"    ? HammingPerm::affine
               : perm == "natural" ? HammingPerm::natural
                                   : HammingPerm::boolean_fn;
    CodeSpec spec = build_spec(j.at("L").get<int>(), j.at("M").get<int>(), j.at("Sp").get<int>(),
                               j.at("C").get<int>(), dts, variant, src);
    // The auto component must agree with the serialized one.
    if (spec.component.r != j.at("component").at("r").get<int>() ||
        spec.component.shortening != j.at("component").at("shortening").get<int>())
        throw std::invalid_argument("code_spec_from_json: component mismatch");
    return spec;
}

}  // namespace hosc
