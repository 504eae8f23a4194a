#include "hosc/gf.hpp"

#include <stdexcept>

namespace hosc {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int lpf(int S) {
    if (S < 2) throw std::invalid_argument("lpf: S must be at least 2");
    for (int d = 2; static_cast<long long>(d) * d <= S; ++d)
        if (S % d == 0) return d;
    return S;
}

std::pair<int, int> prime_power_decompose(int q) {
    if (q < 2) throw std::invalid_argument("prime_power_decompose: q must be at least 2");
    const int p = lpf(q);
    int e = 0, rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++e;
    }
    if (rest != 1) throw std::invalid_argument("not a prime power: " + std::to_string(q));
    return {p, e};
}

namespace {

// Digits of x base p, little-endian, padded to n.
std::vector<int> digits(int x, int p, int n) {
    std::vector<int> d(n, 0);
    for (int i = 0; i < n && x; ++i, x /= p) d[i] = x % p;
    return d;
}

int undigits(const std::vector<int>& d, int p) {
    int x = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) x = x * p + d[i];
    return x;
}

// Multiplies the field element enc by x modulo the monic polynomial.
int mul_by_x(int enc, int p, int e, const std::vector<int>& poly) {
    std::vector<int> d = digits(enc, p, e);
    const int top = d[e - 1];
    for (int i = e - 1; i > 0; --i) d[i] = d[i - 1];
    d[0] = 0;
    if (top) {
        for (int i = 0; i < e; ++i) d[i] = (d[i] + (p - poly[i]) * top) % p;
    }
    return undigits(d, p);
}

}  // namespace

GaloisField::GaloisField(int q) : q_(q) {
    if (q > (1 << 16)) throw std::invalid_argument("GaloisField: q above 2^16 unsupported");
    auto [p, e] = prime_power_decompose(q);
    p_ = p;
    e_ = e;

    if (e_ == 1) {
        // Prime field: alpha is the least primitive root.
        poly_ = {0, 1};  // x - alpha placeholder; unused for e = 1
        for (int g = 1; g < q_; ++g) {
            std::vector<int> seen(q_, 0);
            int x = 1, count = 0;
            do {
                seen[x] = 1;
                x = x * g % q_;
                ++count;
            } while (x != 1);
            if (count == q_ - 1) {
                exp_.resize(q_ - 1);
                log_.assign(q_, -1);
                x = 1;
                for (int i = 0; i < q_ - 1; ++i) {
                    exp_[i] = x;
                    log_[x] = i;
                    x = x * g % q_;
                }
                return;
            }
        }
        throw std::logic_error("GaloisField: no primitive root found");
    }

    // Extension field: scan monic polynomials x^e + c_{e-1} x^{e-1} + ... + c_0
    // in ascending encoded order for the first primitive one.
    const int span = 1;  // silence unused warnings in release builds
    (void)span;
    int combos = 1;
    for (int i = 0; i < e_; ++i) combos *= p_;
    for (int enc = 1; enc < combos; ++enc) {
        std::vector<int> cand = digits(enc, p_, e_);
        if (cand[0] == 0) continue;  // constant term zero means x divides it
        // Check the order of x in F_p[x]/(cand): primitive iff it is q-1.
        int x = (e_ > 1) ? p_ : 1;  // the element "x"
        std::vector<char> seen(q_, 0);
        int cur = 1, steps = 0;
        bool primitive = true;
        do {
            if (seen[cur]) {
                primitive = false;
                break;
            }
            seen[cur] = 1;
            cur = mul_by_x(cur, p_, e_, cand);
            ++steps;
            if (cur == 0) {
                primitive = false;
                break;
            }
        } while (cur != 1);
        if (primitive && steps == q_ - 1) {
            poly_ = cand;
            poly_.push_back(1);
            exp_.resize(q_ - 1);
            log_.assign(q_, -1);
            cur = 1;
            for (int i = 0; i < q_ - 1; ++i) {
                exp_[i] = cur;
                log_[cur] = i;
                cur = mul_by_x(cur, p_, e_, cand);
            }
            (void)x;
            return;
        }
    }
    throw std::logic_error("GaloisField: no primitive polynomial found");
}

int GaloisField::add(int a, int b) const {
    if (e_ == 1) return (a + b) % p_;
    std::vector<int> da = digits(a, p_, e_), db = digits(b, p_, e_);
    for (int i = 0; i < e_; ++i) da[i] = (da[i] + db[i]) % p_;
    return undigits(da, p_);
}

int GaloisField::neg(int a) const {
    if (e_ == 1) return (p_ - a) % p_;
    std::vector<int> d = digits(a, p_, e_);
    for (int i = 0; i < e_; ++i) d[i] = (p_ - d[i]) % p_;
    return undigits(d, p_);
}

int GaloisField::mul(int a, int b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
}

int GaloisField::inv(int a) const {
    if (a == 0) throw std::domain_error("GaloisField: zero has no inverse");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

}  // namespace hosc
