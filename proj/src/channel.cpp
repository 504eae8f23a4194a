#include "hosc/channel.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hosc {

double q_func(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double q_func_inv(double p) {
    if (p <= 0.0 || p >= 0.5) throw std::domain_error("q_func_inv: p must be in (0, 1/2)");
    double lo = 0.0, hi = 60.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (q_func(mid) > p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double h2(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double hard_decision_limit_ebno(double rate) {
    if (rate <= 0.0 || rate >= 1.0)
        throw std::domain_error("hard_decision_limit_ebno: rate must be in (0, 1)");
    // 1 - h2(Q(sqrt(2 R x))) - R is increasing in x; bisect.
    auto f = [rate](double x) { return 1.0 - h2(q_func(std::sqrt(2.0 * rate * x))) - rate; };
    double lo = 1e-12, hi = 1.0;
    while (f(hi) < 0.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double gap_to_epsilon(double gap_db, double rate) {
    const double ebno = hard_decision_limit_ebno(rate) * std::pow(10.0, gap_db / 10.0);
    return q_func(std::sqrt(2.0 * rate * ebno));
}

double epsilon_to_gap(double epsilon, double rate) {
    if (epsilon <= 0.0 || epsilon >= 0.5)
        throw std::domain_error("epsilon_to_gap: epsilon must be in (0, 1/2)");
    const double x = q_func_inv(epsilon);
    const double ebno = x * x / (2.0 * rate);
    return 10.0 * std::log10(ebno / hard_decision_limit_ebno(rate));
}

Rational terminated_rate_exact(long long S, long long r, long long F, long long W) {
    if (F <= W) throw std::invalid_argument("terminated_rate: need F > W");
    Rational out{(S - r) * (F - W), S * (F - W) + W * r};
    const long long g = std::gcd(out.num, out.den);
    out.num /= g;
    out.den /= g;
    return out;
}

double terminated_rate(long long S, long long r, long long F, long long W) {
    const Rational q = terminated_rate_exact(S, r, F, W);
    return static_cast<double>(q.num) / static_cast<double>(q.den);
}

}  // namespace hosc
