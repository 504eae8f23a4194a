#pragma once

namespace hosc {

// Gaussian tail Q(x) and its inverse on (0, 1/2).
double q_func(double x);
double q_func_inv(double p);

// Binary entropy.
double h2(double p);

// Smallest Eb/N0 (linear) at which the hard-decision BPSK-AWGN channel
// supports rate R, i.e. the solution of 1 - h2(Q(sqrt(2 R x))) = R.
double hard_decision_limit_ebno(double rate);

// BSC crossover at the given dB gap above the hard-decision limit.
double gap_to_epsilon(double gap_db, double rate);

// dB gap above the hard-decision limit for the given crossover.
double epsilon_to_gap(double epsilon, double rate);

// Terminated block-code rate (S-r)(F-W) / (S(F-W) + W r).
double terminated_rate(long long S, long long r, long long F, long long W);

struct Rational {
    long long num;
    long long den;
};
Rational terminated_rate_exact(long long S, long long r, long long F, long long W);

}  // namespace hosc
