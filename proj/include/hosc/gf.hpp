#pragma once

#include <vector>

namespace hosc {

// Smallest prime dividing S (S >= 2).
int lpf(int S);

bool is_prime(int n);

// Returns (p, e) with q = p^e, or throws when q is not a prime power.
std::pair<int, int> prime_power_decompose(int q);

// Log/antilog arithmetic for F_q, q = p^e <= 2^16. Elements are encoded
// as integers in [q) whose base-p digits are the polynomial coefficients;
// tables come from the lexicographically first monic primitive polynomial
// of degree e over F_p (for e = 1, alpha is the least primitive root).
class GaloisField {
  public:
    explicit GaloisField(int q);

    int order() const { return q_; }
    int characteristic() const { return p_; }
    int degree() const { return e_; }
    int alpha() const { return exp_[1]; }

    int add(int a, int b) const;
    int neg(int a) const;
    int sub(int a, int b) const { return add(a, neg(b)); }
    int mul(int a, int b) const;
    int inv(int a) const;

    // alpha^k for k >= 0.
    int alpha_pow(int k) const { return exp_[k % (q_ - 1)]; }

    const std::vector<int>& primitive_poly() const { return poly_; }

  private:
    int q_, p_, e_;
    std::vector<int> poly_;  // monic, degree e, coefficient i at index i
    std::vector<int> exp_;   // exp_[i] = alpha^i, length q-1
    std::vector<int> log_;   // inverse of exp_ on [1, q)
};

}  // namespace hosc
