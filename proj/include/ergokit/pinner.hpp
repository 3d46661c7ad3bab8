#pragma once

#include "ergokit/common.hpp"

#include <vector>

namespace ergokit {

// Negative (ceiling) continued fraction of alpha in (0,1):
//   a_{n+1} = ceil(1/alpha_n),  alpha_{n+1} = a_{n+1} - 1/alpha_n,
//   p_{n+1} = a_{n+1} p_n - p_{n-1},  q_{n+1} = a_{n+1} q_n - q_{n-1},
//   seeds p_{-1} = -1, p_0 = 0, q_{-1} = 0, q_0 = 1.
// All digits are >= 2. D_i = q_i alpha - p_i = alpha_0 ... alpha_i > 0
// decreases to zero; D_{-1} = 1. abar_i = 1/(a_i - abar_{i-1}) with
// abar_0 = 0, so abar_i = q_{i-1}/q_i.
struct NegativeCF {
    std::vector<long long> a;        // a_1..a_K (1-based digit j is a[j-1])
    std::vector<BigInt> p, q;        // index i = 0..K at [i]
    std::vector<BigRat> D;           // D_0..D_K at [i]
    std::vector<BigRat> alpha_tail;  // alpha_0..alpha_K at [i]
    std::vector<BigRat> alpha_bar;   // abar_0..abar_K at [i]
    BigRat value;                    // exact {alpha}

    int depth() const { return static_cast<int>(a.size()); }
};

NegativeCF negative_cf(double alpha, int K);
NegativeCF negative_cf_exact(const BigRat& alpha, int K);

// Digits of gamma against the alpha_i scales of a NegativeCF:
//   b_{n+1} = floor(gamma_n / alpha_n),  gamma_{n+1} = {gamma_n / alpha_n},
// so that {gamma} = sum b_i D_{i-1}. Always 0 <= b_i <= a_i - 1.
struct AlphaExpansion {
    std::vector<long long> b;         // b_1..b_K (1-based digit j is b[j-1])
    std::vector<BigRat> gamma_tail;   // gamma_0..gamma_K at [i]
    BigRat gamma;                     // exact {gamma}
    BigRat reconstruction_error;      // gamma_K * D_{K-1}, exact
};

AlphaExpansion alpha_expansion(const NegativeCF& ncf, double gamma, int K);
AlphaExpansion alpha_expansion_exact(const NegativeCF& ncf, const BigRat& gamma, int K);

// t_j = 2 b_j - a_j + 2 for 1-based j.
long long t_digit(const NegativeCF& ncf, const AlphaExpansion& exp, int j);

struct PinnerRow {
    int k;
    double s1, s2, s3, s4, min_s;
};

struct PinnerResult {
    double M = 0;              // min over k in [ceil(K/2), K] of min_i s_i(k)
    int argmin_k = 0;
    double certificate = 0;    // propagated bound on the truncated d_k^+ tail
    bool gamma_hypothesis_ok = true;  // expansion never terminated
    bool digit_hypothesis_ok = true;  // no b_j = a_j - 1 in the trailing half
    bool certificate_ok = true;       // certificate <= 1e-6 * M
    std::vector<PinnerRow> rows;      // k = 1..K
};

// Four-term formula for M(alpha,gamma) = liminf |n| ||n alpha - gamma||,
// evaluated in exact rational arithmetic with an exact bound on the
// truncated tail of d_k^+.
PinnerResult pinner_M(const NegativeCF& ncf, const AlphaExpansion& exp, int K);

}  // namespace ergokit
