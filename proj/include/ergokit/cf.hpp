#pragma once

#include "ergokit/common.hpp"

#include <optional>
#include <vector>

namespace ergokit {

// Regular continued fraction of some alpha in (0,1):
//   alpha = 1/(a1 + 1/(a2 + ...)),  p0=0, q0=1, p1=1, q1=a1,
//   p_k = a_k p_{k-1} + p_{k-2},    q_k = a_k q_{k-1} + q_{k-2}.
// `value` is the exact rational the expansion was computed from (for floats,
// the dyadic value of the input; for digit-built constants, p_K/q_K).
struct RegularCF {
    std::vector<long long> a;   // partial quotients a_1..a_K
    std::vector<BigInt> p, q;   // convergents, index 0..K
    bool rational = false;      // expansion terminated (input detected rational)
    BigRat value;               // exact working value of alpha

    int depth() const { return static_cast<int>(a.size()); }
    // |q_k alpha - p_k| as an exact rational
    BigRat approx_error(int k) const;
};

// Floor algorithm on the exact dyadic value of alpha. Stops early with the
// rational flag when a partial quotient exceeds 1e8 or the residual drops
// below 1e-14 (float noise floor), or the residual is exactly zero.
RegularCF cf_expand(double alpha, int K);

// Same algorithm on an exact rational input; quotient blow-up bound still
// applies so near-rational surrogates terminate cleanly.
RegularCF cf_expand_exact(const BigRat& alpha, int K);

// Build from given digits; value is the deepest convergent p_K/q_K.
RegularCF cf_from_digits(const std::vector<long long>& digits);

// Deep rational surrogates for the two named constants. Digit streams are
// all-1 and all-2; the surrogate error is far below every tolerance used.
RegularCF golden_cf(int depth = 120);
RegularCF silver_cf(int depth = 80);

// Exact rational truncation of a float: CF of its dyadic value cut at
// `depth` digits (or at the first huge quotient).
BigRat rational_surrogate(double x, int depth);

// Parse an angle spec: "golden", "silver", "cf:d1,d2,..", or a decimal
// literal. Decimals must pass the irrationality heuristic (expansion depth
// >= 25 before any partial quotient exceeds 1e8); rationals are refused
// with domain_error. The named constants and explicit digit lists are
// accepted as-is.
RegularCF alpha_from_spec(const std::string& spec);

// h_n(alpha) = min_{0<q<=n} ||q alpha|| via the bracketing convergent
// q_k <= n < q_{k+1}; throws if the expansion is too shallow to bracket n.
BigRat hartman_h_exact(const RegularCF& cf, long long n);
double hartman_h(const RegularCF& cf, long long n);

// Direct minimum over 1 <= q <= n, the independent oracle.
BigRat brute_h_exact(const BigRat& alpha, long long n);
double brute_h(double alpha, long long n);

// All of h_1..h_n in one incremental sweep (prefix minima), exact.
std::vector<BigRat> brute_h_prefix_exact(const BigRat& alpha, long long n);

}  // namespace ergokit
