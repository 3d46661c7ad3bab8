#pragma once

#include "ergokit/common.hpp"

#include <vector>

namespace ergokit {

struct CircleH {
    double h;        // min ||q*alpha + r*beta||, 0 <= |q| <= n, r in {0,1}, (q,r) != (0,0)
    double h_tilde;  // min ||q*alpha + beta||,   0 <= |q| <= n
};

CircleH circle_h(double alpha, double beta, long long n);

// Multi-cut variant: beta_0 = 0 together with the given cuts; minimizes
// ||q*alpha + beta_k - beta_l|| over 0 <= |q| <= n and all pairs, skipping
// (q, k-l) = (0, 0). Cuts must be strictly increasing inside (0,1).
double multi_h(double alpha, const std::vector<double>& cuts, long long n);

struct BruteM {
    double window_min = 0;  // min of |n| * ||n*alpha - gamma|| over n_lo <= |n| <= n_hi
    long long window_argmin = 0;
    double running_min = 0;  // same minimum over the whole scan 1 <= |n| <= n_hi
    long long running_argmin = 0;
    long long n_lo = 0, n_hi = 0;
};

// Scans both signs of n over 1 <= |n| <= N and reports two minima: one
// restricted to the dyadic tail window [N/2, N] and the running minimum of
// the whole scan. The window value estimates the liminf when the attaining
// subsequence is dense enough on a log scale; the running minimum is the
// infimum seen so far and also catches exact hits at small n.
BruteM brute_M(double alpha, double gamma, long long N);
BruteM brute_M_exact(const BigRat& alpha, const BigRat& gamma, long long N);

}  // namespace ergokit
