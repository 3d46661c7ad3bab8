#pragma once

#include "ergokit/cf.hpp"
#include "ergokit/subshift_gen.hpp"

#include <string>
#include <vector>

namespace ergokit {

// Empirical frequency profile over a list of factor lengths, scanned from a
// single long window. All measures here are empirical: the in-scope
// generator families are uniquely ergodic, so one orbit window determines
// the frequencies; this is an assumption, recorded by reporting the horizon
// and a stability delta from a half-horizon rerun next to every score.
struct EtaProfile {
    std::vector<long long> n_values;
    std::vector<long long> p_n;           // distinct factors observed at each n
    std::vector<double> eta_hat;          // minimum observed factor frequency
    std::vector<double> score;            // n * eta_hat(n)
    std::vector<double> stability_delta;  // |score - score at half horizon|
    long long horizon = 0;
    double limsup_estimate = 0;  // max score over the trailing half of n_values
};

// Overlapping-occurrence frequency of w in the window [0, L).
// Denominator L - |w| + 1 counts exactly the positions hosting a full copy.
double freq_estimate(const SubshiftGen& gen, const std::string& w, long long L);

// Profile at the given lengths; the last n-1 window positions are excluded
// at each n so every counted position hosts a full factor.
EtaProfile eta_profile_at(const SubshiftGen& gen, std::vector<long long> n_values,
                          long long L);

// Profile over n = 1..n_max. Requires L >= 100 * n_max.
EtaProfile eta_profile(const SubshiftGen& gen, long long n_max, long long L);

// Minimum over observed length-n factors w of the fraction of interior
// positions j (n-1 <= j <= L-n) covered by some occurrence of w.
double bprime_score(const SubshiftGen& gen, long long n, long long L);

// Minimum of |v| * frequency(v) over all observed factors with
// n_min <= |v| <= n_max; equals the minimum of the per-length scores.
double pw_score(const SubshiftGen& gen, long long n_max, long long L,
                long long n_min = 1);

// Smallest K (granularity 0.25) such that every window of length ceil(K*n)
// inside [0, L) contains every observed length-n factor; +infinity when no
// K <= 64 works. Requires L >= 1000 * n.
double lin_rec_constant(const SubshiftGen& gen, long long n, long long L);

// Exact factor frequencies of the coding of x -> x + alpha with cut alpha:
// the n+1 gap lengths between the circle points {-j alpha}, j = 0..n,
// sorted ascending. The smallest gap equals hartman_h(cf, n).
std::vector<BigRat> sturmian_exact_freqs(const RegularCF& cf, long long n);

// Desk-scale verdict on whether n * eta(n) stays bounded away from zero.
// Thresholds are heuristic and reported alongside the verdict; generators
// outside the handled families are flagged instead of judged.
struct BoshVerdict {
    std::string verdict;  // "likely" | "unlikely" | "inconclusive"
    double limsup_estimate = 0;
    double stability = 0;            // delta at the score argmax
    double likely_threshold = 0.05;  // limsup at or above: likely
    double unlikely_threshold = 0.02;  // limsup below: unlikely
    bool family_flagged = false;
};

BoshVerdict bosh_verdict(const SubshiftGen& gen, const EtaProfile& prof);

}  // namespace ergokit
