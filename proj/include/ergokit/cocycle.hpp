#pragma once

#include "ergokit/subshift_gen.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace ergokit {

// Row-major 2x2 real matrix [[a,b],[c,d]], normally with determinant one.
struct Mat2 {
    double a = 1, b = 0, c = 0, d = 1;

    double det() const { return a * d - b * c; }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    // adjugate-based inverse, exact for determinant one
    Mat2 inverse() const { return {d, -b, -c, a}; }
};

// Operator 2-norm via the closed form sigma_max^2 = (F + sqrt(F^2 - 4 det^2))/2
// with F = a^2+b^2+c^2+d^2. Equal for M and M^{-1} when det = 1 by
// construction, and never below 1 then. Throws domain_error when F < 2 - 1e-9,
// which no real matrix of unit determinant can reach.
double sl2_norm(const Mat2& M);

// Locally constant matrix assignment: the factor at orbit position p reads
// the symbol window [p+1-radius, p+1+radius] (the table key), so a radius-0
// rule reads exactly the symbol one step ahead of the base point.
struct LocalRule {
    int radius = 0;
    std::unordered_map<std::string, Mat2> table;
    std::string name;  // used in manifests and describe strings

    const Mat2& lookup(const std::string& window) const;  // out_of_range if missing
};

// Radius-0 rule assigning M to every letter of the alphabet.
LocalRule constant_rule(const std::string& alphabet, const Mat2& M);

// Radius-0 rule for the energy-E transfer matrix [[E - v, -1], [1, 0]] where
// v is the per-symbol potential value.
LocalRule schrodinger_rule(double E, const std::map<char, double>& embed);

// Product of n rule matrices in log-renormalized form: the direction matrix
// keeps operator norm one and the accumulator carries log of the product's
// operator norm, so log_norm() never overflows. The determinant of the
// direction decays like exp(-2 acc) for hyperbolic products; it is
// re-projected in log space every 1024 steps while it remains measurable.
struct LogProduct {
    double acc = 0;
    Mat2 dir;
    long long steps = 0;

    double log_norm() const { return acc; }
    // exp(acc) * dir; overflows to inf entries past acc ~ 700
    Mat2 reconstruct() const;
    // exp(2 acc) det(dir): determinant of the represented product, meaningful
    // while the direction determinant is numerically measurable
    double det_estimate() const;
};

// A(n, base): for n >= 0 the product of the rule matrices along orbit
// positions base .. base+n-1 (later positions multiply on the left); n = 0
// gives the identity; n = -k gives the inverse-matrix product that makes the
// cocycle identity A(n+m, w) = A(n, T^m w) A(m, w) hold for all signs.
// Window shortage at the generator's edge propagates as out_of_range.
LogProduct cocycle_product(const LocalRule& rule, const SubshiftGen& gen,
                           long long base, long long n);

struct LyapStats {
    double mean = 0, max = 0, min = 0;
};

// Statistics of (1/n) log||A(n, base_i)|| over deterministically drawn base
// points (counter-based from the seed, independent of execution order).
// Bases land in [0, 65536] for one-sided generators, [-32768, 32768] for
// two-sided ones.
LyapStats lyapunov_estimate(const LocalRule& rule, const SubshiftGen& gen,
                            long long n, long long samples, uint64_t seed);

// Per-n spread (max - min) of the sampled values; shrinking spread is the
// uniform-convergence diagnostic.
std::vector<double> uniformity_gap(const LocalRule& rule, const SubshiftGen& gen,
                                   const std::vector<long long>& n_list,
                                   long long samples, uint64_t seed);

// Largest log||product over x|| across all legal boundary completions of x
// within the rule's radius (exact finite enumeration; radius <= 2 only).
// The completions are read from the generator's factor set at the needed
// length. Throws invalid_argument when x is not a factor.
double word_sup_F(const LocalRule& rule, const std::string& x, const SubshiftGen& gen,
                  long long horizon = 1 << 20);

// Near-multiplicativity defect of a chain of N = 3^P matrices:
//   | log||A_N...A_1|| + sum_{j=2}^{N-1} log||A_j|| -
//     sum_{j=1}^{N-1} log||A_{j+1} A_j|| |
// together with the two chain hypotheses: every log||A_j|| >= lambda, and
// |log||A_j|| + log||A_{j+1}|| - log||A_j A_{j+1}||| < lambda/2. When every
// norm's discriminant is a perfect rational square (diagonal families), the
// defect is evaluated in exact rational arithmetic, so commuting chains give
// exactly zero. kappa_hat = defect * exp(lambda) / N is the fitted constant
// of the defect <= kappa N exp(-lambda) shape.
struct AvalancheReport {
    double defect = 0;
    double kappa_hat = 0;
    bool norms_ok = false;
    bool pairs_ok = false;
    bool hypotheses_ok = false;
    bool exact_path = false;
};

AvalancheReport avalanche_defect(const std::vector<Mat2>& mats, double lambda);

}  // namespace ergokit
