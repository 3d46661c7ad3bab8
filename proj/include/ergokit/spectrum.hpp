#pragma once

#include "ergokit/cocycle.hpp"
#include "ergokit/subshift_gen.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ergokit {

// Uniform energy grid with both endpoints included.
struct EnergyGrid {
    double e_min = 0, e_max = 0;
    long long points = 0;
    std::vector<double> values;

    static EnergyGrid make(double e_min, double e_max, long long points);
    double spacing() const { return (e_max - e_min) / static_cast<double>(points - 1); }
};

// Sorted disjoint closed intervals [lo, hi].
struct BandSet {
    std::vector<std::pair<double, double>> intervals;
};

// All eigenvalues of the symmetric tridiagonal section on {1..L} of
//   (H u)(n) = u(n+1) + u(n-1) + V(n) u(n)
// with zero (Dirichlet) boundary values, sorted ascending, each to 1e-10.
// Computed by Sturm-sequence bisection: the count of eigenvalues below t is
// read off the signs of the leading-principal-minor ratio recurrence.
std::vector<double> tridiag_eigs(const std::vector<double>& potential);

// Mean of (1/n) log||M^E(n, .)|| per grid energy, sampled at deterministic
// base points (see lyapunov_estimate). Returns (E, gamma_hat) pairs.
std::vector<std::pair<double, double>> gamma_scan(const SubshiftGen& gen,
                                                  const std::map<char, double>& embed,
                                                  const EnergyGrid& grid, long long n,
                                                  long long samples, uint64_t seed);

// Spectrum of the periodic operator with potential cycle embed[word]: the set
// of E where the period-q transfer-matrix trace has |tr| <= 2, resolved by
// sign changes of |tr| - 2 between grid points plus bisection to 1e-9. The
// grid must bracket the spectrum and resolve every band by at least two
// cells. At most q bands exist; finding more throws runtime_error.
BandSet trace_bands(const std::string& periodic_word, const std::map<char, double>& embed,
                    const EnergyGrid& grid);

// Union of grid cells [E_i, E_i+1] whose endpoint Lyapunov estimates both
// fall below eps, merged into maximal intervals. eps <= 0 selects the
// default fluctuation scale 3/sqrt(n). Sampling is fixed (8 base points,
// seed 0) so identical calls reproduce identical output.
struct SpectrumEstimate {
    BandSet bands;
    double eps = 0;        // threshold actually used
    long long n = 0;       // horizon
    double measure = 0;    // total length of the merged cells
    long long cells = 0;   // count of accepted grid cells
};

SpectrumEstimate spectrum_estimate(const SubshiftGen& gen, const std::map<char, double>& embed,
                                   const EnergyGrid& grid, long long n, double eps = 0);

// Total length of the union of the given intervals; overlapping or unsorted
// input is merged first. Malformed intervals (hi < lo, non-finite) throw.
double measure_of_union(const BandSet& bands);

}  // namespace ergokit
