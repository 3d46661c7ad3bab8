#include "ergokit/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ergokit {

namespace {

// Number of eigenvalues of the Dirichlet section strictly below t, from the
// signs of the ratio recurrence d_i = (V_i - t) - 1/d_{i-1} of leading
// principal minors.
long long eigs_below(const std::vector<double>& V, double t) {
    long long cnt = 0;
    double d = 0;
    bool first = true;
    for (double v : V) {
        d = first ? (v - t) : (v - t) - 1.0 / d;
        first = false;
        if (d <= 0) ++cnt;        // non-positive pivot convention
        if (d == 0) d = -1e-300;  // tie-break keeps the count monotone in t
    }
    return cnt;
}

double trace_at(const std::string& word, const std::map<char, double>& embed, double E) {
    Mat2 P;
    for (char s : word) P = Mat2{E - embed.at(s), -1, 1, 0} * P;
    return P.a + P.d;
}

// Band edge between an outside point (|tr| > 2) and an inside point, refined
// to 1e-9; returns the inside end so bands stay closed.
double refine_edge(const std::string& word, const std::map<char, double>& embed,
                   double outside, double inside) {
    while (std::fabs(inside - outside) > 1e-9) {
        double mid = 0.5 * (outside + inside);
        if (std::fabs(trace_at(word, embed, mid)) - 2.0 <= 0)
            inside = mid;
        else
            outside = mid;
    }
    return inside;
}

}  // namespace

EnergyGrid EnergyGrid::make(double e_min, double e_max, long long points) {
    if (points < 2) throw std::invalid_argument("energy grid: need at least 2 points");
    if (!(e_max > e_min)) throw std::invalid_argument("energy grid: e_max must exceed e_min");
    EnergyGrid g;
    g.e_min = e_min;
    g.e_max = e_max;
    g.points = points;
    g.values.reserve(static_cast<size_t>(points));
    double h = (e_max - e_min) / static_cast<double>(points - 1);
    for (long long i = 0; i < points - 1; ++i)
        g.values.push_back(e_min + static_cast<double>(i) * h);
    g.values.push_back(e_max);
    return g;
}

std::vector<double> tridiag_eigs(const std::vector<double>& potential) {
    const long long L = static_cast<long long>(potential.size());
    if (L < 1) throw std::invalid_argument("tridiag_eigs: potential must be nonempty");
    double lo = potential[0], hi = potential[0];
    for (double v : potential) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    lo -= 2.0 + 1e-6;
    hi += 2.0 + 1e-6;

    std::vector<double> eigs;
    eigs.reserve(static_cast<size_t>(L));
    for (long long k = 1; k <= L; ++k) {
        double a = lo, b = hi;
        while (b - a > 1e-11) {
            double mid = 0.5 * (a + b);
            if (eigs_below(potential, mid) >= k)
                b = mid;
            else
                a = mid;
        }
        eigs.push_back(0.5 * (a + b));
    }
    return eigs;
}

std::vector<std::pair<double, double>> gamma_scan(const SubshiftGen& gen,
                                                  const std::map<char, double>& embed,
                                                  const EnergyGrid& grid, long long n,
                                                  long long samples, uint64_t seed) {
    std::vector<std::pair<double, double>> out;
    out.reserve(grid.values.size());
    for (double E : grid.values) {
        LocalRule rule = schrodinger_rule(E, embed);
        out.emplace_back(E, lyapunov_estimate(rule, gen, n, samples, seed).mean);
    }
    return out;
}

BandSet trace_bands(const std::string& periodic_word, const std::map<char, double>& embed,
                    const EnergyGrid& grid) {
    if (periodic_word.empty())
        throw std::invalid_argument("trace_bands: period word must be nonempty");
    const long long q = static_cast<long long>(periodic_word.size());

    std::vector<char> inside(grid.values.size());
    for (size_t i = 0; i < grid.values.size(); ++i)
        inside[i] =
            std::fabs(trace_at(periodic_word, embed, grid.values[i])) - 2.0 <= 0 ? 1 : 0;

    BandSet bands;
    size_t i = 0;
    while (i < inside.size()) {
        if (!inside[i]) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j + 1 < inside.size() && inside[j + 1]) ++j;
        double lo = grid.values[i];
        if (i > 0) lo = refine_edge(periodic_word, embed, grid.values[i - 1], lo);
        double hi = grid.values[j];
        if (j + 1 < inside.size())
            hi = refine_edge(periodic_word, embed, grid.values[j + 1], hi);
        bands.intervals.emplace_back(lo, hi);
        i = j + 1;
    }

    if (static_cast<long long>(bands.intervals.size()) > q)
        throw std::runtime_error("trace_bands: more bands than the period length");
    return bands;
}

SpectrumEstimate spectrum_estimate(const SubshiftGen& gen, const std::map<char, double>& embed,
                                   const EnergyGrid& grid, long long n, double eps) {
    SpectrumEstimate est;
    est.n = n;
    est.eps = eps > 0 ? eps : 3.0 / std::sqrt(static_cast<double>(n));

    auto scan = gamma_scan(gen, embed, grid, n, 8, 0);
    bool open = false;
    for (size_t i = 0; i + 1 < scan.size(); ++i) {
        if (scan[i].second < est.eps && scan[i + 1].second < est.eps) {
            ++est.cells;
            if (open)
                est.bands.intervals.back().second = scan[i + 1].first;
            else
                est.bands.intervals.emplace_back(scan[i].first, scan[i + 1].first);
            open = true;
        } else {
            open = false;
        }
    }
    est.measure = measure_of_union(est.bands);
    return est;
}

double measure_of_union(const BandSet& bands) {
    std::vector<std::pair<double, double>> iv = bands.intervals;
    for (const auto& [lo, hi] : iv)
        if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo)
            throw std::invalid_argument("measure_of_union: malformed interval");
    std::sort(iv.begin(), iv.end());
    double total = 0, cur_lo = 0, cur_hi = 0;
    bool open = false;
    for (const auto& [lo, hi] : iv) {
        if (open && lo <= cur_hi) {
            cur_hi = std::max(cur_hi, hi);
        } else {
            if (open) total += cur_hi - cur_lo;
            cur_lo = lo;
            cur_hi = hi;
            open = true;
        }
    }
    if (open) total += cur_hi - cur_lo;
    return total;
}

}  // namespace ergokit
