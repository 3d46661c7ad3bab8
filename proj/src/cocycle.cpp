#include "ergokit/cocycle.hpp"

#include "ergokit/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace ergokit {

namespace {

constexpr double kDetTol = 1e-9;
constexpr long long kReprojectEvery = 1024;

Mat2 scaled(const Mat2& M, double s) { return {M.a * s, M.b * s, M.c * s, M.d * s}; }

void check_radius(const LocalRule& rule) {
    if (rule.radius < 0 || rule.radius > 2)
        throw std::invalid_argument("cocycle: rule radius must be 0, 1, or 2");
}

// Largest singular value for an arbitrary 2x2 matrix. Unlike sl2_norm this
// never throws: renormalized directions have determinants far from one.
double op_norm(const Mat2& M) {
    double F = M.a * M.a + M.b * M.b + M.c * M.c + M.d * M.d;
    double lim = 2.0 * std::fabs(M.det());
    double disc = (F - lim) * (F + lim);
    if (disc < 0) disc = 0;
    return std::sqrt((F + std::sqrt(disc)) / 2.0);
}

// One renormalized left-multiplication. The invariant P = exp(acc) * dir with
// ||dir|| = 1 is preserved exactly by the factorization, so acc stays equal to
// log of the product's operator norm.
void push_left(LogProduct& P, const Mat2& A) {
    Mat2 M = A * P.dir;
    double s = op_norm(M);
    P.acc += std::log(s);
    P.dir = scaled(M, 1.0 / s);
    ++P.steps;
    if (P.steps % kReprojectEvery == 0) {
        double dd = std::fabs(P.dir.det());
        // Skip once the direction is numerically rank one: the cancellation in
        // ad - bc leaves no usable digits and the defect cannot affect acc.
        if (dd > 1e-12) {
            double log_delta = 2.0 * P.acc + std::log(dd);
            P.acc -= 0.5 * log_delta;
        }
    }
}

struct BigMat2 {
    BigRat a, b, c, d;
    BigMat2 operator*(const BigMat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
};

BigMat2 to_big(const Mat2& M) { return {BigRat(M.a), BigRat(M.b), BigRat(M.c), BigRat(M.d)}; }

bool exact_sqrt(const BigRat& r, BigRat& out) {
    if (r < 0) return false;
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    BigInt sn = boost::multiprecision::sqrt(num);
    BigInt sd = boost::multiprecision::sqrt(den);
    if (sn * sn != num || sd * sd != den) return false;
    out = BigRat(sn, sd);
    return true;
}

// Squared operator norm as an exact rational, available exactly when the
// discriminant F^2 - 4 det^2 is a perfect rational square.
bool exact_norm_sq(const BigMat2& M, BigRat& out) {
    BigRat F = M.a * M.a + M.b * M.b + M.c * M.c + M.d * M.d;
    BigRat det = M.a * M.d - M.b * M.c;
    BigRat disc = F * F - 4 * det * det;
    BigRat root;
    if (!exact_sqrt(disc, root)) return false;
    out = (F + root) / 2;
    return true;
}

double log_bigrat(const BigRat& r) {
    auto log_big = [](const BigInt& v) {
        unsigned bits = boost::multiprecision::msb(v);
        if (bits <= 512) return std::log(v.convert_to<double>());
        BigInt shifted = v >> (bits - 64);
        return std::log(shifted.convert_to<double>()) +
               static_cast<double>(bits - 64) * std::log(2.0);
    };
    return log_big(boost::multiprecision::numerator(r)) -
           log_big(boost::multiprecision::denominator(r));
}

// Deterministic base point for sample i of a horizon-n run. Counter-based so
// the draw is independent of evaluation order and thread count.
long long sample_base(const SubshiftGen& gen, const LocalRule& rule, long long n,
                      long long samples, uint64_t seed, long long i) {
    (void)samples;
    double u = uniform01(seed, (static_cast<uint64_t>(n) << 20) ^ static_cast<uint64_t>(i));
    long long lo, hi;
    if (gen.two_sided()) {
        lo = -32768;
        hi = 32768;
    } else {
        lo = rule.radius;  // keep the leftmost window inside position >= 0
        hi = 65536;
    }
    long long span = hi - lo + 1;
    long long base = lo + static_cast<long long>(u * static_cast<double>(span));
    return std::min(base, hi);
}

}  // namespace

double sl2_norm(const Mat2& M) {
    double F = M.a * M.a + M.b * M.b + M.c * M.c + M.d * M.d;
    if (F < 2.0 - kDetTol)
        throw std::domain_error(
            "sl2_norm: entry square sum below 2, impossible for unit determinant");
    return op_norm(M);
}

const Mat2& LocalRule::lookup(const std::string& window) const {
    auto it = table.find(window);
    if (it == table.end())
        throw std::out_of_range("cocycle rule: no matrix for window \"" + window + "\"");
    return it->second;
}

LocalRule constant_rule(const std::string& alphabet, const Mat2& M) {
    LocalRule rule;
    rule.radius = 0;
    rule.name = "constant";
    for (char s : alphabet) rule.table[std::string(1, s)] = M;
    return rule;
}

LocalRule schrodinger_rule(double E, const std::map<char, double>& embed) {
    LocalRule rule;
    rule.radius = 0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "schrodinger(E=%.17g)", E);
    rule.name = buf;
    for (auto& [sym, v] : embed) rule.table[std::string(1, sym)] = Mat2{E - v, -1, 1, 0};
    return rule;
}

Mat2 LogProduct::reconstruct() const { return scaled(dir, std::exp(acc)); }

double LogProduct::det_estimate() const { return std::exp(2.0 * acc) * dir.det(); }

LogProduct cocycle_product(const LocalRule& rule, const SubshiftGen& gen,
                           long long base, long long n) {
    check_radius(rule);
    LogProduct P;
    if (n == 0) return P;
    const long long N = rule.radius;
    const long long w = 2 * N + 1;
    if (n > 0) {
        // factor j reads the window centred at position base + j + 1
        std::string stretch = gen.window(base + 1 - N, n + 2 * N);
        for (long long j = 0; j < n; ++j)
            push_left(P, rule.lookup(stretch.substr(static_cast<size_t>(j),
                                                    static_cast<size_t>(w))));
    } else {
        // inverse factors at positions base-1 .. base-k, leftmost deepest
        long long k = -n;
        std::string stretch = gen.window(base - k + 1 - N, k + 2 * N);
        for (long long j = 1; j <= k; ++j) {
            const Mat2& A = rule.lookup(stretch.substr(static_cast<size_t>(k - j),
                                                       static_cast<size_t>(w)));
            push_left(P, A.inverse());
        }
    }
    return P;
}

LyapStats lyapunov_estimate(const LocalRule& rule, const SubshiftGen& gen,
                            long long n, long long samples, uint64_t seed) {
    check_radius(rule);
    if (n <= 0) throw std::invalid_argument("lyapunov_estimate: n must be positive");
    if (samples <= 0) throw std::invalid_argument("lyapunov_estimate: samples must be positive");
    LyapStats st;
    st.min = std::numeric_limits<double>::infinity();
    st.max = -st.min;
    double sum = 0;
    for (long long i = 0; i < samples; ++i) {
        long long base = sample_base(gen, rule, n, samples, seed, i);
        double v = cocycle_product(rule, gen, base, n).acc / static_cast<double>(n);
        sum += v;
        st.max = std::max(st.max, v);
        st.min = std::min(st.min, v);
    }
    st.mean = sum / static_cast<double>(samples);
    return st;
}

std::vector<double> uniformity_gap(const LocalRule& rule, const SubshiftGen& gen,
                                   const std::vector<long long>& n_list,
                                   long long samples, uint64_t seed) {
    std::vector<double> gaps;
    gaps.reserve(n_list.size());
    for (long long n : n_list) {
        LyapStats st = lyapunov_estimate(rule, gen, n, samples, seed);
        gaps.push_back(st.max - st.min);
    }
    return gaps;
}

double word_sup_F(const LocalRule& rule, const std::string& x, const SubshiftGen& gen,
                  long long horizon) {
    check_radius(rule);
    if (x.empty()) return 0.0;
    if (horizon < static_cast<long long>(x.size()) * 4)
        throw std::invalid_argument("word_sup_F: horizon too small for x");
    const long long N = rule.radius;
    const long long w = 2 * N + 1;
    long long start = gen.two_sided() ? -horizon / 2 : 0;
    std::string text = gen.window(start, horizon);
    // Completions that actually occur: every window l x r with N symbols of
    // context on each side, collected from occurrences inside the sample.
    std::set<std::string> completions;
    size_t pos = text.find(x);
    while (pos != std::string::npos) {
        long long lo = static_cast<long long>(pos) - N;
        long long hicount = static_cast<long long>(x.size()) + 2 * N;
        if (lo >= 0 && lo + hicount <= static_cast<long long>(text.size()))
            completions.insert(text.substr(static_cast<size_t>(lo),
                                           static_cast<size_t>(hicount)));
        pos = text.find(x, pos + 1);
    }
    if (completions.empty())
        throw std::invalid_argument("word_sup_F: \"" + x + "\" is not a factor within the horizon");
    double best = -std::numeric_limits<double>::infinity();
    for (const std::string& c : completions) {
        LogProduct P;
        for (size_t j = 0; j < x.size(); ++j)
            push_left(P, rule.lookup(c.substr(j, static_cast<size_t>(w))));
        best = std::max(best, P.acc);
    }
    return best;
}

AvalancheReport avalanche_defect(const std::vector<Mat2>& mats, double lambda) {
    const long long N = static_cast<long long>(mats.size());
    long long p = N;
    while (p > 1 && p % 3 == 0) p /= 3;
    if (N < 3 || p != 1)
        throw std::invalid_argument("avalanche_defect: chain length must be a power of 3, at least 3");

    AvalancheReport rep;

    std::vector<double> log_norms(mats.size());
    for (size_t j = 0; j < mats.size(); ++j) log_norms[j] = std::log(sl2_norm(mats[j]));

    rep.norms_ok = std::all_of(log_norms.begin(), log_norms.end(),
                               [&](double v) { return v >= lambda; });
    rep.pairs_ok = true;
    for (size_t j = 0; j + 1 < mats.size(); ++j) {
        double lhs = std::log(sl2_norm(mats[j] * mats[j + 1]));
        if (std::fabs(log_norms[j] + log_norms[j + 1] - lhs) >= lambda / 2) {
            rep.pairs_ok = false;
            break;
        }
    }
    rep.hypotheses_ok = rep.norms_ok && rep.pairs_ok;

    // Exact-rational route: every entry is an exact binary rational, so when
    // each discriminant is a perfect square the whole defect is the log of an
    // exact ratio, and commuting chains give a bit-exact zero.
    {
        bool ok = true;
        BigRat ratio_num = 1, ratio_den = 1;
        BigMat2 total = to_big(mats[0]);
        BigRat nsq;
        for (size_t j = 1; j < mats.size() && ok; ++j) {
            BigMat2 bj = to_big(mats[j]);
            total = bj * total;
            ok = exact_norm_sq(bj * to_big(mats[j - 1]), nsq);  // chain pair, orbit order
            if (ok) ratio_den *= nsq;
        }
        for (size_t j = 1; j + 1 < mats.size() && ok; ++j) {
            ok = exact_norm_sq(to_big(mats[j]), nsq);
            if (ok) ratio_num *= nsq;
        }
        if (ok) ok = exact_norm_sq(total, nsq);
        if (ok) {
            ratio_num *= nsq;
            rep.exact_path = true;
            BigRat ratio = ratio_num / ratio_den;
            rep.defect = (ratio == 1) ? 0.0 : std::fabs(0.5 * log_bigrat(ratio));
        }
    }

    if (!rep.exact_path) {
        LogProduct P;
        for (const Mat2& A : mats) push_left(P, A);
        double chain = 0;
        for (size_t j = 0; j + 1 < mats.size(); ++j)
            chain += std::log(sl2_norm(mats[j + 1] * mats[j]));
        double mid = 0;
        for (size_t j = 1; j + 1 < mats.size(); ++j) mid += log_norms[j];
        rep.defect = std::fabs(P.acc + mid - chain);
    }

    rep.kappa_hat = rep.defect * std::exp(lambda) / static_cast<double>(N);
    return rep;
}

}  // namespace ergokit
