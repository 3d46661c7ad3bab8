#include "ergokit/circle.hpp"

#include <stdexcept>

namespace ergokit {

CircleH circle_h(double alpha, double beta, long long n) {
    if (n < 1) throw std::invalid_argument("circle_h: n must be >= 1");
    long double a = alpha, b = beta;
    long double h = 2.0L, ht = 2.0L;
    for (long long q = -n; q <= n; ++q) {
        long double base = static_cast<long double>(q) * a;
        long double d1 = dist_to_int_l(base + b);
        if (d1 < ht) ht = d1;
        if (d1 < h) h = d1;
        if (q != 0) {
            long double d0 = dist_to_int_l(base);
            if (d0 < h) h = d0;
        }
    }
    return {static_cast<double>(h), static_cast<double>(ht)};
}

double multi_h(double alpha, const std::vector<double>& cuts, long long n) {
    if (n < 1) throw std::invalid_argument("multi_h: n must be >= 1");
    std::vector<long double> betas = {0.0L};
    double prev = 0.0;
    for (double c : cuts) {
        if (!(c > prev && c < 1.0))
            throw std::invalid_argument("multi_h: cuts must be strictly increasing in (0,1)");
        betas.push_back(static_cast<long double>(c));
        prev = c;
    }
    long double a = alpha;
    long double best = 2.0L;
    size_t p = betas.size();
    for (long long q = -n; q <= n; ++q) {
        long double base = static_cast<long double>(q) * a;
        for (size_t k = 0; k < p; ++k) {
            for (size_t l = 0; l < p; ++l) {
                if (q == 0 && k == l) continue;
                long double d = dist_to_int_l(base + betas[k] - betas[l]);
                if (d < best) best = d;
            }
        }
    }
    return static_cast<double>(best);
}

BruteM brute_M(double alpha, double gamma, long long N) {
    if (N < 1000) throw std::invalid_argument("brute_M: N must be >= 1e3");
    BruteM r;
    r.n_lo = N / 2;
    r.n_hi = N;
    long double a = alpha, g = gamma;
    long double run = 1e300L, win = 1e300L;
    for (long long m = 1; m <= r.n_hi; ++m) {
        long double lm = static_cast<long double>(m);
        long double vp = lm * dist_to_int_l(lm * a - g);
        long double vn = lm * dist_to_int_l(-lm * a - g);
        if (vp < run) { run = vp; r.running_argmin = m; }
        if (vn < run) { run = vn; r.running_argmin = -m; }
        if (m >= r.n_lo) {
            if (vp < win) { win = vp; r.window_argmin = m; }
            if (vn < win) { win = vn; r.window_argmin = -m; }
        }
    }
    r.running_min = static_cast<double>(run);
    r.window_min = static_cast<double>(win);
    return r;
}

BruteM brute_M_exact(const BigRat& alpha, const BigRat& gamma, long long N) {
    if (N < 1000) throw std::invalid_argument("brute_M: N must be >= 1e3");
    BruteM r;
    r.n_lo = N / 2;
    r.n_hi = N;
    BigInt qa = boost::multiprecision::denominator(alpha);
    BigInt qg = boost::multiprecision::denominator(gamma);
    BigInt Q = boost::multiprecision::lcm(qa, qg);
    BigInt A = boost::multiprecision::numerator(alpha) * (Q / qa);
    BigInt G = boost::multiprecision::numerator(gamma) * (Q / qg);
    auto mod_q = [&](BigInt x) {
        x %= Q;
        if (x < 0) x += Q;
        return x;
    };
    // value(n) = |n| * min(r_n, Q - r_n) / Q with r_n = (n A - G) mod Q
    BigInt best_run = -1, best_win = -1;
    auto scan = [&](long long sign) {
        BigInt step = mod_q(sign >= 0 ? A : -A);
        BigInt rmod = mod_q(BigInt(sign) * A - G);
        for (long long m = 1; m <= r.n_hi; ++m) {
            BigInt d = rmod <= Q - rmod ? rmod : Q - rmod;
            BigInt nd = BigInt(m) * d;
            if (best_run < 0 || nd < best_run) {
                best_run = nd;
                r.running_argmin = sign * m;
            }
            if (m >= r.n_lo && (best_win < 0 || nd < best_win)) {
                best_win = nd;
                r.window_argmin = sign * m;
            }
            rmod += step;
            if (rmod >= Q) rmod -= Q;
        }
    };
    scan(+1);
    scan(-1);
    r.running_min = to_double(BigRat(best_run, Q));
    r.window_min = to_double(BigRat(best_win, Q));
    return r;
}

}  // namespace ergokit
