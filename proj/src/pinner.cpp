#include "ergokit/pinner.hpp"

#include <algorithm>
#include <stdexcept>

namespace ergokit {

namespace {

BigInt ceil_div(const BigInt& n, const BigInt& d) {
    BigInt q = n / d;
    if (q * d != n && (n < 0) == (d < 0)) ++q;
    return q;
}

BigRat rat_abs(const BigRat& x) { return x < 0 ? BigRat(-x) : x; }

}  // namespace

NegativeCF negative_cf_exact(const BigRat& alpha, int K) {
    if (!(alpha > 0 && alpha < 1))
        throw std::invalid_argument("negative_cf: alpha must lie in (0,1)");
    if (K < 1) throw std::invalid_argument("negative_cf: K must be >= 1");
    NegativeCF n;
    n.value = alpha;
    BigInt p_prev = -1, p_cur = 0, q_prev = 0, q_cur = 1;
    n.p.push_back(p_cur);
    n.q.push_back(q_cur);
    BigRat x = alpha;  // alpha_0
    n.alpha_tail.push_back(x);
    n.alpha_bar.push_back(BigRat(0));
    n.D.push_back(alpha);  // D_0 = q_0 alpha - p_0
    for (int k = 1; k <= K; ++k) {
        if (x == 0) throw std::domain_error("negative_cf: rational input (tail hit zero)");
        BigInt num = boost::multiprecision::numerator(x);
        BigInt den = boost::multiprecision::denominator(x);
        BigInt a = ceil_div(den, num);  // ceil(1/x)
        if (a > BigInt(100000000))
            throw std::domain_error("negative_cf: rational input (digit blow-up)");
        n.a.push_back(a.convert_to<long long>());
        x = BigRat(a) - BigRat(den, num);  // a - 1/x, in [0,1)
        n.alpha_tail.push_back(x);
        BigInt p_next = a * p_cur - p_prev;
        BigInt q_next = a * q_cur - q_prev;
        p_prev = p_cur; p_cur = p_next;
        q_prev = q_cur; q_cur = q_next;
        n.p.push_back(p_cur);
        n.q.push_back(q_cur);
        n.D.push_back(BigRat(q_cur) * alpha - BigRat(p_cur));
        BigRat bar_prev = n.alpha_bar.back();
        n.alpha_bar.push_back(BigRat(1) / (BigRat(a) - bar_prev));
    }
    return n;
}

NegativeCF negative_cf(double alpha, int K) {
    return negative_cf_exact(BigRat(alpha), K);
}

AlphaExpansion alpha_expansion_exact(const NegativeCF& ncf, const BigRat& gamma, int K) {
    if (K < 1 || K > ncf.depth())
        throw std::invalid_argument("alpha_expansion: K out of range for this expansion");
    AlphaExpansion e;
    e.gamma = frac_part(gamma);
    BigRat g = e.gamma;  // gamma_0
    e.gamma_tail.push_back(g);
    for (int i = 0; i < K; ++i) {
        const BigRat& ai = ncf.alpha_tail[static_cast<size_t>(i)];
        if (ai == 0) {  // terminated tail: all further digits are zero
            e.b.push_back(0);
            e.gamma_tail.push_back(BigRat(0));
            continue;
        }
        BigRat ratio = g / ai;
        BigInt num = boost::multiprecision::numerator(ratio);
        BigInt den = boost::multiprecision::denominator(ratio);
        BigInt bi = num / den;  // ratio >= 0, plain division is floor
        e.b.push_back(bi.convert_to<long long>());
        g = ratio - BigRat(bi);
        e.gamma_tail.push_back(g);
    }
    e.reconstruction_error = g * ncf.D[static_cast<size_t>(K - 1)];
    return e;
}

AlphaExpansion alpha_expansion(const NegativeCF& ncf, double gamma, int K) {
    return alpha_expansion_exact(ncf, BigRat(gamma), K);
}

long long t_digit(const NegativeCF& ncf, const AlphaExpansion& exp, int j) {
    return 2 * exp.b[static_cast<size_t>(j - 1)] - ncf.a[static_cast<size_t>(j - 1)] + 2;
}

PinnerResult pinner_M(const NegativeCF& ncf, const AlphaExpansion& exp, int K) {
    if (K < 2) throw std::invalid_argument("pinner_M: K must be >= 2");
    if (K > ncf.depth() || static_cast<size_t>(K) > exp.b.size())
        throw std::invalid_argument("pinner_M: expansions shallower than K");
    PinnerResult r;

    // hypothesis flags
    for (int i = 0; i <= K; ++i) {
        if (exp.gamma_tail[static_cast<size_t>(i)] == 0) {
            r.gamma_hypothesis_ok = false;
            break;
        }
    }
    for (int j = K / 2 + 1; j <= K; ++j) {
        if (exp.b[static_cast<size_t>(j - 1)] == ncf.a[static_cast<size_t>(j - 1)] - 1) {
            r.digit_hypothesis_ok = false;
            break;
        }
    }

    // t_j, prefix sums for d_k^- and suffix sums for d_k^+.  The suffix sums
    // and the truncation bound use everything the expansions provide (depth J),
    // not just the row window; rows stop at K but their d_k^+ see the far tail.
    int J = static_cast<int>(std::min<size_t>(static_cast<size_t>(ncf.depth()), exp.b.size()));
    std::vector<BigInt> t(static_cast<size_t>(J) + 1);
    for (int j = 1; j <= J; ++j) t[static_cast<size_t>(j)] = t_digit(ncf, exp, j);

    // Exact bound on the dropped tail: sum_{j>J} |t_j| D_{j-1}
    //   <= 2 sum_{j>J} b_j D_{j-1} + sum_{j>J} (a_j - 2) D_{j-1}
    //    = 2 gamma_J D_{J-1} + (D_{J-1} - D_J).
    const BigRat& Dj1 = ncf.D[static_cast<size_t>(J - 1)];
    const BigRat& DJ = ncf.D[static_cast<size_t>(J)];
    BigRat tail_abs = BigRat(2) * exp.gamma_tail[static_cast<size_t>(J)] * Dj1 + (Dj1 - DJ);

    std::vector<BigRat> suffix(static_cast<size_t>(J) + 2, BigRat(0));
    for (int j = J; j >= 1; --j) {
        suffix[static_cast<size_t>(j)] = suffix[static_cast<size_t>(j) + 1] +
                                         BigRat(t[static_cast<size_t>(j)]) *
                                             ncf.D[static_cast<size_t>(j - 1)];
    }

    const BigRat quarter(1, 4);
    BigInt s_minus = 0;  // sum_{j<=k} t_j q_{j-1}
    BigRat best;
    bool have_best = false;
    BigRat worst_cert(0);
    int lo = (K + 1) / 2;

    for (int k = 1; k <= K; ++k) {
        // q_{j-1} at j=k contributes q_{k-1}
        s_minus += t[static_cast<size_t>(k)] * ncf.q[static_cast<size_t>(k - 1)];
        BigRat dk_minus = BigRat(s_minus, ncf.q[static_cast<size_t>(k)]);
        BigRat Dkm1 = ncf.D[static_cast<size_t>(k - 1)];
        BigRat dk_plus = suffix[static_cast<size_t>(k) + 1] / Dkm1;
        const BigRat& ak = ncf.alpha_tail[static_cast<size_t>(k)];
        const BigRat& abk = ncf.alpha_bar[static_cast<size_t>(k)];
        BigRat scale = BigRat(ncf.q[static_cast<size_t>(k)]) * Dkm1;
        BigRat one(1);

        BigRat s1 = quarter * (one - abk + dk_minus) * (one - ak + dk_plus) * scale;
        BigRat s2 = quarter * (one + abk + dk_minus) * (one + ak + dk_plus) * scale;
        BigRat s3 = quarter * rat_abs(one - abk - dk_minus) * rat_abs(one - ak - dk_plus) * scale;
        BigRat s4 = quarter * (one + abk - dk_minus) * (one + ak + dk_plus) * scale;
        BigRat mins = std::min(std::min(s1, s2), std::min(s3, s4));

        r.rows.push_back({k, to_double(s1), to_double(s2), to_double(s3), to_double(s4),
                          to_double(mins)});

        if (k >= lo) {
            if (!have_best || mins < best) {
                best = mins;
                r.argmin_k = k;
                have_best = true;
            }
            // |d s_i / d (dk_plus)| <= 1/4 (1 + abar_k + |d_k^-|) q_k D_{k-1};
            // the dropped tail shifts dk_plus by at most tail_abs / D_{k-1}.
            BigRat coeff = one + abk + rat_abs(dk_minus);
            BigRat cert = quarter * coeff * tail_abs * BigRat(ncf.q[static_cast<size_t>(k)]);
            if (cert > worst_cert) worst_cert = cert;
        }
    }

    r.M = to_double(best);
    r.certificate = to_double(worst_cert);
    r.certificate_ok = (worst_cert <= BigRat(1, 1000000) * best);
    return r;
}

}  // namespace ergokit
