#include "ergokit/cf.hpp"

#include <stdexcept>
#include <string>

namespace ergokit {

namespace {

constexpr long long kQuotientBlowup = 100000000;  // 1e8

BigInt floor_div(const BigInt& n, const BigInt& d) {
    BigInt q = n / d;
    if (q * d != n && (n < 0) != (d < 0)) --q;
    return q;
}

RegularCF expand_core(BigRat x, int K, bool float_origin) {
    if (!(x > 0 && x < 1)) throw std::invalid_argument("cf_expand: alpha must lie in (0,1)");
    RegularCF cf;
    cf.value = x;
    cf.p = {BigInt(0)};
    cf.q = {BigInt(1)};
    const BigRat noise_floor(BigInt(1), BigInt(100000000000000LL));  // 1e-14
    for (int k = 1; k <= K; ++k) {
        if (x == 0 || (float_origin && x < noise_floor)) {
            cf.rational = true;
            break;
        }
        BigInt num = boost::multiprecision::numerator(x);
        BigInt den = boost::multiprecision::denominator(x);
        BigInt a = floor_div(den, num);  // floor(1/x)
        if (a > kQuotientBlowup) {
            cf.rational = true;
            break;
        }
        cf.a.push_back(a.convert_to<long long>());
        x = BigRat(den, num) - BigRat(a);  // {1/x}
        BigInt pk, qk;
        if (cf.a.size() == 1) {
            pk = 1;
            qk = a;
        } else {
            size_t k2 = cf.p.size();
            pk = a * cf.p[k2 - 1] + cf.p[k2 - 2];
            qk = a * cf.q[k2 - 1] + cf.q[k2 - 2];
        }
        cf.p.push_back(pk);
        cf.q.push_back(qk);
        if (x == 0) {
            cf.rational = true;
            break;
        }
    }
    return cf;
}

}  // namespace

BigRat RegularCF::approx_error(int k) const {
    if (k < 0 || k >= static_cast<int>(p.size()))
        throw std::out_of_range("approx_error: convergent index");
    BigRat e = q[static_cast<size_t>(k)] * value - p[static_cast<size_t>(k)];
    return e < 0 ? BigRat(-e) : e;
}

RegularCF cf_expand(double alpha, int K) {
    return expand_core(BigRat(alpha), K, true);
}

RegularCF cf_expand_exact(const BigRat& alpha, int K) {
    return expand_core(alpha, K, false);
}

RegularCF cf_from_digits(const std::vector<long long>& digits) {
    if (digits.empty()) throw std::invalid_argument("cf_from_digits: no digits");
    RegularCF cf;
    cf.a = digits;
    cf.p = {BigInt(0), BigInt(1)};
    cf.q = {BigInt(1), BigInt(digits[0])};
    for (size_t k = 2; k <= digits.size(); ++k) {
        if (digits[k - 1] <= 0) throw std::invalid_argument("cf_from_digits: quotients must be positive");
        cf.p.push_back(digits[k - 1] * cf.p[k - 1] + cf.p[k - 2]);
        cf.q.push_back(digits[k - 1] * cf.q[k - 1] + cf.q[k - 2]);
    }
    cf.value = BigRat(cf.p.back(), cf.q.back());
    return cf;
}

RegularCF golden_cf(int depth) { return cf_from_digits(std::vector<long long>(static_cast<size_t>(depth), 1)); }

RegularCF silver_cf(int depth) { return cf_from_digits(std::vector<long long>(static_cast<size_t>(depth), 2)); }

BigRat rational_surrogate(double x, int depth) {
    double f = frac_part(x);
    if (f == 0.0) return BigRat(BigInt(0));
    RegularCF cf = cf_expand(f, depth);
    return BigRat(cf.p.back(), cf.q.back());
}

BigRat hartman_h_exact(const RegularCF& cf, long long n) {
    if (n < 1) throw std::invalid_argument("hartman_h: n must be >= 1");
    // largest k with q_k <= n, requiring q_{k+1} to exist for the bracket
    int K = static_cast<int>(cf.q.size()) - 1;
    int k = 0;
    while (k + 1 <= K && cf.q[static_cast<size_t>(k + 1)] <= n) ++k;
    if (k == K) throw std::invalid_argument("hartman_h: CF depth insufficient to bracket n");
    return cf.approx_error(k);
}

double hartman_h(const RegularCF& cf, long long n) { return to_double(hartman_h_exact(cf, n)); }

BigRat brute_h_exact(const BigRat& alpha, long long n) {
    if (n < 1) throw std::invalid_argument("brute_h: n must be >= 1");
    BigInt A = boost::multiprecision::numerator(frac_part(alpha));
    BigInt Q = boost::multiprecision::denominator(frac_part(alpha));
    BigInt r = A % Q;
    BigInt best = r <= Q - r ? r : Q - r;
    for (long long q = 2; q <= n; ++q) {
        r += A;
        if (r >= Q) r -= Q;
        BigInt d = r <= Q - r ? r : Q - r;
        if (d < best) best = d;
    }
    return BigRat(best, Q);
}

double brute_h(double alpha, long long n) {
    if (n < 1) throw std::invalid_argument("brute_h: n must be >= 1");
    double best = 1.0;
    for (long long q = 1; q <= n; ++q) {
        double d = dist_to_int(static_cast<double>(q) * alpha);
        if (d < best) best = d;
    }
    return best;
}

RegularCF alpha_from_spec(const std::string& spec) {
    if (spec == "golden") return golden_cf();
    if (spec == "silver") return silver_cf();
    if (spec.rfind("cf:", 0) == 0) {
        std::vector<long long> digits;
        std::string body = spec.substr(3);
        size_t pos = 0;
        while (pos < body.size()) {
            size_t next = body.find(',', pos);
            if (next == std::string::npos) next = body.size();
            digits.push_back(std::stoll(body.substr(pos, next - pos)));
            pos = next + 1;
        }
        if (digits.empty()) throw std::invalid_argument("alpha_from_spec: empty digit list");
        return cf_from_digits(digits);
    }
    size_t used = 0;
    double x = std::stod(spec, &used);
    if (used != spec.size())
        throw std::invalid_argument("alpha_from_spec: cannot parse '" + spec + "'");
    if (!(x > 0.0 && x < 1.0))
        throw std::invalid_argument("alpha_from_spec: angle must lie in (0,1)");
    RegularCF cf = cf_expand(x, 40);
    if (cf.rational || cf.depth() < 25)
        throw std::domain_error(
            "alpha_from_spec: '" + spec + "' fails the irrationality heuristic");
    return cf;
}

std::vector<BigRat> brute_h_prefix_exact(const BigRat& alpha, long long n) {
    std::vector<BigRat> out;
    out.reserve(static_cast<size_t>(n));
    BigInt A = boost::multiprecision::numerator(frac_part(alpha));
    BigInt Q = boost::multiprecision::denominator(frac_part(alpha));
    BigInt r = 0, best = Q;
    for (long long q = 1; q <= n; ++q) {
        r += A;
        if (r >= Q) r -= Q;
        BigInt d = r <= Q - r ? r : Q - r;
        if (d < best) best = d;
        out.emplace_back(BigRat(best, Q));
    }
    return out;
}

}  // namespace ergokit
