#include "ergokit/profiles.hpp"

#include "ergokit/word_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

namespace ergokit {

namespace {

struct ViewHash {
    size_t operator()(std::string_view v) const noexcept {
        return std::hash<std::string_view>{}(v);
    }
};

struct PairCount {
    long long full = 0;
    long long half = 0;
};

// counts at the full horizon and at the half horizon in one pass
std::unordered_map<std::string_view, PairCount, ViewHash> dual_counts(
    std::string_view text, long long n) {
    long long positions = static_cast<long long>(text.size()) - n + 1;
    long long half_positions = static_cast<long long>(text.size()) / 2 - n + 1;
    std::unordered_map<std::string_view, PairCount, ViewHash> counts;
    counts.reserve(1024);
    for (long long i = 0; i < positions; ++i) {
        PairCount& c = counts[text.substr(static_cast<size_t>(i), static_cast<size_t>(n))];
        ++c.full;
        if (i < half_positions) ++c.half;
    }
    return counts;
}

}  // namespace

double freq_estimate(const SubshiftGen& gen, const std::string& w, long long L) {
    if (w.empty()) throw std::invalid_argument("freq: empty word");
    if (L < 10 * static_cast<long long>(w.size()))
        throw std::invalid_argument("freq: L must be >= 10 * |w|");
    std::string text = gen.window(0, L);
    return static_cast<double>(count_occurrences(w, text)) /
           static_cast<double>(L - static_cast<long long>(w.size()) + 1);
}

EtaProfile eta_profile_at(const SubshiftGen& gen, std::vector<long long> n_values,
                          long long L) {
    if (n_values.empty()) throw std::invalid_argument("eta: empty length list");
    for (long long n : n_values)
        if (n < 1 || L < 100 * n)
            throw std::invalid_argument("eta: lengths must satisfy 1 <= n <= L/100");
    std::string text = gen.window(0, L);
    std::string_view tv(text);

    EtaProfile prof;
    prof.n_values = std::move(n_values);
    prof.horizon = L;
    for (long long n : prof.n_values) {
        auto counts = dual_counts(tv, n);
        long long positions = L - n + 1;
        long long half_positions = L / 2 - n + 1;
        long long min_full = -1, min_half = -1;
        for (const auto& [v, c] : counts) {
            if (min_full < 0 || c.full < min_full) min_full = c.full;
            if (c.half > 0 && (min_half < 0 || c.half < min_half)) min_half = c.half;
        }
        double eta = static_cast<double>(min_full) / static_cast<double>(positions);
        double eta_half = static_cast<double>(min_half) / static_cast<double>(half_positions);
        prof.p_n.push_back(static_cast<long long>(counts.size()));
        prof.eta_hat.push_back(eta);
        prof.score.push_back(static_cast<double>(n) * eta);
        prof.stability_delta.push_back(
            std::fabs(static_cast<double>(n) * eta - static_cast<double>(n) * eta_half));
    }
    size_t tail_from = prof.n_values.size() / 2;
    for (size_t i = tail_from; i < prof.score.size(); ++i)
        prof.limsup_estimate = std::max(prof.limsup_estimate, prof.score[i]);
    return prof;
}

EtaProfile eta_profile(const SubshiftGen& gen, long long n_max, long long L) {
    if (n_max < 1) throw std::invalid_argument("eta: n_max must be >= 1");
    std::vector<long long> ns;
    for (long long n = 1; n <= n_max; ++n) ns.push_back(n);
    return eta_profile_at(gen, std::move(ns), L);
}

double bprime_score(const SubshiftGen& gen, long long n, long long L) {
    if (n < 1 || L < 100 * n)
        throw std::invalid_argument("bprime: need 1 <= n <= L/100");
    std::string text = gen.window(0, L);
    std::string_view tv(text);
    long long positions = L - n + 1;
    long long lo = n - 1, hi = L - n;  // interior positions with full context
    long long denom = hi - lo + 1;

    // per-factor union length of covered interior positions, built from the
    // increasing occurrence starts in a single pass
    struct Cover {
        long long covered = 0;
        long long last_end = -1;  // last covered interior position so far
    };
    std::unordered_map<std::string_view, Cover, ViewHash> cov;
    cov.reserve(1024);
    for (long long i = 0; i < positions; ++i) {
        Cover& c = cov[tv.substr(static_cast<size_t>(i), static_cast<size_t>(n))];
        long long a = std::max(std::max(i, lo), c.last_end + 1);
        long long b = std::min(i + n - 1, hi);
        if (b >= a) {
            c.covered += b - a + 1;
            c.last_end = b;
        } else if (b > c.last_end) {
            c.last_end = b;
        }
    }
    double best = 1.0;
    for (const auto& [v, c] : cov)
        best = std::min(best, static_cast<double>(c.covered) / static_cast<double>(denom));
    return best;
}

double pw_score(const SubshiftGen& gen, long long n_max, long long L, long long n_min) {
    if (n_min < 1 || n_min > n_max) throw std::invalid_argument("pw: bad length range");
    std::vector<long long> ns;
    for (long long n = n_min; n <= n_max; ++n) ns.push_back(n);
    EtaProfile prof = eta_profile_at(gen, std::move(ns), L);
    return *std::min_element(prof.score.begin(), prof.score.end());
}

double lin_rec_constant(const SubshiftGen& gen, long long n, long long L) {
    if (n < 1 || L < 1000 * n)
        throw std::invalid_argument("linrec: need 1 <= n <= L/1000");
    std::string text = gen.window(0, L);
    std::string_view tv(text);
    long long positions = L - n + 1;

    // every window of length m contains factor f iff m covers the lead-in to
    // its first occurrence, every gap between consecutive starts, and the
    // tail after its last occurrence
    struct Need {
        long long first = -1, last = -1, max_gap = 0;
    };
    std::unordered_map<std::string_view, Need, ViewHash> need;
    need.reserve(1024);
    for (long long i = 0; i < positions; ++i) {
        Need& d = need[tv.substr(static_cast<size_t>(i), static_cast<size_t>(n))];
        if (d.first < 0) {
            d.first = i;
        } else {
            d.max_gap = std::max(d.max_gap, i - d.last);
        }
        d.last = i;
    }
    long long m_star = n;
    for (const auto& [v, d] : need) {
        long long m_f = std::max({d.first + n, d.max_gap + n - 1, L - d.last});
        m_star = std::max(m_star, m_f);
    }
    double k = std::ceil(static_cast<double>(m_star) / static_cast<double>(n) / 0.25) * 0.25;
    if (k > 64.0) return std::numeric_limits<double>::infinity();
    return k;
}

std::vector<BigRat> sturmian_exact_freqs(const RegularCF& cf, long long n) {
    if (n < 1) throw std::invalid_argument("freqs: n must be >= 1");
    std::vector<BigRat> pts;
    pts.reserve(static_cast<size_t>(n) + 1);
    for (long long j = 0; j <= n; ++j) pts.push_back(frac_part(BigRat(-j) * cf.value));
    std::sort(pts.begin(), pts.end());
    std::vector<BigRat> gaps;
    gaps.reserve(pts.size());
    for (size_t k = 0; k + 1 < pts.size(); ++k) gaps.push_back(pts[k + 1] - pts[k]);
    gaps.push_back(BigRat(1) - pts.back() + pts.front());
    std::sort(gaps.begin(), gaps.end());
    return gaps;
}

BoshVerdict bosh_verdict(const SubshiftGen& gen, const EtaProfile& prof) {
    BoshVerdict v;
    v.limsup_estimate = prof.limsup_estimate;
    size_t argmax = 0;
    for (size_t i = 1; i < prof.score.size(); ++i)
        if (prof.score[i] > prof.score[argmax]) argmax = i;
    if (!prof.stability_delta.empty()) v.stability = prof.stability_delta[argmax];

    static const char* known[] = {"rotation(",  "substitution(", "image(",    "derived(",
                                  "episturmian(", "iet(",        "periodic("};
    std::string d = gen.describe();
    v.family_flagged = true;
    for (const char* k : known)
        if (d.rfind(k, 0) == 0) v.family_flagged = false;

    if (v.limsup_estimate >= v.likely_threshold &&
        v.stability <= std::max(0.5 * v.limsup_estimate, 0.02))
        v.verdict = "likely";
    else if (v.limsup_estimate < v.unlikely_threshold)
        v.verdict = "unlikely";
    else
        v.verdict = "inconclusive";
    return v;
}

}  // namespace ergokit
