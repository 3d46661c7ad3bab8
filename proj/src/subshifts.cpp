#include "ergokit/subshifts.hpp"

#include "ergokit/word_ops.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace ergokit {

namespace {

std::string fmt_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

bool passes_irrationality_heuristic(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) return false;
    RegularCF cf = cf_expand(alpha, 40);
    return !cf.rational && cf.depth() >= 25;
}

}  // namespace

// ---------------------------------------------------------------------------
// RotationGen
// ---------------------------------------------------------------------------

RotationGen::RotationGen(double alpha, std::vector<double> cuts, double theta) {
    alpha_x_ = BigRat(alpha);
    theta_x_ = BigRat(theta);
    for (double c : cuts) cuts_x_.emplace_back(c);
    init();
}

RotationGen::RotationGen(BigRat alpha, std::vector<BigRat> cuts, BigRat theta)
    : alpha_x_(std::move(alpha)), theta_x_(std::move(theta)), cuts_x_(std::move(cuts)) {
    init();
}

void RotationGen::init() {
    if (!(alpha_x_ > 0 && alpha_x_ < 1))
        throw std::invalid_argument("rotation: alpha must lie in (0,1)");
    if (cuts_x_.empty()) throw std::invalid_argument("rotation: at least one cut");
    BigRat prev(0);
    for (const BigRat& c : cuts_x_) {
        if (!(c > prev && c < 1))
            throw std::invalid_argument("rotation: cuts must be strictly increasing in (0,1)");
        prev = c;
    }
    if (!(theta_x_ >= 0 && theta_x_ < 1))
        throw std::invalid_argument("rotation: theta must lie in [0,1)");
    alpha_d_ = to_double(alpha_x_);
    theta_d_ = to_double(theta_x_);
    irrational_ = passes_irrationality_heuristic(alpha_d_);

    using boost::multiprecision::denominator;
    using boost::multiprecision::lcm;
    using boost::multiprecision::numerator;
    den_ = lcm(denominator(alpha_x_), denominator(theta_x_));
    for (const BigRat& c : cuts_x_) den_ = lcm(den_, denominator(c));
    step_ = numerator(alpha_x_) * (den_ / denominator(alpha_x_));
    start_ = numerator(theta_x_) * (den_ / denominator(theta_x_));
    for (const BigRat& c : cuts_x_)
        cuts_.push_back(numerator(c) * (den_ / denominator(c)));
}

std::string RotationGen::alphabet() const {
    std::string a;
    for (size_t k = 0; k < cuts_.size() + 1; ++k) a.push_back(static_cast<char>('0' + k));
    return a;
}

char RotationGen::letter_of(const BigInt& r) const {
    if (cuts_.size() == 1) return r < cuts_[0] ? '1' : '0';
    size_t k = 0;
    while (k < cuts_.size() && r >= cuts_[k]) ++k;
    return static_cast<char>('0' + k);
}

BigInt RotationGen::orbit_numerator(long long i) const {
    BigInt r = (start_ + BigInt(i) * step_) % den_;
    if (r < 0) r += den_;
    return r;
}

char RotationGen::at(long long i) const { return letter_of(orbit_numerator(i)); }

std::string RotationGen::window(long long start, long long len) const {
    if (len <= 0) return {};
    std::string out;
    out.reserve(static_cast<size_t>(len));
    BigInt r = orbit_numerator(start);
    for (long long k = 0; k < len; ++k) {
        out.push_back(letter_of(r));
        r += step_;
        if (r >= den_) r -= den_;
    }
    return out;
}

std::string RotationGen::describe() const {
    std::string s = "rotation(alpha=" + fmt_double(alpha_d_) + ", cuts=[";
    for (size_t k = 0; k < cuts_x_.size(); ++k) {
        if (k) s += ",";
        s += fmt_double(to_double(cuts_x_[k]));
    }
    s += "], theta=" + fmt_double(theta_d_);
    return s + ")";
}

// ---------------------------------------------------------------------------
// Substitutions
// ---------------------------------------------------------------------------

const std::string& SubstitutionRule::image(char a) const {
    size_t k = alphabet.find(a);
    if (k == std::string::npos)
        throw std::invalid_argument(std::string("substitution: unknown letter '") + a + "'");
    return images[k];
}

std::string SubstitutionRule::apply(const std::string& w) const {
    std::string out;
    for (char c : w) out += image(c);
    return out;
}

void SubstitutionRule::validate() const {
    if (alphabet.empty() || images.size() != alphabet.size())
        throw std::invalid_argument("substitution: alphabet/image mismatch");
    for (const std::string& im : images) {
        if (im.empty()) throw std::invalid_argument("substitution: empty image");
        for (char c : im)
            if (alphabet.find(c) == std::string::npos)
                throw std::invalid_argument("substitution: image letter outside alphabet");
    }
}

SubstitutionRule substitution_named(const std::string& name) {
    if (name == "fib") return {"fib", "ab", {"ab", "a"}};
    if (name == "tm") return {"tm", "ab", {"ab", "ba"}};
    if (name == "pd") return {"pd", "ab", {"ab", "aa"}};
    if (name == "rs") return {"rs", "abcd", {"ab", "ac", "db", "dc"}};
    throw std::invalid_argument("substitution: unknown rule '" + name + "'");
}

Primitivity primitivity_check(const SubstitutionRule& rule) {
    rule.validate();
    size_t m = rule.alphabet.size();
    std::vector<std::vector<bool>> inc(m, std::vector<bool>(m, false));
    for (size_t a = 0; a < m; ++a)
        for (char c : rule.images[a]) inc[a][rule.alphabet.find(c)] = true;
    auto all_positive = [&](const std::vector<std::vector<bool>>& M) {
        for (const auto& row : M)
            for (bool v : row)
                if (!v) return false;
        return true;
    };
    std::vector<std::vector<bool>> pw = inc;
    for (int k = 1; k <= static_cast<int>(m * m); ++k) {
        if (all_positive(pw)) return {true, k};
        std::vector<std::vector<bool>> nx(m, std::vector<bool>(m, false));
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j)
                if (pw[i][j])
                    for (size_t l = 0; l < m; ++l)
                        if (inc[j][l]) nx[i][l] = true;
        pw = std::move(nx);
    }
    return {false, 0};
}

namespace {

// Smallest r <= 8 with S^r(seed) a growing extension of seed, or 0.
int fixed_point_power(const SubstitutionRule& rule, char seed) {
    std::string w(1, seed);
    for (int r = 1; r <= 8; ++r) {
        w = rule.apply(w);  // S^r(seed)
        if (w.size() > 1 && w[0] == seed) return r;
    }
    return 0;
}

}  // namespace

std::string substitution_power(const SubstitutionRule& rule, char seed, int k) {
    rule.validate();
    std::string w(1, seed);
    for (int i = 0; i < k; ++i) w = rule.apply(w);
    return w;
}

std::string substitution_iterate(const SubstitutionRule& rule, char seed, size_t target_len) {
    rule.validate();
    int r = fixed_point_power(rule, seed);
    if (r == 0)
        throw std::domain_error(
            "substitution: no growing prefix-preserving power of the seed within 8 steps");
    std::string buf(1, seed);
    while (buf.size() < target_len) {
        for (int i = 0; i < r; ++i) buf = rule.apply(buf);
    }
    return buf.substr(0, target_len);
}

SubstitutionGen::SubstitutionGen(SubstitutionRule rule, char seed)
    : rule_(std::move(rule)), seed_(seed) {
    rule_.validate();
    power_ = fixed_point_power(rule_, seed_);
    if (power_ == 0)
        throw std::domain_error(
            "substitution: no growing prefix-preserving power of the seed within 8 steps");
    buf_ = std::string(1, seed_);
}

void SubstitutionGen::extend_to(size_t len) const {
    while (buf_.size() < len) {
        for (int i = 0; i < power_; ++i) buf_ = rule_.apply(buf_);
    }
}

char SubstitutionGen::at(long long i) const {
    if (i < 0) throw std::out_of_range("substitution generator is one-sided");
    extend_to(static_cast<size_t>(i) + 1);
    return buf_[static_cast<size_t>(i)];
}

std::string SubstitutionGen::describe() const {
    std::string s = "substitution(" + (rule_.name.empty() ? "custom" : rule_.name) + ", seed=";
    s.push_back(seed_);
    return s + ")";
}

ImageGen::ImageGen(SubstitutionRule rule, std::shared_ptr<const SubshiftGen> base)
    : rule_(std::move(rule)), base_(std::move(base)) {
    rule_.validate();
    if (!base_) throw std::invalid_argument("image: null base generator");
}

void ImageGen::extend_to(size_t len) const {
    while (buf_.size() < len) {
        buf_ += rule_.image(base_->at(base_pos_));
        ++base_pos_;
    }
}

char ImageGen::at(long long i) const {
    if (i < 0) throw std::out_of_range("image generator is one-sided");
    extend_to(static_cast<size_t>(i) + 1);
    return buf_[static_cast<size_t>(i)];
}

std::string ImageGen::describe() const {
    return "image(" + (rule_.name.empty() ? "custom" : rule_.name) + " of " +
           base_->describe() + ")";
}

// ---------------------------------------------------------------------------
// Derived codings
// ---------------------------------------------------------------------------

DerivedCoding derived_coding(const SubshiftGen& gen, const std::string& w, long long horizon) {
    if (w.empty()) throw std::invalid_argument("derived: empty word");
    if (horizon < static_cast<long long>(w.size()))
        throw std::invalid_argument("derived: horizon shorter than the word");
    std::string text = gen.window(0, horizon);
    auto occ = occurrence_positions(w, text);
    if (occ.size() < 3)
        throw std::invalid_argument("derived: fewer than three occurrences in the window");
    DerivedCoding out;
    out.anchor = occ.front();
    std::unordered_map<std::string, size_t> id;
    for (size_t j = 0; j + 1 < occ.size(); ++j) {
        std::string ret = text.substr(static_cast<size_t>(occ[j]),
                                      static_cast<size_t>(occ[j + 1] - occ[j]));
        auto it = id.find(ret);
        size_t k;
        if (it == id.end()) {
            k = out.alphabet.size();
            if (k >= 36) throw std::domain_error("derived: return alphabet exceeds 36 letters");
            id.emplace(ret, k);
            out.alphabet.push_back(ret);
        } else {
            k = it->second;
        }
        out.derived.push_back(static_cast<char>(k < 10 ? '0' + k : 'A' + (k - 10)));
    }
    return out;
}

DerivedGen::DerivedGen(std::shared_ptr<const SubshiftGen> base, std::string w,
                       long long initial_horizon)
    : base_(std::move(base)), w_(std::move(w)), horizon_(initial_horizon) {
    if (!base_) throw std::invalid_argument("derived: null base generator");
    cur_ = derived_coding(*base_, w_, horizon_);
}

void DerivedGen::extend_to(size_t len) const {
    while (cur_.derived.size() < len) {
        horizon_ *= 2;
        if (horizon_ > (1LL << 40)) throw std::out_of_range("derived: horizon limit reached");
        cur_ = derived_coding(*base_, w_, horizon_);
    }
}

std::string DerivedGen::alphabet() const {
    std::string a;
    for (size_t k = 0; k < cur_.alphabet.size(); ++k)
        a.push_back(static_cast<char>(k < 10 ? '0' + k : 'A' + (k - 10)));
    return a;
}

char DerivedGen::at(long long i) const {
    if (i < 0) throw std::out_of_range("derived generator is one-sided");
    extend_to(static_cast<size_t>(i) + 1);
    return cur_.derived[static_cast<size_t>(i)];
}

std::string DerivedGen::describe() const {
    return "derived(" + base_->describe() + " by \"" + w_ + "\")";
}

// ---------------------------------------------------------------------------
// Episturmian characteristic words
// ---------------------------------------------------------------------------

int IndexSequence::alphabet_size() const {
    int m = 0;
    for (int s : prefix) m = std::max(m, s);
    for (int s : tail) m = std::max(m, s);
    if (growth) m = std::max(m, growth->letters);
    return m;
}

void IndexSequence::validate() const {
    if (prefix.empty() && !growth)
        throw std::invalid_argument("index sequence: empty prefix without a growth program");
    for (int s : prefix)
        if (s < 1 || s > 9) throw std::invalid_argument("index sequence: letters are 1..9");
    for (int s : tail)
        if (s < 1 || s > 9) throw std::invalid_argument("index sequence: letters are 1..9");
    if (growth) {
        if (growth->letters < 1 || growth->letters > 9)
            throw std::invalid_argument("index sequence: growth letters are 1..9");
        for (long long r : growth->runs)
            if (r < 1) throw std::invalid_argument("index sequence: runs must be >= 1");
    }
}

int IndexSequence::symbol_at(long long t) const {
    if (t < 1) throw std::out_of_range("index sequence: positions start at 1");
    long long p = static_cast<long long>(prefix.size());
    if (t <= p) return prefix[static_cast<size_t>(t - 1)];
    long long rest = t - p;
    if (growth) {
        long long acc = 0;
        for (size_t block = 0; block < growth->runs.size(); ++block) {
            acc += growth->runs[block];
            if (rest <= acc) return static_cast<int>(block % growth->letters) + 1;
        }
        throw std::out_of_range("index sequence: growth schedule exhausted");
    }
    if (tail.empty()) throw std::out_of_range("index sequence: finite prefix exhausted");
    return tail[static_cast<size_t>((rest - 1) % static_cast<long long>(tail.size()))];
}

namespace {

char idx_char(int sym) { return static_cast<char>('0' + sym); }

// tau_a: a -> a, b -> ab for b != a
std::string tau_apply(char a, const std::string& w) {
    std::string out;
    out.reserve(2 * w.size());
    for (char c : w) {
        if (c == a) {
            out.push_back(a);
        } else {
            out.push_back(a);
            out.push_back(c);
        }
    }
    return out;
}

// Closure recurrence: each step appends the reversal of a prefix whose
// length is set by the previous step directed by the same letter, so the
// whole prefix costs O(final length). The letter pushed first equals the
// head of that reversed prefix, so the append never needs a scratch copy.
std::string recurrence_route(const IndexSequence& idx, size_t target_len) {
    std::string w;
    std::unordered_map<char, long long> len_before_last_use;
    for (long long t = 1; w.size() < target_len; ++t) {
        char a = idx_char(idx.symbol_at(t));
        auto it = len_before_last_use.find(a);
        long long prev = (it == len_before_last_use.end()) ? -1 : it->second;
        long long here = static_cast<long long>(w.size());
        long long take = here - prev;  // appended length this step
        w.reserve(static_cast<size_t>(here + take));
        w.push_back(a);
        for (long long k = take - 2; k >= 0; --k) w.push_back(w[static_cast<size_t>(k)]);
        len_before_last_use[a] = here;
    }
    return w.substr(0, target_len);
}

constexpr size_t kArCrossCheckCap = 4096;

}  // namespace

std::string ar_characteristic(const IndexSequence& idx, size_t target_len) {
    idx.validate();
    if (target_len < 1) throw std::invalid_argument("episturmian: target_len must be >= 1");
    std::string w = recurrence_route(idx, target_len);

    // Cross-check the prefix (capped) against the two direct constructions.
    size_t cap = std::min(target_len, kArCrossCheckCap);
    std::string a;
    long long steps = 0;
    while (a.size() < cap) {
        ++steps;
        a = palindromic_closure(a + idx_char(idx.symbol_at(steps)));
    }
    a.resize(cap);

    // Composed letter images through the same directive steps. These are
    // nested prefixes of the limit word; they stall (legitimately) while the
    // directive repeats one letter, so the comparison uses what they reach.
    std::string b;
    for (long long t = 0; t + 1 <= steps && b.size() < cap; ++t) {
        std::string v(1, idx_char(idx.symbol_at(t + 1)));
        for (long long s = t; s >= 1; --s) v = tau_apply(idx_char(idx.symbol_at(s)), v);
        if (v.size() < b.size() || v.compare(0, b.size(), b) != 0)
            throw std::logic_error("episturmian: composed images are not nested");
        b = std::move(v);
    }
    if (b.size() > cap) b.resize(cap);

    if (a.compare(0, b.size(), b) != 0 || w.compare(0, a.size(), a) != 0)
        throw std::logic_error("episturmian: construction routes disagree");
    return w;
}

ARGen::ARGen(IndexSequence idx) : idx_(std::move(idx)) { idx_.validate(); }

std::string ARGen::alphabet() const {
    std::string a;
    for (int s = 1; s <= idx_.alphabet_size(); ++s) a.push_back(idx_char(s));
    return a;
}

char ARGen::at(long long i) const {
    if (i < 0) throw std::out_of_range("episturmian generator is one-sided");
    if (static_cast<size_t>(i) >= buf_.size()) {
        size_t want = std::max<size_t>(static_cast<size_t>(i) + 1,
                                       std::max<size_t>(64, buf_.size() * 2));
        try {
            buf_ = ar_characteristic(idx_, want);
        } catch (const std::out_of_range&) {
            // finite directive: retry with the exact requirement
            buf_ = ar_characteristic(idx_, static_cast<size_t>(i) + 1);
        }
    }
    return buf_[static_cast<size_t>(i)];
}

std::string ARGen::describe() const {
    std::string s = "episturmian(idx=";
    for (size_t k = 0; k < idx_.prefix.size() && k < 8; ++k) s += std::to_string(idx_.prefix[k]);
    if (idx_.growth) s += "+growth";
    if (!idx_.tail.empty()) s += "...";
    return s + ")";
}

// ---------------------------------------------------------------------------
// Interval exchange transformations
// ---------------------------------------------------------------------------

void IETSpec::validate() const {
    size_t n = lambda.size();
    if (n < 2) throw std::invalid_argument("iet: need at least two intervals");
    if (tau.size() != n) throw std::invalid_argument("iet: permutation size mismatch");
    double sum = 0;
    for (double l : lambda) {
        if (!(l > 0)) throw std::invalid_argument("iet: lengths must be positive");
        sum += l;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("iet: lengths must sum to 1 within 1e-9");
    std::vector<bool> seen(n, false);
    for (int t : tau) {
        if (t < 1 || t > static_cast<int>(n) || seen[static_cast<size_t>(t - 1)])
            throw std::invalid_argument("iet: tau is not a permutation of 1..m");
        seen[static_cast<size_t>(t - 1)] = true;
    }
}

bool iet_irreducible(const std::vector<int>& tau) {
    size_t n = tau.size();
    for (size_t k = 1; k < n; ++k) {
        bool closed = true;
        for (size_t i = 0; i < k; ++i)
            if (tau[i] > static_cast<int>(k)) { closed = false; break; }
        if (closed) return false;
    }
    return true;
}

namespace {

struct IETMaps {
    size_t m;
    BigInt den;               // common denominator of the lengths and x
    BigInt start;             // x scaled by den
    std::vector<BigInt> mu;   // cumulative lengths scaled by den, mu[m] = den
    std::vector<BigInt> nu;   // cumulative permuted lengths, nu[m] = den
    std::vector<int> tau;     // 1-based images
    std::vector<int> tau_inv;

    IETMaps(const IETSpec& spec, double x) : m(spec.m()), tau(spec.tau) {
        using boost::multiprecision::denominator;
        using boost::multiprecision::lcm;
        using boost::multiprecision::numerator;
        std::vector<BigRat> lam;
        for (double l : spec.lambda) lam.emplace_back(l);
        BigRat xr(x);
        den = denominator(xr);
        for (const BigRat& l : lam) den = lcm(den, denominator(l));
        start = numerator(xr) * (den / denominator(xr));
        mu.assign(m + 1, BigInt(0));
        for (size_t i = 0; i + 1 < m; ++i)
            mu[i + 1] = mu[i] + numerator(lam[i]) * (den / denominator(lam[i]));
        mu[m] = den;  // pin the total; the last length absorbs the slack
        if (mu[m - 1] >= den)
            throw std::invalid_argument("iet: lengths overflow the unit interval");
        tau_inv.assign(m, 0);
        for (size_t i = 0; i < m; ++i)
            tau_inv[static_cast<size_t>(tau[i] - 1)] = static_cast<int>(i) + 1;
        nu.assign(m + 1, BigInt(0));
        for (size_t j = 0; j < m; ++j) {
            size_t src = static_cast<size_t>(tau_inv[j] - 1);
            nu[j + 1] = nu[j] + (mu[src + 1] - mu[src]);
        }
    }

    // 1-based index of the left-closed interval containing the scaled point
    int locate(const BigInt& r) const {
        size_t i = 1;
        while (i < m && r >= mu[i]) ++i;
        return static_cast<int>(i);
    }

    BigInt forward(const BigInt& r) const {
        size_t i = static_cast<size_t>(locate(r));
        return r - mu[i - 1] + nu[static_cast<size_t>(tau[i - 1] - 1)];
    }

    // inverse: the exchange of the permuted lengths under tau^{-1}
    BigInt backward(const BigInt& r) const {
        size_t j = 1;
        while (j < m && r >= nu[j]) ++j;
        size_t src = static_cast<size_t>(tau_inv[j - 1] - 1);
        return r - nu[j - 1] + mu[src];
    }
};

}  // namespace

std::string iet_coding(const IETSpec& spec, double x, long long i, long long j) {
    spec.validate();
    if (i > j) throw std::invalid_argument("iet: i must be <= j");
    if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("iet: x must lie in [0,1)");
    IETMaps maps(spec, x);
    std::string out;
    out.reserve(static_cast<size_t>(j - i + 1));
    BigInt p = maps.start;
    if (i >= 0) {
        for (long long n = 0; n < i; ++n) p = maps.forward(p);
    } else {
        for (long long n = 0; n > i; --n) p = maps.backward(p);
    }
    for (long long n = i; n <= j; ++n) {
        out.push_back(static_cast<char>('0' + maps.locate(p)));
        if (n < j) p = maps.forward(p);
    }
    return out;
}

bool keane_check(const IETSpec& spec, long long N) {
    spec.validate();
    if (N < 1) throw std::invalid_argument("keane: N must be >= 1");
    IETMaps maps(spec, 0.0);
    // forward orbits of the interior discontinuities; an exact landing on an
    // interior discontinuity, or two tracked orbits meeting, refutes the
    // separation condition for these binary lengths
    std::vector<BigInt> pts(maps.mu.begin() + 1, maps.mu.begin() + static_cast<long>(maps.m));
    for (long long n = 1; n <= N; ++n) {
        for (BigInt& p : pts) p = maps.forward(p);
        for (size_t a = 0; a < pts.size(); ++a) {
            for (size_t k = 1; k < maps.m; ++k)
                if (pts[a] == maps.mu[k]) return false;
            for (size_t b = a + 1; b < pts.size(); ++b)
                if (pts[a] == pts[b]) return false;
        }
    }
    return true;
}

IETGen::IETGen(IETSpec spec, double x) : spec_(std::move(spec)), x_(x) {
    spec_.validate();
    if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("iet: x must lie in [0,1)");
}

std::string IETGen::alphabet() const {
    std::string a;
    for (size_t k = 1; k <= spec_.m(); ++k) a.push_back(static_cast<char>('0' + k));
    return a;
}

char IETGen::at(long long i) const { return iet_coding(spec_, x_, i, i)[0]; }

std::string IETGen::window(long long start, long long len) const {
    if (len <= 0) return {};
    return iet_coding(spec_, x_, start, start + len - 1);
}

std::string IETGen::describe() const {
    std::string s = "iet(lambda=[";
    for (size_t k = 0; k < spec_.lambda.size(); ++k) {
        if (k) s += ",";
        s += fmt_double(spec_.lambda[k]);
    }
    s += "], tau=[";
    for (size_t k = 0; k < spec_.tau.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(spec_.tau[k]);
    }
    return s + "], x=" + fmt_double(x_) + ")";
}

// ---------------------------------------------------------------------------
// PeriodicGen and JSON specs
// ---------------------------------------------------------------------------

PeriodicGen::PeriodicGen(std::string word) : word_(std::move(word)) {
    if (word_.empty()) throw std::invalid_argument("periodic: empty word");
    std::string a = word_;
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    alpha_ = a;
}

std::string PeriodicGen::alphabet() const { return alpha_; }

char PeriodicGen::at(long long i) const {
    long long L = static_cast<long long>(word_.size());
    long long r = i % L;
    if (r < 0) r += L;
    return word_[static_cast<size_t>(r)];
}

std::string PeriodicGen::describe() const { return "periodic(\"" + word_ + "\")"; }

namespace {

using nlohmann::json;

// Numeric alphas must look irrational (named/cf specs are vetted by the
// parser); a rational angle gives a periodic coding, for which the periodic
// family is the honest spelling.
BigRat json_alpha_value(const json& v) {
    if (v.is_number()) {
        double a = v.get<double>();
        RegularCF cf = cf_expand(a, 40);
        if (cf.rational || cf.depth() < 25)
            throw std::domain_error("spec: numeric alpha looks rational; use family "
                                    "\"periodic\" or a \"cf:..\" spec");
        return BigRat(a);
    }
    return alpha_from_spec(v.get<std::string>()).value;
}

std::unique_ptr<SubshiftGen> from_json_obj(const json& j);

SubstitutionRule rule_from_json(const json& j) {
    if (j.contains("rule")) return substitution_named(j.at("rule").get<std::string>());
    if (!j.contains("images")) throw std::invalid_argument("spec: substitution needs rule/images");
    SubstitutionRule r;
    r.name = "custom";
    for (auto it = j.at("images").begin(); it != j.at("images").end(); ++it) {
        const std::string& key = it.key();
        if (key.size() != 1) throw std::invalid_argument("spec: image keys are single letters");
        r.alphabet.push_back(key[0]);
        r.images.push_back(it.value().get<std::string>());
    }
    r.validate();
    return r;
}

std::unique_ptr<SubshiftGen> from_json_obj(const json& j) {
    std::string family = j.at("family").get<std::string>();
    if (family == "rotation") {
        BigRat alpha = json_alpha_value(j.at("alpha"));
        std::vector<BigRat> cuts;
        if (j.contains("cuts"))
            for (const auto& c : j.at("cuts")) cuts.emplace_back(c.get<double>());
        else
            cuts.push_back(alpha);
        return std::make_unique<RotationGen>(std::move(alpha), std::move(cuts),
                                             BigRat(j.value("theta", 0.0)));
    }
    if (family == "substitution") {
        SubstitutionRule r = rule_from_json(j);
        std::string seed = j.value("seed", std::string(1, r.alphabet[0]));
        if (seed.size() != 1) throw std::invalid_argument("spec: seed is a single letter");
        return std::make_unique<SubstitutionGen>(std::move(r), seed[0]);
    }
    if (family == "arnoux_rauzy") {
        IndexSequence idx;
        if (j.contains("prefix"))
            for (const auto& s : j.at("prefix")) idx.prefix.push_back(s.get<int>());
        if (j.contains("tail"))
            for (const auto& s : j.at("tail")) idx.tail.push_back(s.get<int>());
        if (j.contains("growth")) {
            GrowthProgram g;
            g.letters = j.at("growth").at("letters").get<int>();
            for (const auto& r : j.at("growth").at("runs")) g.runs.push_back(r.get<long long>());
            idx.growth = std::move(g);
        }
        return std::make_unique<ARGen>(std::move(idx));
    }
    if (family == "iet") {
        IETSpec spec;
        for (const auto& l : j.at("lambda")) spec.lambda.push_back(l.get<double>());
        for (const auto& t : j.at("tau")) spec.tau.push_back(t.get<int>());
        return std::make_unique<IETGen>(std::move(spec), j.value("x", 0.0));
    }
    if (family == "derived") {
        std::shared_ptr<const SubshiftGen> base(from_json_obj(j.at("base")).release());
        return std::make_unique<DerivedGen>(std::move(base), j.at("word").get<std::string>(),
                                            j.value("horizon", 4096LL));
    }
    if (family == "image") {
        SubstitutionRule r = rule_from_json(j);
        std::shared_ptr<const SubshiftGen> base(from_json_obj(j.at("base")).release());
        return std::make_unique<ImageGen>(std::move(r), std::move(base));
    }
    if (family == "periodic")
        return std::make_unique<PeriodicGen>(j.at("word").get<std::string>());
    throw std::invalid_argument("spec: unknown family '" + family + "'");
}

}  // namespace

std::unique_ptr<SubshiftGen> generator_from_json(const std::string& json_text) {
    json j = json::parse(json_text);
    return from_json_obj(j);
}

}  // namespace ergokit
