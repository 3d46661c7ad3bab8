#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ergokit/cf.hpp"
#include "ergokit/cocycle.hpp"
#include "ergokit/common.hpp"
#include "ergokit/subshifts.hpp"
#include "ergokit/word_ops.hpp"

#include <cmath>
#include <memory>

using namespace ergokit;

namespace {

const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;

SubstitutionGen fib_gen() { return SubstitutionGen(substitution_named("fib"), 'a'); }

RotationGen golden_rotation() {
    double a = kPhi - 1.0;
    return RotationGen(a, {a}, 0.0);
}

bool mat_close(const Mat2& A, const Mat2& B, double rel) {
    double scale = 0;
    for (double v : {A.a, A.b, A.c, A.d, B.a, B.b, B.c, B.d})
        scale = std::max(scale, std::fabs(v));
    if (scale == 0) return true;
    return std::fabs(A.a - B.a) <= rel * scale && std::fabs(A.b - B.b) <= rel * scale &&
           std::fabs(A.c - B.c) <= rel * scale && std::fabs(A.d - B.d) <= rel * scale;
}

// radius-1 rule over the length-3 factors of the Fibonacci point
LocalRule fib_radius1_rule() {
    SubstitutionGen fib = fib_gen();
    FactorTable f3 = factor_table(fib, 3, 4096);
    std::vector<Mat2> pool = {
        {1, 1, 0, 1}, {1, 0, 1, 1}, {2, 0, 0, 0.5}, {1, -1, 0, 1}};
    LocalRule rule;
    rule.radius = 1;
    rule.name = "fib-window3";
    size_t k = 0;
    for (const auto& e : f3.entries) rule.table[e.first] = pool[k++ % pool.size()];
    return rule;
}

}  // namespace

TEST_CASE("operator norm closed form") {
    CHECK(sl2_norm(Mat2{1, 0, 0, 1}) == 1.0);
    CHECK(sl2_norm(Mat2{2, 0, 0, 0.5}) == doctest::Approx(2.0).epsilon(1e-14));
    // shear: entry square sum 3, so the norm is the golden ratio
    CHECK(sl2_norm(Mat2{1, 1, 0, 1}) == doctest::Approx(kPhi).epsilon(1e-14));
    CHECK(sl2_norm(Mat2{0, -1, 1, 0}) == 1.0);

    // the norm never drops below one on determinant-one input
    Mat2 ms[] = {{3, -1, 1, 0}, {1, -1, 1, 0}, {0.8, 0.6, -0.6, 0.8}, {5, 2, 2, 1}};
    for (const Mat2& m : ms) {
        CHECK(std::fabs(m.det() - 1.0) <= 1e-12);
        CHECK(sl2_norm(m) >= 1.0 - 1e-9);
        CHECK(sl2_norm(m.inverse()) == doctest::Approx(sl2_norm(m)).epsilon(1e-12));
    }

    // entry square sum below 2 means the matrix cannot have determinant one
    CHECK_THROWS_AS(sl2_norm(Mat2{0.5, 0, 0, 0.5}), std::domain_error);
}

TEST_CASE("log products reconstruct short products") {
    SubstitutionGen fib = fib_gen();
    LocalRule rule = schrodinger_rule(2.5, {{'a', 0.0}, {'b', 1.3}});

    LogProduct P = cocycle_product(rule, fib, 0, 50);
    CHECK(P.steps == 50);

    Mat2 direct{1, 0, 0, 1};
    std::string text = fib.window(1, 50);
    for (char s : text) direct = rule.lookup(std::string(1, s)) * direct;

    CHECK(mat_close(P.reconstruct(), direct, 1e-9));
    CHECK(std::exp(P.acc) == doctest::Approx(sl2_norm(direct)).epsilon(1e-9));

    LogProduct empty = cocycle_product(rule, fib, 7, 0);
    CHECK(empty.acc == 0.0);
    CHECK(empty.steps == 0);
    CHECK(mat_close(empty.reconstruct(), Mat2{1, 0, 0, 1}, 0.0));
}

TEST_CASE("constant shear gives the expected three-step product") {
    SubstitutionGen fib = fib_gen();
    LocalRule rule = constant_rule("ab", Mat2{1, 1, 0, 1});
    Mat2 M = cocycle_product(rule, fib, 2, 3).reconstruct();
    CHECK(mat_close(M, Mat2{1, 3, 0, 1}, 1e-9));
}

TEST_CASE("free transfer matrix at zero energy has period four") {
    SubstitutionGen fib = fib_gen();
    LocalRule rule = schrodinger_rule(0.0, {{'a', 0.0}, {'b', 0.0}});
    LogProduct one = cocycle_product(rule, fib, 0, 1);
    CHECK(mat_close(one.reconstruct(), Mat2{0, -1, 1, 0}, 0.0));
    LogProduct four = cocycle_product(rule, fib, 0, 4);
    CHECK(four.acc == 0.0);
    CHECK(mat_close(four.reconstruct(), Mat2{1, 0, 0, 1}, 0.0));
}

TEST_CASE("negative horizons invert the forward product") {
    RotationGen rot = golden_rotation();
    LocalRule rule = schrodinger_rule(2.2, {{'0', 0.3}, {'1', 1.7}});

    Mat2 back = cocycle_product(rule, rot, 3, -9).reconstruct();
    Mat2 fwd = cocycle_product(rule, rot, 3 - 9, 9).reconstruct();
    CHECK(std::fabs(fwd.det() - 1.0) <= 1e-9);
    CHECK(mat_close(back, fwd.inverse(), 1e-9));
    CHECK(mat_close(back * fwd, Mat2{1, 0, 0, 1}, 1e-9));
}

TEST_CASE("cocycle identity across split horizons") {
    RotationGen rot = golden_rotation();
    LocalRule rule = schrodinger_rule(1.8, {{'0', 0.0}, {'1', 0.9}});

    struct Split {
        long long n, m;
    };
    for (Split s : {Split{12, 7}, Split{5, -9}, Split{-4, -3}, Split{20, 0}}) {
        long long base = -5;
        Mat2 whole = cocycle_product(rule, rot, base, s.n + s.m).reconstruct();
        Mat2 right = cocycle_product(rule, rot, base, s.m).reconstruct();
        Mat2 left = cocycle_product(rule, rot, base + s.m, s.n).reconstruct();
        CHECK(mat_close(whole, left * right, 1e-9));
    }
}

TEST_CASE("transfer products solve the three-term recursion") {
    SubstitutionGen fib = fib_gen();
    const double E = 2.0;
    std::map<char, double> embed{{'a', 0.0}, {'b', 4.0}};
    LocalRule rule = schrodinger_rule(E, embed);

    double u0 = 0.3, u1 = 1.1;
    std::vector<double> u = {u0, u1};
    for (long long k = 1; k <= 50; ++k) {
        double vk = embed.at(fib.at(k));
        u.push_back((E - vk) * u[k] - u[k - 1]);
    }
    for (long long n : {1LL, 13LL, 50LL}) {
        Mat2 M = cocycle_product(rule, fib, 0, n).reconstruct();
        double hi = M.a * u1 + M.b * u0;
        double lo = M.c * u1 + M.d * u0;
        double scale = std::max({std::fabs(u[n + 1]), std::fabs(u[n]), 1.0});
        CHECK(std::fabs(hi - u[n + 1]) <= 1e-9 * scale);
        CHECK(std::fabs(lo - u[n]) <= 1e-9 * scale);
    }
}

TEST_CASE("determinant stays pinned over a million renormalized steps") {
    SubstitutionGen fib = fib_gen();
    LocalRule rule = schrodinger_rule(1.0, {{'a', 0.0}, {'b', 0.0}});
    LogProduct P = cocycle_product(rule, fib, 0, 1000000);
    CHECK(P.steps == 1000000);
    CHECK(std::fabs(P.det_estimate() - 1.0) <= 1e-9);
    // the energy-1 free product is elliptic, so the log norm stays bounded
    CHECK(P.acc >= -1e-6);
    CHECK(P.acc <= 0.5);
}

TEST_CASE("lyapunov sampling matches the free closed forms") {
    SubstitutionGen fib = fib_gen();

    LocalRule free3 = schrodinger_rule(3.0, {{'a', 0.0}, {'b', 0.0}});
    LyapStats st3 = lyapunov_estimate(free3, fib, 1000, 16, 41);
    double expected = std::log((3.0 + std::sqrt(5.0)) / 2.0);
    CHECK(std::fabs(st3.mean - expected) <= 1e-3);
    CHECK(st3.max - st3.min <= 1e-12);

    LocalRule free1 = schrodinger_rule(1.0, {{'a', 0.0}, {'b', 0.0}});
    LyapStats st1 = lyapunov_estimate(free1, fib, 1000, 16, 41);
    CHECK(st1.mean >= 0.0);
    CHECK(st1.mean <= 1e-2);

    LocalRule mixed = schrodinger_rule(0.0, {{'a', 0.0}, {'b', 4.0}});
    LyapStats stm = lyapunov_estimate(mixed, fib, 1000, 16, 41);
    CHECK(stm.min >= 0.0);
    CHECK(stm.min <= stm.mean);
    CHECK(stm.mean <= stm.max);

    LyapStats again = lyapunov_estimate(mixed, fib, 1000, 16, 41);
    CHECK(again.mean == stm.mean);
    CHECK(again.min == stm.min);
    CHECK(again.max == stm.max);

    CHECK_THROWS_AS(lyapunov_estimate(mixed, fib, 0, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(lyapunov_estimate(mixed, fib, 10, 0, 1), std::invalid_argument);
}

TEST_CASE("sample spread shrinks with the horizon") {
    SubstitutionGen fib = fib_gen();

    LocalRule cst = constant_rule("ab", Mat2{1, 1, 0, 1});
    for (double g : uniformity_gap(cst, fib, {10, 100, 1000}, 16, 7)) CHECK(g == 0.0);

    LocalRule far = schrodinger_rule(10.0, {{'a', 0.0}, {'b', 1.0}});
    std::vector<double> gaps = uniformity_gap(far, fib, {100, 1000, 10000}, 32, 7);
    REQUIRE(gaps.size() == 3);
    for (double g : gaps) CHECK(g >= 0.0);
    CHECK(gaps[1] < gaps[0]);
    CHECK(gaps[2] < gaps[1]);
}

TEST_CASE("window supremum is exact at radius zero") {
    SubstitutionGen fib = fib_gen();
    LocalRule rule = schrodinger_rule(2.5, {{'a', 0.0}, {'b', 1.3}});

    std::string x = fib.window(4, 12);
    double F = word_sup_F(rule, x, fib);
    double via_product = cocycle_product(rule, fib, 3, 12).acc;
    CHECK(F == doctest::Approx(via_product).epsilon(1e-12));

    LocalRule diag = constant_rule("ab", Mat2{2, 0, 0, 0.5});
    std::string y = fib.window(0, 9);
    CHECK(word_sup_F(diag, y, fib) ==
          doctest::Approx(9.0 * std::log(2.0)).epsilon(1e-12));

    CHECK(word_sup_F(rule, "", fib) == 0.0);
    CHECK_THROWS_AS(word_sup_F(rule, "bb", fib), std::invalid_argument);

    LocalRule too_wide;
    too_wide.radius = 3;
    CHECK_THROWS_AS(word_sup_F(too_wide, "a", fib), std::invalid_argument);
    CHECK_THROWS_AS(cocycle_product(too_wide, fib, 0, 1), std::invalid_argument);
}

TEST_CASE("window supremum is subadditive across splits") {
    SubstitutionGen fib = fib_gen();
    LocalRule rule = fib_radius1_rule();

    for (uint64_t t = 0; t < 1000; ++t) {
        uint64_t s = splitmix64(0x5eedULL + t);
        long long len = 2 + static_cast<long long>(s % 23);
        long long pos = static_cast<long long>(splitmix64(s) % 4000);
        long long cut = 1 + static_cast<long long>(splitmix64(s ^ 0xff) % (len - 1));
        std::string w = fib.window(pos, len);
        double whole = word_sup_F(rule, w, fib, 8192);
        double lhs = word_sup_F(rule, w.substr(0, cut), fib, 8192);
        double rhs = word_sup_F(rule, w.substr(cut), fib, 8192);
        CHECK(whole <= lhs + rhs + 1e-9);
    }
}

TEST_CASE("agreeing windows give close log norms") {
    SubstitutionGen fib = fib_gen();
    LocalRule rule = fib_radius1_rule();
    double max_log = 0;
    for (const auto& [w, M] : rule.table) max_log = std::max(max_log, std::log(sl2_norm(M)));

    const long long n = 30;
    std::string text = fib.window(0, 5000);
    std::string w = text.substr(10, n);
    size_t second = text.find(w, 11);
    REQUIRE(second != std::string::npos);

    double a1 = cocycle_product(rule, fib, 9, n).acc;
    double a2 = cocycle_product(rule, fib, static_cast<long long>(second) - 1, n).acc;
    CHECK(std::fabs(a1 - a2) <= 4.0 * rule.radius * max_log);
}

TEST_CASE("missing windows are reported, not guessed") {
    SubstitutionGen fib = fib_gen();
    LocalRule partial = schrodinger_rule(2.0, {{'a', 0.0}});
    CHECK_THROWS_AS(cocycle_product(partial, fib, 0, 10), std::out_of_range);
}

TEST_CASE("commuting diagonal chains have exactly zero defect") {
    for (long long N : {3LL, 9LL, 27LL}) {
        std::vector<Mat2> mats(N, Mat2{std::exp(5.0), 0, 0, std::exp(-5.0)});
        AvalancheReport rep = avalanche_defect(mats, 4.5);
        CHECK(rep.exact_path);
        CHECK(rep.defect == 0.0);
        CHECK(rep.kappa_hat == 0.0);
        CHECK(rep.norms_ok);
        CHECK(rep.pairs_ok);
        CHECK(rep.hypotheses_ok);
    }
}

TEST_CASE("tilted chains keep the defect within the fitted envelope") {
    const long long N = 9;
    const double lambda = 4.5;
    const double th = 0.1, co = std::cos(th), si = std::sin(th);
    Mat2 D{std::exp(5.0), 0, 0, std::exp(-5.0)};
    Mat2 R{co, -si, si, co};
    Mat2 tilted = R * D * R.inverse();

    std::vector<Mat2> mats;
    for (long long j = 0; j < N; ++j) mats.push_back(j % 2 ? tilted : D);

    AvalancheReport rep = avalanche_defect(mats, lambda);
    CHECK_FALSE(rep.exact_path);
    CHECK(rep.hypotheses_ok);
    CHECK(rep.defect > 0.0);
    CHECK(rep.defect <= 10.0 * static_cast<double>(N) * std::exp(-5.0));
    CHECK(rep.kappa_hat < 10.0);
    CHECK(rep.kappa_hat == doctest::Approx(rep.defect * std::exp(lambda) / N));
}

TEST_CASE("norm-one links break the chain hypotheses") {
    std::vector<Mat2> mats(3, Mat2{1, 0, 0, 1});
    AvalancheReport rep = avalanche_defect(mats, 1.0);
    CHECK_FALSE(rep.norms_ok);
    CHECK_FALSE(rep.hypotheses_ok);
    CHECK(rep.defect == 0.0);

    CHECK_THROWS_AS(avalanche_defect(std::vector<Mat2>(10, Mat2{2, 0, 0, 0.5}), 0.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(avalanche_defect({Mat2{2, 0, 0, 0.5}}, 0.5), std::invalid_argument);
}
