#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ergokit/cf.hpp"

#include <cmath>
#include <vector>

using namespace ergokit;

namespace {

const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;   // 1/phi
const double kSilver = std::sqrt(2.0) - 1.0;

std::vector<long long> random_digits(uint64_t seed, int depth, int hi) {
    std::vector<long long> d(static_cast<size_t>(depth));
    for (int i = 0; i < depth; ++i)
        d[static_cast<size_t>(i)] = 1 + static_cast<long long>(splitmix64(seed ^ splitmix64(static_cast<uint64_t>(i))) % static_cast<uint64_t>(hi));
    return d;
}

}  // namespace

TEST_CASE("regular expansion of the named constants") {
    auto g = cf_expand(kGolden, 8);
    REQUIRE(g.a.size() == 8);
    for (long long d : g.a) CHECK(d == 1);
    std::vector<long long> qs = {1, 1, 2, 3, 5, 8, 13, 21, 34};
    REQUIRE(g.q.size() == 9);
    for (size_t i = 0; i < qs.size(); ++i) CHECK(g.q[i] == qs[i]);
    CHECK_FALSE(g.rational);

    auto s = cf_expand(kSilver, 5);
    REQUIRE(s.a.size() == 5);
    for (long long d : s.a) CHECK(d == 2);

    auto r = cf_expand(1.0 / 3.0, 10);
    CHECK(r.rational);
    REQUIRE(r.a.size() >= 1);
    CHECK(r.a[0] == 3);

    CHECK_THROWS_AS(cf_expand(1.5, 5), std::invalid_argument);
    CHECK_THROWS_AS(cf_expand(0.0, 5), std::invalid_argument);
}

TEST_CASE("digit-built constants round-trip through the floor algorithm") {
    auto g = golden_cf(120);
    auto re = cf_expand_exact(g.value, 40);
    REQUIRE(re.a.size() == 40);
    for (long long d : re.a) CHECK(d == 1);

    auto s = silver_cf(80);
    auto rs = cf_expand_exact(s.value, 30);
    for (long long d : rs.a) CHECK(d == 2);

    // surrogate is deep enough that its double value matches the constant
    CHECK(std::abs(to_double(g.value) - kGolden) < 1e-15);
    CHECK(std::abs(to_double(s.value) - kSilver) < 1e-15);
}

TEST_CASE("convergent sandwich bounds") {
    std::vector<RegularCF> panel = {golden_cf(60), silver_cf(50)};
    for (uint64_t t = 0; t < 6; ++t) panel.push_back(cf_from_digits(random_digits(40 + t, 30, 5)));
    for (const auto& cf : panel) {
        // the last index is skipped: for an exact rational endpoint the final
        // step degenerates and the strict lower bound becomes an equality
        for (int k = 1; k + 3 < static_cast<int>(cf.q.size()); ++k) {
            BigRat err = cf.approx_error(k);
            BigRat lower(BigInt(1), cf.q[static_cast<size_t>(k)] + cf.q[static_cast<size_t>(k + 1)]);
            BigRat upper(BigInt(1), cf.q[static_cast<size_t>(k + 1)]);
            CHECK(err > lower);
            CHECK(err < upper);
        }
    }
}

TEST_CASE("nearest-distance profile via the bracketing convergent") {
    auto g = golden_cf(120);
    CHECK(hartman_h(g, 5) == doctest::Approx(0.0901699).epsilon(1e-5));
    CHECK(hartman_h(g, 1) == doctest::Approx(0.3819660).epsilon(1e-5));

    // at n = q_k the value is the k-th approximation error
    for (int k = 3; k <= 10; ++k) {
        long long n = g.q[static_cast<size_t>(k)].convert_to<long long>();
        CHECK(hartman_h_exact(g, n) == g.approx_error(k));
    }

    CHECK_THROWS_AS(hartman_h_exact(g, 0), std::invalid_argument);
    auto shallow = cf_from_digits({1, 1, 1});
    CHECK_THROWS_AS(hartman_h_exact(shallow, 1000), std::invalid_argument);
}

TEST_CASE("bracketing formula equals the direct scan exactly") {
    std::vector<RegularCF> panel = {golden_cf(120), silver_cf(80)};
    for (uint64_t t = 0; t < 4; ++t) panel.push_back(cf_from_digits(random_digits(700 + t, 28, 5)));
    for (const auto& cf : panel) {
        auto prefix = brute_h_prefix_exact(cf.value, 300);
        for (long long n : {1LL, 2LL, 3LL, 7LL, 50LL, 123LL, 300LL}) {
            CHECK(hartman_h_exact(cf, n) == prefix[static_cast<size_t>(n - 1)]);
        }
    }
}

TEST_CASE("direct scan basics") {
    CHECK(brute_h(kGolden, 1) == doctest::Approx(dist_to_int(kGolden)));
    double prev = 1.0;
    for (long long n = 1; n <= 500; ++n) {
        double h = brute_h(kGolden, n);
        CHECK(h <= prev + 1e-18);
        prev = h;
    }
    // double path tracks the exact path
    auto g = golden_cf(120);
    for (long long n : {10LL, 100LL, 1000LL})
        CHECK(std::abs(brute_h(kGolden, n) - to_double(brute_h_exact(g.value, n))) < 1e-12);
}

TEST_CASE("scaled minima stay above the bounded-quotient floor") {
    // quotients <= C  =>  n * h_n > 1/(C+2); exact integer comparison
    struct Case { RegularCF cf; long long C; };
    std::vector<Case> cases;
    cases.push_back({golden_cf(60), 1});
    cases.push_back({silver_cf(50), 2});
    cases.push_back({cf_from_digits(random_digits(99, 28, 5)), 5});
    for (const auto& c : cases) {
        auto prefix = brute_h_prefix_exact(c.cf.value, 2000);
        for (long long n = 1; n <= 2000; ++n) {
            BigRat nh = BigRat(n) * prefix[static_cast<size_t>(n - 1)];
            CHECK(nh > BigRat(1, c.C + 2));
        }
    }
}

TEST_CASE("near-miss products at n = q_{k+1} - 1 stay above one third") {
    for (const auto& cf : {golden_cf(40), silver_cf(30)}) {
        for (int k = 0; k <= 15; ++k) {
            BigInt nk = cf.q[static_cast<size_t>(k + 1)] - 1;
            if (nk < 1) continue;
            // n_k * h_{n_k} = (q_{k+1} - 1) |q_k alpha - p_k| >= 1/3
            BigRat prod = BigRat(nk) * cf.approx_error(k);
            CHECK(prod >= BigRat(1, 3));
        }
    }
}
