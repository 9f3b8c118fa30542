#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rfcompress/errors.hpp"
#include "rfcompress/kernels.hpp"
#include "rfcompress/rng.hpp"

using namespace rfc;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double e : v) x[i++] = e;
    return x;
}

}  // namespace

TEST_CASE("closed-form kernel values") {
    KernelSpec rbf{KernelFamily::RBF, 0.5};
    CHECK(eval_kernel(rbf, vec({0, 0}), vec({1, 1})) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

    KernelSpec lap{KernelFamily::Laplace, 1.0};
    CHECK(eval_kernel(lap, vec({0}), vec({2})) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));

    KernelSpec cau{KernelFamily::Cauchy, 2.0};
    CHECK(eval_kernel(cau, vec({0, 0}), vec({1, 2})) ==
          doctest::Approx(1.0 / (1.0 + 2.0) / (1.0 + 8.0)).epsilon(1e-12));
}

TEST_CASE("k(x, x) = 1 for every family") {
    Eigen::VectorXd x = vec({0.3, -1.2, 4.5});
    for (auto fam : {KernelFamily::RBF, KernelFamily::Laplace, KernelFamily::Cauchy}) {
        KernelSpec spec{fam, 0.7};
        CHECK(eval_kernel(spec, x, x) == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("kernel argument checks") {
    KernelSpec spec{KernelFamily::RBF, 1.0};
    CHECK_THROWS_AS(eval_kernel(spec, vec({1, 2}), vec({1})), InvalidArgument);
    KernelSpec bad{KernelFamily::RBF, 0.0};
    CHECK_THROWS_AS(eval_kernel(bad, vec({1}), vec({1})), ConfigError);
    CHECK_THROWS_AS(kernel_family_from_string("poly"), ConfigError);
}

TEST_CASE("kernel_matrix agrees with pairwise evaluation") {
    SequentialRng rng(7);
    Eigen::MatrixXd X(6, 3);
    for (Eigen::Index i = 0; i < X.size(); ++i) X(i) = rng.uniform01() * 4.0 - 2.0;
    for (auto fam : {KernelFamily::RBF, KernelFamily::Laplace, KernelFamily::Cauchy}) {
        KernelSpec spec{fam, 0.8};
        Eigen::MatrixXd K = kernel_matrix(spec, X);
        for (Eigen::Index i = 0; i < 6; ++i)
            for (Eigen::Index j = 0; j < 6; ++j)
                CHECK(K(i, j) == doctest::Approx(eval_kernel(spec, X.row(i), X.row(j)))
                                     .epsilon(1e-12));
    }
}

TEST_CASE("halton first scalars match the radical inverse") {
    HaltonSequence h(2);
    // Base 2: 1/2, 1/4, 3/4; base 3: 1/3, 2/3, 1/9.
    CHECK(h.coordinate(1, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(h.coordinate(2, 0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(h.coordinate(3, 0) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(h.coordinate(1, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(h.coordinate(2, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(h.coordinate(3, 1) == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
    CHECK_THROWS_AS(h.coordinate(0, 0), InvalidArgument);
}

TEST_CASE("first_primes") {
    CHECK(first_primes(5) == std::vector<int>{2, 3, 5, 7, 11});
    CHECK(first_primes(1) == std::vector<int>{2});
}

TEST_CASE("monte-carlo RBF frequency variance matches 2*gamma") {
    // Empirical variance over 1e6 draws of the Normal(0, 2*gamma) spectral
    // measure; with gamma = 0.5 the target variance is 1.
    KernelSpec spec{KernelFamily::RBF, 0.5};
    SamplingStrategy strategy{SamplingKind::MonteCarlo, 123, false};
    auto [omega, b] = sample_frequencies(spec, strategy, 1000000, 1);
    double mean = omega.col(0).mean();
    double var = (omega.col(0).array() - mean).square().sum() / (omega.rows() - 1);
    CHECK(std::abs(var - 1.0) < 0.01);
    CHECK(std::abs(mean) < 0.01);
}

TEST_CASE("phases lie in [0, 2pi) for any seed") {
    KernelSpec spec{KernelFamily::Laplace, 1.0};
    for (std::uint64_t seed : {0ull, 7ull, 991ull}) {
        SamplingStrategy strategy{SamplingKind::MonteCarlo, seed, false};
        auto [omega, b] = sample_frequencies(spec, strategy, 512, 3);
        CHECK(b.minCoeff() >= 0.0);
        CHECK(b.maxCoeff() < 2.0 * M_PI);
    }
}

TEST_CASE("sampling is deterministic and prefix-stable") {
    KernelSpec spec{KernelFamily::RBF, 1.5};
    SamplingStrategy strategy{SamplingKind::MonteCarlo, 42, false};
    auto [o1, b1] = sample_frequencies(spec, strategy, 64, 5);
    auto [o2, b2] = sample_frequencies(spec, strategy, 64, 5);
    CHECK(o1 == o2);
    CHECK(b1 == b2);
    // Row j does not depend on how many rows were requested.
    auto [o3, b3] = sample_frequencies(spec, strategy, 16, 5);
    CHECK(o3 == o1.topRows(16));
    CHECK(b3 == b1.head(16));
    // A different seed changes the draw.
    SamplingStrategy other{SamplingKind::MonteCarlo, 43, false};
    auto [o4, b4] = sample_frequencies(spec, other, 64, 5);
    CHECK(o4 != o1);
}

TEST_CASE("halton draws are seed-independent unless scrambled") {
    KernelSpec spec{KernelFamily::RBF, 1.0};
    SamplingStrategy a{SamplingKind::HaltonQMC, 1, false};
    SamplingStrategy b{SamplingKind::HaltonQMC, 999, false};
    auto [oa, ba] = sample_frequencies(spec, a, 32, 4);
    auto [ob, bb] = sample_frequencies(spec, b, 32, 4);
    CHECK(oa == ob);
    CHECK(ba == bb);

    SamplingStrategy sc1{SamplingKind::HaltonQMC, 1, true};
    SamplingStrategy sc2{SamplingKind::HaltonQMC, 2, true};
    auto [os1, bs1] = sample_frequencies(spec, sc1, 32, 4);
    auto [os2, bs2] = sample_frequencies(spec, sc2, 32, 4);
    CHECK(os1 != os2);
    auto [os1b, bs1b] = sample_frequencies(spec, sc1, 32, 4);
    CHECK(os1 == os1b);
    CHECK(bs1.minCoeff() >= 0.0);
    CHECK(bs1.maxCoeff() < 2.0 * M_PI);
}

TEST_CASE("single-feature estimates are unbiased for every family") {
    // Theorem-1 check: the mean over M independent single-feature estimates
    // 2 cos(w'x + b) cos(w'y + b) approaches k(x, y). The factor 2 is the
    // one the unbiased real cosine map carries; E[cos cos] alone is k/2.
    // Hoeffding with summands in [-2, 2] puts 0.02 well past the 99% level
    // for M = 1e5.
    const int m_draws = 100000;
    Eigen::VectorXd x = vec({0.4, -0.3});
    Eigen::VectorXd y = vec({-0.2, 0.5});
    int family_index = 0;
    for (auto fam : {KernelFamily::RBF, KernelFamily::Laplace, KernelFamily::Cauchy}) {
        KernelSpec spec{fam, 0.9};
        SamplingStrategy strategy{SamplingKind::MonteCarlo,
                                  1000 + static_cast<std::uint64_t>(family_index++), false};
        auto [omega, b] = sample_frequencies(spec, strategy, m_draws, 2);
        Eigen::ArrayXd cx = (omega * x + b).array().cos();
        Eigen::ArrayXd cy = (omega * y + b).array().cos();
        double estimate = 2.0 * (cx * cy).mean();
        CHECK(std::abs(estimate - eval_kernel(spec, x, y)) <= 0.02);
    }
}

TEST_CASE("halton features integrate the kernel too") {
    // Same unbiasedness statement under the QMC variant.
    const int m_draws = 20000;
    Eigen::VectorXd x = vec({0.4, -0.3});
    Eigen::VectorXd y = vec({-0.2, 0.5});
    KernelSpec spec{KernelFamily::RBF, 0.9};
    SamplingStrategy strategy{SamplingKind::HaltonQMC, 0, false};
    auto [omega, b] = sample_frequencies(spec, strategy, m_draws, 2);
    Eigen::ArrayXd cx = (omega * x + b).array().cos();
    Eigen::ArrayXd cy = (omega * y + b).array().cos();
    double estimate = 2.0 * (cx * cy).mean();
    CHECK(std::abs(estimate - eval_kernel(spec, x, y)) <= 0.02);
}

TEST_CASE("sample_frequencies argument checks") {
    KernelSpec spec{KernelFamily::RBF, 1.0};
    SamplingStrategy strategy{SamplingKind::MonteCarlo, 0, false};
    CHECK_THROWS_AS(sample_frequencies(spec, strategy, 0, 1), InvalidArgument);
    CHECK_THROWS_AS(sample_frequencies(spec, strategy, 1, 0), InvalidArgument);
}
