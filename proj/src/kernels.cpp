#include "rfcompress/kernels.hpp"

#include <cmath>

#include "rfcompress/errors.hpp"
#include "rfcompress/rng.hpp"

namespace rfc {

KernelFamily kernel_family_from_string(const std::string& s) {
    if (s == "rbf" || s == "RBF") return KernelFamily::RBF;
    if (s == "laplace" || s == "Laplace") return KernelFamily::Laplace;
    if (s == "cauchy" || s == "Cauchy") return KernelFamily::Cauchy;
    throw ConfigError("unknown kernel family '" + s + "' (expected rbf|laplace|cauchy)");
}

std::string to_string(KernelFamily f) {
    switch (f) {
        case KernelFamily::RBF: return "rbf";
        case KernelFamily::Laplace: return "laplace";
        case KernelFamily::Cauchy: return "cauchy";
    }
    return "?";
}

void KernelSpec::validate() const {
    if (!(gamma > 0.0)) throw ConfigError("kernel gamma must be positive");
}

double eval_kernel(const KernelSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    if (x.size() != y.size()) throw InvalidArgument("eval_kernel: dimension mismatch");
    spec.validate();
    switch (spec.family) {
        case KernelFamily::RBF:
            return std::exp(-spec.gamma * (x - y).squaredNorm());
        case KernelFamily::Laplace:
            return std::exp(-spec.gamma * (x - y).lpNorm<1>());
        case KernelFamily::Cauchy: {
            double k = 1.0;
            for (Eigen::Index i = 0; i < x.size(); ++i) {
                double d = x[i] - y[i];
                k /= 1.0 + spec.gamma * d * d;
            }
            return k;
        }
    }
    throw InvalidArgument("eval_kernel: bad family");
}

Eigen::MatrixXd kernel_matrix(const KernelSpec& spec, const Eigen::MatrixXd& X) {
    spec.validate();
    const Eigen::Index n = X.rows();
    Eigen::MatrixXd K(n, n);
    if (spec.family == KernelFamily::RBF) {
        // ||x - y||^2 = ||x||^2 + ||y||^2 - 2 x.y, one GEMM for the cross term.
        Eigen::VectorXd sq = X.rowwise().squaredNorm();
        K.noalias() = -2.0 * X * X.transpose();
        K.colwise() += sq;
        K.rowwise() += sq.transpose();
        K = (-spec.gamma * K.array().max(0.0)).exp();
        return K;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        K(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double k = eval_kernel(spec, X.row(i), X.row(j));
            K(i, j) = k;
            K(j, i) = k;
        }
    }
    return K;
}

SamplingKind sampling_kind_from_string(const std::string& s) {
    if (s == "mc" || s == "montecarlo" || s == "monte-carlo") return SamplingKind::MonteCarlo;
    if (s == "halton" || s == "qmc") return SamplingKind::HaltonQMC;
    throw ConfigError("unknown sampling strategy '" + s + "' (expected mc|halton)");
}

std::string to_string(SamplingKind k) {
    return k == SamplingKind::MonteCarlo ? "mc" : "halton";
}

std::vector<int> first_primes(int n) {
    std::vector<int> primes;
    primes.reserve(static_cast<std::size_t>(n));
    for (int c = 2; static_cast<int>(primes.size()) < n; ++c) {
        bool is_prime = true;
        for (int p : primes) {
            if (p * p > c) break;
            if (c % p == 0) {
                is_prime = false;
                break;
            }
        }
        if (is_prime) primes.push_back(c);
    }
    return primes;
}

HaltonSequence::HaltonSequence(int dimensions) {
    if (dimensions < 1) throw InvalidArgument("HaltonSequence: dimensions must be >= 1");
    bases_ = first_primes(dimensions);
}

double HaltonSequence::coordinate(std::int64_t index, int dim) const {
    if (index < 1) throw InvalidArgument("HaltonSequence: index must be >= 1");
    if (dim < 0 || dim >= dimensions()) throw InvalidArgument("HaltonSequence: bad dimension");
    const int base = bases_[static_cast<std::size_t>(dim)];
    double f = 1.0;
    double r = 0.0;
    std::int64_t n = index;
    while (n > 0) {
        f /= base;
        r += f * static_cast<double>(n % base);
        n /= base;
    }
    return r;
}

Eigen::VectorXd HaltonSequence::point(std::int64_t index) const {
    Eigen::VectorXd u(dimensions());
    for (int d = 0; d < dimensions(); ++d) u[d] = coordinate(index, d);
    return u;
}

namespace {

// Per-coordinate inverse CDF of the spectral measure Q for each family,
// chosen so that E exp(i w'd) reproduces the kernel:
//   RBF      w ~ Normal(0, 2*gamma)        (Gaussian characteristic function)
//   Laplace  w ~ Cauchy(scale gamma)       (E cos(wd) = exp(-gamma|d|))
//   Cauchy   w ~ Laplace(scale sqrt(gamma)) (E cos(wd) = 1/(1+gamma d^2))
double spectral_icdf(const KernelSpec& spec, double u) {
    switch (spec.family) {
        case KernelFamily::RBF: return std::sqrt(2.0 * spec.gamma) * inv_normal_cdf(u);
        case KernelFamily::Laplace: return inv_cauchy_cdf(u, spec.gamma);
        case KernelFamily::Cauchy: return inv_laplace_cdf(u, std::sqrt(spec.gamma));
    }
    throw InvalidArgument("spectral_icdf: bad family");
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

std::pair<Eigen::MatrixXd, Eigen::VectorXd> sample_frequencies(const KernelSpec& spec,
                                                               const SamplingStrategy& strategy,
                                                               int j_plus, int p) {
    spec.validate();
    if (j_plus < 1) throw InvalidArgument("sample_frequencies: j_plus must be >= 1");
    if (p < 1) throw InvalidArgument("sample_frequencies: p must be >= 1");

    Eigen::MatrixXd omega(j_plus, p);
    Eigen::VectorXd b(j_plus);

    if (strategy.kind == SamplingKind::MonteCarlo) {
        RandomStream stream(strategy.seed);
        const std::uint64_t stride = static_cast<std::uint64_t>(p) + 1;
        for (int j = 0; j < j_plus; ++j) {
            const std::uint64_t base = static_cast<std::uint64_t>(j) * stride;
            for (int d = 0; d < p; ++d)
                omega(j, d) = spectral_icdf(spec, stream.uniform01(base + d));
            b[j] = kTwoPi * stream.uniform01(base + p);
        }
        return {std::move(omega), std::move(b)};
    }

    HaltonSequence halton(p + 1);
    Eigen::VectorXd shift = Eigen::VectorXd::Zero(p + 1);
    if (strategy.scramble) {
        RandomStream stream(strategy.seed);
        for (int d = 0; d <= p; ++d) shift[d] = stream.uniform01(static_cast<std::uint64_t>(d));
    }
    for (int j = 0; j < j_plus; ++j) {
        for (int d = 0; d <= p; ++d) {
            double u = halton.coordinate(j + 1, d);
            if (strategy.scramble) {
                u += shift[d];
                if (u >= 1.0) u -= 1.0;
                // Keep the rotated point strictly inside (0, 1).
                u = std::min(std::max(u, 1e-15), 1.0 - 1e-16);
            }
            if (d < p)
                omega(j, d) = spectral_icdf(spec, u);
            else
                b[j] = kTwoPi * u;
        }
    }
    return {std::move(omega), std::move(b)};
}

}  // namespace rfc
