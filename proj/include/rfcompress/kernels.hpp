#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rfc {

enum class KernelFamily { RBF, Laplace, Cauchy };

KernelFamily kernel_family_from_string(const std::string& s);
std::string to_string(KernelFamily f);

// A stationary kernel with k(x, x) = 1:
//   RBF      k(x,y) = exp(-gamma * ||x - y||_2^2)
//   Laplace  k(x,y) = exp(-gamma * ||x - y||_1)
//   Cauchy   k(x,y) = prod_i 1 / (1 + gamma * (x_i - y_i)^2)
struct KernelSpec {
    KernelFamily family = KernelFamily::RBF;
    double gamma = 1.0;

    void validate() const;
};

double eval_kernel(const KernelSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// Exact kernel matrix for the given points (rows of X).
Eigen::MatrixXd kernel_matrix(const KernelSpec& spec, const Eigen::MatrixXd& X);

enum class SamplingKind { MonteCarlo, HaltonQMC };

// How frequencies are drawn from the kernel's spectral measure. The seed
// fully determines Monte-Carlo draws; the Halton sequence is deterministic
// and ignores the seed unless `scramble` turns on the per-dimension
// Cranley-Patterson rotation derived from it.
struct SamplingStrategy {
    SamplingKind kind = SamplingKind::MonteCarlo;
    std::uint64_t seed = 0;
    bool scramble = false;
};

SamplingKind sampling_kind_from_string(const std::string& s);
std::string to_string(SamplingKind k);

// Deterministic Halton low-discrepancy sequence; dimension d uses the d-th
// prime as its base. point(i) is the i-th element, i >= 1, all coordinates
// strictly inside (0, 1).
class HaltonSequence {
public:
    explicit HaltonSequence(int dimensions);

    int dimensions() const { return static_cast<int>(bases_.size()); }
    double coordinate(std::int64_t index, int dim) const;
    Eigen::VectorXd point(std::int64_t index) const;

private:
    std::vector<int> bases_;
};

std::vector<int> first_primes(int n);

// Draws the feature-map parameters of Bochner's theorem: j_plus frequency
// rows from the spectral measure of `spec` and phases uniform on [0, 2pi).
//
// Monte-Carlo uses a counter-based stream, so row j is the same no matter
// how many rows are requested or in what order they are generated; the
// Halton variant maps the first p coordinates of the (p+1)-dimensional
// sequence through the per-coordinate inverse CDF and scales the last by
// 2pi for the phase.
std::pair<Eigen::MatrixXd, Eigen::VectorXd> sample_frequencies(const KernelSpec& spec,
                                                               const SamplingStrategy& strategy,
                                                               int j_plus, int p);

}  // namespace rfc
