#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rfcompress/dataset.hpp"
#include "rfcompress/features.hpp"
#include "rfcompress/kernels.hpp"

namespace rfc {

struct FrobeniusEstimate {
    double relative_error = 0.0;
    std::int64_t sample_size = 0;
    std::uint64_t seed = 0;
};

// Samples m rows without replacement, computes the exact kernel block K and
// the approximate block Z Z' on them, and returns ||ZZ' - K||_F / ||K||_F.
FrobeniusEstimate estimate_frobenius_error(const Dataset& data, const FeatureSource& source,
                                           const KernelSpec& spec, std::int64_t m,
                                           std::uint64_t seed);

struct RidgeModel {
    Eigen::VectorXd beta;
    double lambda = 0.0;

    std::string to_json() const;
    static RidgeModel from_json(const std::string& text);
};

// beta = (Z'Z + lambda I)^-1 Z'y via Cholesky; lambda > 0 keeps the system
// positive definite.
RidgeModel ridge_fit(const FeatureMatrix& Z, const Eigen::VectorXd& y, double lambda);
double ridge_predict(const RidgeModel& model, const Eigen::VectorXd& z);

struct SvmModel {
    std::vector<double> classes;  // ascending distinct label values
    // One weight row per binary problem: a single row for two classes
    // (positive = classes[1]), otherwise one-vs-rest rows in class order.
    FeatureMatrix weights;
    double C = 1.0;
    double tol = 0.1;

    std::string to_json() const;
    static SvmModel from_json(const std::string& text);
};

// Called after each dual-coordinate-descent sweep with (sweep, alpha).
using SvmSweepObserver = std::function<void(int, const Eigen::VectorXd&)>;

// L1-loss linear SVM by dual coordinate descent: per binary subproblem,
// minimize (1/2) a'Qa - 1'a over 0 <= a_i <= C with Q_ij = y_i y_j z_i'z_j,
// sweeping coordinates in a seeded random order until the largest projected
// gradient violation is at most tol.
SvmModel svm_fit(const FeatureMatrix& Z, const std::vector<double>& labels, double C, double tol,
                 std::uint64_t seed, const SvmSweepObserver& observer = nullptr);

double svm_predict(const SvmModel& model, const Eigen::VectorXd& z);
double svm_accuracy(const SvmModel& model, const FeatureMatrix& Z,
                    const std::vector<double>& labels);

// Average empirical kernel-PCA residual: sum of the eigenvalues of K below
// the top l, divided by the matrix size.
double pca_residual(const Eigen::MatrixXd& K, int l);

}  // namespace rfc
