#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "rfcompress/dataset.hpp"
#include "rfcompress/kernels.hpp"

namespace rfc {

// Feature matrices are row-major: one example per row, contiguous, which is
// what the SVM row sweeps and the pairwise products in the compression step
// want.
using FeatureMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Parameters of the random Fourier map
//   z_j(x) = sqrt(2/J+) * cos(omega_j' x + b_j),  j = 1..J+,
// the real cosine map whose inner products are unbiased for the kernel:
// E[z(x)'z(y)] = k(x, y). Coordinates are bounded by sqrt(2/J+), so
// ||z(x)||_2 <= sqrt(2), with ||z(x)||_2^2 = 1 in expectation.
struct FeatureMapParams {
    Eigen::MatrixXd omega;  // J+ x p
    Eigen::VectorXd b;      // J+

    int j_plus() const { return static_cast<int>(omega.rows()); }
    int input_dim() const { return static_cast<int>(omega.cols()); }
    void validate() const;
};

FeatureMapParams make_feature_map(const KernelSpec& spec, const SamplingStrategy& strategy,
                                  int j_plus, int p);

Eigen::VectorXd featurize(const FeatureMapParams& params, const Eigen::VectorXd& x);

// Batch form: rows of X in, rows of Z out (n x J+).
FeatureMatrix featurize_rows(const FeatureMapParams& params, const Eigen::MatrixXd& X);

// Sparse nonnegative weights over the J+ up-projection features. Entries
// are (0-based index, weight) pairs, strictly positive, sorted by index;
// absent means zero.
struct WeightVector {
    int j_plus = 0;
    std::vector<std::pair<int, double>> entries;

    int support_size() const { return static_cast<int>(entries.size()); }
    Eigen::VectorXd dense() const;
    static WeightVector from_dense(const Eigen::VectorXd& w, int j_plus);

    // JSON record {j_plus, entries: [[j, w_j], ...]} with 1-based feature ids
    // on the wire, matching the LIBSVM convention.
    std::string to_json() const;
    static WeightVector from_json(const std::string& text);
};

// The compressed feature map of Algorithm "RFM compression": only the
// frequencies in the support of w are kept, and kept feature j is scaled by
// sqrt(w_j). j_plus remembers the original up-projection size so the
// 1/sqrt(J+) normalization is unchanged.
struct CompressedMap {
    KernelSpec kernel;
    int j_plus = 0;
    Eigen::MatrixXd omega;  // k x p, k = ||w||_0
    Eigen::VectorXd b;      // k
    Eigen::VectorXd scale;  // k, sqrt(w_j)

    int num_features() const { return static_cast<int>(omega.rows()); }
    int input_dim() const { return static_cast<int>(omega.cols()); }

    std::string to_json() const;
    static CompressedMap from_json(const std::string& text);
    void save(const std::string& path) const;
    static CompressedMap load(const std::string& path);
};

CompressedMap make_compressed_map(const FeatureMapParams& params, const KernelSpec& kernel,
                                  const WeightVector& w);

Eigen::VectorXd featurize_compressed(const CompressedMap& cm, const Eigen::VectorXd& x);
FeatureMatrix featurize_compressed_rows(const CompressedMap& cm, const Eigen::MatrixXd& X);

// Johnson-Lindenstrauss compression: a J x J+ matrix of i.i.d.
// Normal(0, 1/J) entries, deterministic given the seed.
class JlProjector {
public:
    JlProjector(std::uint64_t seed, int j, int j_plus);

    int output_dim() const { return static_cast<int>(A_.rows()); }
    int input_dim() const { return static_cast<int>(A_.cols()); }
    const Eigen::MatrixXd& matrix() const { return A_; }

    Eigen::VectorXd apply(const Eigen::VectorXd& z) const;
    FeatureMatrix apply_rows(const FeatureMatrix& Z) const;

private:
    Eigen::MatrixXd A_;
};

Eigen::VectorXd jl_project(std::uint64_t seed, int j_plus, int j, const Eigen::VectorXd& z);

// Produces feature rows for dataset rows by index; the abstraction the
// Frobenius-error estimator consumes so each method featurizes only the
// sampled rows.
class FeatureSource {
public:
    virtual ~FeatureSource() = default;
    virtual int feature_dim() const = 0;
    virtual FeatureMatrix rows(const std::vector<std::int64_t>& idx) const = 0;
};

// Plain random feature map over a dataset.
class RfmSource final : public FeatureSource {
public:
    RfmSource(const Dataset& data, const FeatureMapParams& params)
        : data_(data), params_(params) {}
    int feature_dim() const override { return params_.j_plus(); }
    FeatureMatrix rows(const std::vector<std::int64_t>& idx) const override;

private:
    const Dataset& data_;
    const FeatureMapParams& params_;
};

// Up-projection followed by JL compression, materialized in row batches.
class JlSource final : public FeatureSource {
public:
    JlSource(const Dataset& data, const FeatureMapParams& params, const JlProjector& proj,
             int batch_rows = 2048)
        : data_(data), params_(params), proj_(proj), batch_rows_(batch_rows) {}
    int feature_dim() const override { return proj_.output_dim(); }
    FeatureMatrix rows(const std::vector<std::int64_t>& idx) const override;

private:
    const Dataset& data_;
    const FeatureMapParams& params_;
    const JlProjector& proj_;
    int batch_rows_;
};

// Weighted compressed map over a dataset.
class CompressedSource final : public FeatureSource {
public:
    CompressedSource(const Dataset& data, const CompressedMap& cm) : data_(data), cm_(cm) {}
    int feature_dim() const override { return cm_.num_features(); }
    FeatureMatrix rows(const std::vector<std::int64_t>& idx) const override;

private:
    const Dataset& data_;
    const CompressedMap& cm_;
};

// Fixed precomputed feature rows (testing and exact-factor checks).
class MatrixSource final : public FeatureSource {
public:
    explicit MatrixSource(FeatureMatrix Z) : Z_(std::move(Z)) {}
    int feature_dim() const override { return static_cast<int>(Z_.cols()); }
    FeatureMatrix rows(const std::vector<std::int64_t>& idx) const override;

private:
    FeatureMatrix Z_;
};

}  // namespace rfc
