#include "rfcompress/downstream.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "rfcompress/errors.hpp"
#include "rfcompress/rng.hpp"

namespace rfc {

using json = nlohmann::json;

FrobeniusEstimate estimate_frobenius_error(const Dataset& data, const FeatureSource& source,
                                           const KernelSpec& spec, std::int64_t m,
                                           std::uint64_t seed) {
    if (m < 1) throw InvalidArgument("estimate_frobenius_error: m must be >= 1");
    if (m > data.num_rows())
        throw InvalidArgument("estimate_frobenius_error: m exceeds the number of rows");

    // Partial Fisher-Yates: the first m slots of a full permutation.
    std::vector<std::int64_t> idx(static_cast<std::size_t>(data.num_rows()));
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<std::int64_t>(i);
    SequentialRng rng(seed);
    for (std::int64_t i = 0; i < m; ++i) {
        std::int64_t k = i + static_cast<std::int64_t>(
                                 rng.below(static_cast<std::uint64_t>(data.num_rows() - i)));
        std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(k)]);
    }
    idx.resize(static_cast<std::size_t>(m));

    Eigen::MatrixXd X = data.dense_rows(idx);
    Eigen::MatrixXd K = kernel_matrix(spec, X);
    FeatureMatrix Z = source.rows(idx);

    Eigen::MatrixXd approx = Z * Z.transpose();
    double denom = K.norm();
    if (!(denom > 0.0)) throw DegenerateError("estimate_frobenius_error: zero kernel block");

    FrobeniusEstimate est;
    est.relative_error = (approx - K).norm() / denom;
    est.sample_size = m;
    est.seed = seed;
    return est;
}

RidgeModel ridge_fit(const FeatureMatrix& Z, const Eigen::VectorXd& y, double lambda) {
    if (!(lambda > 0.0)) throw InvalidArgument("ridge_fit: lambda must be positive");
    if (Z.rows() != y.size()) throw InvalidArgument("ridge_fit: label length mismatch");
    const Eigen::Index j = Z.cols();
    Eigen::MatrixXd gram = Eigen::MatrixXd::Identity(j, j) * lambda;
    gram.selfadjointView<Eigen::Lower>().rankUpdate(Z.transpose());
    Eigen::VectorXd zty = Z.transpose() * y;
    RidgeModel model;
    model.lambda = lambda;
    model.beta = Eigen::LLT<Eigen::MatrixXd>(gram.selfadjointView<Eigen::Lower>()).solve(zty);
    return model;
}

double ridge_predict(const RidgeModel& model, const Eigen::VectorXd& z) {
    if (z.size() != model.beta.size()) throw InvalidArgument("ridge_predict: dimension mismatch");
    return z.dot(model.beta);
}

std::string RidgeModel::to_json() const {
    json rec;
    rec["lambda"] = lambda;
    rec["beta"] = std::vector<double>(beta.data(), beta.data() + beta.size());
    return rec.dump();
}

RidgeModel RidgeModel::from_json(const std::string& text) {
    json rec = json::parse(text);
    RidgeModel model;
    model.lambda = rec.at("lambda").get<double>();
    auto b = rec.at("beta").get<std::vector<double>>();
    model.beta = Eigen::Map<Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
    return model;
}

namespace {

// One binary subproblem; y entries are +1/-1. Returns the primal weights and
// exposes per-sweep duals to the observer.
Eigen::VectorXd dual_cd_binary(const FeatureMatrix& Z, const Eigen::VectorXd& y, double C,
                               double tol, std::uint64_t seed, int binary_index,
                               const SvmSweepObserver& observer) {
    const Eigen::Index n = Z.rows();
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd w = Eigen::VectorXd::Zero(Z.cols());
    Eigen::VectorXd diag(n);
    for (Eigen::Index i = 0; i < n; ++i) diag[i] = Z.row(i).squaredNorm();

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    SequentialRng rng(derive_stream(seed, 0xC0DEu + static_cast<std::uint64_t>(binary_index)));

    constexpr int kMaxSweeps = 1000;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        rng.shuffle(order);
        double max_violation = 0.0;
        for (Eigen::Index i : order) {
            if (diag[i] <= 0.0) continue;
            double g = y[i] * w.dot(Z.row(i)) - 1.0;
            double pg = g;
            if (alpha[i] <= 0.0)
                pg = std::min(g, 0.0);
            else if (alpha[i] >= C)
                pg = std::max(g, 0.0);
            max_violation = std::max(max_violation, std::abs(pg));
            if (pg == 0.0) continue;
            double old = alpha[i];
            alpha[i] = std::clamp(old - g / diag[i], 0.0, C);
            if (alpha[i] != old) w += (alpha[i] - old) * y[i] * Z.row(i).transpose();
        }
        if (observer) observer(sweep, alpha);
        if (max_violation <= tol) break;
    }
    return w;
}

}  // namespace

SvmModel svm_fit(const FeatureMatrix& Z, const std::vector<double>& labels, double C, double tol,
                 std::uint64_t seed, const SvmSweepObserver& observer) {
    if (!(C > 0.0)) throw InvalidArgument("svm_fit: C must be positive");
    if (!(tol > 0.0)) throw InvalidArgument("svm_fit: tol must be positive");
    if (static_cast<Eigen::Index>(labels.size()) != Z.rows())
        throw InvalidArgument("svm_fit: label length mismatch");

    std::set<double> distinct(labels.begin(), labels.end());
    if (distinct.size() < 2) throw InvalidArgument("svm_fit: need at least two classes");

    SvmModel model;
    model.classes.assign(distinct.begin(), distinct.end());
    model.C = C;
    model.tol = tol;

    const Eigen::Index n = Z.rows();
    Eigen::VectorXd y(n);
    if (model.classes.size() == 2) {
        for (Eigen::Index i = 0; i < n; ++i)
            y[i] = labels[static_cast<std::size_t>(i)] == model.classes[1] ? 1.0 : -1.0;
        model.weights.resize(1, Z.cols());
        model.weights.row(0) = dual_cd_binary(Z, y, C, tol, seed, 0, observer);
        return model;
    }

    model.weights.resize(static_cast<Eigen::Index>(model.classes.size()), Z.cols());
    for (std::size_t c = 0; c < model.classes.size(); ++c) {
        for (Eigen::Index i = 0; i < n; ++i)
            y[i] = labels[static_cast<std::size_t>(i)] == model.classes[c] ? 1.0 : -1.0;
        model.weights.row(static_cast<Eigen::Index>(c)) =
            dual_cd_binary(Z, y, C, tol, seed, static_cast<int>(c), observer);
    }
    return model;
}

double svm_predict(const SvmModel& model, const Eigen::VectorXd& z) {
    if (z.size() != model.weights.cols()) throw InvalidArgument("svm_predict: dimension mismatch");
    if (model.classes.size() == 2)
        return model.weights.row(0).dot(z) >= 0.0 ? model.classes[1] : model.classes[0];
    Eigen::Index best;
    (model.weights * z).maxCoeff(&best);
    return model.classes[static_cast<std::size_t>(best)];
}

double svm_accuracy(const SvmModel& model, const FeatureMatrix& Z,
                    const std::vector<double>& labels) {
    if (static_cast<Eigen::Index>(labels.size()) != Z.rows())
        throw InvalidArgument("svm_accuracy: label length mismatch");
    if (Z.rows() == 0) throw InvalidArgument("svm_accuracy: empty evaluation set");
    std::int64_t hits = 0;
    for (Eigen::Index i = 0; i < Z.rows(); ++i)
        if (svm_predict(model, Z.row(i)) == labels[static_cast<std::size_t>(i)]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(Z.rows());
}

std::string SvmModel::to_json() const {
    json rec;
    rec["classes"] = classes;
    rec["C"] = C;
    rec["tol"] = tol;
    json rows = json::array();
    for (Eigen::Index i = 0; i < weights.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index d = 0; d < weights.cols(); ++d) row.push_back(weights(i, d));
        rows.push_back(std::move(row));
    }
    rec["weights"] = std::move(rows);
    return rec.dump();
}

SvmModel SvmModel::from_json(const std::string& text) {
    json rec = json::parse(text);
    SvmModel model;
    model.classes = rec.at("classes").get<std::vector<double>>();
    model.C = rec.at("C").get<double>();
    model.tol = rec.at("tol").get<double>();
    const auto& rows = rec.at("weights");
    const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
    const Eigen::Index d = n > 0 ? static_cast<Eigen::Index>(rows[0].size()) : 0;
    model.weights.resize(n, d);
    for (Eigen::Index i = 0; i < n; ++i) {
        auto row = rows[static_cast<std::size_t>(i)].get<std::vector<double>>();
        model.weights.row(i) = Eigen::Map<Eigen::VectorXd>(row.data(), d);
    }
    return model;
}

double pca_residual(const Eigen::MatrixXd& K, int l) {
    const Eigen::Index m = K.rows();
    if (K.cols() != m) throw InvalidArgument("pca_residual: matrix must be square");
    if (l < 0 || l > m) throw InvalidArgument("pca_residual: l out of range");
    double asym = (K - K.transpose()).cwiseAbs().maxCoeff();
    double scale = std::max(1.0, K.cwiseAbs().maxCoeff());
    if (asym > 1e-8 * scale) throw InvalidArgument("pca_residual: matrix is not symmetric");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(K, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& ev = eig.eigenvalues();  // ascending
    double tail = 0.0;
    for (Eigen::Index i = 0; i + l < m; ++i) tail += ev[i];
    return tail / static_cast<double>(m);
}

}  // namespace rfc
