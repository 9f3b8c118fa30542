#include "rfcompress/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "rfcompress/errors.hpp"
#include "rfcompress/rng.hpp"

namespace rfc {

using json = nlohmann::json;

void FeatureMapParams::validate() const {
    if (omega.rows() < 1) throw InvalidArgument("FeatureMapParams: empty frequency matrix");
    if (b.size() != omega.rows())
        throw InvalidArgument("FeatureMapParams: phase length must match frequency rows");
}

FeatureMapParams make_feature_map(const KernelSpec& spec, const SamplingStrategy& strategy,
                                  int j_plus, int p) {
    auto [omega, b] = sample_frequencies(spec, strategy, j_plus, p);
    return FeatureMapParams{std::move(omega), std::move(b)};
}

Eigen::VectorXd featurize(const FeatureMapParams& params, const Eigen::VectorXd& x) {
    params.validate();
    if (x.size() != params.omega.cols())
        throw InvalidArgument("featurize: input dimension mismatch");
    const double scale = std::sqrt(2.0 / static_cast<double>(params.j_plus()));
    return scale * ((params.omega * x + params.b).array().cos()).matrix();
}

FeatureMatrix featurize_rows(const FeatureMapParams& params, const Eigen::MatrixXd& X) {
    params.validate();
    if (X.cols() != params.omega.cols())
        throw InvalidArgument("featurize_rows: input dimension mismatch");
    const double scale = std::sqrt(2.0 / static_cast<double>(params.j_plus()));
    FeatureMatrix Z(X.rows(), params.j_plus());
    Z.noalias() = X * params.omega.transpose();
    Z.rowwise() += params.b.transpose();
    Z = scale * Z.array().cos();
    return Z;
}

Eigen::VectorXd WeightVector::dense() const {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(j_plus);
    for (const auto& [j, wj] : entries) {
        if (j < 0 || j >= j_plus) throw InvalidArgument("WeightVector: index out of range");
        w[j] = wj;
    }
    return w;
}

WeightVector WeightVector::from_dense(const Eigen::VectorXd& w, int j_plus) {
    if (w.size() != j_plus) throw InvalidArgument("WeightVector::from_dense: length mismatch");
    WeightVector out;
    out.j_plus = j_plus;
    for (int j = 0; j < j_plus; ++j) {
        if (w[j] < 0.0) throw InvalidArgument("WeightVector::from_dense: negative weight");
        if (w[j] > 0.0) out.entries.emplace_back(j, w[j]);
    }
    return out;
}

std::string WeightVector::to_json() const {
    json rec;
    rec["j_plus"] = j_plus;
    json entry_list = json::array();
    for (const auto& [j, wj] : entries) entry_list.push_back({j + 1, wj});
    rec["entries"] = std::move(entry_list);
    return rec.dump();
}

WeightVector WeightVector::from_json(const std::string& text) {
    json rec = json::parse(text);
    WeightVector out;
    out.j_plus = rec.at("j_plus").get<int>();
    for (const auto& e : rec.at("entries")) {
        int j = e.at(0).get<int>() - 1;
        double wj = e.at(1).get<double>();
        if (j < 0 || j >= out.j_plus || !(wj > 0.0))
            throw ParseError("WeightVector: bad entry", 0);
        out.entries.emplace_back(j, wj);
    }
    std::sort(out.entries.begin(), out.entries.end());
    return out;
}

CompressedMap make_compressed_map(const FeatureMapParams& params, const KernelSpec& kernel,
                                  const WeightVector& w) {
    params.validate();
    if (w.j_plus != params.j_plus())
        throw InvalidArgument("make_compressed_map: weight vector sized for a different map");
    const int k = w.support_size();
    CompressedMap cm;
    cm.kernel = kernel;
    cm.j_plus = params.j_plus();
    cm.omega.resize(k, params.omega.cols());
    cm.b.resize(k);
    cm.scale.resize(k);
    for (int i = 0; i < k; ++i) {
        const auto& [j, wj] = w.entries[static_cast<std::size_t>(i)];
        cm.omega.row(i) = params.omega.row(j);
        cm.b[i] = params.b[j];
        cm.scale[i] = std::sqrt(wj);
    }
    return cm;
}

Eigen::VectorXd featurize_compressed(const CompressedMap& cm, const Eigen::VectorXd& x) {
    if (x.size() != cm.omega.cols())
        throw InvalidArgument("featurize_compressed: input dimension mismatch");
    const double norm = std::sqrt(2.0 / static_cast<double>(cm.j_plus));
    return (cm.scale.array() * (cm.omega * x + cm.b).array().cos() * norm).matrix();
}

FeatureMatrix featurize_compressed_rows(const CompressedMap& cm, const Eigen::MatrixXd& X) {
    if (X.cols() != cm.omega.cols())
        throw InvalidArgument("featurize_compressed_rows: input dimension mismatch");
    const double norm = std::sqrt(2.0 / static_cast<double>(cm.j_plus));
    FeatureMatrix Z(X.rows(), cm.num_features());
    Z.noalias() = X * cm.omega.transpose();
    Z.rowwise() += cm.b.transpose();
    Z = Z.array().cos();
    Z.array().rowwise() *= (norm * cm.scale.transpose().array());
    return Z;
}

std::string CompressedMap::to_json() const {
    json rec;
    rec["family"] = to_string(kernel.family);
    rec["gamma"] = kernel.gamma;
    rec["j_plus"] = j_plus;
    rec["b"] = std::vector<double>(b.data(), b.data() + b.size());
    rec["sqrt_w"] = std::vector<double>(scale.data(), scale.data() + scale.size());
    json rows = json::array();
    for (Eigen::Index i = 0; i < omega.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index d = 0; d < omega.cols(); ++d) row.push_back(omega(i, d));
        rows.push_back(std::move(row));
    }
    rec["omega"] = std::move(rows);
    return rec.dump();
}

CompressedMap CompressedMap::from_json(const std::string& text) {
    json rec;
    try {
        rec = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("CompressedMap: ") + e.what(), 0);
    }
    CompressedMap cm;
    cm.kernel.family = kernel_family_from_string(rec.at("family").get<std::string>());
    cm.kernel.gamma = rec.at("gamma").get<double>();
    cm.j_plus = rec.at("j_plus").get<int>();
    auto b = rec.at("b").get<std::vector<double>>();
    auto sw = rec.at("sqrt_w").get<std::vector<double>>();
    const auto& rows = rec.at("omega");
    if (b.size() != sw.size() || b.size() != rows.size())
        throw ParseError("CompressedMap: inconsistent record lengths", 0);
    const int k = static_cast<int>(b.size());
    const int p = k > 0 ? static_cast<int>(rows[0].size()) : 0;
    cm.b = Eigen::Map<Eigen::VectorXd>(b.data(), k);
    cm.scale = Eigen::Map<Eigen::VectorXd>(sw.data(), k);
    cm.omega.resize(k, p);
    for (int i = 0; i < k; ++i) {
        auto row = rows[static_cast<std::size_t>(i)].get<std::vector<double>>();
        if (static_cast<int>(row.size()) != p)
            throw ParseError("CompressedMap: ragged omega rows", 0);
        cm.omega.row(i) = Eigen::Map<Eigen::VectorXd>(row.data(), p);
    }
    return cm;
}

void CompressedMap::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << to_json() << '\n';
    if (!out) throw IoError("write failed for '" + path + "'");
}

CompressedMap CompressedMap::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json(text);
}

JlProjector::JlProjector(std::uint64_t seed, int j, int j_plus) {
    if (j < 1 || j > j_plus) throw InvalidArgument("JlProjector: need 1 <= J <= J+");
    A_.resize(j, j_plus);
    RandomStream stream(seed);
    const double sd = 1.0 / std::sqrt(static_cast<double>(j));
    std::uint64_t c = 0;
    for (int row = 0; row < j; ++row)
        for (int col = 0; col < j_plus; ++col)
            A_(row, col) = sd * inv_normal_cdf(stream.uniform01(c++));
}

Eigen::VectorXd JlProjector::apply(const Eigen::VectorXd& z) const {
    if (z.size() != A_.cols()) throw InvalidArgument("JlProjector::apply: dimension mismatch");
    return A_ * z;
}

FeatureMatrix JlProjector::apply_rows(const FeatureMatrix& Z) const {
    if (Z.cols() != A_.cols())
        throw InvalidArgument("JlProjector::apply_rows: dimension mismatch");
    return Z * A_.transpose();
}

Eigen::VectorXd jl_project(std::uint64_t seed, int j_plus, int j, const Eigen::VectorXd& z) {
    if (z.size() != j_plus) throw InvalidArgument("jl_project: vector length must equal j_plus");
    return JlProjector(seed, j, j_plus).apply(z);
}

FeatureMatrix RfmSource::rows(const std::vector<std::int64_t>& idx) const {
    return featurize_rows(params_, data_.dense_rows(idx));
}

FeatureMatrix JlSource::rows(const std::vector<std::int64_t>& idx) const {
    FeatureMatrix out(static_cast<Eigen::Index>(idx.size()), proj_.output_dim());
    for (std::size_t start = 0; start < idx.size(); start += static_cast<std::size_t>(batch_rows_)) {
        std::size_t stop = std::min(idx.size(), start + static_cast<std::size_t>(batch_rows_));
        std::vector<std::int64_t> chunk(idx.begin() + static_cast<std::ptrdiff_t>(start),
                                        idx.begin() + static_cast<std::ptrdiff_t>(stop));
        out.middleRows(static_cast<Eigen::Index>(start), static_cast<Eigen::Index>(chunk.size())) =
            proj_.apply_rows(featurize_rows(params_, data_.dense_rows(chunk)));
    }
    return out;
}

FeatureMatrix CompressedSource::rows(const std::vector<std::int64_t>& idx) const {
    return featurize_compressed_rows(cm_, data_.dense_rows(idx));
}

FeatureMatrix MatrixSource::rows(const std::vector<std::int64_t>& idx) const {
    FeatureMatrix out(static_cast<Eigen::Index>(idx.size()), Z_.cols());
    for (std::size_t n = 0; n < idx.size(); ++n) {
        if (idx[n] < 0 || idx[n] >= Z_.rows())
            throw InvalidArgument("MatrixSource: row index out of range");
        out.row(static_cast<Eigen::Index>(n)) = Z_.row(idx[n]);
    }
    return out;
}

}  // namespace rfc
