#include "rfcompress/dataset.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "rfcompress/errors.hpp"

namespace rfc {

Dataset::Dataset(std::vector<SparseRow> rows, std::vector<double> labels, int dim)
    : rows_(std::move(rows)), labels_(std::move(labels)), dim_(dim) {
    if (!labels_.empty() && labels_.size() != rows_.size())
        throw InvalidArgument("Dataset: labels must be absent or one per row");
    for (const auto& r : rows_) {
        if (!r.indices.empty() && r.indices.back() > dim_)
            throw InvalidArgument("Dataset: row index exceeds dim");
    }
}

const SparseRow& Dataset::row(std::int64_t i) const {
    if (i < 0 || i >= num_rows()) throw InvalidArgument("Dataset::row: index out of range");
    return rows_[static_cast<std::size_t>(i)];
}

double Dataset::label(std::int64_t i) const {
    if (!has_labels()) throw InvalidArgument("Dataset::label: dataset has no labels");
    if (i < 0 || i >= num_rows()) throw InvalidArgument("Dataset::label: index out of range");
    return labels_[static_cast<std::size_t>(i)];
}

Eigen::VectorXd Dataset::dense_row(std::int64_t i) const {
    const SparseRow& r = row(i);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(dim_);
    for (std::size_t k = 0; k < r.indices.size(); ++k) x[r.indices[k] - 1] = r.values[k];
    return x;
}

Eigen::MatrixXd Dataset::dense_rows(const std::vector<std::int64_t>& idx) const {
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(idx.size()), dim_);
    for (std::size_t n = 0; n < idx.size(); ++n) {
        const SparseRow& r = row(idx[n]);
        for (std::size_t k = 0; k < r.indices.size(); ++k)
            X(static_cast<Eigen::Index>(n), r.indices[k] - 1) = r.values[k];
    }
    return X;
}

void Dataset::set_dim(int dim) {
    for (const auto& r : rows_) {
        if (!r.indices.empty() && r.indices.back() > dim)
            throw InvalidArgument("Dataset::set_dim: dim below existing max index");
    }
    dim_ = dim;
}

namespace {

double parse_double(std::string_view tok, long line, const char* what) {
    double v = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw ParseError(std::string("malformed ") + what + " '" + std::string(tok) + "'", line);
    return v;
}

int parse_index(std::string_view tok, long line) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 1)
        throw ParseError("malformed feature index '" + std::string(tok) + "'", line);
    return v;
}

}  // namespace

Dataset parse_libsvm(std::istream& in) {
    std::vector<SparseRow> rows;
    std::vector<double> labels;
    int dim = 0;

    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        std::size_t pos = line.find_first_not_of(" \t");
        if (pos == std::string::npos) continue;

        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        // LIBSVM labels may carry a leading '+'.
        std::string_view label_tok = tok;
        if (!label_tok.empty() && label_tok.front() == '+') label_tok.remove_prefix(1);
        labels.push_back(parse_double(label_tok, lineno, "label"));

        SparseRow row;
        while (ls >> tok) {
            std::size_t colon = tok.find(':');
            if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
                throw ParseError("malformed token '" + tok + "'", lineno);
            int idx = parse_index(std::string_view(tok).substr(0, colon), lineno);
            double val = parse_double(std::string_view(tok).substr(colon + 1), lineno, "value");
            if (!row.indices.empty() && idx <= row.indices.back())
                throw ParseError("non-ascending feature index " + std::to_string(idx), lineno);
            row.indices.push_back(idx);
            row.values.push_back(val);
        }
        if (!row.indices.empty() && row.indices.back() > dim) dim = row.indices.back();
        rows.push_back(std::move(row));
    }
    return Dataset(std::move(rows), std::move(labels), dim);
}

Dataset parse_libsvm(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_libsvm(in);
}

Dataset load_libsvm_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    return parse_libsvm(in);
}

void write_libsvm(const Dataset& d, std::ostream& out) {
    char buf[64];
    for (std::int64_t i = 0; i < d.num_rows(); ++i) {
        if (d.has_labels()) {
            std::snprintf(buf, sizeof(buf), "%.17g", d.label(i));
            out << buf;
        } else {
            out << 0;
        }
        const SparseRow& r = d.row(i);
        for (std::size_t k = 0; k < r.indices.size(); ++k) {
            std::snprintf(buf, sizeof(buf), "%.17g", r.values[k]);
            out << ' ' << r.indices[k] << ':' << buf;
        }
        out << '\n';
    }
}

std::string to_libsvm(const Dataset& d) {
    std::ostringstream out;
    write_libsvm(d, out);
    return out.str();
}

}  // namespace rfc
