#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rfc {

// One sparse example: 1-based feature indices (strictly ascending, as in the
// LIBSVM text format) with their values. Explicit zeros are kept so that a
// parse/serialize round trip is exact.
struct SparseRow {
    std::vector<int> indices;
    std::vector<double> values;

    std::size_t nnz() const { return indices.size(); }
};

// Immutable collection of sparse rows plus optional labels. Safe for
// concurrent reads once constructed.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::vector<SparseRow> rows, std::vector<double> labels, int dim);

    std::int64_t num_rows() const { return static_cast<std::int64_t>(rows_.size()); }
    int dim() const { return dim_; }
    bool has_labels() const { return !labels_.empty(); }

    const SparseRow& row(std::int64_t i) const;
    double label(std::int64_t i) const;
    const std::vector<double>& labels() const { return labels_; }

    // Dense expansion of row i: length dim(), zeros at absent indices.
    Eigen::VectorXd dense_row(std::int64_t i) const;

    // Dense matrix of the given rows (one per output row). Used to featurize
    // only the rows an operation actually touches.
    Eigen::MatrixXd dense_rows(const std::vector<std::int64_t>& idx) const;

    // Widen the feature dimension, e.g. so a sparse test split agrees with
    // its training split. Must not be below the max index already present.
    void set_dim(int dim);

private:
    std::vector<SparseRow> rows_;
    std::vector<double> labels_;
    int dim_ = 0;
};

// Parses LIBSVM text: each nonempty line is `<label> <idx>:<val> ...` with
// strictly ascending 1-based indices. Throws ParseError with the offending
// line number on malformed input.
Dataset parse_libsvm(std::istream& in);
Dataset parse_libsvm(std::string_view text);

Dataset load_libsvm_file(const std::string& path);

// Inverse of parse_libsvm; one line per row, `%.17g` values.
void write_libsvm(const Dataset& d, std::ostream& out);
std::string to_libsvm(const Dataset& d);

}  // namespace rfc
