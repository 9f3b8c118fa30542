#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "rfcompress/dataset.hpp"
#include "rfcompress/errors.hpp"
#include "rfcompress/rng.hpp"

using namespace rfc;

TEST_CASE("parse single row") {
    Dataset d = parse_libsvm("1 1:0.5 3:2.0");
    CHECK(d.num_rows() == 1);
    CHECK(d.dim() == 3);
    CHECK(d.label(0) == 1.0);
    const SparseRow& r = d.row(0);
    REQUIRE(r.nnz() == 2);
    CHECK(r.indices[0] == 1);
    CHECK(r.values[0] == 0.5);
    CHECK(r.indices[1] == 3);
    CHECK(r.values[1] == 2.0);
}

TEST_CASE("parse empty input") {
    Dataset d = parse_libsvm("");
    CHECK(d.num_rows() == 0);
    CHECK(d.dim() == 0);
}

TEST_CASE("parse signed labels and CRLF") {
    Dataset d = parse_libsvm("-1 2:1.0\r\n+1 1:3.0\n");
    REQUIRE(d.num_rows() == 2);
    CHECK(d.dim() == 2);
    CHECK(d.label(0) == -1.0);
    CHECK(d.label(1) == 1.0);
}

TEST_CASE("label-only rows and blank lines") {
    Dataset d = parse_libsvm("3\n\n2 1:1\n   \n");
    REQUIRE(d.num_rows() == 2);
    CHECK(d.row(0).nnz() == 0);
    CHECK(d.label(1) == 2.0);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_libsvm("1 1:0.5\n1 junk"), ParseError);
    try {
        parse_libsvm("1 1:0.5\n1 junk");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_libsvm("1 3:1 2:1"), ParseError);   // non-ascending
    CHECK_THROWS_AS(parse_libsvm("1 2:1 2:1"), ParseError);   // repeated index
    CHECK_THROWS_AS(parse_libsvm("1 0:1"), ParseError);       // index below 1
    CHECK_THROWS_AS(parse_libsvm("x 1:1"), ParseError);       // bad label
    CHECK_THROWS_AS(parse_libsvm("1 1:abc"), ParseError);     // bad value
    CHECK_THROWS_AS(parse_libsvm("1 :1"), ParseError);        // empty index
    CHECK_THROWS_AS(parse_libsvm("1 1:"), ParseError);        // empty value
}

TEST_CASE("dense_row expands with zeros") {
    Dataset d = parse_libsvm("0 1:0.5 3:2.0\n0\n0 2:-1");
    d.set_dim(4);
    Eigen::VectorXd x = d.dense_row(0);
    REQUIRE(x.size() == 4);
    CHECK(x[0] == 0.5);
    CHECK(x[1] == 0.0);
    CHECK(x[2] == 2.0);
    CHECK(x[3] == 0.0);
    CHECK(d.dense_row(1).isZero());
    Eigen::VectorXd y = d.dense_row(2);
    CHECK(y[1] == -1.0);
    CHECK_THROWS_AS(d.dense_row(3), InvalidArgument);
    CHECK_THROWS_AS(d.dense_row(-1), InvalidArgument);
}

TEST_CASE("explicit zero entries survive a round trip") {
    std::string text = "1 1:0 2:3.5\n-1 4:0\n";
    Dataset d = parse_libsvm(text);
    CHECK(d.row(0).nnz() == 2);
    Dataset d2 = parse_libsvm(to_libsvm(d));
    CHECK(to_libsvm(d2) == to_libsvm(d));
}

TEST_CASE("round trip on random datasets") {
    SequentialRng rng(2024);
    for (int rep = 0; rep < 20; ++rep) {
        std::ostringstream text;
        int n = 1 + static_cast<int>(rng.below(8));
        for (int i = 0; i < n; ++i) {
            text << (rng.uniform01() * 4.0 - 2.0);
            int idx = 0;
            int entries = static_cast<int>(rng.below(6));
            for (int k = 0; k < entries; ++k) {
                idx += 1 + static_cast<int>(rng.below(5));
                text << ' ' << idx << ':' << (rng.uniform01() * 10.0 - 5.0);
            }
            text << '\n';
        }
        Dataset d = parse_libsvm(text.str());
        Dataset d2 = parse_libsvm(to_libsvm(d));
        REQUIRE(d2.num_rows() == d.num_rows());
        CHECK(to_libsvm(d2) == to_libsvm(d));
        CHECK(d2.dim() == d.dim());
        for (std::int64_t i = 0; i < d.num_rows(); ++i)
            CHECK(d2.dense_row(i) == d.dense_row(i));
    }
}

TEST_CASE("dense_rows stacks selected rows") {
    Dataset d = parse_libsvm("0 1:1\n0 2:2\n0 3:3");
    Eigen::MatrixXd X = d.dense_rows({2, 0});
    REQUIRE(X.rows() == 2);
    REQUIRE(X.cols() == 3);
    CHECK(X(0, 2) == 3.0);
    CHECK(X(1, 0) == 1.0);
    CHECK(X.sum() == 4.0);
}

TEST_CASE("set_dim rejects shrinking below data") {
    Dataset d = parse_libsvm("0 5:1");
    CHECK_THROWS_AS(d.set_dim(4), InvalidArgument);
    d.set_dim(10);
    CHECK(d.dim() == 10);
    CHECK(d.dense_row(0).size() == 10);
}

TEST_CASE("file loading reports missing files") {
    CHECK_THROWS_AS(load_libsvm_file("/nonexistent/path/xyz.svm"), IoError);
}
