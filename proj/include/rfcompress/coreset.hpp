#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "rfcompress/dataset.hpp"
#include "rfcompress/features.hpp"

namespace rfc {

// S datapoint pairs drawn i.i.d. uniformly (with replacement) from the
// above-diagonal index set {(i, j) : 0 <= i < j < N}.
struct PairSample {
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    std::uint64_t seed = 0;
};

PairSample sample_pairs(std::int64_t n, std::int64_t s, std::uint64_t seed);

// Every above-diagonal pair exactly once; the S = N(N-1)/2 exhaustive
// problem used by the subsampling-consistency checks.
PairSample all_pairs(std::int64_t n);

// The subsampled compression problem: approximate the row sum r by a sparse
// nonnegative combination r(w) = sum_j w_j R_j.
//
//   R(j, s)  = (1/J+) cos(w_j'x_{i_s} + b_j) cos(w_j'x_{j_s} + b_j)
//   r_s      = sum_j R(j, s) = z+(x_{i_s})' z+(x_{j_s})
//   sigma_j  = ||R_j||_2 / sqrt(S)
//   sigma    = sum_j sigma_j
//
// R is column-major: columns are pairs, which is both how it is built and
// the access order of the solvers' matrix-vector products.
struct CoresetProblem {
    Eigen::MatrixXd R;       // J+ x S
    Eigen::VectorXd r;       // S
    Eigen::VectorXd sigma_j; // J+
    double sigma = 0.0;

    int j_plus() const { return static_cast<int>(R.rows()); }
    std::int64_t num_pairs() const { return R.cols(); }
};

// Featurizes only the rows touched by the sample, then fills R column by
// column. This is the O(S J+ p) step that replaces the O(N J+ p)
// full up-projection.
CoresetProblem build_problem(const Dataset& data, const FeatureMapParams& params,
                             const PairSample& ps);

// (1/S) || r - r(w) ||_2^2.
double objective(const CoresetProblem& cp, const WeightVector& w);

enum class CoresetSolver { FrankWolfe, Giga };

struct SolveOptions {
    int iterations = 1;
    // Objective value after each iteration (for GIGA, of the optimally
    // rescaled iterate).
    bool record_trace = false;
    // Ascending iteration counts at which to snapshot the weights, e.g. for
    // a sweep over J without re-solving.
    std::vector<int> snapshot_iters;
    // Called after each iteration with (iteration, weights); intended for
    // invariant checks on small problems -- the conversion is O(J+).
    std::function<void(int, const WeightVector&)> on_iterate;
};

struct SolveResult {
    WeightVector weights;
    std::vector<double> trace;
    std::vector<WeightVector> snapshots;
    int iterations_run = 0;
};

SolveResult solve_coreset(const CoresetProblem& cp, CoresetSolver solver,
                          const SolveOptions& options);

// Frank-Wolfe on the polytope {w >= 0 : sum_j w_j sigma_j = sigma} with
// exact line search. The iterate count bounds the support size.
WeightVector frank_wolfe(const CoresetProblem& cp, int iterations);

// Greedy iterative geodesic ascent on normalized atoms, with a final
// rescale of r(w) to the optimal multiple, so <r - r(w), r(w)> = 0.
WeightVector giga(const CoresetProblem& cp, int iterations);

}  // namespace rfc
