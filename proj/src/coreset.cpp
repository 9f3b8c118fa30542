#include "rfcompress/coreset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "rfcompress/errors.hpp"
#include "rfcompress/rng.hpp"

namespace rfc {

namespace {

// Decodes a linear index t in [0, N(N-1)/2) to the t-th above-diagonal pair
// in lexicographic order. offset(i) counts pairs whose first element is
// below i; the sqrt guess is corrected by at most a step or two.
std::pair<std::int64_t, std::int64_t> pair_from_index(std::int64_t n, std::uint64_t t) {
    auto offset = [n](std::int64_t k) {
        return static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(n - 1) -
               static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(k - 1) / 2;
    };
    double nd = static_cast<double>(n);
    double disc = (nd - 0.5) * (nd - 0.5) - 2.0 * static_cast<double>(t);
    std::int64_t i =
        disc > 0.0 ? static_cast<std::int64_t>(nd - 0.5 - std::sqrt(disc)) : n - 2;
    i = std::clamp<std::int64_t>(i, 0, n - 2);
    while (i > 0 && offset(i) > t) --i;
    while (i < n - 2 && offset(i + 1) <= t) ++i;
    std::int64_t j = i + 1 + static_cast<std::int64_t>(t - offset(i));
    return {i, j};
}

}  // namespace

PairSample sample_pairs(std::int64_t n, std::int64_t s, std::uint64_t seed) {
    if (n < 2) throw InvalidArgument("sample_pairs: need at least two datapoints");
    if (s < 1) throw InvalidArgument("sample_pairs: need at least one pair");
    const std::uint64_t total =
        static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) / 2;
    PairSample ps;
    ps.seed = seed;
    ps.pairs.resize(static_cast<std::size_t>(s));
    RandomStream stream(seed);
    for (std::int64_t k = 0; k < s; ++k) {
        std::uint64_t t = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(stream.bits(static_cast<std::uint64_t>(k))) * total) >>
            64);
        ps.pairs[static_cast<std::size_t>(k)] = pair_from_index(n, t);
    }
    return ps;
}

PairSample all_pairs(std::int64_t n) {
    if (n < 2) throw InvalidArgument("all_pairs: need at least two datapoints");
    PairSample ps;
    ps.pairs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = i + 1; j < n; ++j) ps.pairs.emplace_back(i, j);
    return ps;
}

CoresetProblem build_problem(const Dataset& data, const FeatureMapParams& params,
                             const PairSample& ps) {
    params.validate();
    const std::int64_t s_count = static_cast<std::int64_t>(ps.pairs.size());
    if (s_count == 0) throw InvalidArgument("build_problem: empty pair sample");

    // Featurize each touched row once.
    std::unordered_map<std::int64_t, std::int64_t> slot;
    std::vector<std::int64_t> touched;
    for (const auto& [i, j] : ps.pairs) {
        if (i < 0 || j <= i || j >= data.num_rows())
            throw InvalidArgument("build_problem: pair out of range");
        if (slot.emplace(i, touched.size()).second) touched.push_back(i);
        if (slot.emplace(j, touched.size()).second) touched.push_back(j);
    }
    FeatureMatrix Z = featurize_rows(params, data.dense_rows(touched));

    CoresetProblem cp;
    cp.R.resize(params.j_plus(), s_count);
    for (std::int64_t s = 0; s < s_count; ++s) {
        const auto& [i, j] = ps.pairs[static_cast<std::size_t>(s)];
        cp.R.col(s) = Z.row(slot.at(i)).cwiseProduct(Z.row(slot.at(j)));
    }
    // Accumulate r row by row in ascending j, the same order objective()
    // uses to rebuild r(w); w = 1 then cancels exactly.
    cp.r = Eigen::VectorXd::Zero(s_count);
    for (int j = 0; j < params.j_plus(); ++j) cp.r += cp.R.row(j).transpose();
    cp.sigma_j = cp.R.rowwise().norm() / std::sqrt(static_cast<double>(s_count));
    cp.sigma = cp.sigma_j.sum();
    return cp;
}

double objective(const CoresetProblem& cp, const WeightVector& w) {
    if (w.j_plus != cp.j_plus())
        throw InvalidArgument("objective: weight vector sized for a different problem");
    Eigen::VectorXd rw = Eigen::VectorXd::Zero(cp.num_pairs());
    for (const auto& [j, wj] : w.entries) rw += wj * cp.R.row(j).transpose();
    return (cp.r - rw).squaredNorm() / static_cast<double>(cp.num_pairs());
}

namespace {

constexpr double kStepDenomFloor = 1e-18;

int argmax_over_support(const Eigen::VectorXd& scores, const Eigen::VectorXd& mask) {
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < scores.size(); ++j) {
        if (mask[j] == 0.0) continue;
        if (scores[j] > best_score) {
            best_score = scores[j];
            best = j;
        }
    }
    return best;
}

SolveResult run_frank_wolfe(const CoresetProblem& cp, const SolveOptions& opt) {
    const int jp = cp.j_plus();
    const double s_count = static_cast<double>(cp.num_pairs());

    // Vertices are (sigma/sigma_j) R_j for rows with sigma_j > 0.
    Eigen::VectorXd mask(jp);
    for (int j = 0; j < jp; ++j) mask[j] = cp.sigma_j[j] > 0.0 ? 1.0 : 0.0;
    if (mask.maxCoeff() == 0.0)
        throw DegenerateError("frank_wolfe: all rows are zero (sigma = 0)");

    SolveResult result;
    Eigen::VectorXd w = Eigen::VectorXd::Zero(jp);
    Eigen::VectorXd rw = Eigen::VectorXd::Zero(cp.num_pairs());
    Eigen::VectorXd scores(jp);

    auto note_iterate = [&](int iter) {
        if (opt.record_trace) result.trace.push_back((cp.r - rw).squaredNorm() / s_count);
        if (std::binary_search(opt.snapshot_iters.begin(), opt.snapshot_iters.end(), iter))
            result.snapshots.push_back(WeightVector::from_dense(w, jp));
        if (opt.on_iterate) opt.on_iterate(iter, WeightVector::from_dense(w, jp));
        result.iterations_run = iter;
    };

    for (int iter = 1; iter <= opt.iterations; ++iter) {
        Eigen::VectorXd residual = cp.r - rw;
        // f = argmax_j <residual, R_j / sigma_j>
        scores.noalias() = cp.R * residual;
        for (int j = 0; j < jp; ++j) scores[j] = mask[j] ? scores[j] / cp.sigma_j[j] : 0.0;
        int f = argmax_over_support(scores, mask);
        const double vertex_scale = cp.sigma / cp.sigma_j[f];
        Eigen::VectorXd v = vertex_scale * cp.R.row(f).transpose();

        double gamma;
        if (iter == 1) {
            gamma = 1.0;  // start at the best vertex
        } else {
            Eigen::VectorXd dir = v - rw;
            double denom = dir.squaredNorm();
            if (denom < kStepDenomFloor) {
                note_iterate(iter);
                break;  // converged: vertex coincides with the iterate
            }
            gamma = std::clamp(dir.dot(residual) / denom, 0.0, 1.0);
        }
        w *= 1.0 - gamma;
        w[f] += gamma * vertex_scale;
        rw = (1.0 - gamma) * rw + gamma * v;
        note_iterate(iter);
    }
    result.weights = WeightVector::from_dense(w, jp);
    // Snapshots past an early convergence break hold the final weights.
    while (result.snapshots.size() < opt.snapshot_iters.size())
        result.snapshots.push_back(result.weights);
    return result;
}

SolveResult run_giga(const CoresetProblem& cp, const SolveOptions& opt) {
    const int jp = cp.j_plus();
    const double s_count = static_cast<double>(cp.num_pairs());

    Eigen::VectorXd row_norm = cp.sigma_j * std::sqrt(s_count);  // ||R_j||_2
    Eigen::VectorXd mask(jp);
    for (int j = 0; j < jp; ++j) mask[j] = row_norm[j] > 0.0 ? 1.0 : 0.0;
    if (mask.maxCoeff() == 0.0) throw DegenerateError("giga: all rows are zero");
    const double r_norm = cp.r.norm();
    if (!(r_norm > 0.0)) throw DegenerateError("giga: target vector r is zero");

    Eigen::VectorXd ell = cp.r / r_norm;
    // m_j = <ell, ell_j>, fixed throughout.
    Eigen::VectorXd m = cp.R * ell;
    for (int j = 0; j < jp; ++j) m[j] = mask[j] ? m[j] / row_norm[j] : 0.0;

    Eigen::VectorXd u = Eigen::VectorXd::Zero(jp);   // weights over unit atoms
    Eigen::VectorXd y_raw = Eigen::VectorXd::Zero(cp.num_pairs());
    double y_raw_norm = 0.0;
    Eigen::VectorXd q(jp), scores(jp);

    SolveResult result;

    // Weights in the original scale: r(w) is the projection of r onto the
    // ray spanned by the current y_raw.
    auto rescaled_weights = [&]() {
        Eigen::VectorXd w = Eigen::VectorXd::Zero(jp);
        if (y_raw_norm > 0.0) {
            double beta = std::max(0.0, cp.r.dot(y_raw) / (y_raw_norm * y_raw_norm));
            for (int j = 0; j < jp; ++j)
                if (u[j] > 0.0) w[j] = beta * u[j] / row_norm[j];
        }
        return w;
    };

    auto note_iterate = [&](int iter) {
        if (opt.record_trace) {
            double cosine = y_raw_norm > 0.0 ? ell.dot(y_raw) / y_raw_norm : 0.0;
            cosine = std::clamp(cosine, -1.0, 1.0);
            double resid = std::max(0.0, 1.0 - std::max(cosine, 0.0) * std::max(cosine, 0.0));
            result.trace.push_back(r_norm * r_norm * resid / s_count);
        }
        const bool snap =
            std::binary_search(opt.snapshot_iters.begin(), opt.snapshot_iters.end(), iter);
        if (snap || opt.on_iterate) {
            WeightVector wv = WeightVector::from_dense(rescaled_weights(), jp);
            if (snap) result.snapshots.push_back(wv);
            if (opt.on_iterate) opt.on_iterate(iter, wv);
        }
        result.iterations_run = iter;
    };

    for (int iter = 1; iter <= opt.iterations; ++iter) {
        int pick;
        double gamma;
        if (iter == 1) {
            pick = argmax_over_support(m, mask);
            gamma = 1.0;
        } else {
            Eigen::VectorXd y = y_raw / y_raw_norm;
            const double zeta1 = ell.dot(y);
            if (1.0 - zeta1 < 1e-15) {
                note_iterate(iter);
                break;  // y already points along ell
            }
            // scores_j ~ <d, d_j> up to the common positive factor ||ell - zeta1 y||.
            q.noalias() = cp.R * y;
            for (int j = 0; j < jp; ++j) {
                if (!mask[j]) {
                    scores[j] = -std::numeric_limits<double>::infinity();
                    continue;
                }
                double zeta2 = q[j] / row_norm[j];
                double denom_sq = 1.0 - zeta2 * zeta2;
                scores[j] = denom_sq > 1e-24
                                ? (m[j] - zeta1 * zeta2) / std::sqrt(denom_sq)
                                : -std::numeric_limits<double>::infinity();
            }
            pick = argmax_over_support(scores, mask);
            const double zeta0 = m[pick];
            const double zeta2 = q[pick] / row_norm[pick];
            double denom = (zeta0 - zeta1 * zeta2) + (zeta1 - zeta0 * zeta2);
            if (!(denom > 0.0)) {
                note_iterate(iter);
                break;  // no geodesic improvement available
            }
            gamma = std::clamp((zeta0 - zeta1 * zeta2) / denom, 0.0, 1.0);
        }
        // The step blends the UNIT iterate with the unit atom; rescale u so
        // y_raw stays the weighted atom sum of exactly that blend.
        if (iter == 1) {
            u[pick] = 1.0;
            y_raw = cp.R.row(pick).transpose() / row_norm[pick];
        } else {
            u *= (1.0 - gamma) / y_raw_norm;
            u[pick] += gamma;
            y_raw = (1.0 - gamma) * (y_raw / y_raw_norm) +
                    gamma * cp.R.row(pick).transpose() / row_norm[pick];
        }
        y_raw_norm = y_raw.norm();
        note_iterate(iter);
        if (y_raw_norm == 0.0) break;
    }

    result.weights = WeightVector::from_dense(rescaled_weights(), jp);
    while (result.snapshots.size() < opt.snapshot_iters.size())
        result.snapshots.push_back(result.weights);
    return result;
}

}  // namespace

SolveResult solve_coreset(const CoresetProblem& cp, CoresetSolver solver,
                          const SolveOptions& options) {
    if (options.iterations < 1) throw InvalidArgument("solve_coreset: iterations must be >= 1");
    if (!std::is_sorted(options.snapshot_iters.begin(), options.snapshot_iters.end()))
        throw InvalidArgument("solve_coreset: snapshot iterations must be ascending");
    return solver == CoresetSolver::FrankWolfe ? run_frank_wolfe(cp, options)
                                               : run_giga(cp, options);
}

WeightVector frank_wolfe(const CoresetProblem& cp, int iterations) {
    SolveOptions opt;
    opt.iterations = iterations;
    return solve_coreset(cp, CoresetSolver::FrankWolfe, opt).weights;
}

WeightVector giga(const CoresetProblem& cp, int iterations) {
    SolveOptions opt;
    opt.iterations = iterations;
    return solve_coreset(cp, CoresetSolver::Giga, opt).weights;
}

}  // namespace rfc
