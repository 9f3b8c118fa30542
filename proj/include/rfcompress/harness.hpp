#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rfcompress/coreset.hpp"
#include "rfcompress/dataset.hpp"
#include "rfcompress/features.hpp"
#include "rfcompress/kernels.hpp"

namespace rfc {

enum class Method { Rfm, RfmJl, RfmFw, RfmGiga };

Method method_from_string(const std::string& s);
std::string to_string(Method m);
bool is_coreset_method(Method m);

enum class Task { Frobenius, Classify, Both };

Task task_from_string(const std::string& s);
std::string to_string(Task t);

// All experiment knobs. Loadable from a flat key=value file; individual
// keys may then be overridden (CLI flags win).
struct ExperimentConfig {
    std::string train_path;
    std::string test_path;
    KernelSpec kernel{KernelFamily::RBF, 1.0};
    Method method = Method::Rfm;
    SamplingKind sampling = SamplingKind::MonteCarlo;
    bool scramble = false;
    int j_plus = 5000;
    std::vector<int> j_values{500};
    std::int64_t s_pairs = 20000;
    int trials = 1;
    std::uint64_t base_seed = 0;
    Task task = Task::Frobenius;
    double svm_c = 1.0;
    double svm_tol = 0.1;
    double ridge_lambda = 1.0;
    std::int64_t frobenius_m = 0;  // 0: min(N, 10000)
    bool timing = true;
    int threads = 1;
    int dim = 0;  // 0: inferred from data; otherwise forced on train and test
    std::vector<double> cv_gammas{0.01, 0.1, 1.0};
    std::vector<double> cv_cs{0.1, 1.0, 10.0};
    int cv_folds = 5;
    std::int64_t cv_subsample = 10000;

    void set(const std::string& key, const std::string& value);
    void load_file(const std::string& path);
    void validate() const;
};

struct ResultRow {
    std::string method;
    int j_plus = 0;
    int j = 0;
    int j_effective = 0;
    std::int64_t s_pairs = 0;  // 0 for methods that do not subsample pairs
    std::uint64_t seed = 0;
    std::optional<double> rel_frob_error;
    std::optional<double> test_accuracy;
    double t_featurize_ms = 0.0;
    double t_compress_ms = 0.0;
    double t_train_ms = 0.0;
};

// Runs `trials` independent trials (seed = base_seed + t), one row per
// (trial, J). Trials share nothing but the datasets and run concurrently
// when config.threads > 1; rows come back sorted by (method, j, seed,
// s_pairs) so the output is schedule-independent.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config, const Dataset& train,
                                      const Dataset* test);

// Convenience overload that loads the datasets named in the config.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

// Re-runs the compression at each S, reusing each trial's feature draw
// (the frequency stream depends only on the trial seed).
std::vector<ResultRow> sweep_s(const ExperimentConfig& config,
                               const std::vector<std::int64_t>& s_values, const Dataset& train,
                               const Dataset* test);
std::vector<ResultRow> sweep_s(const ExperimentConfig& config,
                               const std::vector<std::int64_t>& s_values);

// Header:
// method,j_plus,j,j_effective,s_pairs,seed,rel_frob_error,test_accuracy,
// t_featurize_ms,t_compress_ms,t_train_ms
// Floats use 6 significant digits; absent metrics are empty fields.
std::string emit_csv(const std::vector<ResultRow>& rows);

// Single compression run (trial 0 seeds, J = first j value) producing the
// weighted map of Algorithm "RFM compression".
CompressedMap compress_map(const ExperimentConfig& config, const Dataset& train);

struct CvCell {
    double gamma = 0.0;
    double c = 0.0;
    double accuracy = 0.0;
};

// k-fold grid search over (gamma, C) on a row subsample, scoring a linear
// SVM on plain random features with J = first j value.
std::vector<CvCell> run_cv(const ExperimentConfig& config, const Dataset& train);
std::string emit_cv_csv(const std::vector<CvCell>& cells);

// Loads train/test per the config, forcing a common feature dimension.
std::pair<Dataset, std::optional<Dataset>> load_datasets(const ExperimentConfig& config);

}  // namespace rfc
