#include "rfcompress/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "rfcompress/downstream.hpp"
#include "rfcompress/errors.hpp"
#include "rfcompress/rng.hpp"

namespace rfc {

namespace {

// Fixed labels splitting one per-trial seed into independent streams.
constexpr std::uint64_t kStreamFrequencies = 0xF1;
constexpr std::uint64_t kStreamPairs = 0xF2;
constexpr std::uint64_t kStreamJl = 0xF3;
constexpr std::uint64_t kStreamSvm = 0xF4;
constexpr std::uint64_t kStreamFrobenius = 0xF5;
constexpr std::uint64_t kStreamCv = 0xF6;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// FeatureSource decorator accumulating the time spent producing rows, so
// featurization inside the Frobenius estimator lands in the right phase.
class TimedSource final : public FeatureSource {
public:
    TimedSource(const FeatureSource& inner, double& acc_ms) : inner_(inner), acc_ms_(acc_ms) {}
    int feature_dim() const override { return inner_.feature_dim(); }
    FeatureMatrix rows(const std::vector<std::int64_t>& idx) const override {
        auto t0 = Clock::now();
        FeatureMatrix Z = inner_.rows(idx);
        acc_ms_ += ms_since(t0);
        return Z;
    }

private:
    const FeatureSource& inner_;
    double& acc_ms_;
};

std::vector<std::string> split(const std::string& s, char delim) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, delim)) out.push_back(item);
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad integer for '" + key + "': '" + value + "'");
    }
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad number for '" + key + "': '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "1" || value == "true" || value == "on" || value == "yes") return true;
    if (value == "0" || value == "false" || value == "off" || value == "no") return false;
    throw ConfigError("bad boolean for '" + key + "': '" + value + "'");
}

}  // namespace

Method method_from_string(const std::string& s) {
    if (s == "rfm") return Method::Rfm;
    if (s == "rfm-jl") return Method::RfmJl;
    if (s == "rfm-fw") return Method::RfmFw;
    if (s == "rfm-giga") return Method::RfmGiga;
    throw ConfigError("unknown method '" + s + "' (expected rfm|rfm-jl|rfm-fw|rfm-giga)");
}

std::string to_string(Method m) {
    switch (m) {
        case Method::Rfm: return "rfm";
        case Method::RfmJl: return "rfm-jl";
        case Method::RfmFw: return "rfm-fw";
        case Method::RfmGiga: return "rfm-giga";
    }
    return "?";
}

bool is_coreset_method(Method m) { return m == Method::RfmFw || m == Method::RfmGiga; }

Task task_from_string(const std::string& s) {
    if (s == "frobenius") return Task::Frobenius;
    if (s == "classify") return Task::Classify;
    if (s == "both") return Task::Both;
    throw ConfigError("unknown task '" + s + "' (expected frobenius|classify|both)");
}

std::string to_string(Task t) {
    switch (t) {
        case Task::Frobenius: return "frobenius";
        case Task::Classify: return "classify";
        case Task::Both: return "both";
    }
    return "?";
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
    if (key == "train") {
        train_path = value;
    } else if (key == "test") {
        test_path = value;
    } else if (key == "kernel") {
        kernel.family = kernel_family_from_string(value);
    } else if (key == "gamma") {
        kernel.gamma = parse_real(key, value);
    } else if (key == "method") {
        method = method_from_string(value);
    } else if (key == "strategy") {
        sampling = sampling_kind_from_string(value);
    } else if (key == "scramble") {
        scramble = parse_bool(key, value);
    } else if (key == "jplus") {
        j_plus = static_cast<int>(parse_int(key, value));
    } else if (key == "j") {
        j_values.clear();
        for (const auto& tok : split(value, ','))
            j_values.push_back(static_cast<int>(parse_int(key, trim(tok))));
    } else if (key == "s") {
        s_pairs = parse_int(key, value);
    } else if (key == "trials") {
        trials = static_cast<int>(parse_int(key, value));
    } else if (key == "seed") {
        base_seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "task") {
        task = task_from_string(value);
    } else if (key == "svm_c") {
        svm_c = parse_real(key, value);
    } else if (key == "svm_tol") {
        svm_tol = parse_real(key, value);
    } else if (key == "ridge_lambda") {
        ridge_lambda = parse_real(key, value);
    } else if (key == "frobenius_m") {
        frobenius_m = parse_int(key, value);
    } else if (key == "timing") {
        timing = parse_bool(key, value);
    } else if (key == "threads") {
        threads = static_cast<int>(parse_int(key, value));
    } else if (key == "dim") {
        dim = static_cast<int>(parse_int(key, value));
    } else if (key == "cv_gammas") {
        cv_gammas.clear();
        for (const auto& tok : split(value, ',')) cv_gammas.push_back(parse_real(key, trim(tok)));
    } else if (key == "cv_cs") {
        cv_cs.clear();
        for (const auto& tok : split(value, ',')) cv_cs.push_back(parse_real(key, trim(tok)));
    } else if (key == "cv_folds") {
        cv_folds = static_cast<int>(parse_int(key, value));
    } else if (key == "cv_subsample") {
        cv_subsample = parse_int(key, value);
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

void ExperimentConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
}

void ExperimentConfig::validate() const {
    kernel.validate();
    if (j_plus < 1) throw ConfigError("jplus must be >= 1");
    if (j_values.empty()) throw ConfigError("at least one J value is required");
    for (int j : j_values) {
        if (j < 1) throw ConfigError("J values must be >= 1");
        if (j > j_plus) throw ConfigError("J must not exceed jplus");
    }
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (is_coreset_method(method) && s_pairs < 1)
        throw ConfigError("coreset methods need s >= 1");
    if (!(svm_c > 0.0)) throw ConfigError("svm_c must be positive");
    if (!(svm_tol > 0.0)) throw ConfigError("svm_tol must be positive");
    if (!(ridge_lambda > 0.0)) throw ConfigError("ridge_lambda must be positive");
    if (frobenius_m < 0) throw ConfigError("frobenius_m must be >= 0");
    if (threads < 1) throw ConfigError("threads must be >= 1");
    if (dim < 0) throw ConfigError("dim must be >= 0");
    if (cv_folds < 2) throw ConfigError("cv_folds must be >= 2");
    if (cv_subsample < 1) throw ConfigError("cv_subsample must be >= 1");
    if (cv_gammas.empty() || cv_cs.empty()) throw ConfigError("cv grids must be nonempty");
}

std::pair<Dataset, std::optional<Dataset>> load_datasets(const ExperimentConfig& config) {
    if (config.train_path.empty()) throw ConfigError("train dataset path is required");
    Dataset train = load_libsvm_file(config.train_path);
    std::optional<Dataset> test;
    if (!config.test_path.empty()) test = load_libsvm_file(config.test_path);

    int dim = std::max(train.dim(), test ? test->dim() : 0);
    if (config.dim > 0) {
        if (config.dim < dim) throw ConfigError("configured dim is below the data's max index");
        dim = config.dim;
    }
    if (dim == 0) dim = 1;  // featurization needs at least one input column
    train.set_dim(dim);
    if (test) test->set_dim(dim);
    return {std::move(train), std::move(test)};
}

namespace {

struct TrialSeeds {
    std::uint64_t trial = 0;
    std::uint64_t frequencies = 0;
    std::uint64_t pairs = 0;
    std::uint64_t jl = 0;
    std::uint64_t svm = 0;
    std::uint64_t frobenius = 0;
};

TrialSeeds seeds_for_trial(std::uint64_t base_seed, int t) {
    TrialSeeds s;
    s.trial = base_seed + static_cast<std::uint64_t>(t);
    s.frequencies = derive_stream(s.trial, kStreamFrequencies);
    s.pairs = derive_stream(s.trial, kStreamPairs);
    s.jl = derive_stream(s.trial, kStreamJl);
    s.svm = derive_stream(s.trial, kStreamSvm);
    s.frobenius = derive_stream(s.trial, kStreamFrobenius);
    return s;
}

FeatureMapParams map_prefix(const FeatureMapParams& params, int j) {
    return FeatureMapParams{params.omega.topRows(j), params.b.head(j)};
}

std::int64_t resolve_frobenius_m(const ExperimentConfig& config, const Dataset& train) {
    std::int64_t m = config.frobenius_m;
    if (m == 0) m = std::min<std::int64_t>(train.num_rows(), 10000);
    if (m > train.num_rows())
        throw ConfigError("frobenius_m exceeds the number of training rows");
    return m;
}

std::vector<double> labels_of(const Dataset& d) {
    return d.labels();
}

// Evaluates the configured metrics for one (trial, J) and fills the row.
void evaluate_row(const ExperimentConfig& config, const Dataset& train, const Dataset* test,
                  const FeatureSource& train_source, const FeatureSource* test_source,
                  const TrialSeeds& seeds, ResultRow& row) {
    const bool want_frob = config.task == Task::Frobenius || config.task == Task::Both;
    const bool want_acc = config.task == Task::Classify || config.task == Task::Both;

    if (want_frob) {
        TimedSource timed(train_source, row.t_featurize_ms);
        std::int64_t m = resolve_frobenius_m(config, train);
        row.rel_frob_error =
            estimate_frobenius_error(train, timed, config.kernel, m, seeds.frobenius)
                .relative_error;
    }

    if (want_acc) {
        if (test == nullptr || test_source == nullptr)
            throw ConfigError("classification requires a test dataset");
        if (!train.has_labels() || !test->has_labels())
            throw ConfigError("classification requires labeled data");

        std::vector<std::int64_t> train_idx(static_cast<std::size_t>(train.num_rows()));
        for (std::size_t i = 0; i < train_idx.size(); ++i)
            train_idx[i] = static_cast<std::int64_t>(i);
        std::vector<std::int64_t> test_idx(static_cast<std::size_t>(test->num_rows()));
        for (std::size_t i = 0; i < test_idx.size(); ++i)
            test_idx[i] = static_cast<std::int64_t>(i);

        auto t0 = Clock::now();
        FeatureMatrix Ztrain = train_source.rows(train_idx);
        FeatureMatrix Ztest = test_source->rows(test_idx);
        row.t_featurize_ms += ms_since(t0);

        t0 = Clock::now();
        SvmModel model =
            svm_fit(Ztrain, labels_of(train), config.svm_c, config.svm_tol, seeds.svm);
        row.t_train_ms += ms_since(t0);
        row.test_accuracy = svm_accuracy(model, Ztest, labels_of(*test));
    }
}

std::vector<ResultRow> run_trial(const ExperimentConfig& config, const Dataset& train,
                                 const Dataset* test, int trial) {
    const TrialSeeds seeds = seeds_for_trial(config.base_seed, trial);
    const SamplingStrategy strategy{config.sampling, seeds.frequencies, config.scramble};
    const int p = train.dim();

    std::vector<int> j_sorted = config.j_values;
    std::sort(j_sorted.begin(), j_sorted.end());
    j_sorted.erase(std::unique(j_sorted.begin(), j_sorted.end()), j_sorted.end());

    std::vector<ResultRow> rows;

    auto base_row = [&](int j) {
        ResultRow row;
        row.method = to_string(config.method);
        row.j_plus = config.j_plus;
        row.j = j;
        row.seed = seeds.trial;
        row.s_pairs = is_coreset_method(config.method) ? config.s_pairs : 0;
        return row;
    };

    switch (config.method) {
        case Method::Rfm: {
            // One draw of the largest map; smaller J reuse its prefix, which
            // is exactly the counter-based stream's j-th row either way.
            auto t0 = Clock::now();
            FeatureMapParams full =
                make_feature_map(config.kernel, strategy, j_sorted.back(), p);
            double sample_ms = ms_since(t0);
            for (int j : j_sorted) {
                ResultRow row = base_row(j);
                row.j_effective = j;
                FeatureMapParams params = map_prefix(full, j);
                row.t_featurize_ms += sample_ms * (static_cast<double>(j) / j_sorted.back());
                RfmSource train_source(train, params);
                std::optional<RfmSource> test_source;
                if (test) test_source.emplace(*test, params);
                evaluate_row(config, train, test, train_source,
                             test_source ? &*test_source : nullptr, seeds, row);
                rows.push_back(std::move(row));
            }
            break;
        }
        case Method::RfmJl: {
            auto t0 = Clock::now();
            FeatureMapParams full = make_feature_map(config.kernel, strategy, config.j_plus, p);
            double sample_ms = ms_since(t0);
            for (int j : j_sorted) {
                ResultRow row = base_row(j);
                row.j_effective = j;
                row.t_featurize_ms += sample_ms;
                auto tc = Clock::now();
                JlProjector proj(derive_stream(seeds.jl, static_cast<std::uint64_t>(j)), j,
                                 config.j_plus);
                row.t_compress_ms += ms_since(tc);
                JlSource train_source(train, full, proj);
                std::optional<JlSource> test_source;
                if (test) test_source.emplace(*test, full, proj);
                evaluate_row(config, train, test, train_source,
                             test_source ? &*test_source : nullptr, seeds, row);
                rows.push_back(std::move(row));
            }
            break;
        }
        case Method::RfmFw:
        case Method::RfmGiga: {
            auto t0 = Clock::now();
            FeatureMapParams full = make_feature_map(config.kernel, strategy, config.j_plus, p);
            double sample_ms = ms_since(t0);

            auto tc = Clock::now();
            PairSample ps = sample_pairs(train.num_rows(), config.s_pairs, seeds.pairs);
            CoresetProblem cp = build_problem(train, full, ps);
            double build_ms = ms_since(tc);

            SolveOptions opt;
            opt.iterations = j_sorted.back();
            opt.snapshot_iters = j_sorted;
            std::vector<double> snap_ms(j_sorted.size(),
                                        std::numeric_limits<double>::quiet_NaN());
            auto ts = Clock::now();
            opt.on_iterate = [&](int iter, const WeightVector&) {
                auto it = std::lower_bound(j_sorted.begin(), j_sorted.end(), iter);
                if (it != j_sorted.end() && *it == iter)
                    snap_ms[static_cast<std::size_t>(it - j_sorted.begin())] = ms_since(ts);
            };
            CoresetSolver solver = config.method == Method::RfmFw ? CoresetSolver::FrankWolfe
                                                                  : CoresetSolver::Giga;
            SolveResult solved = solve_coreset(cp, solver, opt);
            double total_solve_ms = ms_since(ts);
            for (double& v : snap_ms)
                if (std::isnan(v)) v = total_solve_ms;  // converged before this J

            for (std::size_t k = 0; k < j_sorted.size(); ++k) {
                ResultRow row = base_row(j_sorted[k]);
                const WeightVector& w = solved.snapshots[k];
                row.j_effective = w.support_size();
                row.t_featurize_ms += sample_ms;
                row.t_compress_ms += build_ms + snap_ms[k];
                CompressedMap cm = make_compressed_map(full, config.kernel, w);
                CompressedSource train_source(train, cm);
                std::optional<CompressedSource> test_source;
                if (test) test_source.emplace(*test, cm);
                evaluate_row(config, train, test, train_source,
                             test_source ? &*test_source : nullptr, seeds, row);
                rows.push_back(std::move(row));
            }
            break;
        }
    }

    if (!config.timing) {
        for (ResultRow& row : rows) {
            row.t_featurize_ms = 0.0;
            row.t_compress_ms = 0.0;
            row.t_train_ms = 0.0;
        }
    }
    return rows;
}

void sort_rows(std::vector<ResultRow>& rows) {
    std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        if (a.method != b.method) return a.method < b.method;
        if (a.j != b.j) return a.j < b.j;
        if (a.seed != b.seed) return a.seed < b.seed;
        return a.s_pairs < b.s_pairs;
    });
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& config, const Dataset& train,
                                      const Dataset* test) {
    config.validate();
    if (train.num_rows() < 1) throw ConfigError("training dataset is empty");
    if (is_coreset_method(config.method) && train.num_rows() < 2)
        throw ConfigError("coreset compression needs at least two rows");

    std::vector<std::vector<ResultRow>> per_trial(static_cast<std::size_t>(config.trials));
    const int workers = std::min(config.threads, config.trials);
    if (workers <= 1) {
        for (int t = 0; t < config.trials; ++t)
            per_trial[static_cast<std::size_t>(t)] = run_trial(config, train, test, t);
    } else {
        std::mutex mu;
        std::exception_ptr first_error;
        int next = 0;
        auto worker = [&]() {
            for (;;) {
                int t;
                {
                    std::lock_guard<std::mutex> lock(mu);
                    if (next >= config.trials || first_error) return;
                    t = next++;
                }
                try {
                    auto rows = run_trial(config, train, test, t);
                    std::lock_guard<std::mutex> lock(mu);
                    per_trial[static_cast<std::size_t>(t)] = std::move(rows);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    std::vector<ResultRow> rows;
    for (auto& tr : per_trial)
        for (auto& row : tr) rows.push_back(std::move(row));
    sort_rows(rows);
    return rows;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
    auto [train, test] = load_datasets(config);
    return run_experiment(config, train, test ? &*test : nullptr);
}

std::vector<ResultRow> sweep_s(const ExperimentConfig& config,
                               const std::vector<std::int64_t>& s_values, const Dataset& train,
                               const Dataset* test) {
    if (s_values.empty()) throw ConfigError("sweep-s needs at least one S value");
    std::vector<ResultRow> rows;
    for (std::int64_t s : s_values) {
        ExperimentConfig c = config;
        c.s_pairs = s;
        auto part = run_experiment(c, train, test);
        rows.insert(rows.end(), std::make_move_iterator(part.begin()),
                    std::make_move_iterator(part.end()));
    }
    sort_rows(rows);
    return rows;
}

std::vector<ResultRow> sweep_s(const ExperimentConfig& config,
                               const std::vector<std::int64_t>& s_values) {
    auto [train, test] = load_datasets(config);
    return sweep_s(config, s_values, train, test ? &*test : nullptr);
}

namespace {

void append_csv_real(std::string& out, const std::optional<double>& v) {
    if (v) {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%.6g", *v);
        out += buf;
    }
}

}  // namespace

std::string emit_csv(const std::vector<ResultRow>& rows) {
    std::string out =
        "method,j_plus,j,j_effective,s_pairs,seed,rel_frob_error,test_accuracy,"
        "t_featurize_ms,t_compress_ms,t_train_ms\n";
    char buf[128];
    for (const ResultRow& row : rows) {
        out += row.method;
        std::snprintf(buf, sizeof(buf), ",%d,%d,%d,%lld,%llu,", row.j_plus, row.j,
                      row.j_effective, static_cast<long long>(row.s_pairs),
                      static_cast<unsigned long long>(row.seed));
        out += buf;
        append_csv_real(out, row.rel_frob_error);
        out += ',';
        append_csv_real(out, row.test_accuracy);
        for (double t : {row.t_featurize_ms, row.t_compress_ms, row.t_train_ms}) {
            out += ',';
            append_csv_real(out, t);
        }
        out += '\n';
    }
    return out;
}

CompressedMap compress_map(const ExperimentConfig& config, const Dataset& train) {
    config.validate();
    if (!is_coreset_method(config.method))
        throw ConfigError("compress requires method rfm-fw or rfm-giga");
    if (train.num_rows() < 2) throw ConfigError("coreset compression needs at least two rows");

    const TrialSeeds seeds = seeds_for_trial(config.base_seed, 0);
    const SamplingStrategy strategy{config.sampling, seeds.frequencies, config.scramble};
    FeatureMapParams full =
        make_feature_map(config.kernel, strategy, config.j_plus, train.dim());
    PairSample ps = sample_pairs(train.num_rows(), config.s_pairs, seeds.pairs);
    CoresetProblem cp = build_problem(train, full, ps);
    const int iterations = config.j_values.front();
    WeightVector w = config.method == Method::RfmFw ? frank_wolfe(cp, iterations)
                                                    : giga(cp, iterations);
    return make_compressed_map(full, config.kernel, w);
}

std::vector<CvCell> run_cv(const ExperimentConfig& config, const Dataset& train) {
    config.validate();
    if (!train.has_labels()) throw ConfigError("cv requires labeled data");

    const std::uint64_t cv_seed = derive_stream(config.base_seed, kStreamCv);
    const std::int64_t n = std::min<std::int64_t>(config.cv_subsample, train.num_rows());
    if (n < config.cv_folds) throw ConfigError("cv subsample smaller than fold count");

    // Shuffled subsample; fold f takes every cv_folds-th row.
    std::vector<std::int64_t> idx(static_cast<std::size_t>(train.num_rows()));
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<std::int64_t>(i);
    SequentialRng rng(cv_seed);
    rng.shuffle(idx);
    idx.resize(static_cast<std::size_t>(n));

    const int j = config.j_values.front();
    std::vector<CvCell> cells;
    for (double gamma : config.cv_gammas) {
        KernelSpec spec{config.kernel.family, gamma};
        spec.validate();
        SamplingStrategy strategy{config.sampling, derive_stream(cv_seed, 0xA11CE),
                                  config.scramble};
        FeatureMapParams params = make_feature_map(spec, strategy, j, train.dim());
        FeatureMatrix Z = featurize_rows(params, train.dense_rows(idx));

        for (double c : config.cv_cs) {
            if (!(c > 0.0)) throw ConfigError("cv_cs values must be positive");
            double acc_sum = 0.0;
            for (int fold = 0; fold < config.cv_folds; ++fold) {
                std::vector<std::int64_t> hold, keep;
                for (std::int64_t i = 0; i < n; ++i)
                    (i % config.cv_folds == fold ? hold : keep).push_back(i);
                FeatureMatrix Ztr(static_cast<Eigen::Index>(keep.size()), Z.cols());
                FeatureMatrix Zho(static_cast<Eigen::Index>(hold.size()), Z.cols());
                std::vector<double> ytr, yho;
                for (std::size_t i = 0; i < keep.size(); ++i) {
                    Ztr.row(static_cast<Eigen::Index>(i)) = Z.row(keep[i]);
                    ytr.push_back(train.label(idx[static_cast<std::size_t>(keep[i])]));
                }
                for (std::size_t i = 0; i < hold.size(); ++i) {
                    Zho.row(static_cast<Eigen::Index>(i)) = Z.row(hold[i]);
                    yho.push_back(train.label(idx[static_cast<std::size_t>(hold[i])]));
                }
                SvmModel model = svm_fit(Ztr, ytr, c, config.svm_tol,
                                         derive_stream(cv_seed, static_cast<std::uint64_t>(fold)));
                acc_sum += svm_accuracy(model, Zho, yho);
            }
            cells.push_back({gamma, c, acc_sum / config.cv_folds});
        }
    }
    return cells;
}

std::string emit_cv_csv(const std::vector<CvCell>& cells) {
    std::string out = "gamma,c,accuracy\n";
    char buf[96];
    for (const CvCell& cell : cells) {
        std::snprintf(buf, sizeof(buf), "%.6g,%.6g,%.6g\n", cell.gamma, cell.c, cell.accuracy);
        out += buf;
    }
    return out;
}

}  // namespace rfc
