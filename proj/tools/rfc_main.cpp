// rfc -- command-line front end for the rfcompress shared library.
//
// Subcommands: compress, eval, sweep-s, sweep-j, cv. Options may come from
// a flat key=value config file (--config); explicit flags win.
//
// Exit codes: 0 success, 1 configuration error, 2 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rfcompress.h"

namespace {

struct Options {
    std::string config_path;
    std::string train, test, kernel, method, strategy, task;
    std::string gamma, jplus, j, s, trials, seed;
    std::string svm_c, svm_tol, frobenius_m, threads, timing, dim, scramble;
    std::string cv_gammas, cv_cs, cv_folds, cv_subsample;
    std::string out;
    std::vector<std::int64_t> s_values;
};

void add_common_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--config", opt.config_path, "flat key=value config file");
    cmd->add_option("--train", opt.train, "training set (LIBSVM text)");
    cmd->add_option("--test", opt.test, "test set (LIBSVM text)");
    cmd->add_option("--kernel", opt.kernel, "kernel family: rbf|laplace|cauchy");
    cmd->add_option("--gamma", opt.gamma, "kernel bandwidth");
    cmd->add_option("--method", opt.method, "rfm|rfm-jl|rfm-fw|rfm-giga");
    cmd->add_option("--strategy", opt.strategy, "frequency sampling: mc|halton");
    cmd->add_option("--scramble", opt.scramble, "scramble the Halton sequence (0|1)");
    cmd->add_option("--jplus", opt.jplus, "up-projection feature count J+");
    cmd->add_option("--j", opt.j, "compressed feature count(s), comma separated");
    cmd->add_option("--s", opt.s, "number of sampled datapoint pairs");
    cmd->add_option("--trials", opt.trials, "number of trials");
    cmd->add_option("--seed", opt.seed, "base seed");
    cmd->add_option("--task", opt.task, "frobenius|classify|both");
    cmd->add_option("--svm-c", opt.svm_c, "SVM penalty C");
    cmd->add_option("--svm-tol", opt.svm_tol, "SVM optimization tolerance");
    cmd->add_option("--frobenius-m", opt.frobenius_m, "rows sampled for the error estimate");
    cmd->add_option("--threads", opt.threads, "concurrent trials");
    cmd->add_option("--timing", opt.timing, "report wall times (0|1)");
    cmd->add_option("--dim", opt.dim, "force the feature dimension");
    cmd->add_option("--out", opt.out, "output file (default: stdout)");
}

int fail(rfc_status status) {
    std::cerr << "error: " << rfc_last_error() << "\n";
    return status == RFC_ERR_IO ? 2 : 1;
}

// Applies config file then flag overrides. Returns RFC_OK or the first error.
rfc_status build_config(const Options& opt, rfc_config* config) {
    rfc_status st = RFC_OK;
    auto apply = [&](const char* key, const std::string& value) {
        if (st == RFC_OK && !value.empty()) st = rfc_config_set(config, key, value.c_str());
    };
    if (!opt.config_path.empty()) {
        st = rfc_config_load(config, opt.config_path.c_str());
        if (st != RFC_OK) return st;
    }
    apply("train", opt.train);
    apply("test", opt.test);
    apply("kernel", opt.kernel);
    apply("gamma", opt.gamma);
    apply("method", opt.method);
    apply("strategy", opt.strategy);
    apply("scramble", opt.scramble);
    apply("jplus", opt.jplus);
    apply("j", opt.j);
    apply("s", opt.s);
    apply("trials", opt.trials);
    apply("seed", opt.seed);
    apply("task", opt.task);
    apply("svm_c", opt.svm_c);
    apply("svm_tol", opt.svm_tol);
    apply("frobenius_m", opt.frobenius_m);
    apply("threads", opt.threads);
    apply("timing", opt.timing);
    apply("dim", opt.dim);
    apply("cv_gammas", opt.cv_gammas);
    apply("cv_cs", opt.cv_cs);
    apply("cv_folds", opt.cv_folds);
    apply("cv_subsample", opt.cv_subsample);
    return st;
}

int write_output(const std::string& out_path, const char* text) {
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return 2;
    }
    out << text;
    return out ? 0 : 2;
}

int emit_results(const Options& opt, rfc_results* results) {
    int rc = write_output(opt.out, rfc_results_csv(results));
    rfc_results_free(results);
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random feature map compression toolkit"};
    app.require_subcommand(1);

    Options opt;
    CLI::App* cmd_compress =
        app.add_subcommand("compress", "fit feature weights and save the compressed map");
    CLI::App* cmd_eval = app.add_subcommand("eval", "run the configured experiment, emit CSV");
    CLI::App* cmd_sweep_s =
        app.add_subcommand("sweep-s", "rerun compression across pair-sample sizes");
    CLI::App* cmd_sweep_j = app.add_subcommand("sweep-j", "evaluate a list of J values");
    CLI::App* cmd_cv = app.add_subcommand("cv", "grid-search gamma and C on a subsample");

    for (CLI::App* cmd : {cmd_compress, cmd_eval, cmd_sweep_s, cmd_sweep_j, cmd_cv})
        add_common_flags(cmd, opt);
    cmd_sweep_s->add_option("--s-values", opt.s_values, "pair counts to sweep")->required();
    cmd_cv->add_option("--cv-gammas", opt.cv_gammas, "gamma grid, comma separated");
    cmd_cv->add_option("--cv-cs", opt.cv_cs, "C grid, comma separated");
    cmd_cv->add_option("--cv-folds", opt.cv_folds, "number of folds");
    cmd_cv->add_option("--cv-subsample", opt.cv_subsample, "rows used for the search");

    CLI11_PARSE(app, argc, argv);

    rfc_config* config = nullptr;
    rfc_status st = rfc_config_create(&config);
    if (st != RFC_OK) return fail(st);
    st = build_config(opt, config);
    if (st != RFC_OK) {
        rfc_config_free(config);
        return fail(st);
    }

    int rc = 0;
    if (cmd_compress->parsed()) {
        if (opt.out.empty()) {
            std::cerr << "error: compress requires --out\n";
            rc = 1;
        } else {
            rfc_map* map = nullptr;
            st = rfc_compress(config, &map);
            if (st == RFC_OK) {
                st = rfc_map_save(map, opt.out.c_str());
                if (st == RFC_OK)
                    std::cerr << "wrote " << rfc_map_features(map) << " weighted features to "
                              << opt.out << "\n";
                rfc_map_close(map);
            }
            if (st != RFC_OK) rc = fail(st);
        }
    } else if (cmd_eval->parsed() || cmd_sweep_j->parsed()) {
        rfc_results* results = nullptr;
        st = rfc_run(config, &results);
        rc = st == RFC_OK ? emit_results(opt, results) : fail(st);
    } else if (cmd_sweep_s->parsed()) {
        rfc_results* results = nullptr;
        st = rfc_sweep_s(config, opt.s_values.data(), static_cast<int>(opt.s_values.size()),
                         &results);
        rc = st == RFC_OK ? emit_results(opt, results) : fail(st);
    } else if (cmd_cv->parsed()) {
        rfc_results* results = nullptr;
        st = rfc_cv(config, &results);
        rc = st == RFC_OK ? emit_results(opt, results) : fail(st);
    }

    rfc_config_free(config);
    return rc;
}
