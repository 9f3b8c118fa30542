// Drives the rfc binary end to end: subcommands, flag overrides, output
// files, and the documented exit codes (0 ok, 1 config, 2 I/O).
// The binary path arrives as argv[1].

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string g_rfc;

int run(const std::string& args) {
    std::string cmd = g_rfc + " " + args + " >/tmp/rfc_cli_stdout 2>/tmp/rfc_cli_stderr";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string write_temp(const std::string& name, const std::string& text) {
    std::string path = "/tmp/rfc_cli_" + name;
    std::ofstream out(path);
    out << text;
    return path;
}

std::string make_blobs(int n, unsigned seed) {
    std::string text;
    unsigned state = seed;
    auto next = [&state]() {
        state = state * 1664525u + 1013904223u;
        return (state >> 8) * (1.0 / 16777216.0);
    };
    for (int i = 0; i < n; ++i) {
        int cls = i % 2;
        double cx = cls == 0 ? 1.5 : -1.5;
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%d 1:%.6f 2:%.6f 3:%.6f\n", cls == 0 ? 1 : -1,
                      cx + next() - 0.5, next() - 0.5, -cx + next() - 0.5);
        text += buf;
    }
    return text;
}

}  // namespace

TEST_CASE("eval emits csv and honors --out") {
    std::string train = write_temp("train.svm", make_blobs(100, 1));
    std::string test = write_temp("test.svm", make_blobs(50, 2));
    std::string out = "/tmp/rfc_cli_eval.csv";
    int rc = run("eval --train " + train + " --test " + test +
                 " --method rfm-giga --jplus 60 --j 10 --s 200 --task both "
                 "--frobenius-m 50 --seed 3 --timing 0 --out " + out);
    CHECK(rc == 0);
    std::string csv = slurp(out);
    CHECK(csv.rfind("method,", 0) == 0);
    CHECK(csv.find("rfm-giga") != std::string::npos);

    // Identical invocation reproduces identical bytes.
    std::string out2 = "/tmp/rfc_cli_eval2.csv";
    rc = run("eval --train " + train + " --test " + test +
             " --method rfm-giga --jplus 60 --j 10 --s 200 --task both "
             "--frobenius-m 50 --seed 3 --timing 0 --out " + out2);
    CHECK(rc == 0);
    CHECK(slurp(out2) == csv);
}

TEST_CASE("config file plus flag overrides") {
    std::string train = write_temp("cfg_train.svm", make_blobs(60, 5));
    std::string cfg = write_temp("run.cfg",
                                 "train = " + train + "\n" +
                                 "method = rfm\njplus = 30\nj = 30\n"
                                 "task = frobenius\nfrobenius_m = 40\ntiming = 0\n");
    std::string out = "/tmp/rfc_cli_cfg.csv";
    int rc = run("eval --config " + cfg + " --j 5 --out " + out);
    CHECK(rc == 0);
    std::string csv = slurp(out);
    CHECK(csv.find("rfm,30,5,5,") != std::string::npos);  // the flag won
}

TEST_CASE("compress writes a map file") {
    std::string train = write_temp("map_train.svm", make_blobs(80, 7));
    std::string map_path = "/tmp/rfc_cli_map.json";
    int rc = run("compress --train " + train +
                 " --method rfm-fw --jplus 40 --j 8 --s 150 --out " + map_path);
    CHECK(rc == 0);
    std::string map_text = slurp(map_path);
    CHECK(map_text.find("\"sqrt_w\"") != std::string::npos);
    CHECK(map_text.find("\"omega\"") != std::string::npos);

    // compress with a non-coreset method is a config error.
    rc = run("compress --train " + train + " --method rfm --jplus 40 --j 8 --out " + map_path);
    CHECK(rc == 1);
}

TEST_CASE("sweep-s and sweep-j emit one row per point") {
    std::string train = write_temp("sweep_train.svm", make_blobs(60, 9));
    std::string out = "/tmp/rfc_cli_sweep.csv";
    int rc = run("sweep-s --train " + train +
                 " --method rfm-giga --jplus 30 --j 6 --task frobenius --frobenius-m 40 "
                 "--timing 0 --s-values 50 --s-values 200 --out " + out);
    CHECK(rc == 0);
    std::string csv = slurp(out);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

    rc = run("sweep-j --train " + train +
             " --method rfm-fw --jplus 30 --j 4,8,16 --s 100 --task frobenius "
             "--frobenius-m 40 --timing 0 --out " + out);
    CHECK(rc == 0);
    csv = slurp(out);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("cv emits a grid") {
    std::string train = write_temp("cv_train.svm", make_blobs(90, 11));
    std::string out = "/tmp/rfc_cli_cv.csv";
    int rc = run("cv --train " + train +
                 " --jplus 30 --j 10 --cv-gammas 0.5,1 --cv-cs 1 --cv-folds 3 --out " + out);
    CHECK(rc == 0);
    std::string csv = slurp(out);
    CHECK(csv.rfind("gamma,c,accuracy\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("exit codes distinguish config and io errors") {
    std::string train = write_temp("err_train.svm", make_blobs(20, 13));
    // Missing training file: I/O error, exit 2.
    CHECK(run("eval --train /missing/nowhere.svm --j 5 --jplus 10") == 2);
    // Malformed data file: also an input error, exit 2.
    std::string broken = write_temp("broken.svm", "1 junk:token\n");
    CHECK(run("eval --train " + broken + " --j 5 --jplus 10") == 2);
    // J > J+: config error, exit 1.
    CHECK(run("eval --train " + train + " --j 50 --jplus 10") == 1);
    // Unknown kernel: config error, exit 1.
    CHECK(run("eval --train " + train + " --kernel poly --j 5 --jplus 10") == 1);
    // Classification without a test set: config error, exit 1.
    CHECK(run("eval --train " + train + " --task classify --j 5 --jplus 10") == 1);
}

int main(int argc, char** argv) {
    if (argc > 1) g_rfc = argv[1];
    if (g_rfc.empty()) {
        std::fprintf(stderr, "usage: test_cli <path-to-rfc>\n");
        return 1;
    }
    doctest::Context ctx;
    return ctx.run();
}
