#include "rfcompress.h"

#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "rfcompress/dataset.hpp"
#include "rfcompress/errors.hpp"
#include "rfcompress/features.hpp"
#include "rfcompress/harness.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

// Runs the body, translating exceptions to status codes.
template <typename Fn>
rfc_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return RFC_OK;
    } catch (const rfc::ConfigError& e) {
        set_error(e.what());
        return RFC_ERR_CONFIG;
    } catch (const rfc::IoError& e) {
        set_error(e.what());
        return RFC_ERR_IO;
    } catch (const rfc::ParseError& e) {
        set_error(e.what());
        return RFC_ERR_IO;
    } catch (const rfc::DegenerateError& e) {
        set_error(e.what());
        return RFC_ERR_DEGENERATE;
    } catch (const rfc::InvalidArgument& e) {
        set_error(e.what());
        return RFC_ERR_INVALID;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return RFC_ERR_INTERNAL;
    } catch (const std::exception& e) {
        set_error(e.what());
        return RFC_ERR_INTERNAL;
    }
}

rfc_status invalid(const char* msg) {
    set_error(msg);
    return RFC_ERR_INVALID;
}

}  // namespace

struct rfc_dataset {
    rfc::Dataset data;
};

struct rfc_config {
    rfc::ExperimentConfig config;
};

struct rfc_results {
    std::vector<rfc::ResultRow> rows;
    std::string csv;
    std::int64_t row_count = 0;
};

struct rfc_map {
    rfc::CompressedMap map;
};

namespace {

rfc_results* wrap_rows(std::vector<rfc::ResultRow> rows) {
    auto* r = new rfc_results();
    r->rows = std::move(rows);
    r->row_count = static_cast<std::int64_t>(r->rows.size());
    r->csv = rfc::emit_csv(r->rows);
    return r;
}

}  // namespace

extern "C" {

const char* rfc_version(void) { return "0.1.0"; }

const char* rfc_last_error(void) { return g_last_error.c_str(); }

rfc_status rfc_dataset_open(const char* path, rfc_dataset** out) {
    if (!path || !out) return invalid("rfc_dataset_open: null argument");
    return guarded([&] {
        auto handle = std::make_unique<rfc_dataset>();
        handle->data = rfc::load_libsvm_file(path);
        *out = handle.release();
    });
}

rfc_status rfc_dataset_parse(const char* text, rfc_dataset** out) {
    if (!text || !out) return invalid("rfc_dataset_parse: null argument");
    return guarded([&] {
        auto handle = std::make_unique<rfc_dataset>();
        handle->data = rfc::parse_libsvm(std::string_view(text));
        *out = handle.release();
    });
}

void rfc_dataset_close(rfc_dataset* d) { delete d; }

int64_t rfc_dataset_rows(const rfc_dataset* d) { return d ? d->data.num_rows() : -1; }

int rfc_dataset_dim(const rfc_dataset* d) { return d ? d->data.dim() : -1; }

rfc_status rfc_dataset_set_dim(rfc_dataset* d, int dim) {
    if (!d) return invalid("rfc_dataset_set_dim: null dataset");
    return guarded([&] { d->data.set_dim(dim); });
}

rfc_status rfc_config_create(rfc_config** out) {
    if (!out) return invalid("rfc_config_create: null output");
    return guarded([&] { *out = new rfc_config(); });
}

void rfc_config_free(rfc_config* c) { delete c; }

rfc_status rfc_config_set(rfc_config* c, const char* key, const char* value) {
    if (!c || !key || !value) return invalid("rfc_config_set: null argument");
    return guarded([&] { c->config.set(key, value); });
}

rfc_status rfc_config_load(rfc_config* c, const char* path) {
    if (!c || !path) return invalid("rfc_config_load: null argument");
    return guarded([&] { c->config.load_file(path); });
}

rfc_status rfc_run(const rfc_config* c, rfc_results** out) {
    if (!c || !out) return invalid("rfc_run: null argument");
    return guarded([&] { *out = wrap_rows(rfc::run_experiment(c->config)); });
}

rfc_status rfc_run_data(const rfc_config* c, const rfc_dataset* train, const rfc_dataset* test,
                        rfc_results** out) {
    if (!c || !train || !out) return invalid("rfc_run_data: null argument");
    return guarded([&] {
        *out = wrap_rows(
            rfc::run_experiment(c->config, train->data, test ? &test->data : nullptr));
    });
}

rfc_status rfc_sweep_s(const rfc_config* c, const int64_t* s_values, int count,
                       rfc_results** out) {
    if (!c || !s_values || !out) return invalid("rfc_sweep_s: null argument");
    if (count < 1) return invalid("rfc_sweep_s: need at least one S value");
    return guarded([&] {
        std::vector<std::int64_t> values(s_values, s_values + count);
        *out = wrap_rows(rfc::sweep_s(c->config, values));
    });
}

rfc_status rfc_cv(const rfc_config* c, rfc_results** out) {
    if (!c || !out) return invalid("rfc_cv: null argument");
    return guarded([&] {
        auto [train, test] = rfc::load_datasets(c->config);
        (void)test;
        auto cells = rfc::run_cv(c->config, train);
        auto* r = new rfc_results();
        r->row_count = static_cast<std::int64_t>(cells.size());
        r->csv = rfc::emit_cv_csv(cells);
        *out = r;
    });
}

int64_t rfc_results_rows(const rfc_results* r) { return r ? r->row_count : -1; }

const char* rfc_results_csv(const rfc_results* r) { return r ? r->csv.c_str() : ""; }

void rfc_results_free(rfc_results* r) { delete r; }

rfc_status rfc_compress(const rfc_config* c, rfc_map** out) {
    if (!c || !out) return invalid("rfc_compress: null argument");
    return guarded([&] {
        auto [train, test] = rfc::load_datasets(c->config);
        (void)test;
        auto* m = new rfc_map();
        m->map = rfc::compress_map(c->config, train);
        *out = m;
    });
}

rfc_status rfc_compress_data(const rfc_config* c, const rfc_dataset* train, rfc_map** out) {
    if (!c || !train || !out) return invalid("rfc_compress_data: null argument");
    return guarded([&] {
        auto* m = new rfc_map();
        m->map = rfc::compress_map(c->config, train->data);
        *out = m;
    });
}

rfc_status rfc_map_save(const rfc_map* m, const char* path) {
    if (!m || !path) return invalid("rfc_map_save: null argument");
    return guarded([&] { m->map.save(path); });
}

rfc_status rfc_map_open(const char* path, rfc_map** out) {
    if (!path || !out) return invalid("rfc_map_open: null argument");
    return guarded([&] {
        auto handle = std::make_unique<rfc_map>();
        handle->map = rfc::CompressedMap::load(path);
        *out = handle.release();
    });
}

void rfc_map_close(rfc_map* m) { delete m; }

int rfc_map_features(const rfc_map* m) { return m ? m->map.num_features() : -1; }

int rfc_map_input_dim(const rfc_map* m) { return m ? m->map.input_dim() : -1; }

rfc_status rfc_map_featurize(const rfc_map* m, const double* x, int p, double* out, int out_len) {
    if (!m || !x || !out) return invalid("rfc_map_featurize: null argument");
    return guarded([&] {
        if (p != m->map.input_dim())
            throw rfc::InvalidArgument("rfc_map_featurize: input dimension mismatch");
        if (out_len < m->map.num_features())
            throw rfc::InvalidArgument("rfc_map_featurize: output buffer too small");
        Eigen::Map<const Eigen::VectorXd> xv(x, p);
        Eigen::VectorXd z = rfc::featurize_compressed(m->map, xv);
        for (int i = 0; i < z.size(); ++i) out[i] = z[i];
    });
}

}  // extern "C"
