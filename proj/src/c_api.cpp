#include "upcm/upcm_c.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <new>
#include <string>

#include "upcm/apcm.hpp"
#include "upcm/assignment.hpp"
#include "upcm/dataset.hpp"
#include "upcm/fcm.hpp"
#include "upcm/fuzzy.hpp"
#include "upcm/harness.hpp"
#include "upcm/pcm.hpp"
#include "upcm/unified.hpp"

struct upcm_dataset {
    upcm::DataMatrix data;
};

struct upcm_model {
    upcm::ClusterModel model;
};

struct upcm_sweep {
    upcm::SweepResult result;
};

namespace {

thread_local std::string last_error;

upcm_status status_of(upcm::ErrorKind kind) {
    switch (kind) {
        case upcm::ErrorKind::InvalidArgument: return UPCM_ERR_INVALID_ARGUMENT;
        case upcm::ErrorKind::DegenerateData: return UPCM_ERR_DEGENERATE_DATA;
        case upcm::ErrorKind::TotalElimination: return UPCM_ERR_TOTAL_ELIMINATION;
        case upcm::ErrorKind::Parse: return UPCM_ERR_PARSE;
        case upcm::ErrorKind::Io: return UPCM_ERR_IO;
    }
    return UPCM_ERR_INTERNAL;
}

template <class Fn>
upcm_status guarded(Fn&& fn) {
    try {
        fn();
        return UPCM_OK;
    } catch (const upcm::Error& e) {
        last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return UPCM_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return UPCM_ERR_INTERNAL;
    }
}

void need(const void* pointer, const char* what) {
    if (pointer == nullptr) {
        upcm::fail(upcm::ErrorKind::InvalidArgument, std::string(what) + " must not be null");
    }
}

upcm::Algorithm to_algorithm(upcm_algorithm algorithm) {
    switch (algorithm) {
        case UPCM_ALGO_FCM: return upcm::Algorithm::Fcm;
        case UPCM_ALGO_PCM: return upcm::Algorithm::Pcm;
        case UPCM_ALGO_APCM: return upcm::Algorithm::Apcm;
        case UPCM_ALGO_UPCM: return upcm::Algorithm::Upcm;
    }
    upcm::fail(upcm::ErrorKind::InvalidArgument, "unknown algorithm code");
}

upcm::CutRule to_cut_rule(upcm_cut_rule rule) {
    switch (rule) {
        case UPCM_CUT_DIRECT: return upcm::CutRule::Direct;
        case UPCM_CUT_EXP_NEG: return upcm::CutRule::ExpNeg;
    }
    upcm::fail(upcm::ErrorKind::InvalidArgument, "unknown cut rule code");
}

upcm::ClusterModel run_single(const upcm::Matrix& points, const upcm_config& c) {
    upcm::FcmConfig fcm;
    fcm.clusters = c.m_ini;
    fcm.fuzzifier = c.fcm_fuzzifier;
    fcm.tol = c.fcm_tol;
    fcm.max_iter = c.fcm_max_iter;
    fcm.seed = c.seed;

    switch (to_algorithm(c.algorithm)) {
        case upcm::Algorithm::Fcm: {
            auto result = upcm::fcm_cluster(points, fcm);
            upcm::ClusterModel model;
            model.algorithm = upcm::Algorithm::Fcm;
            model.initial_clusters = c.m_ini;
            model.bandwidths = upcm::init_eta(points, result);
            model.labels = upcm::argmax_labels(result.memberships);
            model.iterations = result.iterations;
            model.converged = result.converged;
            model.objective = result.objective.empty() ? 0.0 : result.objective.back();
            for (std::size_t j = 0; j < c.m_ini; ++j) {
                model.cluster_ids.push_back(j);
            }
            model.prototypes = std::move(result.prototypes);
            model.memberships = std::move(result.memberships);
            return model;
        }
        case upcm::Algorithm::Pcm: {
            auto init = upcm::fcm_cluster(points, fcm);
            const auto gamma = upcm::init_gamma_pcm(points, init);
            return upcm::pcm_run(points, init.prototypes, gamma, {c.tol, c.max_iter});
        }
        case upcm::Algorithm::Apcm: {
            upcm::ApcmConfig config;
            config.m_ini = c.m_ini;
            config.alpha = c.alpha_apcm;
            config.tol = c.tol;
            config.max_iter = c.max_iter;
            config.seed = c.seed;
            config.fcm = fcm;
            return upcm::apcm_run(points, config);
        }
        case upcm::Algorithm::Upcm: {
            upcm::UpcmConfig config;
            config.m_ini = c.m_ini;
            config.alpha = c.alpha;
            config.sigma_v = c.sigma_v;
            config.cut_rule = to_cut_rule(c.cut_rule);
            config.tol = c.tol;
            config.max_iter = c.max_iter;
            config.seed = c.seed;
            config.fcm = fcm;
            return upcm::upcm_run(points, config);
        }
    }
    upcm::fail(upcm::ErrorKind::InvalidArgument, "unknown algorithm");
}

}  // namespace

extern "C" {

const char* upcm_last_error(void) { return last_error.c_str(); }

const char* upcm_status_name(upcm_status status) {
    switch (status) {
        case UPCM_OK: return "ok";
        case UPCM_ERR_INVALID_ARGUMENT: return "invalid argument";
        case UPCM_ERR_DEGENERATE_DATA: return "degenerate data";
        case UPCM_ERR_TOTAL_ELIMINATION: return "total elimination";
        case UPCM_ERR_PARSE: return "parse error";
        case UPCM_ERR_IO: return "i/o error";
        case UPCM_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

upcm_status upcm_dataset_generate_preset(const char* name, uint64_t seed, upcm_dataset** out) {
    return guarded([&] {
        need(name, "preset name");
        need(out, "output handle");
        *out = new upcm_dataset{upcm::generate_gaussian_mixture(upcm::preset_spec(name, seed))};
    });
}

upcm_status upcm_dataset_generate(size_t n_components, size_t dim, const double* means, const double* stddevs,
                                  const size_t* counts, uint64_t seed, upcm_dataset** out) {
    return guarded([&] {
        need(out, "output handle");
        upcm::GeneratorSpec spec;
        spec.seed = seed;
        if (n_components > 0) {
            need(means, "means");
            need(stddevs, "stddevs");
            need(counts, "counts");
        }
        for (size_t k = 0; k < n_components; ++k) {
            spec.components.push_back({std::vector<double>(means + k * dim, means + (k + 1) * dim), stddevs[k],
                                       counts[k]});
        }
        *out = new upcm_dataset{upcm::generate_gaussian_mixture(spec)};
    });
}

upcm_status upcm_dataset_from_points(const double* points, size_t n, size_t dim, upcm_dataset** out) {
    return guarded([&] {
        need(points, "points");
        need(out, "output handle");
        upcm::require(n >= 1 && dim >= 1, "dataset needs at least one point and one dimension");
        *out = new upcm_dataset{{upcm::Matrix(n, dim, std::vector<double>(points, points + n * dim)), {}}};
    });
}

upcm_status upcm_dataset_load(const char* path, upcm_dataset** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "output handle");
        *out = new upcm_dataset{upcm::load_points(path)};
    });
}

upcm_status upcm_dataset_save(const upcm_dataset* dataset, const char* path) {
    return guarded([&] {
        need(dataset, "dataset");
        need(path, "path");
        upcm::save_points(dataset->data, path);
    });
}

size_t upcm_dataset_size(const upcm_dataset* dataset) { return dataset ? dataset->data.size() : 0; }

size_t upcm_dataset_dim(const upcm_dataset* dataset) { return dataset ? dataset->data.dim() : 0; }

size_t upcm_dataset_truth_count(const upcm_dataset* dataset) {
    return dataset && dataset->data.truth ? dataset->data.truth->centers.rows() : 0;
}

upcm_status upcm_dataset_points(const upcm_dataset* dataset, double* out) {
    return guarded([&] {
        need(dataset, "dataset");
        need(out, "output buffer");
        const auto values = dataset->data.points.data();
        std::copy(values.begin(), values.end(), out);
    });
}

void upcm_dataset_free(upcm_dataset* dataset) { delete dataset; }

void upcm_config_init(upcm_config* config) {
    if (config == nullptr) {
        return;
    }
    config->algorithm = UPCM_ALGO_UPCM;
    config->m_ini = 10;
    config->alpha = 0.0;
    config->sigma_v = 0.0;
    config->cut_rule = UPCM_CUT_DIRECT;
    config->alpha_apcm = 1.0;
    config->tol = 1e-4;
    config->max_iter = 200;
    config->seed = 0;
    config->fcm_fuzzifier = 2.0;
    config->fcm_tol = 1e-6;
    config->fcm_max_iter = 300;
}

upcm_status upcm_cluster(const upcm_dataset* dataset, const upcm_config* config, upcm_model** out) {
    return guarded([&] {
        need(dataset, "dataset");
        need(config, "config");
        need(out, "output handle");
        *out = new upcm_model{run_single(dataset->data.points, *config)};
    });
}

size_t upcm_model_cluster_count(const upcm_model* model) { return model ? model->model.cluster_count() : 0; }

size_t upcm_model_dim(const upcm_model* model) { return model ? model->model.prototypes.cols() : 0; }

size_t upcm_model_iterations(const upcm_model* model) { return model ? model->model.iterations : 0; }

int upcm_model_converged(const upcm_model* model) { return model && model->model.converged ? 1 : 0; }

upcm_status upcm_model_prototypes(const upcm_model* model, double* out) {
    return guarded([&] {
        need(model, "model");
        need(out, "output buffer");
        const auto values = model->model.prototypes.data();
        std::copy(values.begin(), values.end(), out);
    });
}

upcm_status upcm_model_labels(const upcm_model* model, int* out) {
    return guarded([&] {
        need(model, "model");
        need(out, "output buffer");
        std::copy(model->model.labels.begin(), model->model.labels.end(), out);
    });
}

upcm_status upcm_model_center_error(const upcm_model* model, const upcm_dataset* dataset, double* out) {
    return guarded([&] {
        need(model, "model");
        need(dataset, "dataset");
        need(out, "output");
        upcm::require(dataset->data.truth && !dataset->data.truth->centers.empty(),
                      "dataset has no ground-truth centers");
        *out = upcm::center_estimation_error(model->model.prototypes, dataset->data.truth->centers);
    });
}

upcm_status upcm_model_to_json(const upcm_model* model, int include_memberships, char** out) {
    return guarded([&] {
        need(model, "model");
        need(out, "output");
        const std::string text = upcm::to_json(model->model, include_memberships != 0).dump(2);
        char* copy = new char[text.size() + 1];
        std::memcpy(copy, text.c_str(), text.size() + 1);
        *out = copy;
    });
}

void upcm_model_free(upcm_model* model) { delete model; }

void upcm_string_free(char* text) { delete[] text; }

upcm_status upcm_sweep_default_axes(const upcm_dataset* dataset, upcm_algorithm algorithm, double* alpha_values,
                                    size_t* n_alpha, double* sigma_v_values, size_t* n_sigma_v) {
    return guarded([&] {
        need(dataset, "dataset");
        need(alpha_values, "alpha buffer");
        need(n_alpha, "alpha count");
        need(sigma_v_values, "sigma_v buffer");
        need(n_sigma_v, "sigma_v count");
        const auto algo = to_algorithm(algorithm);
        upcm::SweepSpec spec;
        if (algo == upcm::Algorithm::Upcm) {
            spec = upcm::default_upcm_sweep(dataset->data, 1, {0});
        } else if (algo == upcm::Algorithm::Apcm) {
            spec = upcm::default_apcm_sweep(1, {0});
        } else {
            upcm::fail(upcm::ErrorKind::InvalidArgument, "sweeps support the upcm and apcm algorithms");
        }
        std::copy(spec.alpha_values.begin(), spec.alpha_values.end(), alpha_values);
        std::copy(spec.sigma_v_values.begin(), spec.sigma_v_values.end(), sigma_v_values);
        *n_alpha = spec.alpha_values.size();
        *n_sigma_v = spec.sigma_v_values.size();
    });
}

upcm_status upcm_sweep_run(const upcm_dataset* dataset, const upcm_sweep_spec* spec, upcm_sweep** out) {
    return guarded([&] {
        need(dataset, "dataset");
        need(spec, "sweep spec");
        need(out, "output handle");
        need(spec->alpha_values, "alpha values");
        need(spec->sigma_v_values, "sigma_v values");
        need(spec->seeds, "seeds");
        upcm::SweepSpec s;
        s.algorithm = to_algorithm(spec->algorithm);
        s.m_ini = spec->m_ini;
        s.cut_rule = to_cut_rule(spec->cut_rule);
        s.tol = spec->tol;
        s.max_iter = spec->max_iter;
        s.alpha_values.assign(spec->alpha_values, spec->alpha_values + spec->n_alpha);
        s.sigma_v_values.assign(spec->sigma_v_values, spec->sigma_v_values + spec->n_sigma_v);
        s.seeds.assign(spec->seeds, spec->seeds + spec->n_seeds);
        s.jobs = spec->jobs;
        *out = new upcm_sweep{upcm::run_sweep(dataset->data, s)};
    });
}

upcm_status upcm_sweep_load(const char* json_path, upcm_sweep** out) {
    return guarded([&] {
        need(json_path, "path");
        need(out, "output handle");
        *out = new upcm_sweep{upcm::load_sweep(json_path)};
    });
}

size_t upcm_sweep_cell_count(const upcm_sweep* sweep) { return sweep ? sweep->result.cells.size() : 0; }

upcm_status upcm_sweep_cell_at(const upcm_sweep* sweep, size_t index, upcm_sweep_cell* out) {
    return guarded([&] {
        need(sweep, "sweep");
        need(out, "output");
        upcm::require(index < sweep->result.cells.size(), "cell index out of range");
        const auto& cell = sweep->result.cells[index];
        *out = upcm_sweep_cell{cell.alpha,      cell.sigma_v,         cell.seed,
                               cell.final_clusters, cell.center_error, cell.iterations,
                               cell.converged ? 1 : 0, cell.error.empty() ? 0 : 1};
    });
}

upcm_status upcm_sweep_emit_report(const upcm_sweep* sweep, const char* prefix) {
    return guarded([&] {
        need(sweep, "sweep");
        need(prefix, "prefix");
        upcm::emit_report(sweep->result, prefix);
    });
}

void upcm_sweep_free(upcm_sweep* sweep) { delete sweep; }

upcm_status upcm_marginal_curve_csv(double x0, double v0, const double* sigma_values, size_t n_sigma, double x_min,
                                    double x_max, size_t steps, const char* path) {
    return guarded([&] {
        need(sigma_values, "sigma values");
        upcm::require(n_sigma >= 1, "at least one sigma_v value is needed");
        const auto samples =
            upcm::fuzzy::marginal_curves(x0, v0, {sigma_values, n_sigma}, x_min, x_max, steps);
        std::ofstream file;
        std::ostream* out = &std::cout;
        if (path != nullptr && std::strcmp(path, "-") != 0) {
            file.open(path);
            if (!file) {
                upcm::fail(upcm::ErrorKind::Io, std::string("cannot open '") + path + "' for writing");
            }
            out = &file;
        }
        *out << "sigma_v,x,membership\n";
        for (const auto& s : samples) {
            *out << upcm::format_double(s.sigma_v) << ',' << upcm::format_double(s.x) << ','
                 << upcm::format_double(s.membership) << '\n';
        }
        out->flush();
        if (!*out) {
            upcm::fail(upcm::ErrorKind::Io, "failed writing the curve");
        }
    });
}

}  // extern "C"
