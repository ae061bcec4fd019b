// Command-line front end. Talks to the library exclusively through upcm_c.h.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "upcm/upcm_c.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct DatasetDeleter {
    void operator()(upcm_dataset* p) const { upcm_dataset_free(p); }
};
struct ModelDeleter {
    void operator()(upcm_model* p) const { upcm_model_free(p); }
};
struct SweepDeleter {
    void operator()(upcm_sweep* p) const { upcm_sweep_free(p); }
};
using DatasetPtr = std::unique_ptr<upcm_dataset, DatasetDeleter>;
using ModelPtr = std::unique_ptr<upcm_model, ModelDeleter>;
using SweepPtr = std::unique_ptr<upcm_sweep, SweepDeleter>;

class CommandFailed : public std::runtime_error {
public:
    explicit CommandFailed(const std::string& what) : std::runtime_error(what) {}
};

void check(upcm_status status, const std::string& context) {
    if (status != UPCM_OK) {
        throw CommandFailed(context + ": " + upcm_status_name(status) + ": " + upcm_last_error());
    }
}

DatasetPtr load_dataset(const std::string& path) {
    upcm_dataset* raw = nullptr;
    check(upcm_dataset_load(path.c_str(), &raw), "loading " + path);
    return DatasetPtr(raw);
}

upcm_algorithm algorithm_code(const std::string& name) {
    if (name == "fcm") return UPCM_ALGO_FCM;
    if (name == "pcm") return UPCM_ALGO_PCM;
    if (name == "apcm") return UPCM_ALGO_APCM;
    return UPCM_ALGO_UPCM;
}

upcm_cut_rule cut_rule_code(const std::string& name) {
    return name == "exp-neg" ? UPCM_CUT_EXP_NEG : UPCM_CUT_DIRECT;
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw CommandFailed("cannot open '" + path + "' for writing");
    }
    out << text << '\n';
    if (!out) {
        throw CommandFailed("failed writing '" + path + "'");
    }
}

struct GenerateOptions {
    std::string preset = "dataset1";
    std::uint64_t seed = 7;
    std::string output;
};

struct ClusterOptions {
    std::string algo = "upcm";
    std::string input;
    std::string output = "-";
    std::size_t m_ini = 10;
    double alpha = 0.0;
    double sigma_v = 0.0;
    std::string cut_rule = "direct";
    double alpha_apcm = 1.0;
    double tol = 1e-4;
    std::size_t max_iter = 200;
    std::uint64_t seed = 0;
    bool memberships = false;
};

struct SweepOptions {
    std::string algo = "upcm";
    std::string input;
    std::string output;
    std::size_t m_ini = 10;
    std::vector<double> alphas;
    std::vector<double> sigmas;
    std::string cut_rule = "direct";
    double tol = 1e-4;
    std::size_t max_iter = 200;
    std::vector<std::uint64_t> seeds;
    std::size_t jobs = 1;
};

struct CurveOptions {
    double x0 = 12.5;
    double v0 = 2.5;
    std::vector<double> sigmas{0.0, 0.5, 1.0, 2.0, 4.0};
    double x_min = 0.0;
    double x_max = 25.0;
    std::size_t steps = 250;
    std::string output = "-";
};

struct ReportOptions {
    std::string input;
    std::string output;
};

void run_generate(const GenerateOptions& o) {
    upcm_dataset* raw = nullptr;
    check(upcm_dataset_generate_preset(o.preset.c_str(), o.seed, &raw), "generating " + o.preset);
    DatasetPtr data(raw);
    check(upcm_dataset_save(data.get(), o.output.c_str()), "saving " + o.output);
}

void run_cluster(const ClusterOptions& o) {
    auto data = load_dataset(o.input);
    upcm_config config;
    upcm_config_init(&config);
    config.algorithm = algorithm_code(o.algo);
    config.m_ini = o.m_ini;
    config.alpha = o.alpha;
    config.sigma_v = o.sigma_v;
    config.cut_rule = cut_rule_code(o.cut_rule);
    config.alpha_apcm = o.alpha_apcm;
    config.tol = o.tol;
    config.max_iter = o.max_iter;
    config.seed = o.seed;

    upcm_model* raw = nullptr;
    check(upcm_cluster(data.get(), &config, &raw), "clustering");
    ModelPtr model(raw);
    if (!upcm_model_converged(model.get())) {
        std::cerr << "warning: stopped at the iteration cap without converging\n";
    }
    char* json = nullptr;
    check(upcm_model_to_json(model.get(), o.memberships ? 1 : 0, &json), "serialising the model");
    std::string text(json);
    upcm_string_free(json);
    write_text(o.output, text);
}

void run_sweep(SweepOptions o) {
    auto data = load_dataset(o.input);
    const auto algo = algorithm_code(o.algo);
    if (o.alphas.empty() || o.sigmas.empty()) {
        std::vector<double> alphas(32), sigmas(32);
        std::size_t n_alpha = 0, n_sigma = 0;
        check(upcm_sweep_default_axes(data.get(), algo, alphas.data(), &n_alpha, sigmas.data(), &n_sigma),
              "default sweep axes");
        if (o.alphas.empty()) {
            o.alphas.assign(alphas.begin(), alphas.begin() + static_cast<std::ptrdiff_t>(n_alpha));
        }
        if (o.sigmas.empty()) {
            o.sigmas.assign(sigmas.begin(), sigmas.begin() + static_cast<std::ptrdiff_t>(n_sigma));
        }
    }

    upcm_sweep_spec spec{};
    spec.algorithm = algo;
    spec.m_ini = o.m_ini;
    spec.cut_rule = cut_rule_code(o.cut_rule);
    spec.tol = o.tol;
    spec.max_iter = o.max_iter;
    spec.alpha_values = o.alphas.data();
    spec.n_alpha = o.alphas.size();
    spec.sigma_v_values = o.sigmas.data();
    spec.n_sigma_v = o.sigmas.size();
    spec.seeds = o.seeds.data();
    spec.n_seeds = o.seeds.size();
    spec.jobs = o.jobs;

    upcm_sweep* raw = nullptr;
    check(upcm_sweep_run(data.get(), &spec, &raw), "sweeping");
    SweepPtr sweep(raw);
    std::size_t failed = 0;
    for (std::size_t k = 0; k < upcm_sweep_cell_count(sweep.get()); ++k) {
        upcm_sweep_cell cell;
        check(upcm_sweep_cell_at(sweep.get(), k, &cell), "reading cells");
        failed += cell.failed ? 1 : 0;
    }
    if (failed) {
        std::cerr << failed << " of " << upcm_sweep_cell_count(sweep.get()) << " cells failed\n";
    }
    check(upcm_sweep_emit_report(sweep.get(), o.output.c_str()), "writing the report");
}

void run_curve(const CurveOptions& o) {
    check(upcm_marginal_curve_csv(o.x0, o.v0, o.sigmas.data(), o.sigmas.size(), o.x_min, o.x_max, o.steps,
                                  o.output.c_str()),
          "marginal curve");
}

void run_report(const ReportOptions& o) {
    upcm_sweep* raw = nullptr;
    check(upcm_sweep_load(o.input.c_str(), &raw), "loading " + o.input);
    SweepPtr sweep(raw);
    check(upcm_sweep_emit_report(sweep.get(), o.output.c_str()), "writing the report");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Possibilistic c-means clustering (PCM / APCM / UPCM) and experiment sweeps"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    GenerateOptions gen;
    auto* generate = app.add_subcommand("generate", "Generate a preset Gaussian-mixture data set");
    generate->add_option("--preset", gen.preset, "Data set preset")
        ->check(CLI::IsMember({"dataset1", "dataset2"}));
    generate->add_option("--seed", gen.seed, "Generator seed");
    generate->add_option("-o,--output", gen.output, "Point CSV; the truth sidecar goes next to it")->required();

    ClusterOptions cl;
    auto* cluster = app.add_subcommand("cluster", "Run one clustering and write the model JSON");
    cluster->add_option("--algo", cl.algo, "Algorithm")->check(CLI::IsMember({"fcm", "pcm", "apcm", "upcm"}));
    cluster->add_option("-i,--input", cl.input, "Point CSV")->required();
    cluster->add_option("-o,--output", cl.output, "Model JSON path, '-' for stdout");
    cluster->add_option("--m-ini", cl.m_ini, "Initial number of clusters")->check(CLI::PositiveNumber);
    cluster->add_option("--alpha", cl.alpha, "UPCM noise level");
    cluster->add_option("--sigma-v", cl.sigma_v, "UPCM bandwidth uncertainty");
    cluster->add_option("--cut-rule", cl.cut_rule, "How alpha maps to a membership threshold")
        ->check(CLI::IsMember({"direct", "exp-neg"}));
    cluster->add_option("--alpha-apcm", cl.alpha_apcm, "APCM bandwidth scaling");
    cluster->add_option("--tol", cl.tol, "Convergence threshold on prototype displacement");
    cluster->add_option("--max-iter", cl.max_iter, "Iteration cap");
    cluster->add_option("--seed", cl.seed, "FCM initialisation seed");
    cluster->add_flag("--memberships", cl.memberships, "Include the membership matrix in the JSON");

    SweepOptions sw;
    auto* sweep = app.add_subcommand("sweep", "Run an (alpha, sigma_v) grid and write CSV/JSON reports");
    sweep->add_option("--algo", sw.algo, "Algorithm")->check(CLI::IsMember({"apcm", "upcm"}));
    sweep->add_option("-i,--input", sw.input, "Point CSV with truth sidecar")->required();
    sweep->add_option("-o,--output", sw.output, "Report prefix")->required();
    sweep->add_option("--m-ini", sw.m_ini, "Initial number of clusters")->check(CLI::PositiveNumber);
    sweep->add_option("--alpha", sw.alphas, "Alpha values")->delimiter(',')->default_str("built-in grid");
    sweep->add_option("--sigma-v", sw.sigmas, "sigma_v values")->delimiter(',')->default_str("built-in grid");
    sweep->add_option("--cut-rule", sw.cut_rule, "How alpha maps to a membership threshold")
        ->check(CLI::IsMember({"direct", "exp-neg"}));
    sweep->add_option("--tol", sw.tol, "Convergence threshold on prototype displacement");
    sweep->add_option("--max-iter", sw.max_iter, "Iteration cap");
    sweep->add_option("--seed", sw.seeds, "FCM seeds, one run per seed")->required()->delimiter(',')->default_str("");
    sweep->add_option("--jobs", sw.jobs, "Parallel cells")->check(CLI::PositiveNumber);

    CurveOptions cv;
    auto* curve = app.add_subcommand("marginal-curve", "Write marginal membership curves as CSV");
    curve->add_option("--x0", cv.x0, "Curve center");
    curve->add_option("--v0", cv.v0, "Estimated bandwidth")->check(CLI::PositiveNumber);
    curve->add_option("--sigma-v", cv.sigmas, "Bandwidth uncertainty values")->delimiter(',');
    curve->add_option("--x-min", cv.x_min, "Left end of the x range");
    curve->add_option("--x-max", cv.x_max, "Right end of the x range");
    curve->add_option("--steps", cv.steps, "Intervals over the x range")->check(CLI::PositiveNumber);
    curve->add_option("-o,--output", cv.output, "CSV path, '-' for stdout");

    ReportOptions rp;
    auto* report = app.add_subcommand("report", "Re-emit CSV/JSON reports from a sweep JSON");
    report->add_option("-i,--input", rp.input, "Sweep JSON")->required();
    report->add_option("-o,--output", rp.output, "Report prefix")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (generate->parsed()) {
            run_generate(gen);
        } else if (cluster->parsed()) {
            run_cluster(cl);
        } else if (sweep->parsed()) {
            run_sweep(sw);
        } else if (curve->parsed()) {
            run_curve(cv);
        } else if (report->parsed()) {
            run_report(rp);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitOk;
}
