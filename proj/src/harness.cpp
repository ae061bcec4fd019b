#include "upcm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <thread>

#include "upcm/apcm.hpp"
#include "upcm/assignment.hpp"
#include "upcm/error.hpp"

namespace upcm {

namespace {

std::string csv_number(double value) {
    return std::isnan(value) ? std::string("nan") : format_double(value);
}

nlohmann::json number_or_null(double value) {
    return std::isfinite(value) ? nlohmann::json(value) : nlohmann::json(nullptr);
}

SweepCell run_cell(const Matrix& points, const Matrix& truth, const FcmResult& init, const SweepSpec& spec,
                   SweepCell cell) {
    try {
        ClusterModel model;
        if (spec.algorithm == Algorithm::Apcm) {
            ApcmConfig config;
            config.m_ini = spec.m_ini;
            config.alpha = cell.alpha;
            config.tol = spec.tol;
            config.max_iter = spec.max_iter;
            config.seed = cell.seed;
            model = apcm_run(points, init, config);
        } else {
            UpcmConfig config;
            config.m_ini = spec.m_ini;
            config.alpha = cell.alpha;
            config.sigma_v = cell.sigma_v;
            config.cut_rule = spec.cut_rule;
            config.tol = spec.tol;
            config.max_iter = spec.max_iter;
            config.seed = cell.seed;
            model = upcm_run(points, init, config);
        }
        cell.final_clusters = model.cluster_count();
        cell.center_error = center_estimation_error(model.prototypes, truth);
        cell.iterations = model.iterations;
        cell.converged = model.converged;
        cell.history = std::move(model.history);
    } catch (const std::exception& e) {
        cell.final_clusters = 0;
        cell.center_error = std::nan("");
        cell.error = e.what();
    }
    return cell;
}

}  // namespace

void validate(const SweepSpec& spec) {
    require(spec.algorithm == Algorithm::Upcm || spec.algorithm == Algorithm::Apcm,
            "sweeps support the upcm and apcm algorithms");
    require(spec.m_ini >= 1, "m_ini must be at least 1");
    require(!spec.alpha_values.empty() && !spec.sigma_v_values.empty() && !spec.seeds.empty(),
            "sweep axes must be non-empty");
    require(std::set<std::uint64_t>(spec.seeds.begin(), spec.seeds.end()).size() == spec.seeds.size(),
            "sweep seeds must be distinct");
    require(spec.jobs >= 1, "jobs must be at least 1");
    if (spec.algorithm == Algorithm::Apcm) {
        require(spec.sigma_v_values.size() == 1 && spec.sigma_v_values.front() == 0.0,
                "APCM sweeps take the single sigma_v value 0");
        for (double alpha : spec.alpha_values) {
            require(alpha > 0.0, "APCM alpha values must be positive");
        }
    } else {
        for (double alpha : spec.alpha_values) {
            cut_threshold(alpha, spec.cut_rule);
        }
        for (double sigma : spec.sigma_v_values) {
            require(sigma >= 0.0, "sigma_v values must be non-negative");
        }
    }
}

const SweepCell& SweepResult::at(std::size_t alpha_index, std::size_t sigma_index, std::size_t seed_index) const {
    const std::size_t n_sigma = spec.sigma_v_values.size();
    const std::size_t n_seed = spec.seeds.size();
    return cells.at((alpha_index * n_sigma + sigma_index) * n_seed + seed_index);
}

SweepResult run_sweep(const DataMatrix& data, const SweepSpec& spec) {
    validate(spec);
    require(data.truth && !data.truth->centers.empty(), "sweeps need ground-truth centers");
    const Matrix& points = data.points;
    const Matrix& truth = data.truth->centers;

    std::vector<std::optional<FcmResult>> inits(spec.seeds.size());
    std::vector<std::string> init_errors(spec.seeds.size());
    for (std::size_t s = 0; s < spec.seeds.size(); ++s) {
        FcmConfig fcm = spec.fcm;
        fcm.clusters = spec.m_ini;
        fcm.seed = spec.seeds[s];
        try {
            inits[s] = fcm_cluster(points, fcm);
        } catch (const std::exception& e) {
            init_errors[s] = std::string("initialisation failed: ") + e.what();
        }
    }

    SweepResult result;
    result.spec = spec;
    for (std::size_t a = 0; a < spec.alpha_values.size(); ++a) {
        for (std::size_t v = 0; v < spec.sigma_v_values.size(); ++v) {
            for (std::size_t s = 0; s < spec.seeds.size(); ++s) {
                SweepCell cell;
                cell.alpha_index = a;
                cell.sigma_index = v;
                cell.seed_index = s;
                cell.alpha = spec.alpha_values[a];
                cell.sigma_v = spec.sigma_v_values[v];
                cell.seed = spec.seeds[s];
                result.cells.push_back(std::move(cell));
            }
        }
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < result.cells.size(); k = next++) {
            SweepCell& cell = result.cells[k];
            if (!inits[cell.seed_index]) {
                cell.center_error = std::nan("");
                cell.error = init_errors[cell.seed_index];
                continue;
            }
            cell = run_cell(points, truth, *inits[cell.seed_index], spec, std::move(cell));
        }
    };
    const std::size_t threads = std::min(spec.jobs, result.cells.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    return result;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
    require(lo > 0.0 && hi >= lo && n >= 1, "log spacing needs 0 < lo <= hi and n >= 1");
    std::vector<double> values(n);
    if (n == 1) {
        values[0] = lo;
        return values;
    }
    const double step = std::log(hi / lo) / static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k) {
        values[k] = lo * std::exp(step * static_cast<double>(k));
    }
    values.back() = hi;
    return values;
}

double data_extent(const Matrix& points) {
    require(points.rows() >= 1, "extent of an empty data set");
    double sum = 0.0;
    for (std::size_t d = 0; d < points.cols(); ++d) {
        double lo = points(0, d), hi = points(0, d);
        for (std::size_t i = 1; i < points.rows(); ++i) {
            lo = std::min(lo, points(i, d));
            hi = std::max(hi, points(i, d));
        }
        sum += (hi - lo) * (hi - lo);
    }
    return std::sqrt(sum);
}

SweepSpec default_upcm_sweep(const DataMatrix& data, std::size_t m_ini, std::vector<std::uint64_t> seeds) {
    SweepSpec spec;
    spec.algorithm = Algorithm::Upcm;
    spec.m_ini = m_ini;
    spec.cut_rule = CutRule::Direct;
    spec.alpha_values = log_spaced(1e-4, 0.5, 12);
    const double extent = data_extent(data.points);
    for (int k = 0; k < 12; ++k) {
        spec.sigma_v_values.push_back(extent * 0.01 * k);
    }
    spec.seeds = std::move(seeds);
    return spec;
}

SweepSpec default_apcm_sweep(std::size_t m_ini, std::vector<std::uint64_t> seeds) {
    SweepSpec spec;
    spec.algorithm = Algorithm::Apcm;
    spec.m_ini = m_ini;
    spec.alpha_values = log_spaced(0.01, 1000.0, 21);
    spec.sigma_v_values = {0.0};
    spec.seeds = std::move(seeds);
    return spec;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    out << "alpha,sigma_v,seed,final_clusters,center_error,iterations,converged\n";
    for (const auto& cell : result.cells) {
        out << format_double(cell.alpha) << ',' << format_double(cell.sigma_v) << ',' << cell.seed << ','
            << cell.final_clusters << ',' << csv_number(cell.center_error) << ',' << cell.iterations << ','
            << (cell.converged ? 1 : 0) << '\n';
    }
}

void write_heatmap_csv(std::ostream& out, const SweepResult& result) {
    out << "alpha_index,sigma_index,alpha,sigma_v,runs,failed,min_clusters,max_clusters,mean_clusters,"
           "mean_center_error\n";
    const std::size_t n_alpha = result.spec.alpha_values.size();
    const std::size_t n_sigma = result.spec.sigma_v_values.size();
    const std::size_t n_seed = result.spec.seeds.size();
    for (std::size_t a = 0; a < n_alpha; ++a) {
        for (std::size_t v = 0; v < n_sigma; ++v) {
            std::size_t ok = 0, failed = 0, min_c = 0, max_c = 0;
            double sum_c = 0.0, sum_err = 0.0;
            for (std::size_t s = 0; s < n_seed; ++s) {
                const auto& cell = result.at(a, v, s);
                if (!cell.error.empty()) {
                    ++failed;
                    continue;
                }
                min_c = ok ? std::min(min_c, cell.final_clusters) : cell.final_clusters;
                max_c = ok ? std::max(max_c, cell.final_clusters) : cell.final_clusters;
                sum_c += static_cast<double>(cell.final_clusters);
                sum_err += cell.center_error;
                ++ok;
            }
            const double mean_c = ok ? sum_c / static_cast<double>(ok) : std::nan("");
            const double mean_err = ok ? sum_err / static_cast<double>(ok) : std::nan("");
            out << a << ',' << v << ',' << format_double(result.spec.alpha_values[a]) << ','
                << format_double(result.spec.sigma_v_values[v]) << ',' << n_seed << ',' << failed << ',' << min_c
                << ',' << max_c << ',' << csv_number(mean_c) << ',' << csv_number(mean_err) << '\n';
        }
    }
}

nlohmann::json sweep_to_json(const SweepResult& result) {
    const auto& spec = result.spec;
    nlohmann::json doc;
    doc["schema_version"] = kSweepSchemaVersion;
    doc["spec"] = {
        {"algorithm", to_string(spec.algorithm)},
        {"m_ini", spec.m_ini},
        {"cut_rule", to_string(spec.cut_rule)},
        {"tol", spec.tol},
        {"max_iter", spec.max_iter},
        {"fcm", {{"fuzzifier", spec.fcm.fuzzifier}, {"tol", spec.fcm.tol}, {"max_iter", spec.fcm.max_iter}}},
        {"alpha_values", spec.alpha_values},
        {"sigma_v_values", spec.sigma_v_values},
        {"seeds", spec.seeds},
    };

    // grid[alpha_index][sigma_index][seed_index]
    nlohmann::json grid = nlohmann::json::array();
    for (std::size_t a = 0; a < spec.alpha_values.size(); ++a) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t v = 0; v < spec.sigma_v_values.size(); ++v) {
            nlohmann::json runs = nlohmann::json::array();
            for (std::size_t s = 0; s < spec.seeds.size(); ++s) {
                const auto& cell = result.at(a, v, s);
                nlohmann::json history = nlohmann::json::array();
                for (const auto& record : cell.history) {
                    history.push_back({record.clusters, number_or_null(record.max_displacement)});
                }
                runs.push_back({
                    {"alpha", cell.alpha},
                    {"sigma_v", cell.sigma_v},
                    {"seed", cell.seed},
                    {"final_clusters", cell.final_clusters},
                    {"center_error", number_or_null(cell.center_error)},
                    {"iterations", cell.iterations},
                    {"converged", cell.converged},
                    {"error", cell.error},
                    {"history", std::move(history)},
                });
            }
            row.push_back(std::move(runs));
        }
        grid.push_back(std::move(row));
    }
    doc["grid"] = std::move(grid);
    return doc;
}

SweepResult sweep_from_json(const nlohmann::json& doc) {
    try {
        if (doc.at("schema_version").get<int>() != kSweepSchemaVersion) {
            fail(ErrorKind::Parse, "unsupported sweep schema_version");
        }
        SweepResult result;
        auto& spec = result.spec;
        const auto& s = doc.at("spec");
        spec.algorithm = parse_algorithm(s.at("algorithm").get<std::string>());
        spec.m_ini = s.at("m_ini").get<std::size_t>();
        spec.cut_rule = parse_cut_rule(s.at("cut_rule").get<std::string>());
        spec.tol = s.at("tol").get<double>();
        spec.max_iter = s.at("max_iter").get<std::size_t>();
        spec.fcm.fuzzifier = s.at("fcm").at("fuzzifier").get<double>();
        spec.fcm.tol = s.at("fcm").at("tol").get<double>();
        spec.fcm.max_iter = s.at("fcm").at("max_iter").get<std::size_t>();
        spec.alpha_values = s.at("alpha_values").get<std::vector<double>>();
        spec.sigma_v_values = s.at("sigma_v_values").get<std::vector<double>>();
        spec.seeds = s.at("seeds").get<std::vector<std::uint64_t>>();

        const auto& grid = doc.at("grid");
        if (grid.size() != spec.alpha_values.size()) {
            fail(ErrorKind::Parse, "sweep grid does not match its alpha axis");
        }
        for (std::size_t a = 0; a < grid.size(); ++a) {
            if (grid[a].size() != spec.sigma_v_values.size()) {
                fail(ErrorKind::Parse, "sweep grid does not match its sigma_v axis");
            }
            for (std::size_t v = 0; v < grid[a].size(); ++v) {
                if (grid[a][v].size() != spec.seeds.size()) {
                    fail(ErrorKind::Parse, "sweep grid does not match its seed list");
                }
                for (std::size_t k = 0; k < grid[a][v].size(); ++k) {
                    const auto& run = grid[a][v][k];
                    SweepCell cell;
                    cell.alpha_index = a;
                    cell.sigma_index = v;
                    cell.seed_index = k;
                    cell.alpha = run.at("alpha").get<double>();
                    cell.sigma_v = run.at("sigma_v").get<double>();
                    cell.seed = run.at("seed").get<std::uint64_t>();
                    cell.final_clusters = run.at("final_clusters").get<std::size_t>();
                    cell.center_error =
                        run.at("center_error").is_null() ? std::nan("") : run.at("center_error").get<double>();
                    cell.iterations = run.at("iterations").get<std::size_t>();
                    cell.converged = run.at("converged").get<bool>();
                    cell.error = run.at("error").get<std::string>();
                    for (const auto& record : run.at("history")) {
                        cell.history.push_back({record.at(0).get<std::size_t>(),
                                                record.at(1).is_null() ? std::nan("") : record.at(1).get<double>()});
                    }
                    result.cells.push_back(std::move(cell));
                }
            }
        }
        return result;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::Parse, std::string("malformed sweep document: ") + e.what());
    }
}

std::vector<std::filesystem::path> emit_report(const SweepResult& result, const std::filesystem::path& prefix) {
    require(!result.cells.empty(), "nothing to report");
    const std::filesystem::path cells_path = prefix.string() + ".csv";
    const std::filesystem::path heatmap_path = prefix.string() + ".heatmap.csv";
    const std::filesystem::path json_path = prefix.string() + ".json";

    auto open = [](const std::filesystem::path& path) {
        std::ofstream out(path);
        if (!out) {
            fail(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
        }
        return out;
    };
    {
        auto out = open(cells_path);
        write_sweep_csv(out, result);
    }
    {
        auto out = open(heatmap_path);
        write_heatmap_csv(out, result);
    }
    {
        auto out = open(json_path);
        out << sweep_to_json(result).dump(1) << '\n';
        if (!out) {
            fail(ErrorKind::Io, "failed writing '" + json_path.string() + "'");
        }
    }
    return {cells_path, heatmap_path, json_path};
}

SweepResult load_sweep(const std::filesystem::path& json_path) {
    std::ifstream in(json_path);
    if (!in) {
        fail(ErrorKind::Io, "cannot open '" + json_path.string() + "'");
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::Parse, "'" + json_path.string() + "' is not valid JSON: " + e.what());
    }
    return sweep_from_json(doc);
}

}  // namespace upcm
