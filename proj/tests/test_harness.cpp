#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "test_support.hpp"
#include "upcm/assignment.hpp"
#include "upcm/dataset.hpp"
#include "upcm/error.hpp"
#include "upcm/harness.hpp"

using namespace upcm;

namespace {

SweepSpec small_spec() {
    SweepSpec spec;
    spec.m_ini = 2;
    spec.alpha_values = {0.01, 0.1, 0.3};
    spec.sigma_v_values = {0.0, 0.5, 2.0};
    spec.seeds = {1};
    return spec;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t line_count(const std::string& text) {
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("assignment solver") {
    const Matrix cost(3, 3, {4.0, 1.0, 3.0, 2.0, 0.0, 5.0, 3.0, 2.0, 2.0});
    const auto pick = solve_assignment(cost);
    CHECK(cost(0, pick[0]) + cost(1, pick[1]) + cost(2, pick[2]) == 5.0);

    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> w(0.0, 10.0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t rows = 1 + static_cast<std::size_t>(trial % 4);
        const std::size_t cols = rows + static_cast<std::size_t>(trial % 3);
        Matrix c(rows, cols);
        for (double& v : c.data()) {
            v = w(gen);
        }
        const auto got = solve_assignment(c);
        double total = 0.0;
        std::set<std::size_t> used;
        for (std::size_t r = 0; r < rows; ++r) {
            total += c(r, got[r]);
            used.insert(got[r]);
        }
        CHECK(used.size() == rows);

        std::vector<std::size_t> perm(cols);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        double best = std::numeric_limits<double>::infinity();
        do {
            double t = 0.0;
            for (std::size_t r = 0; r < rows; ++r) {
                t += c(r, perm[r]);
            }
            best = std::min(best, t);
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(total == doctest::Approx(best).epsilon(1e-12));
    }
    CHECK_THROWS_AS(solve_assignment(Matrix(3, 2)), Error);
}

TEST_CASE("center estimation error") {
    const Matrix truth(2, 2, {13.0, 13.0, 5.0, 0.0});
    CHECK(center_estimation_error(truth, truth) == 0.0);
    CHECK(center_estimation_error(Matrix(2, 2, {5.0, 0.0, 13.0, 13.0}), truth) == 0.0);
    CHECK(center_estimation_error(Matrix(1, 2, {5.0, 0.0}), truth) ==
          doctest::Approx(15.264337522473747).epsilon(1e-15));
    CHECK(center_estimation_error(Matrix(3, 2, {5.0, 0.0, 13.0, 13.0, 6.0, 0.0}), truth) == doctest::Approx(1.0));

    std::mt19937_64 gen(32);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t c = 1 + static_cast<std::size_t>(trial % 5);
        const std::size_t k = 1 + static_cast<std::size_t>((trial / 5) % 6);
        const auto t = oracle::random_points(gen, c, 2, 0.0, 10.0);
        const auto e = oracle::random_points(gen, k, 2, 0.0, 10.0);
        const double got = center_estimation_error(to_matrix(e), to_matrix(t));
        CHECK(got == doctest::Approx(oracle::brute_center_error(e, t)).epsilon(1e-12));
        CHECK(got >= 0.0);
        if (k == c) {
            CHECK(got == doctest::Approx(center_estimation_error(to_matrix(t), to_matrix(e))).epsilon(1e-12));
            double naive = 0.0;
            for (std::size_t j = 0; j < k; ++j) {
                naive += oracle::dist(e[j], t[j]);
            }
            CHECK(got <= naive + 1e-12);
        }
    }
}

TEST_CASE("log spacing and extent") {
    const auto v = log_spaced(0.01, 1000.0, 6);
    REQUIRE(v.size() == 6);
    CHECK(v.front() == 0.01);
    CHECK(v.back() == 1000.0);
    CHECK(v[2] == doctest::Approx(1.0));
    CHECK(data_extent(Matrix(2, 2, {0.0, 0.0, 3.0, 4.0})) == 5.0);
}

TEST_CASE("single cell sweep matches a direct run") {
    const auto data = generate_gaussian_mixture(dataset1_spec(7));
    auto spec = small_spec();
    spec.alpha_values = {0.1};
    spec.sigma_v_values = {0.0};
    const auto result = run_sweep(data, spec);
    REQUIRE(result.cells.size() == 1);
    UpcmConfig config;
    config.m_ini = 2;
    config.alpha = 0.1;
    config.seed = 1;
    const auto model = upcm_run(data.points, config);
    const auto& cell = result.cells.front();
    CHECK(cell.error.empty());
    CHECK(cell.final_clusters == model.cluster_count());
    CHECK(cell.center_error == center_estimation_error(model.prototypes, data.truth->centers));
    CHECK(cell.iterations == model.iterations);
    CHECK(cell.history.size() == model.history.size());
}

TEST_CASE("sweeps do not depend on the worker count") {
    const auto data = generate_gaussian_mixture(dataset2_spec(7));
    auto spec = small_spec();
    spec.m_ini = 6;
    spec.sigma_v_values = {0.0, 0.05};
    spec.seeds = {1, 2};
    const auto serial = run_sweep(data, spec);
    spec.jobs = 4;
    const auto parallel = run_sweep(data, spec);
    std::ostringstream a, b;
    write_sweep_csv(a, serial);
    write_sweep_csv(b, parallel);
    CHECK(a.str() == b.str());
    CHECK(sweep_to_json(serial)["grid"] == sweep_to_json(parallel)["grid"]);
}

TEST_CASE("failed cells are recorded, not thrown") {
    const auto data = generate_gaussian_mixture(dataset1_spec(7));
    SweepSpec spec;
    spec.algorithm = Algorithm::Apcm;
    spec.m_ini = 2;
    spec.alpha_values = {1.0, 1e5};
    spec.sigma_v_values = {0.0};
    spec.seeds = {1};
    const auto result = run_sweep(data, spec);
    CHECK(result.at(0, 0).error.empty());
    CHECK(result.at(0, 0).final_clusters == 2);
    CHECK_FALSE(result.at(1, 0).error.empty());
    CHECK(result.at(1, 0).final_clusters == 0);
    CHECK(std::isnan(result.at(1, 0).center_error));

    std::ostringstream csv;
    write_sweep_csv(csv, result);
    CHECK(csv.str().find(",nan,") != std::string::npos);
    CHECK(sweep_to_json(result)["grid"][1][0][0]["center_error"].is_null());
}

TEST_CASE("invalid sweep specs") {
    const auto data = generate_gaussian_mixture(dataset1_spec(7));
    auto spec = small_spec();
    spec.seeds = {};
    CHECK_THROWS_AS(run_sweep(data, spec), Error);
    spec = small_spec();
    spec.seeds = {1, 1};
    CHECK_THROWS_AS(run_sweep(data, spec), Error);
    spec = small_spec();
    spec.alpha_values = {1.5};
    CHECK_THROWS_AS(run_sweep(data, spec), Error);
    spec = small_spec();
    spec.algorithm = Algorithm::Apcm;
    CHECK_THROWS_AS(run_sweep(data, spec), Error);
    DataMatrix unlabeled{data.points, std::nullopt};
    CHECK_THROWS_AS(run_sweep(unlabeled, small_spec()), Error);
}

TEST_CASE("reports") {
    const auto data = generate_gaussian_mixture(dataset1_spec(7));
    auto spec = small_spec();
    spec.alpha_values = {0.01, 0.1};
    spec.sigma_v_values = {0.0, 0.5};
    const auto result = run_sweep(data, spec);

    const auto dir = std::filesystem::temp_directory_path() / "upcm_test_reports";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const auto paths = emit_report(result, dir / "grid");
    REQUIRE(paths.size() == 3);
    for (const auto& p : paths) {
        CHECK(std::filesystem::exists(p));
    }
    const auto csv = read_file(dir / "grid.csv");
    CHECK(line_count(csv) == 5);
    CHECK(csv.rfind("alpha,sigma_v,seed,final_clusters,center_error,iterations,converged\n", 0) == 0);
    CHECK(line_count(read_file(dir / "grid.heatmap.csv")) == 5);

    const auto loaded = load_sweep(dir / "grid.json");
    CHECK(loaded.spec.alpha_values == result.spec.alpha_values);
    CHECK(loaded.spec.sigma_v_values == result.spec.sigma_v_values);
    CHECK(loaded.spec.seeds == result.spec.seeds);
    REQUIRE(loaded.cells.size() == result.cells.size());
    for (std::size_t k = 0; k < loaded.cells.size(); ++k) {
        CHECK(loaded.cells[k].final_clusters == result.cells[k].final_clusters);
        CHECK(loaded.cells[k].center_error == result.cells[k].center_error);
        CHECK(loaded.cells[k].history.size() == result.cells[k].history.size());
    }
    std::ostringstream again;
    write_sweep_csv(again, loaded);
    CHECK(again.str() == csv);

    CHECK_THROWS_AS(sweep_from_json(nlohmann::json::object()), Error);
    auto doc = sweep_to_json(result);
    doc["schema_version"] = kSweepSchemaVersion + 1;
    CHECK_THROWS_AS(sweep_from_json(doc), Error);
    CHECK_THROWS_AS(load_sweep(dir / "missing.json"), Error);
    std::filesystem::remove_all(dir);
}

TEST_CASE("golden 3x3 sweep") {
    const auto data = generate_gaussian_mixture(dataset1_spec(7));
    std::ostringstream csv;
    write_sweep_csv(csv, run_sweep(data, small_spec()));
    const auto golden = read_file(std::filesystem::path(UPCM_GOLDEN_DIR) / "sweep_3x3.csv");
    REQUIRE_FALSE(golden.empty());
    CHECK(csv.str() == golden);
}
