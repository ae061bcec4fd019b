#ifndef UPCM_HARNESS_HPP
#define UPCM_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "upcm/dataset.hpp"
#include "upcm/fcm.hpp"
#include "upcm/model.hpp"
#include "upcm/unified.hpp"

namespace upcm {

inline constexpr int kSweepSchemaVersion = 1;

/// Grid of (alpha, sigma_v) runs repeated over FCM seeds. For APCM sweeps
/// alpha is the bandwidth scaling and sigma_v must be the single value 0.
struct SweepSpec {
    Algorithm algorithm = Algorithm::Upcm;
    std::size_t m_ini = 10;
    CutRule cut_rule = CutRule::Direct;
    double tol = 1e-4;
    std::size_t max_iter = 200;
    FcmConfig fcm;
    std::vector<double> alpha_values;
    std::vector<double> sigma_v_values;
    std::vector<std::uint64_t> seeds;
    /// Worker threads; results do not depend on it.
    std::size_t jobs = 1;
};

void validate(const SweepSpec& spec);

struct SweepCell {
    std::size_t alpha_index = 0;
    std::size_t sigma_index = 0;
    std::size_t seed_index = 0;
    double alpha = 0.0;
    double sigma_v = 0.0;
    std::uint64_t seed = 0;
    std::size_t final_clusters = 0;
    double center_error = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    /// Empty on success; otherwise the failure message (final_clusters is 0
    /// and center_error NaN).
    std::string error;
    std::vector<IterationRecord> history;
};

struct SweepResult {
    SweepSpec spec;
    /// Ordered by (alpha index, sigma index, seed index).
    std::vector<SweepCell> cells;

    const SweepCell& at(std::size_t alpha_index, std::size_t sigma_index, std::size_t seed_index = 0) const;
};

/// Runs every cell. FCM runs once per seed and its partition is shared by all
/// cells with that seed. Requires truth centers for the error metric.
SweepResult run_sweep(const DataMatrix& data, const SweepSpec& spec);

/// n values from lo to hi inclusive, evenly spaced in log scale.
std::vector<double> log_spaced(double lo, double hi, std::size_t n);

/// Length of the diagonal of the data's bounding box.
double data_extent(const Matrix& points);

/// Default UPCM grid: 12 direct-rule thresholds log-spaced over [1e-4, 0.5],
/// and sigma_v = extent * {0, 0.01, ..., 0.11}.
SweepSpec default_upcm_sweep(const DataMatrix& data, std::size_t m_ini, std::vector<std::uint64_t> seeds);

/// Default APCM grid: 21 values of alpha log-spaced over [0.01, 1000], sigma_v = 0.
SweepSpec default_apcm_sweep(std::size_t m_ini, std::vector<std::uint64_t> seeds);

/// One row per cell: alpha,sigma_v,seed,final_clusters,center_error,iterations,converged
void write_sweep_csv(std::ostream& out, const SweepResult& result);

/// Per (alpha, sigma_v) aggregate over seeds, long format for heatmaps and
/// error-vs-sigma_v curves.
void write_heatmap_csv(std::ostream& out, const SweepResult& result);

nlohmann::json sweep_to_json(const SweepResult& result);
SweepResult sweep_from_json(const nlohmann::json& doc);

/// Writes `<prefix>.csv`, `<prefix>.heatmap.csv` and `<prefix>.json`; returns the paths.
std::vector<std::filesystem::path> emit_report(const SweepResult& result, const std::filesystem::path& prefix);

SweepResult load_sweep(const std::filesystem::path& json_path);

}  // namespace upcm

#endif  // UPCM_HARNESS_HPP
