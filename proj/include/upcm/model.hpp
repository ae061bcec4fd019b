#ifndef UPCM_MODEL_HPP
#define UPCM_MODEL_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "upcm/matrix.hpp"

namespace upcm {

enum class Algorithm { Fcm, Pcm, Apcm, Upcm };

std::string_view to_string(Algorithm algorithm) noexcept;
Algorithm parse_algorithm(std::string_view name);

/// Label given to a point whose memberships all flushed to zero.
inline constexpr int kUnassigned = -1;

struct IterationRecord {
    std::size_t clusters = 0;
    double max_displacement = 0.0;
};

/// Result of one clustering run over the clusters still active at return.
struct ClusterModel {
    Algorithm algorithm = Algorithm::Upcm;
    std::size_t initial_clusters = 0;
    Matrix prototypes;
    Matrix memberships;
    /// eta for APCM/UPCM, gamma for PCM, the initial eta for FCM.
    std::vector<double> bandwidths;
    std::vector<int> labels;
    /// Index of each surviving cluster in the initial partition.
    std::vector<std::size_t> cluster_ids;
    std::vector<IterationRecord> history;
    std::size_t iterations = 0;
    bool converged = false;
    /// Objective at return; only PCM and FCM report one.
    double objective = 0.0;
    std::vector<std::string> warnings;

    std::size_t cluster_count() const noexcept { return prototypes.rows(); }
};

/// JSON form of a model. Memberships are omitted unless requested.
nlohmann::json to_json(const ClusterModel& model, bool include_memberships = false);

/// Per-row argmax of a membership matrix; lowest column wins ties, rows with no
/// positive entry get kUnassigned.
std::vector<int> argmax_labels(const Matrix& memberships);

}  // namespace upcm

#endif  // UPCM_MODEL_HPP
