#include "upcm/model.hpp"

#include <cmath>

#include "upcm/error.hpp"

namespace upcm {

std::string_view to_string(Algorithm algorithm) noexcept {
    switch (algorithm) {
        case Algorithm::Fcm: return "fcm";
        case Algorithm::Pcm: return "pcm";
        case Algorithm::Apcm: return "apcm";
        case Algorithm::Upcm: return "upcm";
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
    if (name == "fcm") return Algorithm::Fcm;
    if (name == "pcm") return Algorithm::Pcm;
    if (name == "apcm") return Algorithm::Apcm;
    if (name == "upcm") return Algorithm::Upcm;
    fail(ErrorKind::InvalidArgument, "unknown algorithm '" + std::string(name) + "'");
}

nlohmann::json to_json(const ClusterModel& model, bool include_memberships) {
    nlohmann::json out;
    out["algorithm"] = to_string(model.algorithm);
    out["initial_clusters"] = model.initial_clusters;
    out["clusters"] = model.cluster_count();
    out["prototypes"] = nlohmann::json::array();
    for (std::size_t j = 0; j < model.prototypes.rows(); ++j) {
        auto row = model.prototypes.row(j);
        out["prototypes"].push_back(std::vector<double>(row.begin(), row.end()));
    }
    out["bandwidths"] = model.bandwidths;
    out["cluster_ids"] = model.cluster_ids;
    out["labels"] = model.labels;
    out["iterations"] = model.iterations;
    out["converged"] = model.converged;
    const bool has_objective = model.algorithm == Algorithm::Pcm || model.algorithm == Algorithm::Fcm;
    out["objective"] = has_objective && std::isfinite(model.objective) ? nlohmann::json(model.objective) : nullptr;
    out["history"] = nlohmann::json::array();
    for (const auto& record : model.history) {
        out["history"].push_back({{"clusters", record.clusters}, {"max_displacement", record.max_displacement}});
    }
    out["warnings"] = model.warnings;
    if (include_memberships) {
        out["memberships"] = nlohmann::json::array();
        for (std::size_t i = 0; i < model.memberships.rows(); ++i) {
            auto row = model.memberships.row(i);
            out["memberships"].push_back(std::vector<double>(row.begin(), row.end()));
        }
    }
    return out;
}

std::vector<int> argmax_labels(const Matrix& memberships) {
    std::vector<int> labels(memberships.rows(), kUnassigned);
    for (std::size_t i = 0; i < memberships.rows(); ++i) {
        double best = 0.0;
        for (std::size_t j = 0; j < memberships.cols(); ++j) {
            if (memberships(i, j) > best) {
                best = memberships(i, j);
                labels[i] = static_cast<int>(j);
            }
        }
    }
    return labels;
}

}  // namespace upcm
