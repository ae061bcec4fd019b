#ifndef UPCM_PARTITION_HPP
#define UPCM_PARTITION_HPP

#include <cstddef>
#include <vector>

#include "upcm/matrix.hpp"

namespace upcm {

/// A_j: indices of the points whose largest membership is attained at cluster j.
/// Points with no positive membership belong to no set.
struct CompatibleSets {
    std::vector<std::vector<std::size_t>> members;
};

/// Row argmax with lowest-index tie-break; kUnassigned for all-zero rows.
std::vector<int> assign_labels(const Matrix& memberships);

CompatibleSets most_compatible_sets(const Matrix& memberships);
CompatibleSets sets_from_labels(const std::vector<int>& labels, std::size_t clusters);

/// Working state of an eliminating run (APCM / UPCM).
struct ActiveClusters {
    Matrix prototypes;
    Matrix memberships;
    std::vector<double> eta;
    std::vector<int> labels;
    /// Index of each active cluster in the initial partition.
    std::vector<std::size_t> ids;

    std::size_t count() const noexcept { return prototypes.rows(); }
};

/// Drops every cluster that no label refers to or whose eta is exactly zero,
/// compacting prototypes, membership columns, eta, ids and labels while
/// keeping the survivors' relative order. Returns how many were dropped.
/// Throws TotalElimination when nothing survives.
std::size_t eliminate_clusters(ActiveClusters& state);

}  // namespace upcm

#endif  // UPCM_PARTITION_HPP
