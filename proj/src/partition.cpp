#include "upcm/partition.hpp"

#include "upcm/error.hpp"
#include "upcm/model.hpp"

namespace upcm {

std::vector<int> assign_labels(const Matrix& memberships) {
    return argmax_labels(memberships);
}

CompatibleSets sets_from_labels(const std::vector<int>& labels, std::size_t clusters) {
    CompatibleSets sets;
    sets.members.resize(clusters);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != kUnassigned) {
            sets.members.at(static_cast<std::size_t>(labels[i])).push_back(i);
        }
    }
    return sets;
}

CompatibleSets most_compatible_sets(const Matrix& memberships) {
    return sets_from_labels(assign_labels(memberships), memberships.cols());
}

std::size_t eliminate_clusters(ActiveClusters& state) {
    const std::size_t m = state.count();
    require(state.eta.size() == m && state.ids.size() == m, "cluster state is inconsistent");

    std::vector<bool> labelled(m, false);
    for (int label : state.labels) {
        if (label != kUnassigned) {
            labelled.at(static_cast<std::size_t>(label)) = true;
        }
    }

    std::vector<std::size_t> keep;
    std::vector<int> remap(m, kUnassigned);
    for (std::size_t j = 0; j < m; ++j) {
        if (labelled[j] && state.eta[j] != 0.0) {
            remap[j] = static_cast<int>(keep.size());
            keep.push_back(j);
        }
    }
    if (keep.empty()) {
        fail(ErrorKind::TotalElimination, "every cluster was eliminated");
    }
    if (keep.size() == m) {
        return 0;
    }

    state.prototypes = state.prototypes.select_rows(keep);
    if (state.memberships.cols() == m) {
        state.memberships = state.memberships.select_cols(keep);
    }
    std::vector<double> eta;
    std::vector<std::size_t> ids;
    for (std::size_t j : keep) {
        eta.push_back(state.eta[j]);
        ids.push_back(state.ids[j]);
    }
    state.eta = std::move(eta);
    state.ids = std::move(ids);
    for (int& label : state.labels) {
        if (label != kUnassigned) {
            label = remap[static_cast<std::size_t>(label)];
        }
    }
    return m - keep.size();
}

}  // namespace upcm
