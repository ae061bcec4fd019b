#include "upcm/pcm.hpp"

#include <cmath>
#include <string>

#include "upcm/error.hpp"
#include "upcm/fuzzy.hpp"

namespace upcm {

double pcm_cluster_objective(const PcmState& state, const Matrix& points, std::size_t cluster) {
    double fit = 0.0;
    double penalty = 0.0;
    for (std::size_t i = 0; i < points.rows(); ++i) {
        const double u = state.memberships(i, cluster);
        if (!(u > 0.0)) {
            fail(ErrorKind::InvalidArgument, "PCM objective needs strictly positive memberships");
        }
        fit += u * squared_distance(points.row(i), state.prototypes.row(cluster));
        penalty += u * std::log(u) - u;
    }
    return fit + state.gamma[cluster] * penalty;
}

double pcm_objective(const PcmState& state, const Matrix& points) {
    double total = 0.0;
    for (std::size_t j = 0; j < state.prototypes.rows(); ++j) {
        total += pcm_cluster_objective(state, points, j);
    }
    return total;
}

Matrix pcm_membership_update(const Matrix& points, const Matrix& prototypes, std::span<const double> gamma) {
    require(gamma.size() == prototypes.rows(), "one gamma per prototype expected");
    for (double g : gamma) {
        require(g > 0.0, "PCM bandwidths must be positive");
    }
    Matrix u(points.rows(), prototypes.rows());
    for (std::size_t i = 0; i < points.rows(); ++i) {
        for (std::size_t j = 0; j < prototypes.rows(); ++j) {
            u(i, j) = fuzzy::clamped_exp(-squared_distance(points.row(i), prototypes.row(j)) / gamma[j]);
        }
    }
    return u;
}

Matrix pcm_prototype_update(const Matrix& points, const Matrix& memberships) {
    const std::size_t c = memberships.cols();
    Matrix prototypes(c, points.cols());
    for (std::size_t j = 0; j < c; ++j) {
        auto theta = prototypes.row(j);
        double mass = 0.0;
        for (std::size_t i = 0; i < points.rows(); ++i) {
            const double w = memberships(i, j);
            mass += w;
            auto x = points.row(i);
            for (std::size_t d = 0; d < x.size(); ++d) {
                theta[d] += w * x[d];
            }
        }
        if (!(mass > 0.0)) {
            fail(ErrorKind::DegenerateData, "cluster " + std::to_string(j) + " has no membership mass");
        }
        for (double& value : theta) {
            value /= mass;
        }
    }
    return prototypes;
}

ClusterModel pcm_run(const Matrix& points, const Matrix& initial_prototypes, std::span<const double> gamma,
                     const PcmConfig& config, const PcmObserver& observer) {
    require(initial_prototypes.rows() >= 1 && initial_prototypes.cols() == points.cols(),
            "initial prototypes do not match the data");
    require(config.tol > 0.0 && config.max_iter >= 1, "PCM needs tol > 0 and max_iter >= 1");

    PcmState state{initial_prototypes, {}, std::vector<double>(gamma.begin(), gamma.end())};
    ClusterModel model;
    model.algorithm = Algorithm::Pcm;
    model.initial_clusters = initial_prototypes.rows();

    for (std::size_t iter = 1; iter <= config.max_iter; ++iter) {
        state.memberships = pcm_membership_update(points, state.prototypes, state.gamma);
        Matrix next = pcm_prototype_update(points, state.memberships);
        const double moved = max_row_displacement(state.prototypes, next);
        state.prototypes = std::move(next);
        model.history.push_back({state.prototypes.rows(), moved});
        model.iterations = iter;
        if (observer) {
            observer(iter, state);
        }
        if (moved < config.tol) {
            model.converged = true;
            break;
        }
    }

    // Report memberships consistent with the returned prototypes.
    state.memberships = pcm_membership_update(points, state.prototypes, state.gamma);
    bool positive = true;
    for (double u : state.memberships.data()) {
        positive = positive && u > 0.0;
    }
    model.objective = positive ? pcm_objective(state, points) : std::nan("");
    model.prototypes = std::move(state.prototypes);
    model.memberships = std::move(state.memberships);
    model.bandwidths = std::move(state.gamma);
    model.labels = argmax_labels(model.memberships);
    for (std::size_t j = 0; j < model.prototypes.rows(); ++j) {
        model.cluster_ids.push_back(j);
    }
    return model;
}

}  // namespace upcm
