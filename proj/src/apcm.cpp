#include "upcm/apcm.hpp"

#include <algorithm>

#include "eliminating_loop.hpp"
#include "upcm/error.hpp"
#include "upcm/pcm.hpp"

namespace upcm {

void validate(const ApcmConfig& config) {
    require(config.m_ini >= 1, "m_ini must be at least 1");
    require(config.alpha > 0.0, "APCM alpha must be positive");
    require(config.tol > 0.0, "tol must be positive");
    require(config.max_iter >= 1, "max_iter must be at least 1");
}

std::vector<double> apcm_gamma(std::span<const double> eta, double eta_hat, double alpha) {
    require(eta_hat > 0.0 && alpha > 0.0, "APCM scaling needs eta_hat > 0 and alpha > 0");
    const double scale = eta_hat / alpha;
    std::vector<double> gamma;
    gamma.reserve(eta.size());
    for (double e : eta) {
        require(e > 0.0, "eta must be positive for every active cluster");
        gamma.push_back(scale * e);
    }
    return gamma;
}

std::vector<double> apcm_eta_update(const Matrix& points, const CompatibleSets& sets) {
    std::vector<double> eta(sets.members.size(), 0.0);
    std::vector<double> mean(points.cols());
    for (std::size_t j = 0; j < sets.members.size(); ++j) {
        const auto& members = sets.members[j];
        if (members.empty()) {
            continue;
        }
        std::fill(mean.begin(), mean.end(), 0.0);
        for (std::size_t i : members) {
            auto x = points.row(i);
            for (std::size_t d = 0; d < x.size(); ++d) {
                mean[d] += x[d];
            }
        }
        for (double& value : mean) {
            value /= static_cast<double>(members.size());
        }
        double total = 0.0;
        for (std::size_t i : members) {
            total += distance(points.row(i), mean);
        }
        eta[j] = total / static_cast<double>(members.size());
    }
    return eta;
}

ClusterModel apcm_run(const Matrix& points, const FcmResult& init, const ApcmConfig& config,
                      const RunObserver& observer) {
    validate(config);
    require(init.prototypes.cols() == points.cols() && init.memberships.rows() == points.rows(),
            "initial partition does not match the data");

    auto eta = init_eta(points, init);
    double eta_hat = 0.0;
    for (double e : eta) {
        if (e > 0.0 && (eta_hat == 0.0 || e < eta_hat)) {
            eta_hat = e;
        }
    }
    if (eta_hat == 0.0) {
        fail(ErrorKind::TotalElimination, "every initial cluster has zero eta");
    }

    detail::LoopSteps steps;
    steps.memberships = [&](const ActiveClusters& s) {
        return pcm_membership_update(points, s.prototypes, apcm_gamma(s.eta, eta_hat, config.alpha));
    };
    steps.prototypes = [&](const Matrix& u, const Matrix& previous) {
        return upcm_prototype_update(points, u, 0.0, previous);
    };
    steps.eta = [&](const ActiveClusters& s) {
        return apcm_eta_update(points, sets_from_labels(s.labels, s.count()));
    };

    return detail::run_eliminating_loop(Algorithm::Apcm, init, std::move(eta), config.tol, config.max_iter, steps,
                                        observer);
}

ClusterModel apcm_run(const Matrix& points, const ApcmConfig& config, const RunObserver& observer) {
    validate(config);
    FcmConfig fcm = config.fcm;
    fcm.clusters = config.m_ini;
    fcm.seed = config.seed;
    return apcm_run(points, fcm_cluster(points, fcm), config, observer);
}

}  // namespace upcm
