#include "upcm/unified.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "eliminating_loop.hpp"
#include "upcm/error.hpp"
#include "upcm/fuzzy.hpp"

namespace upcm {

std::string_view to_string(CutRule rule) noexcept {
    return rule == CutRule::Direct ? "direct" : "exp-neg";
}

CutRule parse_cut_rule(std::string_view name) {
    if (name == "direct") return CutRule::Direct;
    if (name == "exp-neg" || name == "exp_neg") return CutRule::ExpNeg;
    fail(ErrorKind::InvalidArgument, "unknown cut rule '" + std::string(name) + "'");
}

double cut_threshold(double alpha, CutRule rule) {
    if (rule == CutRule::Direct) {
        require(alpha >= 0.0 && alpha < 1.0, "direct cut rule needs alpha in [0, 1)");
        return alpha;
    }
    require(alpha >= 0.0, "exp-neg cut rule needs alpha >= 0");
    return std::exp(-alpha);
}

void validate(const UpcmConfig& config) {
    require(config.m_ini >= 1, "m_ini must be at least 1");
    require(config.sigma_v >= 0.0, "sigma_v must be non-negative");
    cut_threshold(config.alpha, config.cut_rule);
    require(config.tol > 0.0, "tol must be positive");
    require(config.max_iter >= 1, "max_iter must be at least 1");
}

Matrix upcm_membership_update(const Matrix& points, const Matrix& prototypes, std::span<const double> eta,
                              double sigma_v) {
    require(eta.size() == prototypes.rows(), "one eta per prototype expected");
    require(sigma_v >= 0.0, "sigma_v must be non-negative");
    for (double e : eta) {
        require(e > 0.0, "eta must be positive for every active cluster");
    }
    Matrix u(points.rows(), prototypes.rows());
    for (std::size_t i = 0; i < points.rows(); ++i) {
        for (std::size_t j = 0; j < prototypes.rows(); ++j) {
            const double d2 = squared_distance(points.row(i), prototypes.row(j));
            u(i, j) = fuzzy::clamped_exp(-d2 / fuzzy::corrected_bandwidth(eta[j], sigma_v, std::sqrt(d2)));
        }
    }
    return u;
}

Matrix upcm_prototype_update(const Matrix& points, const Matrix& memberships, double threshold,
                             const Matrix& previous) {
    require(threshold >= 0.0 && threshold <= 1.0, "cut threshold must lie in [0, 1]");
    require(previous.rows() == memberships.cols() && previous.cols() == points.cols(),
            "previous prototypes do not match the memberships");
    const std::size_t c = memberships.cols();
    Matrix prototypes(c, points.cols());
    for (std::size_t j = 0; j < c; ++j) {
        auto theta = prototypes.row(j);
        double mass = 0.0;
        for (std::size_t i = 0; i < points.rows(); ++i) {
            const double w = memberships(i, j);
            if (w < threshold) {
                continue;
            }
            mass += w;
            auto x = points.row(i);
            for (std::size_t d = 0; d < x.size(); ++d) {
                theta[d] += w * x[d];
            }
        }
        if (mass > 0.0) {
            for (double& value : theta) {
                value /= mass;
            }
        } else {
            auto old = previous.row(j);
            std::copy(old.begin(), old.end(), theta.begin());
        }
    }
    return prototypes;
}

std::vector<double> upcm_eta_update(const Matrix& points, const std::vector<int>& labels, const Matrix& prototypes) {
    require(labels.size() == points.rows(), "one label per point expected");
    std::vector<double> total(prototypes.rows(), 0.0);
    std::vector<std::size_t> count(prototypes.rows(), 0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == kUnassigned) {
            continue;
        }
        const auto j = static_cast<std::size_t>(labels[i]);
        total.at(j) += distance(points.row(i), prototypes.row(j));
        ++count[j];
    }
    for (std::size_t j = 0; j < total.size(); ++j) {
        total[j] = count[j] ? total[j] / static_cast<double>(count[j]) : 0.0;
    }
    return total;
}

namespace detail {

ClusterModel run_eliminating_loop(Algorithm algorithm, const FcmResult& init, std::vector<double> eta,
                                  double tol, std::size_t max_iter, const LoopSteps& steps,
                                  const RunObserver& observer) {
    ClusterModel model;
    model.algorithm = algorithm;
    model.initial_clusters = init.prototypes.rows();

    ActiveClusters state;
    state.prototypes = init.prototypes;
    state.memberships = init.memberships;
    state.eta = std::move(eta);
    state.ids.resize(state.count());
    std::iota(state.ids.begin(), state.ids.end(), std::size_t{0});
    // Clusters with zero initial eta are dropped up front.
    for (std::size_t j = 0; j < state.count(); ++j) {
        if (state.eta[j] == 0.0) {
            model.warnings.push_back("cluster " + std::to_string(j) +
                                     " has zero initial eta and was eliminated before the first iteration");
        }
    }
    if (!model.warnings.empty()) {
        // Every cluster labelled: only eta decides.
        state.labels.resize(state.count());
        std::iota(state.labels.begin(), state.labels.end(), 0);
        eliminate_clusters(state);
        state.labels.clear();
    }

    Matrix previous_by_id = init.prototypes;
    for (std::size_t iter = 1; iter <= max_iter; ++iter) {
        state.memberships = steps.memberships(state);
        state.prototypes = steps.prototypes(state.memberships, state.prototypes);

        state.labels = assign_labels(state.memberships);
        eliminate_clusters(state);

        state.eta = steps.eta(state);
        eliminate_clusters(state);

        double moved = 0.0;
        for (std::size_t j = 0; j < state.count(); ++j) {
            auto before = previous_by_id.row(state.ids[j]);
            auto after = state.prototypes.row(j);
            moved = std::max(moved, distance(before, after));
            std::copy(after.begin(), after.end(), before.begin());
        }
        model.history.push_back({state.count(), moved});
        model.iterations = iter;
        if (observer) {
            observer(iter, state);
        }
        if (moved < tol) {
            model.converged = true;
            break;
        }
    }

    model.prototypes = std::move(state.prototypes);
    model.memberships = std::move(state.memberships);
    model.bandwidths = std::move(state.eta);
    model.labels = std::move(state.labels);
    model.cluster_ids = std::move(state.ids);
    return model;
}

}  // namespace detail

ClusterModel upcm_run(const Matrix& points, const FcmResult& init, const UpcmConfig& config,
                      const RunObserver& observer) {
    validate(config);
    require(init.prototypes.cols() == points.cols() && init.memberships.rows() == points.rows(),
            "initial partition does not match the data");
    const double threshold = cut_threshold(config.alpha, config.cut_rule);

    detail::LoopSteps steps;
    steps.memberships = [&](const ActiveClusters& s) {
        return upcm_membership_update(points, s.prototypes, s.eta, config.sigma_v);
    };
    steps.prototypes = [&](const Matrix& u, const Matrix& previous) {
        return upcm_prototype_update(points, u, threshold, previous);
    };
    steps.eta = [&](const ActiveClusters& s) { return upcm_eta_update(points, s.labels, s.prototypes); };

    return detail::run_eliminating_loop(Algorithm::Upcm, init, init_eta(points, init), config.tol,
                                        config.max_iter, steps, observer);
}

ClusterModel upcm_run(const Matrix& points, const UpcmConfig& config, const RunObserver& observer) {
    validate(config);
    FcmConfig fcm = config.fcm;
    fcm.clusters = config.m_ini;
    fcm.seed = config.seed;
    return upcm_run(points, fcm_cluster(points, fcm), config, observer);
}

}  // namespace upcm
