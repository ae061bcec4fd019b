#ifndef UPCM_PCM_HPP
#define UPCM_PCM_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "upcm/matrix.hpp"
#include "upcm/model.hpp"

namespace upcm {

/// Classic possibilistic c-means state: bandwidths stay fixed for the whole run.
struct PcmState {
    Matrix prototypes;
    Matrix memberships;
    std::vector<double> gamma;
};

struct PcmConfig {
    double tol = 1e-4;
    std::size_t max_iter = 200;
};

/// J = sum_j [ sum_i u_ij d_ij^2 + gamma_j sum_i (u_ij log u_ij - u_ij) ].
/// Every membership must be strictly positive.
double pcm_objective(const PcmState& state, const Matrix& points);

/// Contribution J_j of a single cluster to pcm_objective.
double pcm_cluster_objective(const PcmState& state, const Matrix& points, std::size_t cluster);

/// u_ij = exp(-d_ij^2 / gamma_j), flushed to zero below exp(-700).
Matrix pcm_membership_update(const Matrix& points, const Matrix& prototypes, std::span<const double> gamma);

/// theta_j = sum_i u_ij x_i / sum_i u_ij. Sums run in point order. Throws
/// DegenerateData when a cluster has no membership mass.
Matrix pcm_prototype_update(const Matrix& points, const Matrix& memberships);

/// Called after each full (memberships, prototypes) step.
using PcmObserver = std::function<void(std::size_t, const PcmState&)>;

/// Alternates the two updates from the given prototypes with fixed gamma until
/// no prototype moves by `tol` or more. Coincident prototypes are kept.
ClusterModel pcm_run(const Matrix& points, const Matrix& initial_prototypes, std::span<const double> gamma,
                     const PcmConfig& config = {}, const PcmObserver& observer = {});

}  // namespace upcm

#endif  // UPCM_PCM_HPP
