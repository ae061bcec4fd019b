#ifndef UPCM_UNIFIED_HPP
#define UPCM_UNIFIED_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "upcm/fcm.hpp"
#include "upcm/matrix.hpp"
#include "upcm/model.hpp"
#include "upcm/partition.hpp"

namespace upcm {

/// How the noise level alpha becomes a membership threshold for the
/// prototype update.
enum class CutRule {
    /// threshold = alpha, alpha in [0, 1)
    Direct,
    /// threshold = exp(-alpha), alpha >= 0
    ExpNeg,
};

std::string_view to_string(CutRule rule) noexcept;
CutRule parse_cut_rule(std::string_view name);

/// Validates alpha against the rule and returns the membership threshold.
double cut_threshold(double alpha, CutRule rule);

struct UpcmConfig {
    std::size_t m_ini = 10;
    double alpha = 0.0;
    double sigma_v = 0.0;
    CutRule cut_rule = CutRule::Direct;
    double tol = 1e-4;
    std::size_t max_iter = 200;
    std::uint64_t seed = 0;
    /// Settings of the initial FCM run; `clusters` and `seed` are taken from above.
    FcmConfig fcm;
};

void validate(const UpcmConfig& config);

/// u_ij = exp(-d_ij^2 / g_ij) with g_ij the fuzzy corrected bandwidth of
/// (eta_j, sigma_v) at distance d_ij. With sigma_v == 0 this is exp(-d^2/eta_j^2).
Matrix upcm_membership_update(const Matrix& points, const Matrix& prototypes, std::span<const double> eta,
                              double sigma_v);

/// Membership-weighted mean over the points with u_ij >= threshold. A cluster
/// whose cut holds no mass keeps its row from `previous`.
Matrix upcm_prototype_update(const Matrix& points, const Matrix& memberships, double threshold,
                             const Matrix& previous);

/// eta_j = mean distance from theta_j of the points labelled j. Clusters with
/// no labelled points get 0.
std::vector<double> upcm_eta_update(const Matrix& points, const std::vector<int>& labels, const Matrix& prototypes);

/// Receives the state at the end of each iteration.
using RunObserver = std::function<void(std::size_t, const ActiveClusters&)>;

/// Runs FCM with `config.m_ini` clusters, then the unified loop.
ClusterModel upcm_run(const Matrix& points, const UpcmConfig& config, const RunObserver& observer = {});

/// Same loop starting from an existing FCM partition (shared across sweep cells).
/// Each iteration, in order:
///   1. memberships from the current prototypes and eta,
///   2. alpha-cut prototypes,
///   3. labels by membership argmax, drop unlabelled clusters,
///   4. eta from the labelled points around the new prototypes,
///   5. drop clusters with eta == 0.
/// Stops when no surviving prototype moved by tol or more, or at max_iter.
ClusterModel upcm_run(const Matrix& points, const FcmResult& init, const UpcmConfig& config,
                      const RunObserver& observer = {});

}  // namespace upcm

#endif  // UPCM_UNIFIED_HPP
