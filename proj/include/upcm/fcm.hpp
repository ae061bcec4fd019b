#ifndef UPCM_FCM_HPP
#define UPCM_FCM_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "upcm/matrix.hpp"

namespace upcm {

struct FcmConfig {
    std::size_t clusters = 2;
    double fuzzifier = 2.0;
    /// Stop once no prototype moves farther than this.
    double tol = 1e-6;
    std::size_t max_iter = 300;
    std::uint64_t seed = 0;
};

struct FcmResult {
    Matrix prototypes;
    /// N x c, rows sum to one.
    Matrix memberships;
    std::size_t iterations = 0;
    bool converged = false;
    /// sum_ij u_ij^q d_ij^2 after every iteration.
    std::vector<double> objective;
};

/// Called after each membership update with (iteration, memberships, prototypes used).
using FcmObserver = std::function<void(std::size_t, const Matrix&, const Matrix&)>;

/// Standard fuzzy c-means. Starts from `clusters` distinct data points drawn
/// with the seeded Rng (kept in ascending index order), then alternates
///
///     u_ij    = 1 / sum_r (d_ij / d_ir)^(2 / (q - 1))
///     theta_j = sum_i u_ij^q x_i / sum_i u_ij^q
///
/// A point sitting exactly on a prototype belongs crisply to the lowest-index
/// such prototype.
FcmResult fcm_cluster(const Matrix& points, const FcmConfig& config, const FcmObserver& observer = {});

/// Membership update alone, exposed for tests.
Matrix fcm_memberships(const Matrix& points, const Matrix& prototypes, double fuzzifier);

double fcm_objective(const Matrix& points, const Matrix& prototypes, const Matrix& memberships, double fuzzifier);

/// gamma_j = sum_i u_ij d_ij^2 / sum_i u_ij. Throws DegenerateData when a
/// cluster has no membership mass or zero second moment.
std::vector<double> init_gamma_pcm(const Matrix& points, const FcmResult& fcm);

/// eta_j = sum_i u_ij d_ij / sum_i u_ij. Zero is returned as-is (the caller
/// decides what to do with a collapsed cluster); zero mass throws.
std::vector<double> init_eta(const Matrix& points, const FcmResult& fcm);

}  // namespace upcm

#endif  // UPCM_FCM_HPP
