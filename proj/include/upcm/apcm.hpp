#ifndef UPCM_APCM_HPP
#define UPCM_APCM_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "upcm/fcm.hpp"
#include "upcm/matrix.hpp"
#include "upcm/model.hpp"
#include "upcm/partition.hpp"
#include "upcm/unified.hpp"

namespace upcm {

struct ApcmConfig {
    std::size_t m_ini = 10;
    /// Bandwidth scaling; larger values shrink every gamma.
    double alpha = 1.0;
    double tol = 1e-4;
    std::size_t max_iter = 200;
    std::uint64_t seed = 0;
    FcmConfig fcm;
};

void validate(const ApcmConfig& config);

/// gamma_j = (eta_hat / alpha) * eta_j.
std::vector<double> apcm_gamma(std::span<const double> eta, double eta_hat, double alpha);

/// eta_j = (1/n_j) sum_{x in A_j} ||x - mu_j|| with mu_j the mean of A_j.
/// Empty sets get 0.
std::vector<double> apcm_eta_update(const Matrix& points, const CompatibleSets& sets);

ClusterModel apcm_run(const Matrix& points, const ApcmConfig& config, const RunObserver& observer = {});

/// Adaptive PCM from an existing FCM partition. eta_hat is the smallest
/// initial eta and stays fixed. The loop mirrors upcm_run with gamma from
/// apcm_gamma, an uncut weighted mean, and eta from apcm_eta_update.
ClusterModel apcm_run(const Matrix& points, const FcmResult& init, const ApcmConfig& config,
                      const RunObserver& observer = {});

}  // namespace upcm

#endif  // UPCM_APCM_HPP
