#ifndef UPCM_SRC_ELIMINATING_LOOP_HPP
#define UPCM_SRC_ELIMINATING_LOOP_HPP

#include <functional>
#include <vector>

#include "upcm/fcm.hpp"
#include "upcm/model.hpp"
#include "upcm/partition.hpp"
#include "upcm/unified.hpp"

namespace upcm::detail {

struct LoopSteps {
    std::function<Matrix(const ActiveClusters&)> memberships;
    std::function<Matrix(const Matrix& memberships, const Matrix& previous)> prototypes;
    std::function<std::vector<double>(const ActiveClusters&)> eta;
};

/// Shared driver of APCM and UPCM: memberships, prototypes, label and
/// eliminate, eta, eliminate on zero eta.
ClusterModel run_eliminating_loop(Algorithm algorithm, const FcmResult& init, std::vector<double> eta,
                                  double tol, std::size_t max_iter, const LoopSteps& steps,
                                  const RunObserver& observer);

}  // namespace upcm::detail

#endif  // UPCM_SRC_ELIMINATING_LOOP_HPP
