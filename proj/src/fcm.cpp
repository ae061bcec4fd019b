#include "upcm/fcm.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "upcm/error.hpp"
#include "upcm/rng.hpp"

namespace upcm {

namespace {

bool all_rows_identical(const Matrix& points) {
    for (std::size_t i = 1; i < points.rows(); ++i) {
        for (std::size_t d = 0; d < points.cols(); ++d) {
            if (points(i, d) != points(0, d)) {
                return false;
            }
        }
    }
    return true;
}

Matrix weighted_prototypes(const Matrix& points, const Matrix& memberships, double fuzzifier,
                           const Matrix& previous) {
    const std::size_t c = memberships.cols();
    Matrix prototypes(c, points.cols());
    std::vector<double> mass(c, 0.0);
    for (std::size_t i = 0; i < points.rows(); ++i) {
        auto x = points.row(i);
        for (std::size_t j = 0; j < c; ++j) {
            const double w = std::pow(memberships(i, j), fuzzifier);
            mass[j] += w;
            auto theta = prototypes.row(j);
            for (std::size_t d = 0; d < x.size(); ++d) {
                theta[d] += w * x[d];
            }
        }
    }
    for (std::size_t j = 0; j < c; ++j) {
        auto theta = prototypes.row(j);
        if (mass[j] > 0.0) {
            for (double& value : theta) {
                value /= mass[j];
            }
        } else {
            auto old = previous.row(j);
            std::copy(old.begin(), old.end(), theta.begin());
        }
    }
    return prototypes;
}

std::vector<double> membership_moment(const Matrix& points, const FcmResult& fcm, bool squared) {
    const auto& u = fcm.memberships;
    const auto& theta = fcm.prototypes;
    require(u.rows() == points.rows() && u.cols() == theta.rows() && theta.cols() == points.cols(),
            "FCM result does not match the data");
    std::vector<double> moment(theta.rows(), 0.0);
    for (std::size_t j = 0; j < theta.rows(); ++j) {
        double weighted = 0.0;
        double mass = 0.0;
        for (std::size_t i = 0; i < points.rows(); ++i) {
            const double d2 = squared_distance(points.row(i), theta.row(j));
            weighted += u(i, j) * (squared ? d2 : std::sqrt(d2));
            mass += u(i, j);
        }
        if (!(mass > 0.0)) {
            fail(ErrorKind::DegenerateData, "cluster " + std::to_string(j) + " has no membership mass");
        }
        moment[j] = weighted / mass;
    }
    return moment;
}

}  // namespace

Matrix fcm_memberships(const Matrix& points, const Matrix& prototypes, double fuzzifier) {
    const std::size_t c = prototypes.rows();
    const double exponent = 1.0 / (fuzzifier - 1.0);
    Matrix u(points.rows(), c);
    std::vector<double> d2(c);
    for (std::size_t i = 0; i < points.rows(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        std::size_t nearest_j = 0;
        for (std::size_t j = 0; j < c; ++j) {
            d2[j] = squared_distance(points.row(i), prototypes.row(j));
            if (d2[j] < nearest) {
                nearest = d2[j];
                nearest_j = j;
            }
        }
        if (nearest == 0.0) {
            u(i, nearest_j) = 1.0;
            continue;
        }
        // Ratios relative to the nearest prototype, each in (0, 1].
        double total = 0.0;
        for (std::size_t j = 0; j < c; ++j) {
            d2[j] = std::pow(nearest / d2[j], exponent);
            total += d2[j];
        }
        for (std::size_t j = 0; j < c; ++j) {
            u(i, j) = d2[j] / total;
        }
    }
    return u;
}

double fcm_objective(const Matrix& points, const Matrix& prototypes, const Matrix& memberships, double fuzzifier) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.rows(); ++i) {
        for (std::size_t j = 0; j < prototypes.rows(); ++j) {
            total += std::pow(memberships(i, j), fuzzifier) * squared_distance(points.row(i), prototypes.row(j));
        }
    }
    return total;
}

FcmResult fcm_cluster(const Matrix& points, const FcmConfig& config, const FcmObserver& observer) {
    require(config.clusters >= 1, "FCM needs at least one cluster");
    require(config.fuzzifier > 1.0, "FCM fuzzifier must exceed 1");
    require(config.tol > 0.0, "FCM tolerance must be positive");
    require(config.max_iter >= 1, "FCM needs at least one iteration");
    require(points.rows() >= 1 && points.cols() >= 1, "FCM needs a non-empty data matrix");
    if (config.clusters > points.rows()) {
        fail(ErrorKind::InvalidArgument, "FCM asked for " + std::to_string(config.clusters) + " clusters on " +
                                             std::to_string(points.rows()) + " points");
    }
    if (config.clusters > 1 && all_rows_identical(points)) {
        fail(ErrorKind::DegenerateData, "all points are identical; cannot form more than one cluster");
    }

    Rng rng(config.seed);
    const auto start = rng.sample_without_replacement(points.rows(), config.clusters);

    FcmResult result;
    result.prototypes = points.select_rows(start);
    for (std::size_t iter = 1; iter <= config.max_iter; ++iter) {
        result.memberships = fcm_memberships(points, result.prototypes, config.fuzzifier);
        if (observer) {
            observer(iter, result.memberships, result.prototypes);
        }
        Matrix next = weighted_prototypes(points, result.memberships, config.fuzzifier, result.prototypes);
        const double moved = max_row_displacement(result.prototypes, next);
        result.prototypes = std::move(next);
        result.objective.push_back(
            fcm_objective(points, result.prototypes, result.memberships, config.fuzzifier));
        result.iterations = iter;
        if (moved < config.tol) {
            result.converged = true;
            break;
        }
    }
    return result;
}

std::vector<double> init_gamma_pcm(const Matrix& points, const FcmResult& fcm) {
    auto gamma = membership_moment(points, fcm, true);
    for (std::size_t j = 0; j < gamma.size(); ++j) {
        if (!(gamma[j] > 0.0)) {
            fail(ErrorKind::DegenerateData, "cluster " + std::to_string(j) + " has zero second moment");
        }
    }
    return gamma;
}

std::vector<double> init_eta(const Matrix& points, const FcmResult& fcm) {
    return membership_moment(points, fcm, false);
}

}  // namespace upcm
