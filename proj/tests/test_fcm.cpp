#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "test_support.hpp"
#include "upcm/dataset.hpp"
#include "upcm/error.hpp"
#include "upcm/fcm.hpp"

using namespace upcm;

namespace {

FcmResult fixed_partition(const Matrix& prototypes, const Matrix& memberships) {
    FcmResult r;
    r.prototypes = prototypes;
    r.memberships = memberships;
    return r;
}

}  // namespace

TEST_CASE("two symmetric points") {
    const Matrix points(2, 1, {-1.0, 1.0});
    const auto result = fcm_cluster(points, {2, 2.0, 1e-6, 300, 5});
    CHECK(result.prototypes(0, 0) == doctest::Approx(-1.0));
    CHECK(result.prototypes(1, 0) == doctest::Approx(1.0));
    CHECK(result.memberships(0, 0) == doctest::Approx(1.0));
    CHECK(result.memberships(1, 1) == doctest::Approx(1.0));
    CHECK(result.converged);
}

TEST_CASE("single cluster is the grand mean") {
    std::mt19937_64 gen(4);
    const auto xs = oracle::random_points(gen, 50, 3, -5.0, 5.0);
    const auto result = fcm_cluster(to_matrix(xs), {1, 2.0, 1e-6, 300, 9});
    const auto mean = oracle::weighted_mean(xs, std::vector<double>(xs.size(), 1.0));
    for (std::size_t d = 0; d < 3; ++d) {
        CHECK(result.prototypes(0, d) == doctest::Approx(mean[d]).epsilon(1e-12));
    }
    for (double u : result.memberships.data()) {
        CHECK(u == 1.0);
    }
}

TEST_CASE("FCM errors") {
    const Matrix points(3, 2, {0.0, 0.0, 1.0, 1.0, 2.0, 2.0});
    CHECK_THROWS_AS(fcm_cluster(points, {4, 2.0, 1e-6, 300, 0}), Error);
    CHECK_THROWS_AS(fcm_cluster(points, {2, 1.0, 1e-6, 300, 0}), Error);
    CHECK_THROWS_AS(fcm_cluster(points, {2, 2.0, 0.0, 300, 0}), Error);

    const Matrix same(4, 2, 3.0);
    try {
        fcm_cluster(same, {2, 2.0, 1e-6, 300, 0});
        FAIL("expected degenerate data");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateData);
    }
    CHECK_NOTHROW(fcm_cluster(same, {1, 2.0, 1e-6, 300, 0}));
}

TEST_CASE("coincident point and prototype get crisp membership") {
    const Matrix points(3, 1, {0.0, 1.0, 5.0});
    const Matrix prototypes(3, 1, {1.0, 1.0, 4.0});
    const auto u = fcm_memberships(points, prototypes, 2.0);
    CHECK(u(1, 0) == 1.0);
    CHECK(u(1, 1) == 0.0);
    CHECK(u(1, 2) == 0.0);
}

TEST_CASE("dataset 1 prototypes land near the true centers") {
    const auto data = generate_gaussian_mixture(dataset1_spec(7));
    const auto result = fcm_cluster(data.points, {2, 2.0, 1e-6, 300, 1});
    const auto truth = to_points(data.truth->centers);
    const auto protos = to_points(result.prototypes);
    const double direct = oracle::dist(protos[0], truth[0]) + oracle::dist(protos[1], truth[1]);
    const double swapped = oracle::dist(protos[0], truth[1]) + oracle::dist(protos[1], truth[0]);
    const bool keep = direct <= swapped;
    const std::size_t small = keep ? 0 : 1;
    const std::size_t wide = 1 - small;
    CHECK(oracle::dist(protos[small], truth[0]) < 2.0);
    CHECK(oracle::dist(protos[wide], truth[1]) < 1.0);
}

TEST_CASE("membership rows sum to one and the objective never increases") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 10; ++trial) {
        const auto xs = oracle::random_points(gen, 80, 2, 0.0, 10.0);
        const std::size_t c = 2 + static_cast<std::size_t>(trial % 5);
        auto observer = [](std::size_t, const Matrix& u, const Matrix&) {
            for (std::size_t i = 0; i < u.rows(); ++i) {
                double sum = 0.0;
                for (std::size_t j = 0; j < u.cols(); ++j) {
                    CHECK(u(i, j) >= 0.0);
                    CHECK(u(i, j) <= 1.0);
                    sum += u(i, j);
                }
                CHECK(std::abs(sum - 1.0) <= 1e-12);
            }
        };
        const auto result = fcm_cluster(to_matrix(xs), {c, 2.0, 1e-6, 300, static_cast<std::uint64_t>(trial)}, observer);
        for (std::size_t k = 1; k < result.objective.size(); ++k) {
            CHECK(result.objective[k] <= result.objective[k - 1] * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("FCM is deterministic for a seed") {
    const auto data = generate_gaussian_mixture(dataset2_spec(1));
    const auto a = fcm_cluster(data.points, {10, 2.0, 1e-6, 300, 3});
    const auto b = fcm_cluster(data.points, {10, 2.0, 1e-6, 300, 3});
    CHECK(a.prototypes == b.prototypes);
    CHECK(a.memberships == b.memberships);
}

TEST_CASE("gamma initialisation") {
    const Matrix points(2, 1, {1.0, 3.0});
    const auto fcm = fixed_partition(Matrix(1, 1, 0.0), Matrix(2, 1, 1.0));
    CHECK(init_gamma_pcm(points, fcm) == std::vector<double>{5.0});

    const Matrix stacked(3, 2, 4.0);
    const auto collapsed = fixed_partition(Matrix(1, 2, 4.0), Matrix(3, 1, 1.0));
    CHECK_THROWS_AS(init_gamma_pcm(stacked, collapsed), Error);

    const auto massless = fixed_partition(Matrix(1, 1, 0.0), Matrix(2, 1, 0.0));
    CHECK_THROWS_AS(init_gamma_pcm(points, massless), Error);
    CHECK_THROWS_AS(init_eta(points, massless), Error);
}

TEST_CASE("gamma on dataset 1 matches an independent sum") {
    const auto data = generate_gaussian_mixture(dataset1_spec(7));
    const auto fcm = fcm_cluster(data.points, {2, 2.0, 1e-6, 300, 1});
    const auto gamma = init_gamma_pcm(data.points, fcm);

    // Independent summation.
    const auto xs = to_points(data.points);
    const auto protos = to_points(fcm.prototypes);
    std::vector<double> expected(2, 0.0);
    for (std::size_t j = 0; j < 2; ++j) {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double d = oracle::dist(xs[i], protos[j]);
            num += fcm.memberships(i, j) * d * d;
            den += fcm.memberships(i, j);
        }
        expected[j] = num / den;
        CHECK(gamma[j] == doctest::Approx(expected[j]).epsilon(1e-10));
    }
}

TEST_CASE("eta initialisation") {
    const Matrix points(2, 1, {1.0, 3.0});
    CHECK(init_eta(points, fixed_partition(Matrix(1, 1, 0.0), Matrix(2, 1, 1.0))) == std::vector<double>{2.0});

    const Matrix single(1, 1, 5.0);
    CHECK(init_eta(single, fixed_partition(Matrix(1, 1, 5.0), Matrix(1, 1, 1.0))) == std::vector<double>{0.0});

    const auto data = generate_gaussian_mixture(dataset2_spec(7));
    const auto fcm = fcm_cluster(data.points, {10, 2.0, 1e-6, 300, 1});
    for (double eta : init_eta(data.points, fcm)) {
        CHECK(eta > 0.0);
        CHECK(eta < 1.0);
    }
}

TEST_CASE("first absolute moment never exceeds the root second moment") {
    std::mt19937_64 gen(21);
    for (int trial = 0; trial < 20; ++trial) {
        const auto xs = oracle::random_points(gen, 60, 3, -4.0, 4.0);
        const auto points = to_matrix(xs);
        const auto fcm = fcm_cluster(points, {4, 2.0, 1e-6, 300, static_cast<std::uint64_t>(trial)});
        const auto eta = init_eta(points, fcm);
        const auto gamma = init_gamma_pcm(points, fcm);
        for (std::size_t j = 0; j < eta.size(); ++j) {
            CHECK(eta[j] <= std::sqrt(gamma[j]) * (1.0 + 1e-12));
        }
    }
}
