#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "test_support.hpp"
#include "upcm/apcm.hpp"
#include "upcm/assignment.hpp"
#include "upcm/dataset.hpp"
#include "upcm/error.hpp"
#include "upcm/partition.hpp"

using namespace upcm;

namespace {

ApcmConfig dataset1_config(double alpha) {
    ApcmConfig config;
    config.m_ini = 2;
    config.alpha = alpha;
    config.seed = 1;
    return config;
}

}  // namespace

TEST_CASE("gamma from eta") {
    const std::vector<double> eta{1.0, 2.0};
    CHECK(apcm_gamma(eta, 1.0, 1.0) == eta);
    CHECK(apcm_gamma(eta, 1.0, 0.5) == std::vector<double>{2.0, 4.0});
    CHECK_THROWS_AS(apcm_gamma(eta, 1.0, 0.0), Error);

    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> pos(0.1, 5.0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::vector<double> e{pos(gen), pos(gen), pos(gen)};
        const double hat = *std::min_element(e.begin(), e.end());
        const double alpha = pos(gen);
        const double k = pos(gen);
        const auto base = apcm_gamma(e, hat, alpha);
        const auto scaled = apcm_gamma(e, hat, alpha * k);
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(scaled[j] == doctest::Approx(base[j] / k).epsilon(1e-14));
        }
    }
}

TEST_CASE("most compatible sets") {
    const Matrix u(3, 2, {0.9, 0.1, 0.2, 0.8, 0.5, 0.5});
    const auto sets = most_compatible_sets(u);
    REQUIRE(sets.members.size() == 2);
    CHECK(sets.members[0] == std::vector<std::size_t>{0, 2});
    CHECK(sets.members[1] == std::vector<std::size_t>{1});

    const Matrix zero(2, 2, {0.0, 0.0, 0.3, 0.1});
    const auto partial = most_compatible_sets(zero);
    CHECK(partial.members[0] == std::vector<std::size_t>{1});
    CHECK(partial.members[1].empty());

    std::mt19937_64 gen(6);
    std::uniform_int_distribution<int> level(0, 4);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::vector<double>> rows(6, std::vector<double>(3));
        for (auto& row : rows) {
            for (double& v : row) {
                v = 0.25 * level(gen);
            }
        }
        const auto got = most_compatible_sets(to_matrix(rows));
        std::vector<std::vector<std::size_t>> expected(3);
        const auto labels = oracle::row_argmax(rows);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const int j = labels[i];
            if (j >= 0) {
                expected[static_cast<std::size_t>(j)].push_back(i);
            }
        }
        CHECK(got.members == expected);
    }
}

TEST_CASE("eta update") {
    const Matrix points(4, 2, {1.0, 0.0, 3.0, 0.0, 7.0, 7.0, 0.0, 0.0});
    CompatibleSets sets{{{0, 1}, {2}, {}}};
    const auto eta = apcm_eta_update(points, sets);
    CHECK(eta[0] == doctest::Approx(1.0));
    CHECK(eta[1] == 0.0);
    CHECK(eta[2] == 0.0);

    const Matrix square(4, 2, {0.0, 0.0, 2.0, 0.0, 0.0, 2.0, 2.0, 2.0});
    CHECK(apcm_eta_update(square, CompatibleSets{{{0, 1, 2, 3}}})[0] ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    std::mt19937_64 gen(7);
    const auto xs = oracle::random_points(gen, 25, 3, -1.0, 4.0);
    std::vector<std::size_t> all(xs.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    const auto mu = oracle::weighted_mean(xs, std::vector<double>(xs.size(), 1.0));
    CHECK(apcm_eta_update(to_matrix(xs), CompatibleSets{{all}})[0] ==
          doctest::Approx(oracle::mean_abs_deviation(xs, mu)).epsilon(1e-13));
}

TEST_CASE("dataset 1 runs across alpha") {
    const auto data = generate_gaussian_mixture(dataset1_spec(7));
    const auto& truth = data.truth->centers;

    SUBCASE("moderate alpha finds both clusters") {
        for (double alpha : {0.6, 1.0, 2.0, 5.0}) {
            const auto model = apcm_run(data.points, dataset1_config(alpha));
            CHECK(model.cluster_count() == 2);
            CHECK(center_estimation_error(model.prototypes, truth) <= 1.0);
        }
    }
    SUBCASE("small alpha merges into one cluster") {
        const auto model = apcm_run(data.points, dataset1_config(0.01));
        CHECK(model.cluster_count() == 1);
    }
    SUBCASE("very large alpha loses clusters") {
        const auto model = apcm_run(data.points, dataset1_config(1e4));
        CHECK(model.cluster_count() < 2);
    }
}

TEST_CASE("cluster count never grows and gamma shrinks with alpha") {
    const auto data = generate_gaussian_mixture(dataset2_spec(3));
    for (double alpha : {0.1, 1.0, 10.0}) {
        ApcmConfig config;
        config.alpha = alpha;
        config.seed = 2;
        std::size_t last = config.m_ini;
        apcm_run(data.points, config, [&](std::size_t, const ActiveClusters& s) {
            CHECK(s.count() <= last);
            last = s.count();
        });
    }

    const std::vector<double> eta{0.3, 0.5, 0.8};
    const auto low = apcm_gamma(eta, 0.3, 1.0);
    const auto high = apcm_gamma(eta, 0.3, 2.0);
    for (std::size_t j = 0; j < eta.size(); ++j) {
        CHECK(high[j] < low[j]);
    }
}

TEST_CASE("invalid configuration") {
    const auto data = generate_gaussian_mixture(dataset1_spec(7));
    CHECK_THROWS_AS(apcm_run(data.points, dataset1_config(0.0)), Error);
    CHECK_THROWS_AS(apcm_run(data.points, dataset1_config(-1.0)), Error);
    auto config = dataset1_config(1.0);
    config.m_ini = 0;
    CHECK_THROWS_AS(apcm_run(data.points, config), Error);
}
