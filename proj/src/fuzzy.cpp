#include "upcm/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "upcm/error.hpp"
#include "upcm/matrix.hpp"

namespace upcm::fuzzy {

double clamped_exp(double exponent) noexcept {
    return exponent < kExponentFloor ? 0.0 : std::exp(exponent);
}

void validate(const FuzzyBandwidth& fb) {
    require(fb.v0 > 0.0, "bandwidth v0 must be positive");
    require(fb.sigma_v >= 0.0, "bandwidth spread sigma_v must be non-negative");
}

double GaussianPrimary::operator()(std::span<const double> x) const {
    require(x.size() == center.size(), "point dimension does not match the membership center");
    return marginal_membership(distance(x, center), bandwidth);
}

double primary_membership(double d, double v) {
    require(v > 0.0, "primary membership needs a positive bandwidth");
    return clamped_exp(-(d * d) / (v * v));
}

double secondary_membership(double v, const FuzzyBandwidth& fb) {
    require(fb.sigma_v > 0.0, "secondary membership is undefined for a crisp bandwidth (sigma_v == 0)");
    const double offset = v - fb.v0;
    return clamped_exp(-(offset * offset) / (fb.sigma_v * fb.sigma_v));
}

double corrected_bandwidth(double v0, double sigma_v, double d) {
    require(v0 > 0.0 && sigma_v >= 0.0 && d >= 0.0, "corrected bandwidth needs v0 > 0, sigma_v >= 0, d >= 0");
    if (sigma_v == 0.0 || d == 0.0) {
        return v0 * v0;
    }
    const double root = 0.5 * v0 + 0.5 * std::sqrt(v0 * v0 + 4.0 * sigma_v * d);
    return root * root;
}

double marginal_membership(double d, const FuzzyBandwidth& fb) {
    validate(fb);
    require(d >= 0.0, "distance must be non-negative");
    if (fb.sigma_v == 0.0) {
        return primary_membership(d, fb.v0);
    }
    return clamped_exp(-(d * d) / corrected_bandwidth(fb.v0, fb.sigma_v, d));
}

BandwidthGrid default_oracle_grid(double d, const FuzzyBandwidth& fb, std::size_t steps) {
    constexpr double kEps = 1e-6;
    return BandwidthGrid{
        std::max(kEps, fb.v0 - 6.0 * fb.sigma_v),
        fb.v0 + 6.0 * fb.sigma_v + std::sqrt(4.0 * fb.sigma_v * d),
        steps,
    };
}

double marginal_oracle(double d, const FuzzyBandwidth& fb, const BandwidthGrid& grid) {
    validate(fb);
    require(fb.sigma_v > 0.0, "the oracle composes against a secondary set; sigma_v must be positive");
    require(grid.steps > 0 && grid.v_min > 0.0 && grid.v_max > grid.v_min, "oracle grid is empty or inverted");

    const double step = (grid.v_max - grid.v_min) / static_cast<double>(grid.steps);
    double best = 0.0;
    for (std::size_t k = 0; k <= grid.steps; ++k) {
        const double v = k == grid.steps ? grid.v_max : grid.v_min + step * static_cast<double>(k);
        const double primary = std::exp(-(d * d) / (v * v));
        const double offset = v - fb.v0;
        const double secondary = std::exp(-(offset * offset) / (fb.sigma_v * fb.sigma_v));
        best = std::max(best, std::min(primary, secondary));
    }
    return best;
}

std::vector<CurveSample> marginal_curves(double x0, double v0, std::span<const double> sigma_values,
                                         double x_min, double x_max, std::size_t steps) {
    require(steps > 0 && x_max > x_min, "curve range is empty or inverted");
    std::vector<CurveSample> samples;
    samples.reserve(sigma_values.size() * (steps + 1));
    const double step = (x_max - x_min) / static_cast<double>(steps);
    for (double sigma_v : sigma_values) {
        const FuzzyBandwidth fb{v0, sigma_v};
        validate(fb);
        for (std::size_t k = 0; k <= steps; ++k) {
            const double x = k == steps ? x_max : x_min + step * static_cast<double>(k);
            samples.push_back({sigma_v, x, marginal_membership(std::abs(x - x0), fb)});
        }
    }
    return samples;
}

}  // namespace upcm::fuzzy
