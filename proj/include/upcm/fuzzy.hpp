#ifndef UPCM_FUZZY_HPP
#define UPCM_FUZZY_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace upcm::fuzzy {

/// Exponents below this flush the membership to exactly 0.
inline constexpr double kExponentFloor = -700.0;

/// exp(exponent), returning 0 for exponents below kExponentFloor.
double clamped_exp(double exponent) noexcept;

/// A Gaussian bandwidth estimate `v0` whose value is itself uncertain, with
/// Gaussian secondary spread `sigma_v`. sigma_v == 0 means a crisp bandwidth.
struct FuzzyBandwidth {
    double v0 = 1.0;
    double sigma_v = 0.0;
};

void validate(const FuzzyBandwidth& fb);

/// Gaussian membership centred at `center` with an uncertain bandwidth.
struct GaussianPrimary {
    std::vector<double> center;
    FuzzyBandwidth bandwidth;

    /// Marginal membership of point `x`.
    double operator()(std::span<const double> x) const;
};

/// exp(-d^2 / v^2).
double primary_membership(double d, double v);

/// exp(-(v - v0)^2 / sigma_v^2). Requires sigma_v > 0; the crisp case has no
/// secondary membership function.
double secondary_membership(double v, const FuzzyBandwidth& fb);

/// Squared bandwidth of the marginal set at distance `d`:
///
///     (0.5 v0 + 0.5 sqrt(v0^2 + 4 sigma_v d))^2
///
/// which is the square of the larger root of the intersection between the
/// primary curve (increasing in v) and the secondary curve (decreasing for
/// v > v0). Returns exactly v0^2 when sigma_v == 0 or d == 0.
///
/// The term sigma_v * d is added to v0^2 as written, so sigma_v carries
/// distance units and the expression stays consistent in units of distance^2.
double corrected_bandwidth(double v0, double sigma_v, double d);

/// max over v of min(primary(d, v), secondary(v)), in closed form:
/// exp(-d^2 / corrected_bandwidth(v0, sigma_v, d)). For sigma_v == 0 this is
/// the same expression evaluation as primary_membership(d, v0).
double marginal_membership(double d, const FuzzyBandwidth& fb);

/// Sampling grid over the secondary variable for the brute-force oracle.
struct BandwidthGrid {
    double v_min = 0.0;
    double v_max = 0.0;
    std::size_t steps = 0;
};

/// Grid covering [max(eps, v0 - 6 sigma_v), v0 + 6 sigma_v + sqrt(4 sigma_v d)].
BandwidthGrid default_oracle_grid(double d, const FuzzyBandwidth& fb, std::size_t steps = 100000);

/// Brute-force max-min composition evaluated on `grid` (steps + 1 nodes,
/// endpoints included). Independent of the closed form; used to check it.
double marginal_oracle(double d, const FuzzyBandwidth& fb, const BandwidthGrid& grid);

struct CurveSample {
    double sigma_v;
    double x;
    double membership;
};

/// One-dimensional marginal curves around `x0`, one per entry in `sigma_values`,
/// sampled at `steps + 1` evenly spaced x in [x_min, x_max].
std::vector<CurveSample> marginal_curves(double x0, double v0, std::span<const double> sigma_values,
                                         double x_min, double x_max, std::size_t steps);

}  // namespace upcm::fuzzy

#endif  // UPCM_FUZZY_HPP
