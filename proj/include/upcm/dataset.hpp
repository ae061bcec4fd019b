#ifndef UPCM_DATASET_HPP
#define UPCM_DATASET_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "upcm/matrix.hpp"

namespace upcm {

/// One isotropic normal component: mean, per-coordinate standard deviation, sample count.
struct MixtureComponent {
    std::vector<double> mean;
    double stddev = 0.0;
    std::size_t count = 0;
};

struct GeneratorSpec {
    std::vector<MixtureComponent> components;
    std::uint64_t seed = 0;
};

/// Generator parameters kept next to the points. Labels are per point, the rest per component.
struct GroundTruth {
    Matrix centers;
    std::vector<int> labels;
    std::vector<double> stddevs;
    std::vector<std::size_t> counts;
    std::uint64_t seed = 0;
};

struct DataMatrix {
    Matrix points;
    std::optional<GroundTruth> truth;

    std::size_t size() const noexcept { return points.rows(); }
    std::size_t dim() const noexcept { return points.cols(); }
};

/// Two well separated clusters of very different spread (200 points at
/// [13,13] with sd 1, 1000 points at [5,0] with sd 3.7).
GeneratorSpec dataset1_spec(std::uint64_t seed);
/// Three clusters of 400 points with sd 0.2 at [1,0], [2.25,1.5], [1.75,2];
/// the last two overlap.
GeneratorSpec dataset2_spec(std::uint64_t seed);
/// Looks up "dataset1" / "dataset2".
GeneratorSpec preset_spec(const std::string& name, std::uint64_t seed);

void validate(const GeneratorSpec& spec);

/// Samples the mixture component by component, in spec order. Coordinates of
/// a point are drawn consecutively from one Rng seeded with `spec.seed`.
DataMatrix generate_gaussian_mixture(const GeneratorSpec& spec);

/// CSV with header `x1,...,xD[,label]`, values in shortest round-trip form.
void write_points_csv(std::ostream& out, const DataMatrix& data);
/// Parses the CSV above. Truth labels, when a label column exists, are kept
/// in the returned truth record (centers left empty).
DataMatrix read_points_csv(std::istream& in);

/// Sidecar path next to a point file: `d1.csv` -> `d1.truth.json`.
std::filesystem::path truth_sidecar_path(const std::filesystem::path& points_path);

/// Writes the CSV and, when truth is present, the sidecar JSON
/// `{"centers": [[...]], "stddevs": [...], "counts": [...], "seed": n}`.
void save_points(const DataMatrix& data, const std::filesystem::path& destination);
/// Reads the CSV and merges the sidecar when it exists.
DataMatrix load_points(const std::filesystem::path& source);

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace upcm

#endif  // UPCM_DATASET_HPP
