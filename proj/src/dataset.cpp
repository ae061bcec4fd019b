#include "upcm/dataset.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "upcm/rng.hpp"

namespace upcm {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

double parse_double(const std::string& text, std::size_t line_no) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": not a number: '" + text + "'");
    }
    return value;
}

int parse_label(const std::string& text, std::size_t line_no) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value < 0) {
        fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": bad label '" + text + "'");
    }
    return value;
}

}  // namespace

GeneratorSpec dataset1_spec(std::uint64_t seed) {
    return GeneratorSpec{
        {{{13.0, 13.0}, 1.0, 200}, {{5.0, 0.0}, 3.7, 1000}},
        seed,
    };
}

GeneratorSpec dataset2_spec(std::uint64_t seed) {
    return GeneratorSpec{
        {{{1.0, 0.0}, 0.2, 400}, {{2.25, 1.5}, 0.2, 400}, {{1.75, 2.0}, 0.2, 400}},
        seed,
    };
}

GeneratorSpec preset_spec(const std::string& name, std::uint64_t seed) {
    if (name == "dataset1") {
        return dataset1_spec(seed);
    }
    if (name == "dataset2") {
        return dataset2_spec(seed);
    }
    fail(ErrorKind::InvalidArgument, "unknown dataset preset '" + name + "'");
}

void validate(const GeneratorSpec& spec) {
    require(!spec.components.empty(), "generator needs at least one component");
    const std::size_t dim = spec.components.front().mean.size();
    require(dim >= 1, "component means must have at least one coordinate");
    for (const auto& component : spec.components) {
        require(component.mean.size() == dim, "component means differ in dimension");
        require(component.stddev >= 0.0, "component stddev must be non-negative");
        require(component.count >= 1, "component count must be positive");
    }
}

DataMatrix generate_gaussian_mixture(const GeneratorSpec& spec) {
    validate(spec);
    const std::size_t dim = spec.components.front().mean.size();
    std::size_t total = 0;
    for (const auto& component : spec.components) {
        total += component.count;
    }

    Rng rng(spec.seed);
    GroundTruth truth;
    truth.centers = Matrix(spec.components.size(), dim);
    truth.labels.reserve(total);
    truth.seed = spec.seed;

    Matrix points(total, dim);
    std::size_t row = 0;
    for (std::size_t k = 0; k < spec.components.size(); ++k) {
        const auto& component = spec.components[k];
        std::copy(component.mean.begin(), component.mean.end(), truth.centers.row(k).begin());
        truth.stddevs.push_back(component.stddev);
        truth.counts.push_back(component.count);
        for (std::size_t i = 0; i < component.count; ++i, ++row) {
            for (std::size_t d = 0; d < dim; ++d) {
                points(row, d) = component.mean[d] + component.stddev * rng.normal();
            }
            truth.labels.push_back(static_cast<int>(k));
        }
    }
    return DataMatrix{std::move(points), std::move(truth)};
}

std::string format_double(double value) {
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

void write_points_csv(std::ostream& out, const DataMatrix& data) {
    const bool labelled = data.truth && data.truth->labels.size() == data.size();
    for (std::size_t d = 0; d < data.dim(); ++d) {
        out << (d ? "," : "") << 'x' << (d + 1);
    }
    if (labelled) {
        out << ",label";
    }
    out << '\n';
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (std::size_t d = 0; d < data.dim(); ++d) {
            out << (d ? "," : "") << format_double(data.points(i, d));
        }
        if (labelled) {
            out << ',' << data.truth->labels[i];
        }
        out << '\n';
    }
}

DataMatrix read_points_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.empty()) {
        fail(ErrorKind::Parse, "point file is empty");
    }
    if (line.back() == '\r') {
        line.pop_back();
    }
    const auto header = split_fields(line);
    bool labelled = !header.empty() && header.back() == "label";
    const std::size_t dim = header.size() - (labelled ? 1 : 0);
    if (dim == 0) {
        fail(ErrorKind::Parse, "header has no coordinate columns");
    }
    for (std::size_t d = 0; d < dim; ++d) {
        if (header[d] != "x" + std::to_string(d + 1)) {
            fail(ErrorKind::Parse, "unexpected header column '" + header[d] + "'");
        }
    }

    std::vector<double> values;
    std::vector<int> labels;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != header.size()) {
            fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected " +
                                       std::to_string(header.size()) + " columns, found " +
                                       std::to_string(fields.size()));
        }
        for (std::size_t d = 0; d < dim; ++d) {
            values.push_back(parse_double(fields[d], line_no));
        }
        if (labelled) {
            labels.push_back(parse_label(fields.back(), line_no));
        }
    }
    if (values.empty()) {
        fail(ErrorKind::Parse, "point file has a header but no rows");
    }

    DataMatrix data;
    const std::size_t rows = values.size() / dim;
    data.points = Matrix(rows, dim, std::move(values));
    if (labelled) {
        GroundTruth truth;
        truth.labels = std::move(labels);
        data.truth = std::move(truth);
    }
    return data;
}

std::filesystem::path truth_sidecar_path(const std::filesystem::path& points_path) {
    auto sidecar = points_path;
    sidecar.replace_extension(".truth.json");
    return sidecar;
}

void save_points(const DataMatrix& data, const std::filesystem::path& destination) {
    std::ofstream out(destination);
    if (!out) {
        fail(ErrorKind::Io, "cannot open '" + destination.string() + "' for writing");
    }
    write_points_csv(out, data);
    if (!out) {
        fail(ErrorKind::Io, "failed writing '" + destination.string() + "'");
    }

    if (!data.truth || data.truth->centers.empty()) {
        return;
    }
    const auto& truth = *data.truth;
    nlohmann::json sidecar;
    sidecar["centers"] = nlohmann::json::array();
    for (std::size_t k = 0; k < truth.centers.rows(); ++k) {
        auto row = truth.centers.row(k);
        sidecar["centers"].push_back(std::vector<double>(row.begin(), row.end()));
    }
    sidecar["stddevs"] = truth.stddevs;
    sidecar["counts"] = truth.counts;
    sidecar["seed"] = truth.seed;

    const auto sidecar_path = truth_sidecar_path(destination);
    std::ofstream side(sidecar_path);
    if (!side) {
        fail(ErrorKind::Io, "cannot open '" + sidecar_path.string() + "' for writing");
    }
    side << sidecar.dump(2) << '\n';
}

DataMatrix load_points(const std::filesystem::path& source) {
    std::ifstream in(source);
    if (!in) {
        fail(ErrorKind::Io, "cannot open '" + source.string() + "'");
    }
    DataMatrix data = read_points_csv(in);

    const auto sidecar_path = truth_sidecar_path(source);
    if (!std::filesystem::exists(sidecar_path)) {
        return data;
    }
    std::ifstream side(sidecar_path);
    nlohmann::json sidecar;
    try {
        side >> sidecar;
        GroundTruth truth = data.truth.value_or(GroundTruth{});
        const auto centers = sidecar.at("centers").get<std::vector<std::vector<double>>>();
        if (centers.empty()) {
            fail(ErrorKind::Parse, "sidecar lists no centers");
        }
        truth.centers = Matrix(centers.size(), data.dim());
        for (std::size_t k = 0; k < centers.size(); ++k) {
            if (centers[k].size() != data.dim()) {
                fail(ErrorKind::Parse, "sidecar center dimension does not match the points");
            }
            std::copy(centers[k].begin(), centers[k].end(), truth.centers.row(k).begin());
        }
        truth.stddevs = sidecar.at("stddevs").get<std::vector<double>>();
        truth.counts = sidecar.at("counts").get<std::vector<std::size_t>>();
        truth.seed = sidecar.at("seed").get<std::uint64_t>();
        for (int label : truth.labels) {
            if (static_cast<std::size_t>(label) >= centers.size()) {
                fail(ErrorKind::Parse, "label refers to a component the sidecar does not list");
            }
        }
        data.truth = std::move(truth);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::Parse, "malformed sidecar '" + sidecar_path.string() + "': " + e.what());
    }
    return data;
}

}  // namespace upcm
