#ifndef UPCM_MATRIX_HPP
#define UPCM_MATRIX_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "upcm/error.hpp"

namespace upcm {

/// Dense row-major matrix of doubles. Rows are points (or prototypes),
/// columns are coordinates (or clusters, for membership matrices).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), values_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
        : rows_(rows), cols_(cols), values_(std::move(values)) {
        require(values_.size() == rows_ * cols_, "matrix storage does not match its shape");
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return values_.empty(); }

    double& operator()(std::size_t r, std::size_t c) noexcept { return values_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return values_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) noexcept { return {values_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const noexcept { return {values_.data() + r * cols_, cols_}; }

    std::span<const double> data() const noexcept { return values_; }
    std::span<double> data() noexcept { return values_; }

    /// Keeps the listed rows, in the given order.
    Matrix select_rows(std::span<const std::size_t> keep) const {
        Matrix out(keep.size(), cols_);
        for (std::size_t k = 0; k < keep.size(); ++k) {
            auto src = row(keep[k]);
            std::copy(src.begin(), src.end(), out.row(k).begin());
        }
        return out;
    }

    /// Keeps the listed columns, in the given order.
    Matrix select_cols(std::span<const std::size_t> keep) const {
        Matrix out(rows_, keep.size());
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t k = 0; k < keep.size(); ++k) {
                out(r, k) = (*this)(r, keep[k]);
            }
        }
        return out;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        sum += diff * diff;
    }
    return sum;
}

inline double distance(std::span<const double> a, std::span<const double> b) noexcept {
    return std::sqrt(squared_distance(a, b));
}

/// Largest Euclidean displacement between matching rows of two same-shape matrices.
inline double max_row_displacement(const Matrix& before, const Matrix& after) noexcept {
    double worst = 0.0;
    for (std::size_t r = 0; r < before.rows(); ++r) {
        worst = std::max(worst, distance(before.row(r), after.row(r)));
    }
    return worst;
}

}  // namespace upcm

#endif  // UPCM_MATRIX_HPP
