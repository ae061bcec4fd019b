#include "upcm/assignment.hpp"

#include <limits>

#include "upcm/error.hpp"

namespace upcm {

std::vector<std::size_t> solve_assignment(const Matrix& cost) {
    const std::size_t n = cost.rows();
    const std::size_t m = cost.cols();
    require(n <= m, "assignment needs at least as many columns as rows");
    if (n == 0) {
        return {};
    }
    constexpr double kInf = std::numeric_limits<double>::infinity();

    // 1-based arrays; column 0 is the virtual start column.
    std::vector<double> row_potential(n + 1, 0.0), col_potential(m + 1, 0.0);
    std::vector<std::size_t> col_owner(m + 1, 0), way(m + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        col_owner[0] = i;
        std::size_t col = 0;
        std::vector<double> min_slack(m + 1, kInf);
        std::vector<bool> used(m + 1, false);
        do {
            used[col] = true;
            const std::size_t row = col_owner[col];
            double delta = kInf;
            std::size_t next = 0;
            for (std::size_t j = 1; j <= m; ++j) {
                if (used[j]) {
                    continue;
                }
                const double slack = cost(row - 1, j - 1) - row_potential[row] - col_potential[j];
                if (slack < min_slack[j]) {
                    min_slack[j] = slack;
                    way[j] = col;
                }
                if (min_slack[j] < delta) {
                    delta = min_slack[j];
                    next = j;
                }
            }
            for (std::size_t j = 0; j <= m; ++j) {
                if (used[j]) {
                    row_potential[col_owner[j]] += delta;
                    col_potential[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            col = next;
        } while (col_owner[col] != 0);
        do {
            const std::size_t prev = way[col];
            col_owner[col] = col_owner[prev];
            col = prev;
        } while (col != 0);
    }

    std::vector<std::size_t> assignment(n);
    for (std::size_t j = 1; j <= m; ++j) {
        if (col_owner[j] != 0) {
            assignment[col_owner[j] - 1] = j - 1;
        }
    }
    return assignment;
}

double center_estimation_error(const Matrix& estimated, const Matrix& truth) {
    require(estimated.rows() >= 1, "center error needs at least one estimated center");
    require(truth.rows() >= 1, "center error needs at least one true center");
    require(estimated.cols() == truth.cols(), "estimated and true centers differ in dimension");
    const std::size_t k = estimated.rows();
    const std::size_t c = truth.rows();

    Matrix dist(k, c);
    for (std::size_t e = 0; e < k; ++e) {
        for (std::size_t t = 0; t < c; ++t) {
            dist(e, t) = distance(estimated.row(e), truth.row(t));
        }
    }

    if (k > c) {
        double total = 0.0;
        for (std::size_t e = 0; e < k; ++e) {
            double nearest = dist(e, 0);
            for (std::size_t t = 1; t < c; ++t) {
                nearest = std::min(nearest, dist(e, t));
            }
            total += nearest;
        }
        return total;
    }

    // cost(e, t) = dist(e, t) - nearest(t); the unpaired truths add sum nearest(t).
    std::vector<double> nearest(c);
    for (std::size_t t = 0; t < c; ++t) {
        nearest[t] = dist(0, t);
        for (std::size_t e = 1; e < k; ++e) {
            nearest[t] = std::min(nearest[t], dist(e, t));
        }
    }
    Matrix cost(k, c);
    for (std::size_t e = 0; e < k; ++e) {
        for (std::size_t t = 0; t < c; ++t) {
            cost(e, t) = dist(e, t) - nearest[t];
        }
    }
    const auto pairing = solve_assignment(cost);
    std::vector<bool> paired(c, false);
    double total = 0.0;
    for (std::size_t e = 0; e < k; ++e) {
        total += dist(e, pairing[e]);
        paired[pairing[e]] = true;
    }
    for (std::size_t t = 0; t < c; ++t) {
        if (!paired[t]) {
            total += nearest[t];
        }
    }
    return total;
}

}  // namespace upcm
