#ifndef UPCM_ASSIGNMENT_HPP
#define UPCM_ASSIGNMENT_HPP

#include <cstddef>
#include <vector>

#include "upcm/matrix.hpp"

namespace upcm {

/// Minimum-cost matching of every row of `cost` to a distinct column
/// (requires rows <= cols). Returns the chosen column for each row.
/// Hungarian method with potentials, O(rows^2 * cols).
std::vector<std::size_t> solve_assignment(const Matrix& cost);

/// Sum of distances between estimated and true centers.
///
/// - k == c*: minimum over one-to-one pairings.
/// - k <  c*: each estimate is paired with a distinct truth center and every
///   truth center left over is charged its distance to the nearest estimate;
///   the pairing minimises the total. With k == 1 this charges every truth
///   center its distance to the single estimate.
/// - k >  c*: each estimate is charged its distance to the nearest truth center.
double center_estimation_error(const Matrix& estimated, const Matrix& truth);

}  // namespace upcm

#endif  // UPCM_ASSIGNMENT_HPP
