#pragma once

#include <vector>

namespace polywave::detail {

// Partial-pivot Gaussian elimination on a row-major n x n system.
// Throws SingularSystem on rank deficiency.
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b);

}  // namespace polywave::detail
