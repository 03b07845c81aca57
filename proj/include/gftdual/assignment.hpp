#pragma once

#include <Eigen/Dense>

#include "gftdual/graph.hpp"

namespace gftdual {

/// sigma maps column i to the row it is matched with; value = sum_i s(sigma[i], i)
/// accumulated in increasing i.
struct Assignment {
  Permutation sigma;
  double value = 0.0;
};

/// Exact maximum-weight perfect matching on a square non-negative score
/// matrix. Shortest augmenting path Hungarian method, O(n^3), run on the
/// costs max(s) - s. Deterministic for a given input.
Assignment solve_assignment_max(const Eigen::MatrixXd& scores);

/// Exhaustive search over all n! permutations; n <= 9.
Assignment assignment_bruteforce(const Eigen::MatrixXd& scores);

double assignment_value(const Eigen::MatrixXd& scores, const Permutation& sigma);

}  // namespace gftdual
