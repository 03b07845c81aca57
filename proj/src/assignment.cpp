#include "gftdual/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "gftdual/error.hpp"

namespace gftdual {

namespace {

void check_scores(const Eigen::MatrixXd& s) {
  if (s.rows() != s.cols()) throw Error(Errc::NotSquare, "score matrix is not square");
  for (Eigen::Index j = 0; j < s.cols(); ++j) {
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
      if (!std::isfinite(s(i, j))) throw Error(Errc::NonFiniteEntry, "score matrix entry is not finite");
      if (s(i, j) < 0.0) throw Error(Errc::InvalidArgument, "score matrix entry is negative");
    }
  }
}

}  // namespace

double assignment_value(const Eigen::MatrixXd& scores, const Permutation& sigma) {
  double value = 0.0;
  for (int i = 0; i < sigma.size(); ++i) value += scores(sigma[i], i);
  return value;
}

Assignment solve_assignment_max(const Eigen::MatrixXd& scores) {
  check_scores(scores);
  const int n = static_cast<int>(scores.rows());
  if (n == 0) return {Permutation::identity(0), 0.0};
  const double top = scores.maxCoeff();
  // Workers are the columns of `scores`, jobs are its rows; 1-based with a
  // virtual job 0 as in the classical potentials formulation.
  auto cost = [&](int worker, int job) { return top - scores(job - 1, worker - 1); };

  const double inf = std::numeric_limits<double>::infinity();
  const std::size_t m = static_cast<std::size_t>(n) + 1;
  std::vector<double> u(m, 0.0), v(m, 0.0), minv(m);
  std::vector<int> owner(m, 0), way(m, 0);
  std::vector<char> used(m);

  for (int worker = 1; worker <= n; ++worker) {
    owner[0] = worker;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = owner[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const int j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> sigma(static_cast<std::size_t>(n));
  for (int job = 1; job <= n; ++job) sigma[owner[job] - 1] = job - 1;
  Permutation perm(std::move(sigma));
  const double value = assignment_value(scores, perm);
  return {std::move(perm), value};
}

Assignment assignment_bruteforce(const Eigen::MatrixXd& scores) {
  check_scores(scores);
  const int n = static_cast<int>(scores.rows());
  if (n > 9) throw Error(Errc::TooLarge, "brute-force assignment limited to n <= 9");
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<int> best = sigma;
  double best_value = -std::numeric_limits<double>::infinity();
  do {
    double value = 0.0;
    for (int i = 0; i < n; ++i) value += scores(sigma[i], i);
    if (value > best_value) {
      best_value = value;
      best = sigma;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  if (n == 0) best_value = 0.0;
  return {Permutation(std::move(best)), best_value};
}

}  // namespace gftdual
