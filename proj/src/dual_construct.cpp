#include "gftdual/dual_construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gftdual/error.hpp"
#include "gftdual/lp.hpp"
#include "gftdual/spectral.hpp"

namespace gftdual {

const char* to_string(DualStatus status) noexcept {
  return status == DualStatus::Feasible ? "FEASIBLE" : "INFEASIBLE";
}

Eigen::MatrixXd dual_adjacency(const Eigen::MatrixXd& v, const Eigen::VectorXd& lambda) {
  if (v.rows() != v.cols() || lambda.size() != v.rows()) throw Error(Errc::SizeMismatch, "dual_adjacency operands");
  return v.transpose() * lambda.asDiagonal() * v;
}

DualConstructionResult construct_dual_from_vectors(const Eigen::MatrixXd& v) {
  const Eigen::Index n = v.rows();
  if (v.cols() != n) throw Error(Errc::SizeMismatch, "eigenvector matrix is not square");

  // Coefficient of lambda_k in A_ij is V_ki V_kj.
  auto entry_row = [&](Eigen::Index i, Eigen::Index j) -> Eigen::VectorXd {
    return v.col(i).cwiseProduct(v.col(j));
  };
  const Eigen::VectorXd column_sums = v.rowwise().sum();

  LinearProgram lp(static_cast<int>(n));
  for (Eigen::Index i = 0; i < n; ++i) lp.add_constraint(entry_row(i, i), Relation::Equal, 0.0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) lp.add_constraint(entry_row(i, j), Relation::GreaterEqual, 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    // sum_j A_ij = sum_k lambda_k V_ki (sum_j V_kj)
    lp.add_constraint(v.col(i).cwiseProduct(column_sums), Relation::GreaterEqual, 1.0);
  }

  const LpResult sol = solve_lp(lp);
  DualConstructionResult out;
  if (sol.status != LpStatus::Optimal) return out;

  out.status = DualStatus::Feasible;
  out.lambda = sol.y;
  Eigen::MatrixXd a = dual_adjacency(v, sol.y);
  a = 0.5 * (a + a.transpose());
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
      if (a(i, j) < 1e-9) a(i, j) = 0.0;
  }
  out.adjacency = a;
  out.graph = Graph::from_adjacency(std::move(a));
  return out;
}

DualConstructionResult construct_dual(const Graph& g) { return construct_dual_from_vectors(eigendecompose(g).vectors); }

DualWitnessResiduals verify_dual_witness_vectors(const Eigen::MatrixXd& v, const Eigen::VectorXd& lambda) {
  const Eigen::MatrixXd a = dual_adjacency(v, lambda);
  const Eigen::Index n = a.rows();
  DualWitnessResiduals r;
  double min_off = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    r.diagonal = std::max(r.diagonal, std::abs(a(i, i)));
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j) min_off = std::min(min_off, a(i, j));
  }
  if (n > 1) r.nonnegativity = std::max(0.0, -min_off);
  r.row_sum = std::max(0.0, 1.0 - a.rowwise().sum().minCoeff());
  return r;
}

DualWitnessResiduals verify_dual_witness(const Graph& g, const Eigen::VectorXd& lambda) {
  if (lambda.size() != g.size()) throw Error(Errc::SizeMismatch, "lambda length differs from graph size");
  return verify_dual_witness_vectors(eigendecompose(g).vectors, lambda);
}

}  // namespace gftdual
