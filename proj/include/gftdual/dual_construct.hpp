#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <optional>

#include "gftdual/graph.hpp"

namespace gftdual {

enum class DualStatus { Feasible, Infeasible };

const char* to_string(DualStatus status) noexcept;

struct DualConstructionResult {
  DualStatus status = DualStatus::Infeasible;
  Eigen::VectorXd lambda;     // set when Feasible
  Eigen::MatrixXd adjacency;  // V^T diag(lambda) V, clamped; set when Feasible
  std::optional<Graph> graph;
};

/// A(lambda) = V^T diag(lambda) V, i.e. A_ij = sum_k lambda_k V_ki V_kj.
Eigen::MatrixXd dual_adjacency(const Eigen::MatrixXd& v, const Eigen::VectorXd& lambda);

/// Looks for eigenvalues lambda making A(lambda) a valid adjacency with no
/// isolated vertex: zero diagonal, non-negative entries, every row sum >= 1.
/// Pure feasibility LP in the free variables lambda. V is the canonical
/// eigenvector matrix of g. Entries of a feasible A(lambda) below 1e-9 are
/// clamped to zero and the diagonal is set to exactly zero.
DualConstructionResult construct_dual(const Graph& g);

/// Same construction for an explicitly supplied (orthogonal) V.
DualConstructionResult construct_dual_from_vectors(const Eigen::MatrixXd& v);

struct DualWitnessResiduals {
  double diagonal = 0.0;        // max |A_ii|
  double nonnegativity = 0.0;   // max(0, -min_{i != j} A_ij)
  double row_sum = 0.0;         // max(0, 1 - min_i sum_j A_ij)

  double max() const { return std::max({diagonal, nonnegativity, row_sum}); }
};

DualWitnessResiduals verify_dual_witness(const Graph& g, const Eigen::VectorXd& lambda);
DualWitnessResiduals verify_dual_witness_vectors(const Eigen::MatrixXd& v, const Eigen::VectorXd& lambda);

}  // namespace gftdual
