#pragma once

#include <Eigen/Dense>

#include <vector>

namespace gftdual {

/// W = 1/2 [0, V1^T (.) V2; V1 (.) V2^T, 0], so that for real sign vectors
/// x = (d1; d2) the permutation-free trace objective equals x^T W x.
struct CouplingMatrix {
  Eigen::MatrixXd w;
  int n = 0;
};

CouplingMatrix build_coupling(const Eigen::MatrixXd& v1, const Eigen::MatrixXd& v2);

/// Certified value of min { sum(nu) : diag(nu) - W >= 0 }.
struct BoundResult {
  Eigen::VectorXd nu;
  double bound = 0.0;             // sum(nu) after the feasibility repair
  double min_eig_residual = 0.0;  // lambda_min(diag(nu) - W) of the returned nu
  int cuts = 0;                   // eigenvector cuts added beyond the unit seeds
  int rounds = 0;                 // master LP solves or interior-point steps
  std::vector<double> master_history;  // sum(nu) per round
};

enum class DupMethod { InteriorPoint, CuttingPlane };

struct DupOptions {
  DupMethod method = DupMethod::InteriorPoint;
  double tol = 1e-7;            // cutting planes stop once lambda_min >= -tol
  int max_cuts = 2000;
  double ip_gap = 1e-10;        // relative primal-dual gap for the interior point
  int max_ip_iterations = 200;
};

/// Upper bound on Re tr(V1 D1 V2 D2) over all unit-modulus phases.
///
/// InteriorPoint: primal-dual path following on the SDP pair; nu stays
/// strictly dual feasible and the loop stops at a relative gap of ip_gap.
///
/// CuttingPlane: Kelley's method. The master LP over the accumulated cuts
/// sum_i v_i^2 nu_i >= v^T W v (seeded with the unit cuts nu_i >= W_ii) is
/// solved through its dual, which has only 2n rows, and nu is read back from
/// the shadow prices. The oracle is the minimum eigenpair of diag(nu) - W;
/// the loop ends once lambda_min >= -tol. Slow in the tail, so only suited to
/// small n.
///
/// Either way nu is finally shifted by max(0, -lambda_min) and re-verified
/// with a fresh eigendecomposition, so the returned bound is certified.
/// Throws Error(IterationCap) when the cut or iteration budget runs out.
BoundResult dup_bound(const CouplingMatrix& w, const DupOptions& options = {});

}  // namespace gftdual
