#include "gftdual/dup_bound.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gftdual/error.hpp"
#include "gftdual/lp.hpp"
#include "gftdual/spectral.hpp"

namespace gftdual {

CouplingMatrix build_coupling(const Eigen::MatrixXd& v1, const Eigen::MatrixXd& v2) {
  const Eigen::Index n = v1.rows();
  if (v1.cols() != n || v2.rows() != n || v2.cols() != n) {
    throw Error(Errc::SizeMismatch, "coupling needs two n x n matrices");
  }
  CouplingMatrix c;
  c.n = static_cast<int>(n);
  c.w = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  const Eigen::MatrixXd upper = 0.5 * v1.transpose().cwiseProduct(v2);
  c.w.topRightCorner(n, n) = upper;
  c.w.bottomLeftCorner(n, n) = upper.transpose();
  return c;
}

namespace {

struct Cut {
  Eigen::VectorXd v;  // unit norm
  double rhs;         // v^T W v
};

double min_eig(const Eigen::MatrixXd& w, const Eigen::VectorXd& nu) {
  Eigen::MatrixXd slack = -w;
  slack.diagonal() += nu;
  return symmetric_eigen(slack).eigenvalues(0);
}

bool is_positive_definite(const Eigen::MatrixXd& m) { return Eigen::LLT<Eigen::MatrixXd>(m).info() == Eigen::Success; }

// Kelley cutting planes. Returns the final lambda_min before repair.
double cutting_plane(const Eigen::MatrixXd& w, const DupOptions& options, Eigen::VectorXd& nu, BoundResult& result) {
  const Eigen::Index m = w.rows();
  std::vector<Cut> cuts;
  nu = Eigen::VectorXd::Zero(m);
  for (;;) {
    // Dual of the master: max sum_r b_r y_r s.t. sum_r v_ri^2 y_r <= 1, y >= 0.
    // The unit cuts nu_i >= W_ii = 0 are the slacks of these rows.
    if (!cuts.empty()) {
      LinearProgram master(static_cast<int>(cuts.size()));
      for (std::size_t r = 0; r < cuts.size(); ++r) {
        master.objective(static_cast<Eigen::Index>(r)) = -cuts[r].rhs;
        master.lower[r] = 0.0;
      }
      for (Eigen::Index i = 0; i < m; ++i) {
        Eigen::VectorXd row(static_cast<Eigen::Index>(cuts.size()));
        for (std::size_t r = 0; r < cuts.size(); ++r) row(static_cast<Eigen::Index>(r)) = cuts[r].v(i) * cuts[r].v(i);
        master.add_constraint(std::move(row), Relation::LessEqual, 1.0);
      }
      const LpResult lp = solve_lp(master);
      if (lp.status != LpStatus::Optimal) {
        throw Error(Errc::NumericalBreakdown, std::string("DUP master LP is ") + to_string(lp.status));
      }
      nu = -lp.duals;
    }
    ++result.rounds;
    result.master_history.push_back(nu.sum());

    Eigen::MatrixXd slack = -w;
    slack.diagonal() += nu;
    const SpectralDecomposition eig = symmetric_eigen(slack);
    const double lambda_min = eig.eigenvalues(0);
    if (lambda_min >= -options.tol) return lambda_min;

    Eigen::VectorXd v = eig.vectors.col(0);
    v.normalize();
    const bool duplicate = std::any_of(cuts.begin(), cuts.end(), [&](const Cut& c) {
      return std::abs(c.v.dot(v)) > 1.0 - 1e-10;
    });
    // A repeated cut means the master can no longer move; the repair still
    // certifies the bound.
    if (duplicate) return lambda_min;
    if (static_cast<int>(cuts.size()) >= options.max_cuts) {
      throw Error(Errc::IterationCap, "DUP cutting planes exceeded " + std::to_string(options.max_cuts) + " cuts");
    }
    cuts.push_back({v, v.dot(w * v)});
    result.cuts = static_cast<int>(cuts.size());
  }
}

// Primal-dual path following on
//   max <W, X>  s.t. diag(X) = 1, X >= 0
//   min 1^T nu  s.t. Z = diag(nu) - W >= 0
// with Schur complement (Z^-1 o X) dnu = mu diag(Z^-1) - 1 and
// backtracking steps that keep X and Z positive definite.
void interior_point(const Eigen::MatrixXd& w, const DupOptions& options, Eigen::VectorXd& nu, BoundResult& result) {
  const Eigen::Index m = w.rows();
  Eigen::MatrixXd x = Eigen::MatrixXd::Identity(m, m);
  nu = 1.1 * w.cwiseAbs().colwise().sum().transpose();
  nu.array() += 1.0;  // keeps Z positive definite when W has an empty row
  Eigen::MatrixXd z = -w;
  z.diagonal() += nu;
  double mu = (z.cwiseProduct(x)).sum() / (2.0 * static_cast<double>(m));

  for (int it = 0;; ++it) {
    const double phi = nu.sum();
    const double psi = w.cwiseProduct(x).sum();
    result.master_history.push_back(phi);
    if (phi - psi <= options.ip_gap * std::max(1.0, std::abs(phi))) break;
    if (it >= options.max_ip_iterations) {
      throw Error(Errc::IterationCap, "DUP interior point exceeded " + std::to_string(options.max_ip_iterations) +
                                          " iterations");
    }
    ++result.rounds;

    Eigen::MatrixXd zi = z.llt().solve(Eigen::MatrixXd::Identity(m, m));
    zi = (0.5 * (zi + zi.transpose())).eval();
    const Eigen::VectorXd dnu =
        zi.cwiseProduct(x).partialPivLu().solve(mu * zi.diagonal() - Eigen::VectorXd::Ones(m));
    Eigen::MatrixXd dx = -zi * dnu.asDiagonal() * x + mu * zi - x;
    dx = (0.5 * (dx + dx.transpose())).eval();

    double alpha_p = 1.0;
    while (!is_positive_definite(x + alpha_p * dx)) alpha_p *= 0.8;
    if (alpha_p < 1.0) alpha_p *= 0.95;
    x += alpha_p * dx;

    double alpha_d = 1.0;
    auto z_at = [&](double a) {
      Eigen::MatrixXd zt = z;
      zt.diagonal() += a * dnu;
      return zt;
    };
    while (!is_positive_definite(z_at(alpha_d))) alpha_d *= 0.8;
    if (alpha_d < 1.0) alpha_d *= 0.95;
    nu += alpha_d * dnu;
    z.diagonal() += alpha_d * dnu;

    mu = z.cwiseProduct(x).sum() / (2.0 * static_cast<double>(m));
    if (alpha_p + alpha_d > 1.6) mu *= 0.5;
    if (alpha_p + alpha_d > 1.9) mu /= 5.0;
  }
}

}  // namespace

BoundResult dup_bound(const CouplingMatrix& coupling, const DupOptions& options) {
  if (!(options.tol > 0.0)) throw Error(Errc::InvalidArgument, "DUP tolerance must be positive");
  const Eigen::MatrixXd& w = coupling.w;
  const Eigen::Index m = w.rows();
  if (w.cols() != m || m != 2 * coupling.n) throw Error(Errc::SizeMismatch, "coupling matrix must be 2n x 2n");
  for (Eigen::Index i = 0; i < m; ++i) {
    if (w(i, i) != 0.0) throw Error(Errc::InvalidArgument, "coupling matrix must have a zero diagonal");
  }

  BoundResult result;
  Eigen::VectorXd nu;
  double lambda_min = 0.0;
  if (options.method == DupMethod::CuttingPlane) {
    lambda_min = cutting_plane(w, options, nu, result);
  } else {
    interior_point(w, options, nu, result);
    lambda_min = min_eig(w, nu);
  }

  nu.array() += std::max(0.0, -lambda_min);
  result.min_eig_residual = min_eig(w, nu);
  result.nu = std::move(nu);
  result.bound = result.nu.sum();
  return result;
}

}  // namespace gftdual
