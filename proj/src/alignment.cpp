#include "gftdual/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "gftdual/assignment.hpp"
#include "gftdual/error.hpp"
#include "gftdual/spectral.hpp"

namespace gftdual {

using cd = std::complex<double>;

PhaseVector::PhaseVector(Eigen::VectorXcd values) : values_(std::move(values)) {
  for (Eigen::Index k = 0; k < values_.size(); ++k) {
    if (!(std::abs(std::abs(values_(k)) - 1.0) <= 1e-12)) {
      throw Error(Errc::InvalidArgument, "phase entry " + std::to_string(k) + " is not of unit modulus");
    }
  }
}

PhaseVector PhaseVector::ones(int n) { return PhaseVector(Eigen::VectorXcd::Ones(n)); }

PhaseVector PhaseVector::random(int n, Rng& rng) {
  Eigen::VectorXcd v(n);
  for (int k = 0; k < n; ++k) v(k) = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform01());
  return PhaseVector(std::move(v));
}

const char* to_string(Method method) noexcept {
  switch (method) {
    case Method::CD: return "CD";
    case Method::CDPM: return "CDPM";
  }
  return "Unknown";
}

AlignmentInit AlignmentInit::identity(int n) {
  return {PhaseVector::ones(n), Permutation::identity(n), PhaseVector::ones(n), Permutation::identity(n)};
}

double dualness_from_objective(int n, double objective) {
  return std::sqrt(std::max(0.0, 2.0 * n - 2.0 * objective));
}

namespace {

// V diag(d) P as a complex matrix; column p[k] holds d_k times column k of V.
Eigen::MatrixXcd scaled_permuted(const Eigen::MatrixXd& v, const PhaseVector& d, const Permutation& p) {
  const Eigen::Index n = v.rows();
  Eigen::MatrixXcd out(n, n);
  for (int k = 0; k < d.size(); ++k) out.col(p[k]) = v.col(k).cast<cd>() * d[k];
  return out;
}

void check_sizes(const Eigen::MatrixXd& v1, const PhaseVector& d1, const Permutation& p1, const Eigen::MatrixXd& v2,
                 const PhaseVector& d2, const Permutation& p2) {
  const Eigen::Index n = v1.rows();
  if (v1.cols() != n || v2.rows() != n || v2.cols() != n || d1.size() != n || d2.size() != n || p1.size() != n ||
      p2.size() != n) {
    throw Error(Errc::SizeMismatch, "alignment operands have inconsistent sizes");
  }
}

void check_orthogonal(const Eigen::MatrixXd& v, const char* which) {
  const Eigen::Index n = v.rows();
  if (v.cols() != n) throw Error(Errc::SizeMismatch, std::string(which) + " is not square");
  const double residual = (v.transpose() * v - Eigen::MatrixXd::Identity(n, n)).norm();
  if (!(residual <= 1e-8 * std::max<double>(1.0, static_cast<double>(n)))) {
    throw Error(Errc::NonOrthogonalInput, std::string(which) + " is not orthogonal (residual " +
                                              std::to_string(residual) + ")");
  }
}

struct State {
  PhaseVector d1;
  Permutation p1;
  PhaseVector d2;
  Permutation p2;
};

// Replaces (d, p) for one side given S = V_a D_a P_a V_b, the matrix whose
// product with D P is traced.
void update_side(const Eigen::MatrixXcd& s, PermutationUpdate update, PhaseVector& d, Permutation& p) {
  if (update == PermutationUpdate::Assignment) p = solve_assignment_max(s.cwiseAbs()).sigma;
  const Eigen::Index n = s.rows();
  Eigen::MatrixXcd ps(n, n);
  for (Eigen::Index j = 0; j < n; ++j) ps.row(j) = s.row(p[static_cast<int>(j)]);
  d = optimal_phases(ps).phases;
}

AlignmentSolution align(const Eigen::MatrixXd& v1, const Eigen::MatrixXd& v2, const SolverConfig& config,
                        AlignmentInit init, PermutationUpdate update) {
  if (!(config.epsilon > 0.0)) throw Error(Errc::InvalidArgument, "epsilon must be positive");
  if (config.max_iterations < 1) throw Error(Errc::InvalidArgument, "max_iterations must be at least 1");
  check_sizes(v1, init.d1, init.p1, v2, init.d2, init.p2);
  check_orthogonal(v1, "V1");
  check_orthogonal(v2, "V2");

  State state{std::move(init.d1), std::move(init.p1), std::move(init.d2), std::move(init.p2)};
  double current = trace_objective(v1, state.d1, state.p1, v2, state.d2, state.p2);

  AlignmentSolution sol;
  sol.history.push_back(current);

  // A half-step is kept only if the re-evaluated objective did not drop, so
  // rounding at a fixed point can never make the recorded sequence decrease.
  auto half_step = [&](int side) {
    State next = state;
    if (side == 2) {
      const Eigen::MatrixXcd s = scaled_permuted(v1, state.d1, state.p1) * v2.cast<cd>();
      update_side(s, update, next.d2, next.p2);
    } else {
      const Eigen::MatrixXcd s = scaled_permuted(v2, state.d2, state.p2) * v1.cast<cd>();
      update_side(s, update, next.d1, next.p1);
    }
    const double value = trace_objective(v1, next.d1, next.p1, v2, next.d2, next.p2);
    if (value >= current) {
      state = std::move(next);
      current = value;
    }
    sol.history.push_back(current);
  };

  for (int it = 1; it <= config.max_iterations; ++it) {
    const double previous = current;
    half_step(2);
    half_step(1);
    sol.iterations = it;
    if (current - previous < config.epsilon) {
      sol.converged = true;
      break;
    }
  }

  sol.d1 = std::move(state.d1);
  sol.p1 = std::move(state.p1);
  sol.d2 = std::move(state.d2);
  sol.p2 = std::move(state.p2);
  sol.objective = current;
  sol.dualness = dualness_from_objective(static_cast<int>(v1.rows()), current);
  return sol;
}

}  // namespace

double trace_objective(const Eigen::MatrixXd& v1, const PhaseVector& d1, const Permutation& p1,
                       const Eigen::MatrixXd& v2, const PhaseVector& d2, const Permutation& p2) {
  check_sizes(v1, d1, p1, v2, d2, p2);
  const Eigen::MatrixXcd x = scaled_permuted(v1, d1, p1);
  const Eigen::MatrixXcd y = scaled_permuted(v2, d2, p2);
  // tr(X Y) = sum_ab X_ab Y_ba
  return x.cwiseProduct(y.transpose()).sum().real();
}

PhaseChoice optimal_phases(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw Error(Errc::NotSquare, "optimal_phases needs a square matrix");
  const Eigen::Index n = a.rows();
  Eigen::VectorXcd d(n);
  double value = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double r = std::abs(a(k, k));
    if (r > 1e-12) {
      d(k) = std::conj(a(k, k)) / r;
      value += r;
    } else {
      d(k) = 1.0;
    }
  }
  // Renormalize to absorb the last-bit error of the division.
  for (Eigen::Index k = 0; k < n; ++k) d(k) /= std::abs(d(k));
  return {PhaseVector(std::move(d)), value};
}

AlignmentSolution cd_align(const Eigen::MatrixXd& v1, const Eigen::MatrixXd& v2, const SolverConfig& config,
                           std::optional<AlignmentInit> init) {
  const int n = static_cast<int>(v1.rows());
  AlignmentInit start = init.value_or(AlignmentInit::identity(n));
  start.p1 = Permutation::identity(start.d1.size());
  start.p2 = Permutation::identity(start.d2.size());
  return align(v1, v2, config, std::move(start), PermutationUpdate::Frozen);
}

AlignmentSolution cdpm_align(const Eigen::MatrixXd& v1, const Eigen::MatrixXd& v2, const SolverConfig& config,
                             std::optional<AlignmentInit> init, PermutationUpdate update) {
  const int n = static_cast<int>(v1.rows());
  return align(v1, v2, config, init.value_or(AlignmentInit::identity(n)), update);
}

AlignmentInit random_init(Method method, int n, RngSeed seed, int restart) {
  Rng rng(RngSeed{seed.value + static_cast<std::uint64_t>(restart)});
  AlignmentInit init;
  init.d1 = PhaseVector::random(n, rng);
  init.d2 = PhaseVector::random(n, rng);
  if (method == Method::CDPM) {
    init.p1 = random_permutation(n, rng);
    init.p2 = random_permutation(n, rng);
  } else {
    init.p1 = Permutation::identity(n);
    init.p2 = Permutation::identity(n);
  }
  return init;
}

AlignmentSolution multistart(Method method, const Eigen::MatrixXd& v1, const Eigen::MatrixXd& v2,
                             const SolverConfig& config) {
  if (config.restarts < 1) throw Error(Errc::InvalidArgument, "restarts must be at least 1");
  const int n = static_cast<int>(v1.rows());
  AlignmentSolution best;
  for (int r = 0; r < config.restarts; ++r) {
    AlignmentInit init = random_init(method, n, config.seed, r);
    AlignmentSolution sol = method == Method::CD ? cd_align(v1, v2, config, std::move(init))
                                                 : cdpm_align(v1, v2, config, std::move(init));
    sol.best_restart = r;
    if (r == 0 || sol.objective > best.objective) best = std::move(sol);
  }
  return best;
}

AlignmentSolution run_pair(const Graph& g1, const Graph& g2, Method method, const SolverConfig& config) {
  if (g1.size() != g2.size()) throw Error(Errc::SizeMismatch, "graphs have different vertex counts");
  const SpectralDecomposition s1 = eigendecompose(g1);
  const SpectralDecomposition s2 = eigendecompose(g2);
  const bool ok1 = has_distinct_eigenvalues(s1);
  const bool ok2 = has_distinct_eigenvalues(s2);
  if (!ok1 || !ok2) {
    const double gap = std::min(min_eigenvalue_gap(s1), min_eigenvalue_gap(s2));
    throw RepeatedEigenvaluesError(gap, std::string(!ok1 ? "first" : "second") +
                                            " graph has a repeated eigenvalue (min gap " + std::to_string(gap) + ")");
  }
  return multistart(method, s1.vectors, s2.vectors, config);
}

double verify_circulant_duality(const Graph& g1, const Graph& g2) {
  if (g1.size() != g2.size()) throw Error(Errc::SizeMismatch, "graphs have different vertex counts");
  if (!g1.is_circulant()) throw Error(Errc::NotCirculant, "first graph is not circulant");
  if (!g2.is_circulant()) throw Error(Errc::NotCirculant, "second graph is not circulant");
  const int n = g1.size();
  const Eigen::MatrixXcd u1 = dft_matrix(n);
  const Eigen::MatrixXcd u2 = u1.adjoint();

  auto off_diagonal = [](const Eigen::MatrixXcd& m) {
    Eigen::MatrixXcd o = m;
    o.diagonal().setZero();
    return o.norm();
  };
  // A = U Lambda U^H for each pair (A, U).
  const double r1 = off_diagonal(u1.adjoint() * g1.adjacency().cast<cd>() * u1);
  const double r2 = off_diagonal(u2.adjoint() * g2.adjacency().cast<cd>() * u2);
  const double scale = std::max({1.0, g1.adjacency().norm(), g2.adjacency().norm()});
  if (r1 > 1e-9 * scale || r2 > 1e-9 * scale) {
    throw Error(Errc::NumericalBreakdown, "DFT basis failed to diagonalize a circulant adjacency");
  }
  return (u1 * u2 - Eigen::MatrixXcd::Identity(n, n)).norm();
}

Eigen::MatrixXd relabel_rows(const Eigen::MatrixXd& v, const Permutation& p) {
  if (p.size() != v.rows()) throw Error(Errc::SizeMismatch, "permutation length differs from matrix rows");
  Eigen::MatrixXd out(v.rows(), v.cols());
  for (int i = 0; i < p.size(); ++i) out.row(p[i]) = v.row(i);
  return out;
}

AlignmentSolution isomorphism_transport(const AlignmentSolution& sol, const Permutation& p, int side) {
  if (p.size() != sol.p1.size() || p.size() != sol.p2.size()) {
    throw Error(Errc::SizeMismatch, "relabelling size differs from solution size");
  }
  AlignmentSolution out = sol;
  // relabel_rows gives V' = P^T V with P = p.matrix(). By cyclicity the P^T
  // lands after P2 for side 1 and after P1 for side 2; both absorb it as
  // P_k' = P_k P.
  if (side == 1) {
    out.p2 = sol.p2.then(p);
  } else if (side == 2) {
    out.p1 = sol.p1.then(p);
  } else {
    throw Error(Errc::InvalidArgument, "side must be 1 or 2");
  }
  return out;
}

AlignmentSolution swap_sides(const AlignmentSolution& sol) {
  AlignmentSolution out = sol;
  std::swap(out.d1, out.d2);
  std::swap(out.p1, out.p2);
  return out;
}

}  // namespace gftdual
