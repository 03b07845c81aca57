#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "gftdual/graph.hpp"
#include "gftdual/rng.hpp"

namespace gftdual {

/// Diagonal of a matrix in the unit-modulus diagonal group: every entry has
/// modulus 1 within 1e-12.
class PhaseVector {
 public:
  PhaseVector() = default;
  explicit PhaseVector(Eigen::VectorXcd values);

  static PhaseVector ones(int n);
  /// Independent phases uniform on the unit circle, one uniform01() draw each.
  static PhaseVector random(int n, Rng& rng);

  int size() const noexcept { return static_cast<int>(values_.size()); }
  const Eigen::VectorXcd& values() const noexcept { return values_; }
  std::complex<double> operator[](int k) const { return values_(k); }

 private:
  Eigen::VectorXcd values_;
};

enum class Method { CD, CDPM };

const char* to_string(Method method) noexcept;

struct SolverConfig {
  double epsilon = 1e-8;
  int max_iterations = 500;
  int restarts = 200;
  RngSeed seed{0};
};

/// Starting point (D1, P1, D2, P2) for a single solve.
struct AlignmentInit {
  PhaseVector d1;
  Permutation p1;
  PhaseVector d2;
  Permutation p2;

  static AlignmentInit identity(int n);
};

struct AlignmentSolution {
  PhaseVector d1;
  PhaseVector d2;
  Permutation p1;
  Permutation p2;
  double objective = 0.0;  // Re tr(V1 D1 P1 V2 D2 P2)
  double dualness = 0.0;   // sqrt(max(0, 2n - 2 objective))
  int iterations = 0;
  bool converged = false;
  int best_restart = 0;
  /// Objective at the start and after every half-step; non-decreasing.
  std::vector<double> history;
};

double dualness_from_objective(int n, double objective);

/// Re tr(V1 diag(d1) P1 V2 diag(d2) P2), evaluated in O(n^2).
double trace_objective(const Eigen::MatrixXd& v1, const PhaseVector& d1, const Permutation& p1,
                       const Eigen::MatrixXd& v2, const PhaseVector& d2, const Permutation& p2);

struct PhaseChoice {
  PhaseVector phases;
  double value = 0.0;
};

/// Maximizer of Re tr(A diag(d)) over unit phases: d_k = conj(A_kk) / |A_kk|,
/// or 1 when |A_kk| <= 1e-12. value = sum of |A_kk| over the non-degenerate
/// diagonal entries.
PhaseChoice optimal_phases(const Eigen::MatrixXcd& a);

/// Coordinate descent over (D1, D2) with both permutations held at identity.
/// The default start is all-ones phases.
AlignmentSolution cd_align(const Eigen::MatrixXd& v1, const Eigen::MatrixXd& v2, const SolverConfig& config,
                           std::optional<AlignmentInit> init = std::nullopt);

enum class PermutationUpdate { Assignment, Frozen };

/// Coordinate descent with an exact assignment step for each permutation.
/// With PermutationUpdate::Frozen the permutations of `init` are kept and the
/// iterates coincide bitwise with cd_align started from the same point.
AlignmentSolution cdpm_align(const Eigen::MatrixXd& v1, const Eigen::MatrixXd& v2, const SolverConfig& config,
                             std::optional<AlignmentInit> init = std::nullopt,
                             PermutationUpdate update = PermutationUpdate::Assignment);

/// Random start used for restart r: Rng(seed + r) draws d1, d2 (and, for
/// CDPM, p1 then p2).
AlignmentInit random_init(Method method, int n, RngSeed seed, int restart);

/// Best of config.restarts solves; ties keep the earliest restart.
AlignmentSolution multistart(Method method, const Eigen::MatrixXd& v1, const Eigen::MatrixXd& v2,
                             const SolverConfig& config);

/// Eigendecomposes both graphs, rejects repeated eigenvalues and runs
/// multistart. Throws RepeatedEigenvaluesError carrying the smaller gap.
AlignmentSolution run_pair(const Graph& g1, const Graph& g2, Method method, const SolverConfig& config);

/// Dualness-zero certificate for two circulant graphs: V1 is the normalized
/// DFT matrix and V2 = V1^H. Returns ||V1 V2 - I||_F after checking that both
/// matrices diagonalize their adjacencies.
double verify_circulant_duality(const Graph& g1, const Graph& g2);

/// Row-permuted eigenvector matrix of permute_graph(g, p): out(p[i], k) = v(i, k).
Eigen::MatrixXd relabel_rows(const Eigen::MatrixXd& v, const Permutation& p);

/// Maps a solution for (V1, V2) to one for the pair where side `side` (1 or 2)
/// was relabelled by p, keeping the objective.
AlignmentSolution isomorphism_transport(const AlignmentSolution& sol, const Permutation& p, int side);

/// Solution for the swapped pair (V2, V1) with the same objective.
AlignmentSolution swap_sides(const AlignmentSolution& sol);

}  // namespace gftdual
