#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gftdual/alignment.hpp"
#include "gftdual/dup_bound.hpp"
#include "gftdual/error.hpp"
#include "gftdual/graph.hpp"
#include "gftdual/spectral.hpp"

using namespace gftdual;

namespace {

using Cmat = Eigen::MatrixXcd;

Eigen::MatrixXd random_orthogonal(int n, Rng& rng) {
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.uniform01() - 0.5;
  return Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();
}

Cmat dense_product(const Eigen::MatrixXd& v1, const PhaseVector& d1, const Permutation& p1, const Eigen::MatrixXd& v2,
                   const PhaseVector& d2, const Permutation& p2) {
  const Cmat pm1 = p1.matrix().cast<std::complex<double>>();
  const Cmat pm2 = p2.matrix().cast<std::complex<double>>();
  return v1.cast<std::complex<double>>() * d1.values().asDiagonal() * pm1 * v2.cast<std::complex<double>>() *
         d2.values().asDiagonal() * pm2;
}

struct Pair {
  Eigen::MatrixXd v1, v2;
};

Pair simple_pair(int n, double p, std::uint64_t seed) {
  for (std::uint64_t k = 0;; ++k) {
    const SpectralDecomposition a = eigendecompose(erdos_renyi(n, p, derive_seed(RngSeed{seed}, k, 1)));
    const SpectralDecomposition b = eigendecompose(erdos_renyi(n, p, derive_seed(RngSeed{seed}, k, 2)));
    if (has_distinct_eigenvalues(a) && has_distinct_eigenvalues(b)) return {a.vectors, b.vectors};
  }
}

PhaseVector signs(int n, unsigned mask) {
  Eigen::VectorXcd v(n);
  for (int k = 0; k < n; ++k) v(k) = (mask >> k) & 1U ? -1.0 : 1.0;
  return PhaseVector(v);
}

// max over d2 of Re tr(V1 D1 P1 V2 D2 P2) for fixed (d1, p1, p2): the
// column-j entry (P2 S)_jj with S = V1 D1 P1 V2 picks |S(p2^-1... ) |; we
// evaluate it through optimal_phases on the dense matrix instead.
double best_d2(const Eigen::MatrixXd& v1, const PhaseVector& d1, const Permutation& p1, const Eigen::MatrixXd& v2,
               const Permutation& p2) {
  const Cmat s = v1.cast<std::complex<double>>() * d1.values().asDiagonal() *
                 p1.matrix().cast<std::complex<double>>() * v2.cast<std::complex<double>>();
  // Re tr(S D2 P2) = Re tr(P2 S D2).
  return optimal_phases(p2.matrix().cast<std::complex<double>>() * s).value;
}

bool is_monotone(const std::vector<double>& h) {
  for (std::size_t k = 1; k < h.size(); ++k)
    if (h[k] < h[k - 1]) return false;
  return true;
}

}  // namespace

TEST_CASE("objective examples") {
  const int n = 3;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Permutation e = Permutation::identity(n);
  CHECK(trace_objective(id, PhaseVector::ones(n), e, id, PhaseVector::ones(n), e) == 3.0);
  CHECK(dualness_from_objective(n, 3.0) == 0.0);
  // A 3-cycle has trace zero.
  const Permutation c(std::vector<int>{1, 2, 0});
  CHECK(std::abs(trace_objective(id, PhaseVector::ones(n), c, id, PhaseVector::ones(n), e)) < 1e-15);
  Eigen::VectorXcd ph(3);
  ph << std::complex<double>(0, 1), 1.0, -1.0;
  CHECK(trace_objective(id, PhaseVector(ph), e, id, PhaseVector::ones(n), e) == doctest::Approx(0.0).scale(1.0));
  CHECK(dualness_from_objective(2, -2.0) == doctest::Approx(std::sqrt(8.0)));
}

TEST_CASE("trace objective equals the dense trace and the Frobenius identity") {
  Rng rng(RngSeed{8});
  for (int n : {1, 2, 5, 9}) {
    for (int t = 0; t < 20; ++t) {
      const Eigen::MatrixXd v1 = random_orthogonal(n, rng), v2 = random_orthogonal(n, rng);
      const PhaseVector d1 = PhaseVector::random(n, rng), d2 = PhaseVector::random(n, rng);
      const Permutation p1 = random_permutation(n, rng), p2 = random_permutation(n, rng);
      const Cmat m = dense_product(v1, d1, p1, v2, d2, p2);
      const double obj = trace_objective(v1, d1, p1, v2, d2, p2);
      CHECK(std::abs(obj - m.trace().real()) < 1e-12 * n);
      const double fro2 = (m - Cmat::Identity(n, n)).squaredNorm();
      CHECK(std::abs(fro2 - (2.0 * n - 2.0 * obj)) < 1e-9 * n);
    }
  }
}

TEST_CASE("optimal_phases") {
  Cmat a = Cmat::Zero(3, 3);
  a(0, 0) = {0.0, 2.0};
  a(1, 1) = -3.0;
  a(2, 2) = 0.0;
  a(0, 1) = 100.0;  // off-diagonal entries are irrelevant
  const PhaseChoice c = optimal_phases(a);
  CHECK(c.value == doctest::Approx(5.0));
  CHECK(std::abs(c.phases[0] - std::complex<double>(0, -1)) < 1e-15);
  CHECK(std::abs(c.phases[1] - std::complex<double>(-1, 0)) < 1e-15);
  CHECK(c.phases[2] == std::complex<double>(1, 0));
  CHECK(std::abs((a * c.phases.values().asDiagonal()).trace().real() - c.value) < 1e-12);
  // No other phase beats it.
  Rng rng(RngSeed{1});
  for (int t = 0; t < 100; ++t) {
    const PhaseVector d = PhaseVector::random(3, rng);
    CHECK((a * d.values().asDiagonal()).trace().real() <= c.value + 1e-12);
  }
  CHECK_THROWS_AS(optimal_phases(Cmat::Zero(2, 3)), Error);
}

TEST_CASE("phase vectors") {
  Eigen::VectorXcd bad(2);
  bad << 1.0, 0.5;
  CHECK_THROWS_AS(PhaseVector{bad}, Error);
  Rng rng(RngSeed{2});
  const PhaseVector d = PhaseVector::random(50, rng);
  for (int k = 0; k < 50; ++k) CHECK(std::abs(std::abs(d[k]) - 1.0) < 1e-15);
}

TEST_CASE("CD reaches dualness zero for transposed eigenvectors") {
  Rng rng(RngSeed{4});
  for (int n : {3, 6, 10}) {
    const Eigen::MatrixXd v = random_orthogonal(n, rng);
    SolverConfig cfg;
    cfg.restarts = 1;
    const AlignmentSolution s = cd_align(v, v.transpose(), cfg);
    CHECK(s.objective == doctest::Approx(n).epsilon(1e-12));
    CHECK(s.dualness < 1e-6);
    CHECK(s.converged);
  }
}

TEST_CASE("CD and CDPM histories are monotone and dominate their starts") {
  const Pair pr = simple_pair(12, 0.4, 3);
  SolverConfig cfg;
  for (int r = 0; r < 10; ++r) {
    for (Method m : {Method::CD, Method::CDPM}) {
      const AlignmentInit init = random_init(m, 12, RngSeed{40}, r);
      const double start = trace_objective(pr.v1, init.d1, init.p1, pr.v2, init.d2, init.p2);
      const AlignmentSolution s =
          m == Method::CD ? cd_align(pr.v1, pr.v2, cfg, init) : cdpm_align(pr.v1, pr.v2, cfg, init);
      CHECK(is_monotone(s.history));
      CHECK(s.history.front() == start);
      CHECK(s.objective >= start - 1e-12);
      CHECK(s.objective == s.history.back());
      CHECK(std::abs(s.objective - trace_objective(pr.v1, s.d1, s.p1, pr.v2, s.d2, s.p2)) < 1e-12);
      if (m == Method::CD) {
        CHECK(s.p1.is_identity());
        CHECK(s.p2.is_identity());
      }
    }
  }
}

TEST_CASE("CDPM with frozen permutations reproduces CD bitwise") {
  const Pair pr = simple_pair(10, 0.4, 5);
  SolverConfig cfg;
  for (int r = 0; r < 5; ++r) {
    const AlignmentInit init = random_init(Method::CD, 10, RngSeed{6}, r);
    const AlignmentSolution a = cd_align(pr.v1, pr.v2, cfg, init);
    const AlignmentSolution b = cdpm_align(pr.v1, pr.v2, cfg, init, PermutationUpdate::Frozen);
    CHECK(a.history == b.history);
    CHECK(a.d1.values() == b.d1.values());
    CHECK(a.d2.values() == b.d2.values());
    CHECK(a.iterations == b.iterations);
  }
}

TEST_CASE("planted relabelling is a CDPM fixed point") {
  Rng rng(RngSeed{12});
  for (int t = 0; t < 5; ++t) {
    const int n = 8;
    const Eigen::MatrixXd v = random_orthogonal(n, rng);
    const Permutation p = random_permutation(n, rng);
    // V P P^T V^T = I, so (D = 1, P1 = p, P2 = id) attains the maximum n.
    const Eigen::MatrixXd v2 = p.matrix().transpose() * v.transpose();
    AlignmentInit init = AlignmentInit::identity(n);
    init.p1 = p;
    const AlignmentSolution s = cdpm_align(v, v2, SolverConfig{}, init);
    CHECK(s.objective == doctest::Approx(n).epsilon(1e-12));
    CHECK(s.iterations <= 2);
    // Plain CD cannot undo the relabelling.
    CHECK(cd_align(v, v2, SolverConfig{}).objective < n - 0.5);
  }
}

TEST_CASE("real sign patterns never beat the bound, CD matches the closed form") {
  for (std::uint64_t seed : {1ULL, 2ULL}) {
    const Pair pr = simple_pair(8, 0.5, seed);
    const Permutation e = Permutation::identity(8);
    double best_signs = -1e300;
    for (unsigned m1 = 0; m1 < 256; ++m1) {
      const PhaseVector d1 = signs(8, m1);
      const double inner = best_d2(pr.v1, d1, e, pr.v2, e);
      // The closed form equals the best of the 256 real d2 when S is real.
      if (m1 % 32 == 0) {
        double best_real = -1e300;
        for (unsigned m2 = 0; m2 < 256; ++m2)
          best_real = std::max(best_real, trace_objective(pr.v1, d1, e, pr.v2, signs(8, m2), e));
        CHECK(std::abs(best_real - inner) < 1e-12);
      }
      best_signs = std::max(best_signs, inner);
    }
    const double bound = dup_bound(build_coupling(pr.v1, pr.v2)).bound;
    CHECK(best_signs <= bound + 1e-9);
    SolverConfig cfg;
    cfg.restarts = 100;
    cfg.seed = RngSeed{seed};
    const AlignmentSolution cd = multistart(Method::CD, pr.v1, pr.v2, cfg);
    CHECK(cd.objective <= bound + 1e-9);
    MESSAGE("seed " << seed << ": signs " << best_signs << ", CD " << cd.objective << ", bound " << bound);
  }
}

TEST_CASE("n = 4 CDPM against enumeration of permutations and signs") {
  const Pair pr = simple_pair(4, 0.6, 9);
  std::vector<int> m1{0, 1, 2, 3};
  double enumerated = -1e300;
  do {
    std::vector<int> m2{0, 1, 2, 3};
    do {
      for (unsigned s = 0; s < 16; ++s)
        enumerated = std::max(enumerated, best_d2(pr.v1, signs(4, s), Permutation(m1), pr.v2, Permutation(m2)));
    } while (std::next_permutation(m2.begin(), m2.end()));
  } while (std::next_permutation(m1.begin(), m1.end()));
  SolverConfig cfg;
  cfg.restarts = 200;
  const AlignmentSolution s = multistart(Method::CDPM, pr.v1, pr.v2, cfg);
  // The enumeration only covers real D1, so it is a lower bound on the optimum.
  CHECK(s.objective >= enumerated - 1e-9);
  CHECK(s.objective <= 4.0 + 1e-12);
}

TEST_CASE("multistart") {
  const Pair pr = simple_pair(10, 0.4, 13);
  SolverConfig cfg;
  cfg.restarts = 1;
  cfg.seed = RngSeed{21};
  const AlignmentSolution one = multistart(Method::CD, pr.v1, pr.v2, cfg);
  const AlignmentSolution direct = cd_align(pr.v1, pr.v2, cfg, random_init(Method::CD, 10, cfg.seed, 0));
  CHECK(one.objective == direct.objective);
  CHECK(one.best_restart == 0);
  // More restarts from the same seed extend the same sequence of starts.
  double previous = -1e300;
  for (int r : {1, 5, 20}) {
    cfg.restarts = r;
    const AlignmentSolution s = multistart(Method::CDPM, pr.v1, pr.v2, cfg);
    CHECK(s.objective >= previous);
    CHECK(s.best_restart < r);
    previous = s.objective;
  }
  cfg.restarts = 0;
  CHECK_THROWS_AS(multistart(Method::CD, pr.v1, pr.v2, cfg), Error);
}

TEST_CASE("CDPM is at least as good as CD on most pairs") {
  int wins = 0;
  SolverConfig cfg;
  cfg.restarts = 5;
  for (std::uint64_t t = 0; t < 50; ++t) {
    const Pair pr = simple_pair(10, 0.4, 100 + t);
    cfg.seed = RngSeed{t};
    const double cd = multistart(Method::CD, pr.v1, pr.v2, cfg).objective;
    const double cdpm = multistart(Method::CDPM, pr.v1, pr.v2, cfg).objective;
    if (cdpm >= cd - 1e-9) ++wins;
  }
  CHECK(wins >= 45);
}

TEST_CASE("input validation") {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(3, 3);
  SolverConfig cfg;
  CHECK_THROWS_AS(cd_align(id, Eigen::MatrixXd::Identity(4, 4), cfg), Error);
  try {
    cd_align(2.0 * id, id, cfg);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonOrthogonalInput);
  }
  cfg.epsilon = 0.0;
  CHECK_THROWS_AS(cd_align(id, id, cfg), Error);

  const std::vector<CirculantOffset> ring{{1, 1.0}};
  const Graph c4 = circulant(4, ring);
  try {
    run_pair(c4, c4, Method::CD, SolverConfig{});
    FAIL("no throw");
  } catch (const RepeatedEigenvaluesError& e) {
    CHECK(e.code() == Errc::RepeatedEigenvalues);
    CHECK(e.min_gap() < 1e-10);
  }
}

TEST_CASE("circulant duality certificate") {
  const std::vector<CirculantOffset> a{{1, 1.0}}, b{{1, 2.0}, {2, 0.5}};
  CHECK(verify_circulant_duality(circulant(6, a), circulant(6, b)) < 1e-12);
  const std::vector<Edge> path{{0, 1, 1.0}, {1, 2, 1.0}};
  try {
    verify_circulant_duality(new_graph(3, path), circulant(3, a));
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotCirculant);
  }
}

TEST_CASE("relabelling transport keeps the objective") {
  Rng rng(RngSeed{31});
  for (int t = 0; t < 20; ++t) {
    const int n = 7;
    const Eigen::MatrixXd v1 = random_orthogonal(n, rng), v2 = random_orthogonal(n, rng);
    AlignmentSolution sol;
    sol.d1 = PhaseVector::random(n, rng);
    sol.d2 = PhaseVector::random(n, rng);
    sol.p1 = random_permutation(n, rng);
    sol.p2 = random_permutation(n, rng);
    sol.objective = trace_objective(v1, sol.d1, sol.p1, v2, sol.d2, sol.p2);
    const Permutation p = random_permutation(n, rng);

    const AlignmentSolution s1 = isomorphism_transport(sol, p, 1);
    CHECK(std::abs(trace_objective(relabel_rows(v1, p), s1.d1, s1.p1, v2, s1.d2, s1.p2) - sol.objective) < 1e-12);
    const AlignmentSolution s2 = isomorphism_transport(sol, p, 2);
    CHECK(std::abs(trace_objective(v1, s2.d1, s2.p1, relabel_rows(v2, p), s2.d2, s2.p2) - sol.objective) < 1e-12);
    const AlignmentSolution sw = swap_sides(sol);
    CHECK(std::abs(trace_objective(v2, sw.d1, sw.p1, v1, sw.d2, sw.p2) - sol.objective) < 1e-12);
  }
  const Graph g = erdos_renyi(6, 0.5, RngSeed{1});
  const Permutation p(std::vector<int>{3, 1, 4, 0, 5, 2});
  const SpectralDecomposition d = eigendecompose(g);
  const Eigen::MatrixXd moved = relabel_rows(d.vectors, p);
  const Eigen::MatrixXd a = permute_graph(g, p).adjacency();
  CHECK((a * moved - moved * d.eigenvalues.asDiagonal()).norm() < 1e-10);
}
