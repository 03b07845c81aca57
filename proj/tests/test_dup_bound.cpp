#include <doctest.h>

#include "gftdual/alignment.hpp"
#include "gftdual/dup_bound.hpp"
#include "gftdual/error.hpp"
#include "gftdual/graph.hpp"
#include "gftdual/spectral.hpp"

using namespace gftdual;

namespace {

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

DupOptions cutting_plane() {
  DupOptions o;
  o.method = DupMethod::CuttingPlane;
  return o;
}

}  // namespace

TEST_CASE("identity eigenvectors give bound n") {
  for (int n : {1, 3, 6}) {
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    const BoundResult ip = dup_bound(build_coupling(id, id));
    CHECK(ip.bound == doctest::Approx(n).epsilon(1e-9));
    CHECK(ip.min_eig_residual >= -1e-12);
    const BoundResult cp = dup_bound(build_coupling(id, id), cutting_plane());
    CHECK(cp.bound == doctest::Approx(n).epsilon(1e-6));
  }
}

TEST_CASE("disjoint supports give a zero coupling and bound zero") {
  // V1 = I, V2 = cyclic shift: V1^T (.) V2 = 0.
  const int n = 5;
  Eigen::MatrixXd shift = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) shift(i, (i + 1) % n) = 1.0;
  const CouplingMatrix c = build_coupling(Eigen::MatrixXd::Identity(n, n), shift);
  CHECK(c.w.isZero());
  CHECK(std::abs(dup_bound(c).bound) < 1e-9);
  const BoundResult cp = dup_bound(c, cutting_plane());
  CHECK(cp.bound == 0.0);
  CHECK(cp.cuts == 0);
}

TEST_CASE("coupling reproduces the trace objective as a Hermitian form") {
  const Pair pr = simple_pair(9, 0.4, 1);
  const CouplingMatrix c = build_coupling(pr.v1, pr.v2);
  CHECK(c.w.isApprox(c.w.transpose()));
  CHECK(c.w.diagonal().isZero());
  Rng rng(RngSeed{3});
  const Permutation e = Permutation::identity(9);
  for (int t = 0; t < 50; ++t) {
    const PhaseVector d1 = PhaseVector::random(9, rng), d2 = PhaseVector::random(9, rng);
    Eigen::VectorXcd x(18);
    x << d1.values().conjugate(), d2.values();
    const double form = (x.adjoint() * c.w.cast<std::complex<double>>() * x)(0, 0).real();
    CHECK(std::abs(form - trace_objective(pr.v1, d1, e, pr.v2, d2, e)) < 1e-12);
  }
}

TEST_CASE("bound dominates random phases and coordinate descent") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Pair pr = simple_pair(10, 0.4, 10 + s);
    const BoundResult b = dup_bound(build_coupling(pr.v1, pr.v2));
    CHECK(b.min_eig_residual >= -1e-10);
    CHECK(b.bound <= 10.0 + 1e-9);
    Rng rng(RngSeed{s});
    const Permutation e = Permutation::identity(10);
    for (int t = 0; t < 200; ++t) {
      const double obj =
          trace_objective(pr.v1, PhaseVector::random(10, rng), e, pr.v2, PhaseVector::random(10, rng), e);
      CHECK(obj <= b.bound + 1e-9);
    }
    SolverConfig cfg;
    cfg.restarts = 20;
    CHECK(multistart(Method::CD, pr.v1, pr.v2, cfg).objective <= b.bound + 1e-9);
  }
}

TEST_CASE("cutting planes agree with the interior point") {
  for (int n : {3, 5, 7}) {
    const Pair pr = simple_pair(n, 0.5, 40 + static_cast<std::uint64_t>(n));
    const CouplingMatrix c = build_coupling(pr.v1, pr.v2);
    const BoundResult ip = dup_bound(c);
    const BoundResult cp = dup_bound(c, cutting_plane());
    // The cutting-plane repair adds at most 2n * tol over the master value.
    CHECK(std::abs(ip.bound - cp.bound) < 2.0 * (2 * n) * 1e-7 + 1e-8);
    CHECK(cp.cuts > 0);
    CHECK(cp.min_eig_residual >= -1e-12);
    for (std::size_t k = 1; k < cp.master_history.size(); ++k) {
      CHECK(cp.master_history[k] >= cp.master_history[k - 1] - 1e-9);
    }
    // Each master value is a relaxation, never above the SDP value.
    CHECK(cp.master_history.back() <= ip.bound + 1e-8);
    // Interior-point dual values decrease towards the optimum from above.
    CHECK(ip.master_history.front() >= ip.bound);
  }
}

TEST_CASE("cut budget is enforced") {
  const Pair pr = simple_pair(6, 0.5, 2);
  DupOptions o = cutting_plane();
  o.max_cuts = 2;
  try {
    dup_bound(build_coupling(pr.v1, pr.v2), o);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IterationCap);
  }
}

TEST_CASE("input checks") {
  CouplingMatrix c;
  c.n = 2;
  c.w = Eigen::MatrixXd::Ones(4, 4);
  CHECK_THROWS_AS(dup_bound(c), Error);
  CHECK_THROWS_AS(build_coupling(Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(3, 3)), Error);
}
