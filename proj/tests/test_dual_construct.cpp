#include <doctest.h>

#include "gftdual/alignment.hpp"
#include "gftdual/dual_construct.hpp"
#include "gftdual/graph.hpp"
#include "gftdual/spectral.hpp"

using namespace gftdual;

TEST_CASE("single edge is self-dual up to the eigenvalue scale") {
  const std::vector<Edge> e{{0, 1, 1.0}};
  const Graph g = new_graph(2, e);
  const DualConstructionResult r = construct_dual(g);
  REQUIRE(r.status == DualStatus::Feasible);
  CHECK(std::string(to_string(r.status)) == "FEASIBLE");
  REQUIRE(r.graph.has_value());
  CHECK(r.graph->edge_count() == 1);
  CHECK(r.graph->weight(0, 1) >= 1.0 - 1e-9);
  CHECK(verify_dual_witness(g, r.lambda).max() <= 1e-9);
  // The dual's eigenvector matrix is V^T: A V^T = V^T diag(lambda).
  const Eigen::MatrixXd vt = eigendecompose(g).vectors.transpose();
  CHECK((r.adjacency * vt - vt * r.lambda.asDiagonal()).norm() < 1e-9);
}

TEST_CASE("identity eigenvectors admit no dual") {
  const DualConstructionResult r = construct_dual_from_vectors(Eigen::MatrixXd::Identity(4, 4));
  CHECK(r.status == DualStatus::Infeasible);
  CHECK(std::string(to_string(r.status)) == "INFEASIBLE");
  CHECK_FALSE(r.graph.has_value());
}

TEST_CASE("dual_adjacency and witness residuals") {
  const Graph g = erdos_renyi(6, 0.5, RngSeed{3});
  const Eigen::MatrixXd v = eigendecompose(g).vectors;
  const Eigen::VectorXd lambda = Eigen::VectorXd::LinSpaced(6, -1.0, 2.0);
  const Eigen::MatrixXd a = dual_adjacency(v, lambda);
  CHECK((v.transpose() * lambda.asDiagonal() * v - a).norm() < 1e-12);
  const DualWitnessResiduals res = verify_dual_witness(g, lambda);
  CHECK(res.diagonal == doctest::Approx(a.diagonal().cwiseAbs().maxCoeff()));
  CHECK(res.row_sum >= 0.0);
  CHECK(verify_dual_witness(g, Eigen::VectorXd::Zero(6)).row_sum == 1.0);
}

TEST_CASE("random dense graphs are almost never dualizable") {
  int infeasible = 0;
  for (std::uint64_t s = 0; s < 5; ++s) {
    if (construct_dual(erdos_renyi(20, 0.5, RngSeed{900 + s})).status == DualStatus::Infeasible) ++infeasible;
  }
  CHECK(infeasible >= 4);
}

TEST_CASE("feasibility is invariant under relabelling") {
  Rng rng(RngSeed{8});
  const std::vector<Edge> e{{0, 1, 1.0}};
  const Eigen::MatrixXd base = eigendecompose(new_graph(2, e)).vectors;
  for (int t = 0; t < 10; ++t) {
    const Graph g = erdos_renyi(6, 0.5, RngSeed{static_cast<std::uint64_t>(t)});
    const Eigen::MatrixXd v = eigendecompose(g).vectors;
    const Permutation p = random_permutation(6, rng);
    const DualStatus s = construct_dual_from_vectors(v).status;
    CHECK(construct_dual_from_vectors(relabel_rows(v, p)).status == s);
    CHECK(construct_dual_from_vectors(v * p.matrix()).status == s);
  }
  CHECK(construct_dual_from_vectors(base).status == DualStatus::Feasible);
}

TEST_CASE("feasible results carry a valid witness") {
  // Block structure: disjoint single edges stay dualizable.
  const std::vector<Edge> e{{0, 1, 1.0}, {2, 3, 2.0}};
  const Graph g = new_graph(4, e);
  const DualConstructionResult r = construct_dual(g);
  if (r.status == DualStatus::Feasible) {
    CHECK(verify_dual_witness(g, r.lambda).max() <= 1e-9);
    CHECK(r.graph->adjacency().diagonal().isZero());
    for (int i = 0; i < 4; ++i) CHECK(r.graph->adjacency().row(i).sum() >= 1.0 - 1e-8);
  }
}
