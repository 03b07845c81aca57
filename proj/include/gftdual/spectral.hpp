#pragma once

#include <Eigen/Dense>

#include "gftdual/graph.hpp"

namespace gftdual {

/// A = V diag(eigenvalues) V^T with eigenvalues ascending and column k of
/// `vectors` paired with eigenvalue k. Columns follow a fixed sign convention:
/// the entry of largest magnitude is positive (lowest row index on ties).
/// Every other eigenvector matrix of a graph with simple spectrum is reached
/// from this one by column phases and column permutations.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd vectors;

  int size() const noexcept { return static_cast<int>(eigenvalues.size()); }
};

struct JacobiOptions {
  double relative_threshold = 1e-12;  // stop when off-diagonal norm <= this * ||A||_F
  int max_sweeps = 100;
};

/// Cyclic Jacobi eigensolver for dense symmetric matrices. Only the upper
/// triangle pairing matters; the input is assumed symmetric.
SpectralDecomposition symmetric_eigen(const Eigen::MatrixXd& a, const JacobiOptions& options = {});

SpectralDecomposition eigendecompose(const Graph& g);

/// Smallest gap between consecutive sorted eigenvalues (+inf when n == 1).
double min_eigenvalue_gap(const SpectralDecomposition& d);

/// True iff every consecutive gap exceeds tol * max(1, max |lambda|).
bool has_distinct_eigenvalues(const SpectralDecomposition& d, double tol = 1e-8);

/// Graph Fourier transform V^T x and its inverse V x.
Eigen::VectorXcd gft(const SpectralDecomposition& d, const Eigen::VectorXcd& x);
Eigen::VectorXcd igft(const SpectralDecomposition& d, const Eigen::VectorXcd& x_hat);

/// Normalized DFT matrix, U(j, k) = exp(-2 pi i j k / n) / sqrt(n).
Eigen::MatrixXcd dft_matrix(int n);

}  // namespace gftdual
