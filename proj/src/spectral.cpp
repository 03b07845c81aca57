#include "gftdual/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

#include "gftdual/error.hpp"

namespace gftdual {

namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double sum = 0.0;
  const Eigen::Index n = a.rows();
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if (i != j) sum += a(i, j) * a(i, j);
  return std::sqrt(sum);
}

void rotate(Eigen::MatrixXd& a, Eigen::MatrixXd& v, Eigen::Index p, Eigen::Index q) {
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Eigen::Index n = a.rows();

  for (Eigen::Index k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double akp = a(k, p);
    const double akq = a(k, q);
    const double new_kp = c * akp - s * akq;
    const double new_kq = s * akp + c * akq;
    a(k, p) = new_kp;
    a(p, k) = new_kp;
    a(k, q) = new_kq;
    a(q, k) = new_kq;
  }
  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;

  for (Eigen::Index k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

}  // namespace

SpectralDecomposition symmetric_eigen(const Eigen::MatrixXd& input, const JacobiOptions& options) {
  if (input.rows() != input.cols()) throw Error(Errc::NotSquare, "eigendecomposition of a non-square matrix");
  const Eigen::Index n = input.rows();
  Eigen::MatrixXd a = input;
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double threshold = options.relative_threshold * input.norm();

  bool converged = false;
  for (int sweep = 0; sweep <= options.max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) {
      converged = true;
      break;
    }
    if (sweep == options.max_sweeps) break;
    for (Eigen::Index p = 0; p + 1 < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q)
        if (a(p, q) != 0.0) rotate(a, v, p, q);
  }
  if (!converged) throw Error(Errc::ConvergenceFailure, "Jacobi sweep cap reached");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.eigenvalues(k) = a(src, src);
    Eigen::Index pivot = 0;
    for (Eigen::Index i = 1; i < n; ++i)
      if (std::abs(v(i, src)) > std::abs(v(pivot, src))) pivot = i;
    const double sign = v(pivot, src) < 0.0 ? -1.0 : 1.0;
    out.vectors.col(k) = sign * v.col(src);
  }
  return out;
}

SpectralDecomposition eigendecompose(const Graph& g) { return symmetric_eigen(g.adjacency()); }

double min_eigenvalue_gap(const SpectralDecomposition& d) {
  double gap = std::numeric_limits<double>::infinity();
  for (int k = 0; k + 1 < d.size(); ++k) gap = std::min(gap, d.eigenvalues(k + 1) - d.eigenvalues(k));
  return gap;
}

bool has_distinct_eigenvalues(const SpectralDecomposition& d, double tol) {
  if (!(tol > 0.0)) throw Error(Errc::InvalidArgument, "distinctness tolerance must be positive");
  const double scale = std::max(1.0, d.eigenvalues.size() ? d.eigenvalues.cwiseAbs().maxCoeff() : 0.0);
  return min_eigenvalue_gap(d) > tol * scale;
}

Eigen::VectorXcd gft(const SpectralDecomposition& d, const Eigen::VectorXcd& x) {
  if (x.size() != d.size()) throw Error(Errc::SizeMismatch, "signal length differs from graph size");
  return d.vectors.transpose().cast<std::complex<double>>() * x;
}

Eigen::VectorXcd igft(const SpectralDecomposition& d, const Eigen::VectorXcd& x_hat) {
  if (x_hat.size() != d.size()) throw Error(Errc::SizeMismatch, "spectrum length differs from graph size");
  return d.vectors.cast<std::complex<double>>() * x_hat;
}

Eigen::MatrixXcd dft_matrix(int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "DFT size must be positive");
  Eigen::MatrixXcd u(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      // jk is reduced mod n so the angle stays in [0, 2 pi).
      const long long r = (static_cast<long long>(j) * k) % n;
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(r) / n;
      u(j, k) = std::polar(scale, angle);
    }
  }
  return u;
}

}  // namespace gftdual
