#pragma once

#include <Eigen/Dense>

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gftdual/rng.hpp"

namespace gftdual {

struct Edge {
  int i = 0;
  int j = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Bijection of {0, ..., n-1}. The associated permutation matrix P has
/// P(i, map[i]) = 1.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> map);

  static Permutation identity(int n);

  int size() const noexcept { return static_cast<int>(map_.size()); }
  int operator[](int i) const { return map_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& map() const noexcept { return map_; }
  bool is_identity() const noexcept;

  Permutation inverse() const;
  /// (a.then(b))[i] = b[a[i]]; matrix(a.then(b)) = matrix(a) * matrix(b).
  Permutation then(const Permutation& b) const;
  Eigen::MatrixXd matrix() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> map_;
};

/// Uniformly random permutation (Fisher-Yates, unbiased draws).
Permutation random_permutation(int n, Rng& rng);

/// Undirected weighted graph stored as a dense adjacency matrix. The matrix is
/// exactly symmetric with an exactly zero diagonal and non-negative finite
/// off-diagonal entries; every constructor checks this.
class Graph {
 public:
  /// Validates and adopts a dense adjacency matrix.
  static Graph from_adjacency(Eigen::MatrixXd adjacency);

  int size() const noexcept { return static_cast<int>(adjacency_.rows()); }
  const Eigen::MatrixXd& adjacency() const noexcept { return adjacency_; }
  double weight(int i, int j) const { return adjacency_(i, j); }

  /// Edges with i < j in (i, j) lexicographic order.
  std::vector<Edge> edges() const;
  int edge_count() const;
  bool is_circulant() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.adjacency_.rows() == b.adjacency_.rows() && a.adjacency_ == b.adjacency_;
  }

 private:
  explicit Graph(Eigen::MatrixXd adjacency) : adjacency_(std::move(adjacency)) {}
  Eigen::MatrixXd adjacency_;
};

/// Pre: 0 <= i < j < n (a pair given as j < i is rejected as out of range),
/// weight > 0, no duplicate pairs.
Graph new_graph(int n, std::span<const Edge> edges);

/// G(n, p) with unit weights. Pairs are visited row-major over i < j and one
/// uniform01() draw is consumed per pair; the pair is an edge iff draw < p.
Graph erdos_renyi(int n, double p, RngSeed seed);
Graph erdos_renyi(int n, double p, Rng& rng);

struct CirculantOffset {
  int offset = 1;
  double weight = 1.0;
};

/// adjacency(i, j) = w whenever (j - i) mod n is k or n - k; requires 1 <= k <= n/2.
Graph circulant(int n, std::span<const CirculantOffset> offsets);

/// Relabels vertex i as p[i]: out(p[i], p[j]) = in(i, j).
Graph permute_graph(const Graph& g, const Permutation& p);

/// Text format: first non-comment line is the vertex count; then one "i j w"
/// line per edge. Lines starting with '#' and blank lines are ignored.
Graph read_graph(std::string_view text);
Graph read_graph_file(const std::string& path);
std::string write_graph(const Graph& g);

}  // namespace gftdual
