#include "gftdual/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "gftdual/error.hpp"

namespace gftdual {

Permutation::Permutation(std::vector<int> map) : map_(std::move(map)) {
  std::vector<char> seen(map_.size(), 0);
  for (int v : map_) {
    if (v < 0 || static_cast<std::size_t>(v) >= map_.size() || seen[static_cast<std::size_t>(v)]) {
      throw Error(Errc::InvalidArgument, "permutation map is not a bijection");
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> map(static_cast<std::size_t>(n));
  std::iota(map.begin(), map.end(), 0);
  return Permutation(std::move(map));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < map_.size(); ++i) {
    if (map_[i] != static_cast<int>(i)) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) inv[static_cast<std::size_t>(map_[i])] = static_cast<int>(i);
  return Permutation(std::move(inv));
}

Permutation Permutation::then(const Permutation& b) const {
  if (b.size() != size()) throw Error(Errc::SizeMismatch, "composing permutations of different sizes");
  std::vector<int> out(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) out[i] = b[map_[i]];
  return Permutation(std::move(out));
}

Eigen::MatrixXd Permutation::matrix() const {
  const int n = size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, (*this)[i]) = 1.0;
  return m;
}

Permutation random_permutation(int n, Rng& rng) {
  std::vector<int> map(static_cast<std::size_t>(n));
  std::iota(map.begin(), map.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]);
  }
  return Permutation(std::move(map));
}

Graph Graph::from_adjacency(Eigen::MatrixXd adjacency) {
  if (adjacency.rows() != adjacency.cols()) throw Error(Errc::NotSquare, "adjacency matrix is not square");
  if (adjacency.rows() < 1) throw Error(Errc::InvalidArgument, "graph needs at least one vertex");
  const Eigen::Index n = adjacency.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (adjacency(i, i) != 0.0) throw Error(Errc::SelfLoop, "nonzero diagonal entry at " + std::to_string(i));
    for (Eigen::Index j = 0; j < n; ++j) {
      const double w = adjacency(i, j);
      if (!std::isfinite(w)) throw Error(Errc::NonFiniteEntry, "non-finite adjacency entry");
      if (w < 0.0) throw Error(Errc::NonPositiveWeight, "negative adjacency entry");
      if (w != adjacency(j, i)) throw Error(Errc::InvalidArgument, "adjacency matrix is not symmetric");
    }
  }
  return Graph(std::move(adjacency));
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  const int n = size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (adjacency_(i, j) != 0.0) out.push_back({i, j, adjacency_(i, j)});
  return out;
}

int Graph::edge_count() const {
  int count = 0;
  const int n = size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) count += adjacency_(i, j) != 0.0;
  return count;
}

bool Graph::is_circulant() const {
  const int n = size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (adjacency_(i, j) != adjacency_(0, ((j - i) % n + n) % n)) return false;
  return true;
}

Graph new_graph(int n, std::span<const Edge> edges) {
  if (n < 1) throw Error(Errc::InvalidArgument, "graph needs at least one vertex");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : edges) {
    if (e.i == e.j) throw Error(Errc::SelfLoop, "edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) + ")");
    if (e.i < 0 || e.j >= n || e.i > e.j) {
      throw Error(Errc::IndexOutOfRange,
                  "edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) + ") needs 0 <= i < j < " +
                      std::to_string(n));
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(Errc::NonPositiveWeight, "edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) + ")");
    }
    if (a(e.i, e.j) != 0.0) {
      throw Error(Errc::DuplicateEdge, "edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) + ")");
    }
    a(e.i, e.j) = e.weight;
    a(e.j, e.i) = e.weight;
  }
  return Graph::from_adjacency(std::move(a));
}

Graph erdos_renyi(int n, double p, Rng& rng) {
  if (n < 1) throw Error(Errc::InvalidArgument, "graph needs at least one vertex");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::InvalidArgument, "edge probability outside [0, 1]");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.uniform01() < p) {
        a(i, j) = 1.0;
        a(j, i) = 1.0;
      }
    }
  }
  return Graph::from_adjacency(std::move(a));
}

Graph erdos_renyi(int n, double p, RngSeed seed) {
  Rng rng(seed);
  return erdos_renyi(n, p, rng);
}

Graph circulant(int n, std::span<const CirculantOffset> offsets) {
  if (n < 1) throw Error(Errc::InvalidArgument, "graph needs at least one vertex");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  std::vector<char> used(static_cast<std::size_t>(n / 2 + 1), 0);
  for (const auto& [k, w] : offsets) {
    if (k < 1 || 2 * k > n) {
      throw Error(Errc::OffsetOutOfRange, "offset " + std::to_string(k) + " not in [1, " + std::to_string(n / 2) + "]");
    }
    if (!(w > 0.0) || !std::isfinite(w)) throw Error(Errc::NonPositiveWeight, "circulant offset weight");
    if (used[static_cast<std::size_t>(k)]) throw Error(Errc::DuplicateEdge, "offset " + std::to_string(k) + " given twice");
    used[static_cast<std::size_t>(k)] = 1;
    for (int i = 0; i < n; ++i) {
      a(i, (i + k) % n) = w;
      a(i, (i + n - k) % n) = w;
    }
  }
  return Graph::from_adjacency(std::move(a));
}

Graph permute_graph(const Graph& g, const Permutation& p) {
  const int n = g.size();
  if (p.size() != n) throw Error(Errc::SizeMismatch, "permutation length differs from vertex count");
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(p[i], p[j]) = g.weight(i, j);
  return Graph::from_adjacency(std::move(a));
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    std::size_t end = pos;
    while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
    if (end > pos) out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

template <class T>
T parse_number(std::string_view token, std::size_t line) {
  T value{};
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw ParseError(line, "bad number '" + std::string(token) + "'");
  return value;
}

}  // namespace

Graph read_graph(std::string_view text) {
  int n = -1;
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (n < 0) {
      if (tokens.size() != 1) throw ParseError(line_no, "expected the vertex count");
      n = parse_number<int>(tokens[0], line_no);
      if (n < 1) throw ParseError(line_no, "vertex count must be positive");
      continue;
    }
    if (tokens.size() != 3) throw ParseError(line_no, "expected 'i j w'");
    edges.push_back({parse_number<int>(tokens[0], line_no), parse_number<int>(tokens[1], line_no),
                     parse_number<double>(tokens[2], line_no)});
  }
  if (n < 0) throw ParseError(line_no, "missing vertex count");
  return new_graph(n, edges);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_graph(buf.str());
}

std::string write_graph(const Graph& g) {
  std::string out = std::to_string(g.size()) + "\n";
  char buf[64];
  for (const Edge& e : g.edges()) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, e.weight);
    out += std::to_string(e.i) + " " + std::to_string(e.j) + " " + std::string(buf, ptr) + "\n";
  }
  return out;
}

}  // namespace gftdual
