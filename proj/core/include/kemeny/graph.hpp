#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace kemeny {

using Vertex = std::size_t;

/// Undirected edge with conductance. Stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected graph with positive edge conductances on vertices 0..n-1.
///
/// Construction normalizes the edge list: endpoints are ordered, edges are
/// sorted lexicographically by (u, v), and repeated pairs are merged by
/// summing their conductances. Self-loops and non-positive or non-finite
/// weights throw std::invalid_argument. The object is immutable afterwards.
class WeightedGraph {
 public:
  struct Neighbor {
    Vertex vertex;
    double weight;
  };

  WeightedGraph() = default;
  explicit WeightedGraph(std::size_t n);
  WeightedGraph(std::size_t n, std::span<const Edge> edges);
  WeightedGraph(std::size_t n, std::initializer_list<Edge> edges)
      : WeightedGraph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Neighbors of v sorted by vertex id.
  std::span<const Neighbor> neighbors(Vertex v) const;

  /// Conductance of {u, v}, or 0 when absent.
  double weight(Vertex u, Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const { return weight(u, v) > 0.0; }

  double total_weight() const noexcept;
  bool is_unit_weight() const noexcept;

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

struct DegreeProfile {
  Eigen::VectorXd degrees;  // k_i = sum_j c_ij
  double volume = 0.0;      // sum_i k_i
  double mean_degree = 0.0; // volume / n
};

DegreeProfile degree_profile(const WeightedGraph& g);

/// True iff a traversal from vertex 0 reaches every vertex. A graph with no
/// vertices is reported as disconnected.
bool is_connected(const WeightedGraph& g);

/// True iff every vertex has the same weighted degree (within 1e-12 relative).
bool is_regular(const WeightedGraph& g);

/// Edge-set equality up to a relative weight tolerance.
bool same_edges(const WeightedGraph& a, const WeightedGraph& b, double rel_tol = 1e-12);

// Generators. All produce unit weights.
//
// Vertex orderings:
//  complete_bipartite(p, q): side of size p is 0..p-1, side of size q follows.
//  path(n): i ~ i+1.
//  windmill family: centers first (0..n0-1), then blade b occupies
//    n0 + b*k .. n0 + (b+1)*k - 1.
//  join(base, satellites): base vertices first, then each satellite in order.

WeightedGraph complete_graph(std::size_t n);
WeightedGraph complete_bipartite(std::size_t p, std::size_t q);
WeightedGraph path_graph(std::size_t n);
WeightedGraph star_graph(std::size_t leaves);
WeightedGraph empty_graph(std::size_t n);

/// W(m, k): m copies of K_k joined to a single center.
WeightedGraph windmill(std::size_t m, std::size_t k);
/// W'(m, k, n0): centers form a clique K_{n0}.
WeightedGraph windmill_type1(std::size_t m, std::size_t k, std::size_t n0);
/// W''(m, k, n0): centers are mutually non-adjacent.
WeightedGraph windmill_type2(std::size_t m, std::size_t k, std::size_t n0);

/// Join of an l-regular base with k-regular satellites (all unit weight):
/// disjoint union plus every base-satellite edge.
WeightedGraph join_graph(const WeightedGraph& base, std::span<const WeightedGraph> satellites);

/// G(n, p): pairs visited in lexicographic order, one uniform draw each.
/// The output may be disconnected.
WeightedGraph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

/// Copy of g with the listed edges removed. Every listed pair must be an
/// edge of g (std::invalid_argument otherwise); duplicates are rejected.
WeightedGraph remove_edges(const WeightedGraph& g, std::span<const std::pair<Vertex, Vertex>> pairs);

}  // namespace kemeny
