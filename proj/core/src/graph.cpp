#include "kemeny/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "kemeny/random.hpp"

namespace kemeny {

WeightedGraph::WeightedGraph(std::size_t n) : n_(n), adjacency_(n) {}

WeightedGraph::WeightedGraph(std::size_t n, std::span<const Edge> edges) : n_(n), adjacency_(n) {
  edges_.reserve(edges.size());
  for (Edge e : edges) {
    if (e.u >= n || e.v >= n) {
      throw std::invalid_argument("edge endpoint out of range: " + std::to_string(e.u) + "-" +
                                  std::to_string(e.v) + " with n = " + std::to_string(n));
    }
    if (e.u == e.v) {
      throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw std::invalid_argument("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                  " has non-positive weight");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    edges_.push_back(e);
  }
  std::stable_sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  // merge repeated samples of the same pair
  std::size_t out = 0;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (out > 0 && edges_[out - 1].u == edges_[i].u && edges_[out - 1].v == edges_[i].v) {
      edges_[out - 1].weight += edges_[i].weight;
    } else {
      edges_[out++] = edges_[i];
    }
  }
  edges_.resize(out);

  for (const Edge& e : edges_) {
    adjacency_[e.u].push_back({e.v, e.weight});
    adjacency_[e.v].push_back({e.u, e.weight});
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }
}

std::span<const WeightedGraph::Neighbor> WeightedGraph::neighbors(Vertex v) const {
  if (v >= n_) throw std::out_of_range("vertex out of range");
  return adjacency_[v];
}

double WeightedGraph::weight(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_) throw std::out_of_range("vertex out of range");
  const auto& list = adjacency_[u];
  auto it = std::lower_bound(list.begin(), list.end(), v,
                             [](const Neighbor& a, Vertex x) { return a.vertex < x; });
  return (it != list.end() && it->vertex == v) ? it->weight : 0.0;
}

double WeightedGraph::total_weight() const noexcept {
  double s = 0.0;
  for (const Edge& e : edges_) s += e.weight;
  return s;
}

bool WeightedGraph::is_unit_weight() const noexcept {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.weight == 1.0; });
}

DegreeProfile degree_profile(const WeightedGraph& g) {
  DegreeProfile dp;
  const auto n = g.vertex_count();
  dp.degrees = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (const Edge& e : g.edges()) {
    dp.degrees[static_cast<Eigen::Index>(e.u)] += e.weight;
    dp.degrees[static_cast<Eigen::Index>(e.v)] += e.weight;
  }
  dp.volume = dp.degrees.sum();
  dp.mean_degree = n > 0 ? dp.volume / static_cast<double>(n) : 0.0;
  return dp;
}

bool is_connected(const WeightedGraph& g) {
  const auto n = g.vertex_count();
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (const auto& nb : g.neighbors(v)) {
      if (!seen[nb.vertex]) {
        seen[nb.vertex] = 1;
        ++reached;
        stack.push_back(nb.vertex);
      }
    }
  }
  return reached == n;
}

bool is_regular(const WeightedGraph& g) {
  const auto dp = degree_profile(g);
  if (dp.degrees.size() == 0) return true;
  const double scale = std::max(1.0, dp.degrees.cwiseAbs().maxCoeff());
  return (dp.degrees.array() - dp.degrees[0]).abs().maxCoeff() <= 1e-12 * scale;
}

bool same_edges(const WeightedGraph& a, const WeightedGraph& b, double rel_tol) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  for (std::size_t i = 0; i < a.edge_count(); ++i) {
    const Edge& x = a.edges()[i];
    const Edge& y = b.edges()[i];
    if (x.u != y.u || x.v != y.v) return false;
    if (std::abs(x.weight - y.weight) > rel_tol * std::max(std::abs(x.weight), std::abs(y.weight))) {
      return false;
    }
  }
  return true;
}

namespace {

void require_positive(std::size_t value, const char* name) {
  if (value == 0) throw std::invalid_argument(std::string(name) + " must be at least 1");
}

void add_clique(std::vector<Edge>& edges, Vertex first, std::size_t size) {
  for (Vertex i = 0; i < size; ++i) {
    for (Vertex j = i + 1; j < size; ++j) edges.push_back({first + i, first + j, 1.0});
  }
}

WeightedGraph windmill_impl(std::size_t m, std::size_t k, std::size_t n0, bool center_clique) {
  if (m < 2) throw std::invalid_argument("windmill needs m >= 2 blades");
  require_positive(k, "k");
  require_positive(n0, "n0");
  const std::size_t n = n0 + m * k;
  std::vector<Edge> edges;
  if (center_clique) add_clique(edges, 0, n0);
  for (std::size_t b = 0; b < m; ++b) add_clique(edges, n0 + b * k, k);
  for (Vertex c = 0; c < n0; ++c) {
    for (Vertex s = n0; s < n; ++s) edges.push_back({c, s, 1.0});
  }
  return WeightedGraph(n, edges);
}

// Common unit-weight degree, or -1 when irregular or weighted.
long regular_degree(const WeightedGraph& g) {
  if (!g.is_unit_weight()) return -1;
  if (g.vertex_count() == 0) return 0;
  const std::size_t d0 = g.neighbors(0).size();
  for (Vertex v = 1; v < g.vertex_count(); ++v) {
    if (g.neighbors(v).size() != d0) return -1;
  }
  return static_cast<long>(d0);
}

}  // namespace

WeightedGraph complete_graph(std::size_t n) {
  require_positive(n, "n");
  std::vector<Edge> edges;
  add_clique(edges, 0, n);
  return WeightedGraph(n, edges);
}

WeightedGraph complete_bipartite(std::size_t p, std::size_t q) {
  require_positive(p, "p");
  require_positive(q, "q");
  std::vector<Edge> edges;
  edges.reserve(p * q);
  for (Vertex i = 0; i < p; ++i) {
    for (Vertex j = 0; j < q; ++j) edges.push_back({i, p + j, 1.0});
  }
  return WeightedGraph(p + q, edges);
}

WeightedGraph path_graph(std::size_t n) {
  require_positive(n, "n");
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return WeightedGraph(n, edges);
}

WeightedGraph star_graph(std::size_t leaves) { return complete_bipartite(1, leaves); }

WeightedGraph empty_graph(std::size_t n) {
  require_positive(n, "n");
  return WeightedGraph(n);
}

WeightedGraph windmill(std::size_t m, std::size_t k) { return windmill_impl(m, k, 1, false); }

WeightedGraph windmill_type1(std::size_t m, std::size_t k, std::size_t n0) {
  return windmill_impl(m, k, n0, true);
}

WeightedGraph windmill_type2(std::size_t m, std::size_t k, std::size_t n0) {
  return windmill_impl(m, k, n0, false);
}

WeightedGraph join_graph(const WeightedGraph& base, std::span<const WeightedGraph> satellites) {
  if (satellites.empty()) throw std::invalid_argument("join needs at least one satellite");
  if (base.vertex_count() == 0) throw std::invalid_argument("join base must be non-empty");
  if (regular_degree(base) < 0) throw std::invalid_argument("join base must be regular with unit weights");
  const long k = regular_degree(satellites.front());
  for (const auto& s : satellites) {
    if (s.vertex_count() == 0) throw std::invalid_argument("join satellites must be non-empty");
    const long d = regular_degree(s);
    if (d < 0 || d != k) {
      throw std::invalid_argument("join satellites must all be k-regular with the same k");
    }
  }

  const std::size_t n0 = base.vertex_count();
  std::vector<Edge> edges(base.edges().begin(), base.edges().end());
  std::size_t offset = n0;
  for (const auto& s : satellites) {
    for (const Edge& e : s.edges()) edges.push_back({offset + e.u, offset + e.v, 1.0});
    offset += s.vertex_count();
  }
  for (Vertex c = 0; c < n0; ++c) {
    for (Vertex v = n0; v < offset; ++v) edges.push_back({c, v, 1.0});
  }
  return WeightedGraph(offset, edges);
}

WeightedGraph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  require_positive(n, "n");
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in (0, 1]");
  CounterRng rng(seed);
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      if (rng.next_uniform() < p) edges.push_back({i, j, 1.0});
    }
  }
  return WeightedGraph(n, edges);
}

WeightedGraph remove_edges(const WeightedGraph& g, std::span<const std::pair<Vertex, Vertex>> pairs) {
  std::set<std::pair<Vertex, Vertex>> drop;
  for (auto [u, v] : pairs) {
    if (u > v) std::swap(u, v);
    if (u >= g.vertex_count() || v >= g.vertex_count() || !g.has_edge(u, v)) {
      throw std::invalid_argument("edge " + std::to_string(u) + "-" + std::to_string(v) +
                                  " is not an edge of the graph");
    }
    if (!drop.insert({u, v}).second) {
      throw std::invalid_argument("edge " + std::to_string(u) + "-" + std::to_string(v) +
                                  " listed twice");
    }
  }
  std::vector<Edge> kept;
  kept.reserve(g.edge_count() - drop.size());
  for (const Edge& e : g.edges()) {
    if (!drop.contains({e.u, e.v})) kept.push_back(e);
  }
  return WeightedGraph(g.vertex_count(), kept);
}

}  // namespace kemeny
