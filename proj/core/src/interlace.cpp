#include "kemeny/interlace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "kemeny/constant.hpp"
#include "kemeny/error.hpp"

namespace kemeny {

void VertexPartition::validate(std::size_t n) const {
  std::vector<char> seen(n, 0);
  std::size_t covered = 0;
  for (const auto& part : parts) {
    if (part.empty()) throw std::invalid_argument("partition has an empty part");
    for (Vertex v : part) {
      if (v >= n) throw std::invalid_argument("partition vertex out of range: " + std::to_string(v));
      if (seen[v]) throw std::invalid_argument("vertex " + std::to_string(v) + " appears in two parts");
      seen[v] = 1;
      ++covered;
    }
  }
  if (covered != n) throw std::invalid_argument("partition does not cover every vertex");
}

QuotientMatrix quotient_matrix(const Eigen::MatrixXd& a, const VertexPartition& partition) {
  partition.validate(static_cast<std::size_t>(a.rows()));
  const auto m = static_cast<Eigen::Index>(partition.size());
  QuotientMatrix q;
  q.matrix = Eigen::MatrixXd::Zero(m, m);
  q.symmetrized = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& ui = partition.parts[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto& uj = partition.parts[static_cast<std::size_t>(j)];
      double block = 0.0;
      for (Vertex r : ui) {
        for (Vertex c : uj) block += a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      }
      const double si = static_cast<double>(ui.size());
      const double sj = static_cast<double>(uj.size());
      q.matrix(i, j) = block / si;
      q.symmetrized(i, j) = block / std::sqrt(si * sj);
    }
  }
  q.eigenvalues = symmetric_eigenvalues(q.symmetrized).reverse();
  return q;
}

Eigen::VectorXd principal_submatrix_eigenvalues(const Eigen::MatrixXd& a, std::span<const Vertex> subset) {
  const auto m = static_cast<Eigen::Index>(subset.size());
  std::vector<char> seen(static_cast<std::size_t>(a.rows()), 0);
  for (Vertex v : subset) {
    if (v >= static_cast<std::size_t>(a.rows())) throw std::invalid_argument("subset vertex out of range");
    if (seen[v]) throw std::invalid_argument("subset repeats vertex " + std::to_string(v));
    seen[v] = 1;
  }
  Eigen::MatrixXd b(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      b(i, j) = a(static_cast<Eigen::Index>(subset[static_cast<std::size_t>(i)]),
                  static_cast<Eigen::Index>(subset[static_cast<std::size_t>(j)]));
    }
  }
  return symmetric_eigenvalues(b).reverse();
}

BoundInterval compression_bounds(const SpectrumSummary& spec, const Eigen::VectorXd& theta_desc) {
  const auto n = static_cast<double>(spec.size());
  const auto m = static_cast<double>(theta_desc.size());
  const double gap = 1.0 - spec.lambda2();
  if (gap <= spec.normalized_tolerance()) {
    throw ConnectivityError("lambda_2 = 1: the graph is disconnected");
  }
  double head = 0.0;
  for (Eigen::Index i = 1; i < theta_desc.size(); ++i) head += 1.0 / (1.0 - theta_desc[i]);
  return {head + (n - m) / 2.0, head + (n - m) / gap, "", false};
}

BoundInterval submatrix_bounds(const LaplacianSet& ls, const SpectrumSummary& spec,
                               std::span<const Vertex> subset) {
  if (subset.size() < 2 || subset.size() >= ls.size()) {
    throw std::invalid_argument("submatrix bounds need 2 <= m < n vertices");
  }
  auto out = compression_bounds(spec, principal_submatrix_eigenvalues(ls.normalized_adjacency, subset));
  out.source = "principal-submatrix interlacing";
  return out;
}

BoundInterval quotient_bounds(const LaplacianSet& ls, const SpectrumSummary& spec,
                              const VertexPartition& partition) {
  if (partition.size() < 2 || partition.size() >= ls.size()) {
    throw std::invalid_argument("quotient bounds need 2 <= m < n parts");
  }
  auto out = compression_bounds(spec, quotient_matrix(ls.normalized_adjacency, partition).eigenvalues);
  out.source = "quotient-matrix interlacing";
  return out;
}

double adjacent_pair_upper(const WeightedGraph& g, const DegreeProfile& dp, const SpectrumSummary& spec) {
  const auto n = g.vertex_count();
  if (n < 3) throw std::invalid_argument("adjacent-pair bound needs n >= 3");
  const double gap = 1.0 - spec.lambda2();
  if (gap <= spec.normalized_tolerance() || g.edge_count() == 0) {
    throw ConnectivityError("adjacent-pair bound needs a connected graph");
  }
  double best = std::numeric_limits<double>::infinity();
  for (const Edge& e : g.edges()) {
    const double root = std::sqrt(dp.degrees[static_cast<Eigen::Index>(e.u)] *
                                  dp.degrees[static_cast<Eigen::Index>(e.v)]);
    // theta_2 of the 2x2 block is -c/root
    best = std::min(best, root / (root + e.weight));
  }
  return best + static_cast<double>(n - 2) / gap;
}

EdgeDeletionBounds edge_deletion_bounds(const SpectrumSummary& spec_g, const SpectrumSummary& spec_h,
                                        std::size_t r) {
  const std::size_t n = spec_g.size();
  if (spec_h.size() != n) throw std::invalid_argument("G and H must have the same vertex count");
  if (r > n - 1) throw std::invalid_argument("edge deletion bounds need r <= n - 1");
  if (!spec_h.connected()) throw ConnectivityError("H must be connected");
  if (!spec_g.connected()) throw ConnectivityError("G must be connected");

  // descending, 1-based: mu(1) >= ... >= mu(n) = 0
  const Eigen::VectorXd mu_desc = spec_g.mu.reverse();
  const Eigen::VectorXd theta_desc = spec_h.mu.reverse();
  auto mu = [&](std::size_t i) { return mu_desc[static_cast<Eigen::Index>(i - 1)]; };
  auto inv_theta_sum = [&](std::size_t from, std::size_t to) {
    double s = 0.0;
    for (std::size_t j = from; j <= to; ++j) s += 1.0 / theta_desc[static_cast<Eigen::Index>(j - 1)];
    return s;
  };

  const double k_h = kemeny_eigen(spec_h);
  EdgeDeletionBounds out;
  if (r == 0) {
    out.direct = {k_h, k_h, "edge-deletion interlacing", false};
    out.via_kemeny_h = {k_h, k_h, "edge-deletion interlacing (via K(H))", false};
    return out;
  }
  const double rd = static_cast<double>(r);
  out.direct = {rd / mu(1) + inv_theta_sum(1, n - r - 1), inv_theta_sum(r + 1, n - 1) + rd / mu(n - 1),
                "edge-deletion interlacing", false};
  out.via_kemeny_h = {k_h - inv_theta_sum(n - r, n - 1) + rd / mu(1),
                      k_h - inv_theta_sum(1, r) + rd / mu(n - 1),
                      "edge-deletion interlacing (via K(H))", false};
  return out;
}

EdgeDeletionBounds edge_deletion_bounds(const WeightedGraph& g,
                                        std::span<const std::pair<Vertex, Vertex>> deleted) {
  const WeightedGraph h = remove_edges(g, deleted);
  if (!is_connected(h)) throw ConnectivityError("deleting these edges disconnects the graph");
  return edge_deletion_bounds(spectrum(assemble(g)), spectrum(assemble(h)), deleted.size());
}

}  // namespace kemeny
