#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "kemeny/bounds.hpp"
#include "kemeny/graph.hpp"
#include "kemeny/spectral.hpp"

namespace kemeny {

/// Partition of 0..n-1 into non-empty, disjoint parts.
struct VertexPartition {
  std::vector<std::vector<Vertex>> parts;

  std::size_t size() const noexcept { return parts.size(); }
  /// Throws std::invalid_argument unless the parts cover 0..n-1 exactly once.
  void validate(std::size_t n) const;
};

/// Quotient of a symmetric matrix by a partition. `matrix` holds the average
/// block row sums; `eigenvalues` (descending) are computed from the similar
/// symmetric matrix diag(|U|)^{1/2} B diag(|U|)^{-1/2}.
struct QuotientMatrix {
  Eigen::MatrixXd matrix;
  Eigen::MatrixXd symmetrized;
  Eigen::VectorXd eigenvalues;
};

QuotientMatrix quotient_matrix(const Eigen::MatrixXd& a, const VertexPartition& partition);

/// Descending eigenvalues of the principal submatrix of a on `subset`.
Eigen::VectorXd principal_submatrix_eigenvalues(const Eigen::MatrixXd& a, std::span<const Vertex> subset);

/// Bounds from eigenvalues theta_1 >= ... >= theta_m of a compression of the
/// normalized adjacency:
///   sum_{i=2}^m 1/(1-theta_i) + (n-m)/2 <= K <= sum_{i=2}^m 1/(1-theta_i) + (n-m)/(1-lambda_2).
BoundInterval compression_bounds(const SpectrumSummary& spec, const Eigen::VectorXd& theta_desc);

/// Principal-submatrix case. Requires 2 <= |subset| < n, distinct vertices.
BoundInterval submatrix_bounds(const LaplacianSet& ls, const SpectrumSummary& spec,
                               std::span<const Vertex> subset);

/// Quotient-matrix case. Requires 2 <= |parts| < n.
BoundInterval quotient_bounds(const LaplacianSet& ls, const SpectrumSummary& spec,
                              const VertexPartition& partition);

/// min over edges {i,j} of the two-vertex submatrix term, plus (n-2)/(1-lambda_2).
/// For unit weights the term is sqrt(k_i k_j)/(sqrt(k_i k_j)+1).
double adjacent_pair_upper(const WeightedGraph& g, const DegreeProfile& dp, const SpectrumSummary& spec);

struct EdgeDeletionBounds {
  /// r/mu_1 + sum_{j=1}^{n-r-1} 1/theta_j <= K(G) <= sum_{j=r+1}^{n-1} 1/theta_j + r/mu_{n-1}
  BoundInterval direct;
  /// K(H) - sum_{j=n-r}^{n-1} 1/theta_j + r/mu_1 <= K(G) <= K(H) - sum_{j=1}^r 1/theta_j + r/mu_{n-1}
  BoundInterval via_kemeny_h;
};

/// Bounds on K(G) from the normalized-Laplacian spectrum of H = G minus r
/// edges. Both spectra are re-sorted descending here (mu_n = theta_n = 0).
/// r = 0 returns the point interval {K(H)}.
EdgeDeletionBounds edge_deletion_bounds(const SpectrumSummary& spec_g, const SpectrumSummary& spec_h,
                                        std::size_t r);

/// Builds H, checks the listed edges belong to G and that H stays connected.
EdgeDeletionBounds edge_deletion_bounds(const WeightedGraph& g,
                                        std::span<const std::pair<Vertex, Vertex>> deleted);

}  // namespace kemeny
