#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "kemeny/graph.hpp"

namespace kemeny {

/// Dense Laplacian family of a graph with no isolated vertices.
struct LaplacianSet {
  Eigen::MatrixXd adjacency;             // A
  Eigen::VectorXd degrees;               // diagonal of D
  Eigen::MatrixXd laplacian;             // L = D - A
  Eigen::MatrixXd normalized_laplacian;  // I - D^{-1/2} A D^{-1/2}
  Eigen::MatrixXd normalized_adjacency;  // D^{-1/2} A D^{-1/2}

  std::size_t size() const noexcept { return static_cast<std::size_t>(degrees.size()); }
  double volume() const { return degrees.sum(); }

  /// Random-walk transition matrix P = D^{-1} A.
  Eigen::MatrixXd transition() const;
};

/// Throws ConnectivityError on an isolated vertex and std::invalid_argument
/// when n < 2.
LaplacianSet assemble(const WeightedGraph& g);

/// Connectivity of the graph behind a Laplacian, read off its sparsity pattern.
bool is_connected(const LaplacianSet& ls);

/// Sorted spectra. gamma and mu are ascending, lambda is descending, so that
/// mu(i) = 1 - lambda(i).
struct SpectrumSummary {
  Eigen::VectorXd gamma;   // eigenvalues of L
  Eigen::VectorXd mu;      // eigenvalues of the normalized Laplacian
  Eigen::VectorXd lambda;  // eigenvalues of the normalized adjacency

  std::size_t size() const noexcept { return static_cast<std::size_t>(gamma.size()); }

  double gamma2() const { return gamma[1]; }
  double gamma_max() const { return gamma[gamma.size() - 1]; }
  double mu2() const { return mu[1]; }
  double lambda2() const { return lambda[1]; }

  /// 1e-9 * max(1, gamma_n): threshold for zero combinatorial eigenvalues.
  double laplacian_tolerance() const;
  /// 1e-9 * max(1, mu_n): threshold for zero normalized eigenvalues.
  double normalized_tolerance() const;

  /// gamma_2 and mu_2 clear their tolerances.
  bool connected() const;
};

SpectrumSummary spectrum(const LaplacianSet& ls);

/// Ascending eigenvalues of a symmetric matrix. Throws NumericalError if the
/// solver does not converge.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m);

/// L^#, the group inverse of the combinatorial Laplacian.
struct GroupInverseMatrix {
  Eigen::MatrixXd matrix;

  std::size_t size() const noexcept { return static_cast<std::size_t>(matrix.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
};

/// (L + J/n)^{-1} - J/n. Throws ConnectivityError when the graph behind L is
/// disconnected.
GroupInverseMatrix group_inverse(const LaplacianSet& ls);
GroupInverseMatrix group_inverse(const Eigen::MatrixXd& laplacian);

/// r_ij = (e_i - e_j)^T L^# (e_i - e_j). Requires i != j.
double effective_resistance(const GroupInverseMatrix& gi, std::size_t i, std::size_t j);

/// R_G = n * sum_{i>=2} 1/gamma_i.
double kirchhoff_index(const SpectrumSummary& spec);

}  // namespace kemeny
