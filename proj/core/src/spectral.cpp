#include "kemeny/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "kemeny/error.hpp"

namespace kemeny {

namespace {

bool laplacian_pattern_connected(const Eigen::MatrixXd& lap) {
  const Eigen::Index n = lap.rows();
  if (n == 0) return false;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Eigen::Index> stack{0};
  seen[0] = 1;
  Eigen::Index reached = 1;
  while (!stack.empty()) {
    const Eigen::Index v = stack.back();
    stack.pop_back();
    for (Eigen::Index u = 0; u < n; ++u) {
      if (u != v && lap(v, u) != 0.0 && !seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == n;
}

}  // namespace

Eigen::MatrixXd LaplacianSet::transition() const {
  return degrees.cwiseInverse().asDiagonal() * adjacency;
}

bool is_connected(const LaplacianSet& ls) { return laplacian_pattern_connected(ls.laplacian); }

LaplacianSet assemble(const WeightedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  if (n < 2) throw std::invalid_argument("Laplacians need at least two vertices");

  LaplacianSet ls;
  ls.adjacency = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    ls.adjacency(u, v) = e.weight;
    ls.adjacency(v, u) = e.weight;
  }
  ls.degrees = ls.adjacency.rowwise().sum();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(ls.degrees[i] > 0.0)) {
      throw ConnectivityError("vertex " + std::to_string(i) + " is isolated");
    }
  }
  ls.laplacian = -ls.adjacency;
  ls.laplacian.diagonal() += ls.degrees;

  const Eigen::VectorXd inv_sqrt = ls.degrees.cwiseSqrt().cwiseInverse();
  ls.normalized_adjacency = inv_sqrt.asDiagonal() * ls.adjacency * inv_sqrt.asDiagonal();
  ls.normalized_laplacian = -ls.normalized_adjacency;
  ls.normalized_laplacian.diagonal().array() += 1.0;
  return ls;
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric eigensolver did not converge (n = " +
                         std::to_string(m.rows()) + ")");
  }
  return solver.eigenvalues();
}

double SpectrumSummary::laplacian_tolerance() const {
  return 1e-9 * std::max(1.0, gamma_max());
}

double SpectrumSummary::normalized_tolerance() const {
  return 1e-9 * std::max(1.0, mu[mu.size() - 1]);
}

bool SpectrumSummary::connected() const {
  return size() >= 2 && gamma2() > laplacian_tolerance() && mu2() > normalized_tolerance();
}

SpectrumSummary spectrum(const LaplacianSet& ls) {
  SpectrumSummary s;
  s.gamma = symmetric_eigenvalues(ls.laplacian);
  s.mu = symmetric_eigenvalues(ls.normalized_laplacian);
  s.lambda = symmetric_eigenvalues(ls.normalized_adjacency).reverse();
  return s;
}

GroupInverseMatrix group_inverse(const Eigen::MatrixXd& laplacian) {
  const Eigen::Index n = laplacian.rows();
  if (n < 1 || laplacian.cols() != n) throw std::invalid_argument("Laplacian must be square");
  if (!laplacian_pattern_connected(laplacian)) {
    throw ConnectivityError("group inverse requested for a disconnected graph");
  }
  const double shift = 1.0 / static_cast<double>(n);
  Eigen::MatrixXd shifted = laplacian;
  shifted.array() += shift;
  Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  if (llt.info() != Eigen::Success) {
    throw ConnectivityError("L + J/n is singular; the graph is disconnected");
  }
  GroupInverseMatrix gi;
  gi.matrix = llt.solve(Eigen::MatrixXd::Identity(n, n));
  gi.matrix.array() -= shift;
  // symmetrize away round-off
  gi.matrix = 0.5 * (gi.matrix + gi.matrix.transpose()).eval();
  return gi;
}

GroupInverseMatrix group_inverse(const LaplacianSet& ls) { return group_inverse(ls.laplacian); }

double effective_resistance(const GroupInverseMatrix& gi, std::size_t i, std::size_t j) {
  if (i >= gi.size() || j >= gi.size()) throw std::out_of_range("vertex out of range");
  if (i == j) throw std::invalid_argument("effective resistance needs distinct vertices");
  return gi(i, i) + gi(j, j) - 2.0 * gi(i, j);
}

double kirchhoff_index(const SpectrumSummary& spec) {
  if (spec.size() < 2 || spec.gamma2() <= spec.laplacian_tolerance()) {
    throw ConnectivityError("Kirchhoff index needs a connected spectrum (gamma_2 > 0)");
  }
  double sum = 0.0;
  for (Eigen::Index i = 1; i < spec.gamma.size(); ++i) sum += 1.0 / spec.gamma[i];
  return static_cast<double>(spec.size()) * sum;
}

}  // namespace kemeny
