#include "kemeny/constant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "kemeny/error.hpp"

namespace kemeny {

namespace {

void require_connected(const SpectrumSummary& spec, const char* what) {
  if (!spec.connected()) throw ConnectivityError(std::string(what) + " needs a connected graph");
}

}  // namespace

double kemeny_eigen(const SpectrumSummary& spec) {
  require_connected(spec, "Kemeny's constant");
  double k = 0.0;
  for (Eigen::Index j = 1; j < spec.mu.size(); ++j) k += 1.0 / spec.mu[j];
  return k;
}

double trace_group_inverse_degree(const GroupInverseMatrix& gi, const DegreeProfile& dp) {
  return gi.matrix.diagonal().dot(dp.degrees);
}

double kemeny_group_inverse(const GroupInverseMatrix& gi, const DegreeProfile& dp) {
  const double quad = dp.degrees.dot(gi.matrix * dp.degrees);
  return trace_group_inverse_degree(gi, dp) - quad / dp.volume;
}

std::vector<double> kemeny_mfpt_by_start(const LaplacianSet& ls, const DegreeProfile& dp) {
  const Eigen::Index n = static_cast<Eigen::Index>(ls.size());
  const Eigen::VectorXd pi = dp.degrees / dp.volume;
  Eigen::MatrixXd fundamental = -ls.transition();
  fundamental.diagonal().array() += 1.0;
  fundamental += Eigen::VectorXd::Ones(n) * pi.transpose();

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(fundamental);
  const Eigen::MatrixXd z = lu.inverse();
  if (!z.allFinite()) throw ConnectivityError("fundamental matrix is singular");

  std::vector<double> by_start(static_cast<std::size_t>(n), 0.0);
  for (Eigen::Index j = 0; j < n; ++j) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == j) continue;
      const double m_ji = (z(i, i) - z(j, i)) / pi[i];
      sum += pi[i] * m_ji;
    }
    by_start[static_cast<std::size_t>(j)] = sum;
  }
  return by_start;
}

double kemeny_mfpt_oracle(const LaplacianSet& ls, const DegreeProfile& dp) {
  if (!is_connected(ls)) throw ConnectivityError("MFPT oracle needs a connected graph");
  const auto values = kemeny_mfpt_by_start(ls, dp);
  const double k0 = values.front();
  for (double v : values) {
    if (std::abs(v - k0) > 1e-8 * std::abs(k0)) {
      throw NumericalError("mean-first-passage sums depend on the start vertex");
    }
  }
  return k0;
}

OrthogonalDegreeVector orthogonal_degree(const DegreeProfile& dp) {
  OrthogonalDegreeVector out;
  const double n = static_cast<double>(dp.degrees.size());
  out.w = dp.degrees.array() - dp.volume / n;
  out.norm_sq = out.w.squaredNorm();
  return out;
}

BoundInterval degree_bounds(const GroupInverseMatrix& gi, const DegreeProfile& dp,
                            const SpectrumSummary& spec) {
  require_connected(spec, "degree bounds");
  const double tr = trace_group_inverse_degree(gi, dp);
  const double wsq = orthogonal_degree(dp).norm_sq;
  return {tr - wsq / (spec.gamma2() * dp.volume), tr - wsq / (spec.gamma_max() * dp.volume),
          "orthogonal-degree bounds", false};
}

SlightlyRegularCertificate slightly_regular_certificate(const LaplacianSet& ls,
                                                        const DegreeProfile& dp) {
  SlightlyRegularCertificate cert;
  const auto w = orthogonal_degree(dp);
  const double norm = std::sqrt(w.norm_sq);
  if (norm <= 1e-10 * dp.volume) {
    cert.is_regular = true;
    cert.accepted = true;
    return cert;
  }
  const Eigen::VectorXd lw = ls.laplacian * w.w;
  cert.gamma = w.w.dot(lw) / w.norm_sq;
  const double scale = std::max(1.0, 2.0 * dp.degrees.maxCoeff());
  cert.residual = (lw - cert.gamma * w.w).norm() / (norm * scale);
  cert.accepted = cert.residual <= kSlightlyRegularTolerance;
  return cert;
}

double kemeny_slightly_regular(const SlightlyRegularCertificate& cert, const GroupInverseMatrix& gi,
                               const DegreeProfile& dp) {
  if (!cert.accepted) throw ContractError("graph is not slightly regular; certificate was rejected");
  const double n = static_cast<double>(dp.degrees.size());
  const double gamma_sharp = (cert.is_regular || cert.gamma == 0.0) ? 0.0 : 1.0 / cert.gamma;
  const double spread = dp.degrees.squaredNorm() - dp.volume * dp.volume / n;
  return trace_group_inverse_degree(gi, dp) - gamma_sharp / dp.volume * spread;
}

SemiregularGamma semiregular_gamma(const SemiregularParams& p) {
  if (!(p.n0 > 0 && p.n1 > 0)) throw std::invalid_argument("class sizes must be positive");
  const double lhs = p.n0 * (p.k0 - p.r0);
  const double rhs = p.n1 * (p.k1 - p.r1);
  const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  if (std::abs(lhs - rhs) > 1e-12 * scale) {
    throw std::invalid_argument("inconsistent semiregular parameters: n0(k0-r0) != n1(k1-r1)");
  }
  const double n = p.n0 + p.n1;
  SemiregularGamma out;
  out.gamma = n / p.n0 * (p.k1 - p.r1);
  out.equals_n = std::abs(p.k0 - (p.r0 + p.n1)) <= 1e-12 * std::max(1.0, std::abs(p.k0));
  return out;
}

double heterogeneity(const DegreeProfile& dp) {
  const double n = static_cast<double>(dp.degrees.size());
  return (dp.degrees.array() - dp.mean_degree).square().sum() / n;
}

double irregularity(const LaplacianSet& ls, const DegreeProfile& dp) {
  const Eigen::VectorXd beta = symmetric_eigenvalues(ls.adjacency);
  const double beta1 = beta[beta.size() - 1];
  return beta1 * beta1 - dp.mean_degree * dp.mean_degree;
}

double resistive_estimate(const DegreeProfile& dp, const SpectrumSummary& spec) {
  return dp.mean_degree / static_cast<double>(spec.size()) * kirchhoff_index(spec);
}

double kemeny_star_star(const DegreeProfile& dp, const SpectrumSummary& spec, double irr) {
  const double n = static_cast<double>(spec.size());
  const double m = dp.volume / 2.0;
  return resistive_estimate(dp, spec) + irr * (1.0 - 2.0 * n) / (2.0 * m);
}

double kemeny_star_star(const WeightedGraph& g) {
  const auto ls = assemble(g);
  const auto dp = degree_profile(g);
  const auto spec = spectrum(ls);
  return kemeny_star_star(dp, spec, irregularity(ls, dp));
}

}  // namespace kemeny
