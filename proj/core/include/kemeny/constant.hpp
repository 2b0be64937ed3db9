#pragma once

#include <vector>

#include <Eigen/Core>

#include "kemeny/bounds.hpp"
#include "kemeny/graph.hpp"
#include "kemeny/spectral.hpp"

namespace kemeny {

/// K(G) = sum_{j>=2} 1/mu_j. Reference value for every other route.
double kemeny_eigen(const SpectrumSummary& spec);

/// K(G) = tr(L^# D) - k^T L^# k / vol.
double kemeny_group_inverse(const GroupInverseMatrix& gi, const DegreeProfile& dp);

/// sum_{i != j} pi_i m_ji for each start vertex j, from the fundamental
/// matrix Z = (I - P + 1 pi^T)^{-1} with m_ji = (z_ii - z_ji) / pi_i.
std::vector<double> kemeny_mfpt_by_start(const LaplacianSet& ls, const DegreeProfile& dp);

/// Mean-first-passage oracle. Evaluates every start vertex and throws
/// NumericalError if they disagree by more than 1e-8 * K.
double kemeny_mfpt_oracle(const LaplacianSet& ls, const DegreeProfile& dp);

/// tr(L^# D) = sum_i k_i (L^#)_ii.
double trace_group_inverse_degree(const GroupInverseMatrix& gi, const DegreeProfile& dp);

struct OrthogonalDegreeVector {
  Eigen::VectorXd w;  // k - (vol/n) 1
  double norm_sq = 0.0;
};

OrthogonalDegreeVector orthogonal_degree(const DegreeProfile& dp);

/// tr(L^#D) - ||w||^2/(gamma_2 vol) <= K <= tr(L^#D) - ||w||^2/(gamma_n vol).
BoundInterval degree_bounds(const GroupInverseMatrix& gi, const DegreeProfile& dp,
                            const SpectrumSummary& spec);

/// Outcome of testing whether w is a Laplacian eigenvector. Rejection is a
/// value: `accepted` is false and `gamma` holds the Rayleigh quotient.
struct SlightlyRegularCertificate {
  double gamma = 0.0;
  double residual = 0.0;
  bool is_regular = false;
  bool accepted = false;
};

inline constexpr double kSlightlyRegularTolerance = 1e-8;

SlightlyRegularCertificate slightly_regular_certificate(const LaplacianSet& ls,
                                                        const DegreeProfile& dp);

/// K = tr(L^#D) - (gamma^#/vol)(||k||^2 - vol^2/n). Throws ContractError for
/// a rejected certificate.
double kemeny_slightly_regular(const SlightlyRegularCertificate& cert, const GroupInverseMatrix& gi,
                               const DegreeProfile& dp);

/// Two-class degree structure of a semiregular network: class sizes n0, n1,
/// degrees k0, k1, and within-class degrees r0, r1.
struct SemiregularParams {
  double n0 = 0, n1 = 0;
  double k0 = 0, k1 = 0;
  double r0 = 0, r1 = 0;
};

struct SemiregularGamma {
  double gamma = 0.0;
  bool equals_n = false;  // k0 == r0 + n1
};

/// gamma = (n/n0)(k1 - r1) = (n/n1)(k0 - r0). Throws std::invalid_argument
/// when n0(k0 - r0) != n1(k1 - r1).
SemiregularGamma semiregular_gamma(const SemiregularParams& p);

/// H = (1/n) sum (k_i - kbar)^2.
double heterogeneity(const DegreeProfile& dp);

/// I = beta_1^2 - kbar^2 with beta_1 the largest adjacency eigenvalue.
double irregularity(const LaplacianSet& ls, const DegreeProfile& dp);

/// (kbar/n) R_G. This is K for regular graphs and is the only computable
/// part of the K* estimate.
double resistive_estimate(const DegreeProfile& dp, const SpectrumSummary& spec);

/// K** = (kbar/n) R_G + I (1 - 2n)/(2m), with m the total conductance.
double kemeny_star_star(const DegreeProfile& dp, const SpectrumSummary& spec, double irregularity);
double kemeny_star_star(const WeightedGraph& g);

}  // namespace kemeny
