#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "kemeny/bounds.hpp"
#include "kemeny/graph.hpp"
#include "kemeny/random.hpp"
#include "kemeny/spectral.hpp"

namespace kemeny {

enum class Verification { unchecked, verified, refuted };

std::string_view to_string(Verification v);

/// Walker/Vose alias table for O(1) sampling from a discrete distribution.
class AliasTable {
 public:
  explicit AliasTable(std::span<const double> probabilities);

  /// Consumes two uniforms from rng.
  std::size_t sample(CounterRng& rng) const;
  std::size_t size() const noexcept { return threshold_.size(); }

 private:
  std::vector<double> threshold_;
  std::vector<std::size_t> alias_;
};

/// t = ceil(8 n ln(n) / epsilon^2).
std::size_t sample_count(std::size_t n, double epsilon);

/// p_e = c_e r_e / sum_f c_f r_f, in the order of g.edges().
std::vector<double> sampling_probabilities(const WeightedGraph& g, const GroupInverseMatrix& gi);

struct SparsificationReport {
  WeightedGraph sparsified;
  std::size_t samples = 0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;  // seed of the attempt that produced `sparsified`
  std::vector<double> probabilities;
  Verification verification = Verification::unchecked;
  /// epsilon <= 1; above that the probability-1/2 guarantee does not apply.
  bool guarantee_applies = true;
  bool connected = false;
  int attempts = 1;

  std::optional<double> kprime;
  std::optional<double> kdoubleprime;
  std::optional<double> ktripleprime;
  std::optional<double> ktriple_upper;
  std::optional<bool> normalized_envelope_holds;
  std::map<std::string, BoundInterval> envelopes;

  bool verified() const { return verification == Verification::verified; }
};

/// Effective-resistance sampling: t draws with replacement, each draw of e
/// adds c_e / (t p_e) to its new conductance. Only the graph part of the
/// report is filled. Throws ConnectivityError for disconnected g and
/// std::invalid_argument for epsilon <= 0.
SparsificationReport sparsify(const WeightedGraph& g, const GroupInverseMatrix& gi, double epsilon,
                              std::uint64_t seed);

/// (L^#)^{1/2}, the symmetric square root of the group inverse.
Eigen::MatrixXd group_inverse_sqrt(const LaplacianSet& ls);

/// Extreme eigenvalues of the pencil (L_{G'}, L_G) on the complement of 1.
struct PencilRange {
  double min = 0.0;
  double max = 0.0;
};

PencilRange pencil_range(const Eigen::MatrixXd& gi_sqrt, const WeightedGraph& gprime);

/// True iff every z satisfies z'L z/(1+eps) <= z'L' z <= (1+eps) z'L z,
/// checked on the pencil spectrum with tolerance 1e-9. A disconnected
/// gprime is refuted.
bool verify_epsilon_approx(const WeightedGraph& g, const WeightedGraph& gprime, double epsilon);
bool verify_epsilon_approx(const Eigen::MatrixXd& gi_sqrt, const WeightedGraph& gprime, double epsilon);

/// x_i = k_i (L^#)_ii, x'_i = k_i (L'^#)_ii, y = k'L^#k/vol, y' = k'L'^#k/vol,
/// with k and vol taken from G throughout.
struct XyTerms {
  Eigen::VectorXd x;
  Eigen::VectorXd x_prime;
  double y = 0.0;
  double y_prime = 0.0;
};

XyTerms xy_terms(const GroupInverseMatrix& gi, const GroupInverseMatrix& gi_prime,
                 const DegreeProfile& dp);
XyTerms xy_terms(const WeightedGraph& g, const WeightedGraph& gprime);

struct Approximations {
  double kprime = 0.0;        // sum x' - y'
  double kdoubleprime = 0.0;  // sum x' - y
  double ktripleprime = 0.0;  // K(G')
};

Approximations approximations(const XyTerms& xy, const WeightedGraph& gprime);

/// [K'''/(1+eps), (1+eps) K''']; tagged conditional when not verified.
BoundInterval envelope_direct(double ktripleprime, double epsilon, bool verified = true);

struct KPrimeEnvelopes {
  BoundInterval kdoubleprime;  // K - eps/(1+eps)(K+y) .. K + eps(K+y)
  BoundInterval kprime;        // K - eps/(1+eps)(K+(2+eps)y) .. K + eps(K + (2+eps)/(1+eps) y)
};

KPrimeEnvelopes envelope_kprime_kdoubleprime(double kemeny, double y, double epsilon,
                                             bool verified = true);

/// (1+eps)^2 tr(L^#D) - M / ((1+eps)^2 vol gamma_n),
/// M = max(||k||^2/(1+eps)^2 - (1+eps)^2 vol^2/n, 0).
double envelope_ktriple_upper(const DegreeProfile& dp, const GroupInverseMatrix& gi,
                              const SpectrumSummary& spec, double epsilon);
double envelope_ktriple_upper(const WeightedGraph& g, const GroupInverseMatrix& gi,
                              const SpectrumSummary& spec, double epsilon);

/// mu_i/(1+eps) <= mu'_i <= (1+eps) mu_i for every i (tolerance 1e-9).
bool normalized_eig_envelope(const SpectrumSummary& spec_g, const SpectrumSummary& spec_gprime,
                             double epsilon);

/// Everything about G that every sparsification run reuses.
struct ReferenceAnalysis {
  WeightedGraph graph;
  LaplacianSet laplacians;
  DegreeProfile degrees;
  SpectrumSummary spectrum;
  GroupInverseMatrix group_inverse;
  Eigen::MatrixXd group_inverse_sqrt;
  double kemeny = 0.0;
  double y = 0.0;
};

ReferenceAnalysis analyze(const WeightedGraph& g);

/// Sparsify, verify, and evaluate K', K'', K''' with all envelopes. A
/// disconnected G' is refuted; with max_attempts > 1 the run is retried
/// with seeds trial_seed(seed, attempt) and the attempt count is recorded.
SparsificationReport run_sparsification(const ReferenceAnalysis& ref, double epsilon,
                                        std::uint64_t seed, int max_attempts = 1);

inline constexpr int kHarnessMaxAttempts = 16;

/// One-line key=value record of a run. Unavailable values print as "NA".
std::string format_record(const SparsificationReport& report, double kemeny);

/// Inverse of format_record at the field level.
std::map<std::string, std::string> parse_record(std::string_view line);

}  // namespace kemeny
