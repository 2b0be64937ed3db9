#include "kemeny/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "kemeny/constant.hpp"
#include "kemeny/error.hpp"

namespace kemeny {

std::string_view to_string(Verification v) {
  switch (v) {
    case Verification::verified:
      return "verified";
    case Verification::refuted:
      return "refuted";
    case Verification::unchecked:
      break;
  }
  return "unchecked";
}

AliasTable::AliasTable(std::span<const double> probabilities)
    : threshold_(probabilities.size(), 1.0), alias_(probabilities.size()) {
  const std::size_t n = probabilities.size();
  if (n == 0) throw std::invalid_argument("alias table needs at least one outcome");
  double total = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("invalid probability");
    total += p;
  }
  if (!(total > 0.0)) throw std::invalid_argument("probabilities sum to zero");

  std::vector<double> scaled(n);
  std::vector<std::size_t> small;
  std::vector<std::size_t> large;
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = probabilities[i] * static_cast<double>(n) / total;
    alias_[i] = i;
    (scaled[i] < 1.0 ? small : large).push_back(i);
  }
  while (!small.empty() && !large.empty()) {
    const std::size_t s = small.back();
    small.pop_back();
    const std::size_t l = large.back();
    threshold_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] -= 1.0 - scaled[s];
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // leftovers are 1 up to round-off
  for (std::size_t i : small) threshold_[i] = 1.0;
  for (std::size_t i : large) threshold_[i] = 1.0;
}

std::size_t AliasTable::sample(CounterRng& rng) const {
  const std::size_t n = threshold_.size();
  const auto column = std::min(n - 1, static_cast<std::size_t>(rng.next_uniform() * static_cast<double>(n)));
  return rng.next_uniform() < threshold_[column] ? column : alias_[column];
}

std::size_t sample_count(std::size_t n, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const double nd = static_cast<double>(n);
  return static_cast<std::size_t>(std::ceil(8.0 * nd * std::log(nd) / (epsilon * epsilon)));
}

std::vector<double> sampling_probabilities(const WeightedGraph& g, const GroupInverseMatrix& gi) {
  if (gi.size() != g.vertex_count()) throw std::invalid_argument("group inverse size mismatch");
  std::vector<double> p;
  p.reserve(g.edge_count());
  double total = 0.0;
  for (const Edge& e : g.edges()) {
    p.push_back(e.weight * effective_resistance(gi, e.u, e.v));
    total += p.back();
  }
  for (double& x : p) x /= total;
  return p;
}

SparsificationReport sparsify(const WeightedGraph& g, const GroupInverseMatrix& gi, double epsilon,
                              std::uint64_t seed) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!is_connected(g)) throw ConnectivityError("cannot sparsify a disconnected graph");

  SparsificationReport report;
  report.epsilon = epsilon;
  report.seed = seed;
  report.guarantee_applies = epsilon <= 1.0;
  report.samples = sample_count(g.vertex_count(), epsilon);
  report.probabilities = sampling_probabilities(g, gi);

  const AliasTable table(report.probabilities);
  CounterRng rng(seed);
  std::vector<std::size_t> hits(g.edge_count(), 0);
  for (std::size_t s = 0; s < report.samples; ++s) ++hits[table.sample(rng)];

  const double t = static_cast<double>(report.samples);
  std::vector<Edge> kept;
  for (std::size_t i = 0; i < hits.size(); ++i) {
    if (hits[i] == 0) continue;
    const Edge& e = g.edges()[i];
    kept.push_back({e.u, e.v, static_cast<double>(hits[i]) * e.weight / (t * report.probabilities[i])});
  }
  report.sparsified = WeightedGraph(g.vertex_count(), kept);
  report.connected = is_connected(report.sparsified);
  return report;
}

Eigen::MatrixXd group_inverse_sqrt(const LaplacianSet& ls) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(ls.laplacian);
  if (solver.info() != Eigen::Success) throw NumericalError("Laplacian eigendecomposition failed");
  const Eigen::VectorXd& gamma = solver.eigenvalues();
  const double tol = 1e-9 * std::max(1.0, gamma[gamma.size() - 1]);
  if (gamma.size() < 2 || gamma[1] <= tol) throw ConnectivityError("graph is disconnected");
  Eigen::VectorXd root(gamma.size());
  root[0] = 0.0;
  for (Eigen::Index i = 1; i < gamma.size(); ++i) root[i] = 1.0 / std::sqrt(gamma[i]);
  const Eigen::MatrixXd& v = solver.eigenvectors();
  return v * root.asDiagonal() * v.transpose();
}

PencilRange pencil_range(const Eigen::MatrixXd& gi_sqrt, const WeightedGraph& gprime) {
  if (static_cast<std::size_t>(gi_sqrt.rows()) != gprime.vertex_count()) {
    throw std::invalid_argument("vertex sets differ");
  }
  const Eigen::Index n = gi_sqrt.rows();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : gprime.edges()) {
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    lap(u, v) -= e.weight;
    lap(v, u) -= e.weight;
    lap(u, u) += e.weight;
    lap(v, v) += e.weight;
  }
  const Eigen::MatrixXd pencil = gi_sqrt * lap * gi_sqrt;
  const Eigen::VectorXd ev = symmetric_eigenvalues(0.5 * (pencil + pencil.transpose()));
  // ev[0] belongs to the all-ones direction, which gi_sqrt annihilates
  return {ev[1], ev[ev.size() - 1]};
}

bool verify_epsilon_approx(const Eigen::MatrixXd& gi_sqrt, const WeightedGraph& gprime, double epsilon) {
  if (!is_connected(gprime)) return false;
  const auto range = pencil_range(gi_sqrt, gprime);
  constexpr double tol = 1e-9;
  return range.min >= 1.0 / (1.0 + epsilon) - tol && range.max <= 1.0 + epsilon + tol;
}

bool verify_epsilon_approx(const WeightedGraph& g, const WeightedGraph& gprime, double epsilon) {
  if (g.vertex_count() != gprime.vertex_count()) throw std::invalid_argument("vertex sets differ");
  if (!is_connected(gprime)) return false;
  return verify_epsilon_approx(group_inverse_sqrt(assemble(g)), gprime, epsilon);
}

XyTerms xy_terms(const GroupInverseMatrix& gi, const GroupInverseMatrix& gi_prime, const DegreeProfile& dp) {
  XyTerms xy;
  xy.x = dp.degrees.cwiseProduct(gi.matrix.diagonal());
  xy.x_prime = dp.degrees.cwiseProduct(gi_prime.matrix.diagonal());
  xy.y = dp.degrees.dot(gi.matrix * dp.degrees) / dp.volume;
  xy.y_prime = dp.degrees.dot(gi_prime.matrix * dp.degrees) / dp.volume;
  return xy;
}

XyTerms xy_terms(const WeightedGraph& g, const WeightedGraph& gprime) {
  if (g.vertex_count() != gprime.vertex_count()) throw std::invalid_argument("vertex sets differ");
  if (!is_connected(gprime)) throw ConnectivityError("sparsified graph is disconnected");
  return xy_terms(group_inverse(assemble(g)), group_inverse(assemble(gprime)), degree_profile(g));
}

namespace {

Approximations approximations_with(const XyTerms& xy, const SpectrumSummary& spec_prime) {
  const double sum_prime = xy.x_prime.sum();
  return {sum_prime - xy.y_prime, sum_prime - xy.y, kemeny_eigen(spec_prime)};
}

}  // namespace

Approximations approximations(const XyTerms& xy, const WeightedGraph& gprime) {
  return approximations_with(xy, spectrum(assemble(gprime)));
}

BoundInterval envelope_direct(double ktripleprime, double epsilon, bool verified) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");
  return {ktripleprime / (1.0 + epsilon), (1.0 + epsilon) * ktripleprime, "sparsified-graph envelope",
          !verified};
}

KPrimeEnvelopes envelope_kprime_kdoubleprime(double kemeny, double y, double epsilon, bool verified) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");
  const double e = epsilon;
  KPrimeEnvelopes out;
  out.kdoubleprime = {kemeny - e / (1.0 + e) * (kemeny + y), kemeny + e * (kemeny + y),
                      "K'' envelope", !verified};
  out.kprime = {kemeny - e / (1.0 + e) * (kemeny + (2.0 + e) * y),
                kemeny + e * (kemeny + (2.0 + e) / (1.0 + e) * y), "K' envelope", !verified};
  return out;
}

double envelope_ktriple_upper(const DegreeProfile& dp, const GroupInverseMatrix& gi,
                              const SpectrumSummary& spec, double epsilon) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");
  if (!spec.connected()) throw ConnectivityError("K''' upper bound needs a connected graph");
  const double s = (1.0 + epsilon) * (1.0 + epsilon);
  const double n = static_cast<double>(dp.degrees.size());
  const double m = std::max(dp.degrees.squaredNorm() / s - s * dp.volume * dp.volume / n, 0.0);
  return s * trace_group_inverse_degree(gi, dp) - m / (s * dp.volume * spec.gamma_max());
}

double envelope_ktriple_upper(const WeightedGraph& g, const GroupInverseMatrix& gi,
                              const SpectrumSummary& spec, double epsilon) {
  return envelope_ktriple_upper(degree_profile(g), gi, spec, epsilon);
}

bool normalized_eig_envelope(const SpectrumSummary& spec_g, const SpectrumSummary& spec_gprime,
                             double epsilon) {
  if (spec_g.size() != spec_gprime.size()) throw std::invalid_argument("spectra differ in size");
  constexpr double tol = 1e-9;
  for (Eigen::Index i = 0; i < spec_g.mu.size(); ++i) {
    const double mu = spec_g.mu[i];
    const double mu_prime = spec_gprime.mu[i];
    if (mu_prime < mu / (1.0 + epsilon) - tol || mu_prime > (1.0 + epsilon) * mu + tol) return false;
  }
  return true;
}

ReferenceAnalysis analyze(const WeightedGraph& g) {
  if (!is_connected(g)) throw ConnectivityError("graph is disconnected");
  ReferenceAnalysis ref;
  ref.graph = g;
  ref.laplacians = assemble(g);
  ref.degrees = degree_profile(g);
  ref.spectrum = spectrum(ref.laplacians);
  ref.group_inverse = group_inverse(ref.laplacians);
  ref.group_inverse_sqrt = group_inverse_sqrt(ref.laplacians);
  ref.kemeny = kemeny_eigen(ref.spectrum);
  ref.y = ref.degrees.degrees.dot(ref.group_inverse.matrix * ref.degrees.degrees) / ref.degrees.volume;
  return ref;
}

SparsificationReport run_sparsification(const ReferenceAnalysis& ref, double epsilon, std::uint64_t seed,
                                        int max_attempts) {
  if (max_attempts < 1) throw std::invalid_argument("max_attempts must be at least 1");
  SparsificationReport report;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const std::uint64_t attempt_seed = attempt == 0 ? seed : trial_seed(seed, static_cast<std::uint64_t>(attempt));
    report = sparsify(ref.graph, ref.group_inverse, epsilon, attempt_seed);
    report.attempts = attempt + 1;
    if (report.connected) break;
  }

  // envelopes that only need G are always available
  const bool graph_ok = report.connected;
  const auto kp = envelope_kprime_kdoubleprime(ref.kemeny, ref.y, epsilon, false);
  report.envelopes["Kpp"] = kp.kdoubleprime;
  report.envelopes["Kp"] = kp.kprime;
  report.ktriple_upper = envelope_ktriple_upper(ref.degrees, ref.group_inverse, ref.spectrum, epsilon);

  if (!graph_ok) {
    report.verification = Verification::refuted;
    return report;
  }

  const bool ok = verify_epsilon_approx(ref.group_inverse_sqrt, report.sparsified, epsilon);
  report.verification = ok ? Verification::verified : Verification::refuted;
  report.envelopes["Kpp"].conditional = !ok;
  report.envelopes["Kp"].conditional = !ok;

  const auto ls_prime = assemble(report.sparsified);
  const auto spec_prime = spectrum(ls_prime);
  const auto gi_prime = group_inverse(ls_prime);
  const auto xy = xy_terms(ref.group_inverse, gi_prime, ref.degrees);
  const auto approx = approximations_with(xy, spec_prime);
  report.kprime = approx.kprime;
  report.kdoubleprime = approx.kdoubleprime;
  report.ktripleprime = approx.ktripleprime;
  report.envelopes["direct"] = envelope_direct(approx.ktripleprime, epsilon, ok);
  report.normalized_envelope_holds = normalized_eig_envelope(ref.spectrum, spec_prime, epsilon);
  return report;
}

namespace {

std::string num(std::optional<double> v) {
  return v ? fmt::format("{:.17g}", *v) : std::string("NA");
}

}  // namespace

std::string format_record(const SparsificationReport& r, double kemeny) {
  auto env = [&](const char* key, bool upper) -> std::optional<double> {
    auto it = r.envelopes.find(key);
    if (it == r.envelopes.end()) return std::nullopt;
    return upper ? it->second.upper : it->second.lower;
  };
  return fmt::format(
      "seed={} eps={:.17g} t={} edges={} attempts={} K={} Kp={} Kpp={} Kppp={} direct_lo={} direct_hi={} "
      "Kpp_lo={} Kpp_hi={} Kp_lo={} Kp_hi={} Kppp_upper={} verified={}",
      r.seed, r.epsilon, r.samples, r.sparsified.edge_count(), r.attempts, num(kemeny), num(r.kprime),
      num(r.kdoubleprime), num(r.ktripleprime), num(env("direct", false)), num(env("direct", true)),
      num(env("Kpp", false)), num(env("Kpp", true)), num(env("Kp", false)), num(env("Kp", true)),
      num(r.ktriple_upper), to_string(r.verification));
}

std::map<std::string, std::string> parse_record(std::string_view line) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(line)};
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError("malformed record field '" + token + "'");
    if (!out.emplace(token.substr(0, eq), token.substr(eq + 1)).second) {
      throw ParseError("duplicate record field '" + token.substr(0, eq) + "'");
    }
  }
  return out;
}

}  // namespace kemeny
