#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "kemeny/constant.hpp"
#include "kemeny/error.hpp"
#include "kemeny/sparsify.hpp"
#include "support/oracles.hpp"

using namespace kemeny;

namespace {

WeightedGraph scaled(const WeightedGraph& g, double factor) {
  std::vector<Edge> edges = g.edges();
  for (auto& e : edges) e.weight *= factor;
  return WeightedGraph(g.vertex_count(), edges);
}

WeightedGraph connected_er(std::size_t n, double p, std::uint64_t seed) {
  for (;; ++seed) {
    auto g = erdos_renyi(n, p, seed);
    if (is_connected(g)) return g;
  }
}

}  // namespace

TEST(SampleCount, NaturalLogCeiling) {
  EXPECT_EQ(sample_count(25, 0.5), static_cast<std::size_t>(std::ceil(8 * 25 * std::log(25.0) / 0.25)));
  EXPECT_EQ(sample_count(250, 0.5), 44172u);
  EXPECT_THROW(sample_count(10, 0.0), std::invalid_argument);
}

TEST(Alias, MatchesDistribution) {
  const std::vector<double> p{0.5, 0.25, 0.125, 0.125};
  AliasTable table(p);
  CounterRng rng(11);
  std::vector<double> counts(4, 0.0);
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) counts[table.sample(rng)] += 1.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double se = std::sqrt(p[i] * (1 - p[i]) / draws);
    EXPECT_NEAR(counts[i] / draws, p[i], 4 * se);
  }
}

TEST(Probabilities, FosterForUnitWeights) {
  const auto g = oracle::random_connected(15, 0.3, 5, 1.0, 1.0);
  const auto gi = group_inverse(assemble(g));
  const auto p = sampling_probabilities(g, gi);
  ASSERT_EQ(p.size(), g.edge_count());
  EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-12);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& e = g.edges()[i];
    EXPECT_GT(p[i], 0.0);
    EXPECT_NEAR(p[i], oracle::resistance(g, e.u, e.v) / 14.0, 1e-10);
  }
}

TEST(Sparsify, StructuralInvariants) {
  const auto g = complete_bipartite(10, 15);
  const auto gi = group_inverse(assemble(g));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (double eps : {0.5, 1.0, 2.0}) {
      const auto r = sparsify(g, gi, eps, seed);
      EXPECT_EQ(r.sparsified.vertex_count(), g.vertex_count());
      EXPECT_LE(r.sparsified.edge_count(), std::min(r.samples, g.edge_count()));
      EXPECT_EQ(r.samples, sample_count(25, eps));
      EXPECT_EQ(r.guarantee_applies, eps <= 1.0);
      for (const auto& e : r.sparsified.edges()) EXPECT_TRUE(g.has_edge(e.u, e.v));
    }
  }
  EXPECT_EQ(sparsify(g, gi, 0.5, 3).sparsified, sparsify(g, gi, 0.5, 3).sparsified);
  EXPECT_THROW(sparsify(g, gi, -1.0, 3), std::invalid_argument);
}

TEST(Sparsify, UnbiasedConductances) {
  const auto g = complete_graph(5);
  const auto gi = group_inverse(assemble(g));
  const int runs = 500;
  std::vector<double> sum(g.edge_count(), 0.0), sum_sq(g.edge_count(), 0.0);
  for (int s = 0; s < runs; ++s) {
    const auto r = sparsify(g, gi, 1.0, static_cast<std::uint64_t>(s));
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
      const double c = r.sparsified.weight(g.edges()[i].u, g.edges()[i].v);
      sum[i] += c;
      sum_sq[i] += c * c;
    }
  }
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const double mean = sum[i] / runs;
    const double var = sum_sq[i] / runs - mean * mean;
    EXPECT_NEAR(mean, 1.0, 3.0 * std::sqrt(var / runs) + 1e-12);
  }
}

TEST(Verify, IdentityAndScaled) {
  const auto g = oracle::random_connected(12, 0.3, 17);
  EXPECT_TRUE(verify_epsilon_approx(g, g, 0.1));
  EXPECT_FALSE(verify_epsilon_approx(g, scaled(g, 1.1 * 1.01), 0.1));
  EXPECT_TRUE(verify_epsilon_approx(g, scaled(g, 1.05), 0.1));
  WeightedGraph split(12, {{0, 1}});
  EXPECT_FALSE(verify_epsilon_approx(g, split, 0.5));
}

TEST(XyTerms, IdentityAndRegular) {
  const auto g = oracle::random_connected(14, 0.25, 23);
  const auto same = xy_terms(g, g);
  EXPECT_LT((same.x - same.x_prime).norm(), 1e-12);
  EXPECT_NEAR(same.y, same.y_prime, 1e-12);
  const double k = kemeny_eigen(spectrum(assemble(g)));
  EXPECT_NEAR(same.x.sum() - same.y, k, 1e-8);
  const auto a = approximations(same, g);
  EXPECT_NEAR(a.kprime, k, 1e-8);
  EXPECT_NEAR(a.kdoubleprime, k, 1e-8);
  EXPECT_NEAR(a.ktripleprime, k, 1e-8);

  const auto reg = complete_graph(9);
  const auto gi = group_inverse(assemble(reg));
  const auto r = sparsify(reg, gi, 1.0, 4);
  if (r.connected) {
    const auto xy = xy_terms(reg, r.sparsified);
    EXPECT_NEAR(xy.y, 0.0, 1e-12);
  }
}

TEST(Envelopes, Direct) {
  const auto b = envelope_direct(23.66, 0.5);
  EXPECT_NEAR(b.lower, 15.77, 0.005);
  EXPECT_NEAR(b.upper, 35.49, 0.005);
  EXPECT_TRUE(b.contains(23.5));
  const auto zero = envelope_direct(7.0, 0.0);
  EXPECT_EQ(zero.lower, 7.0);
  EXPECT_EQ(zero.upper, 7.0);
  EXPECT_TRUE(envelope_direct(7.0, 0.5, false).conditional);
}

TEST(Envelopes, KPrimeKDoublePrime) {
  // closed-form envelope, y from the group inverse
  const double y_kb = 0.02;
  const auto kb = envelope_kprime_kdoubleprime(23.5, y_kb, 0.5);
  EXPECT_NEAR(kb.kdoubleprime.lower, 23.5 - (23.52 / 3.0), 1e-12);
  EXPECT_NEAR(kb.kdoubleprime.upper, 23.5 + 0.5 * 23.52, 1e-12);
  // sum(x) - 1 in place of K + y shifts the endpoints to 15.99 and 34.76
  const auto shifted = envelope_kprime_kdoubleprime(23.5, y_kb - 1.0, 0.5);
  EXPECT_NEAR(shifted.kdoubleprime.lower, 15.99, 0.005);
  EXPECT_NEAR(shifted.kdoubleprime.upper, 34.76, 0.005);

  const auto ref = analyze(windmill(3, 10));
  const auto w = envelope_kprime_kdoubleprime(ref.kemeny, ref.y, 1.0);
  EXPECT_NEAR(w.kprime.lower, ref.kemeny - 0.5 * (ref.kemeny + 3.0 * ref.y), 1e-12);
  EXPECT_NEAR(w.kprime.upper, ref.kemeny + ref.kemeny + 1.5 * ref.y, 1e-12);

  const auto collapsed = envelope_kprime_kdoubleprime(ref.kemeny, ref.y, 0.0);
  EXPECT_EQ(collapsed.kprime.lower, ref.kemeny);
  EXPECT_EQ(collapsed.kdoubleprime.upper, ref.kemeny);
}

TEST(Envelopes, KTripleUpper) {
  const auto reg = analyze(complete_graph(7));
  for (double eps : {0.1, 0.5, 1.0}) {
    const double s = (1 + eps) * (1 + eps);
    EXPECT_NEAR(envelope_ktriple_upper(reg.degrees, reg.group_inverse, reg.spectrum, eps),
                s * 6.0 * reg.group_inverse.matrix.trace(), 1e-10);
  }
  for (const auto& g : {complete_bipartite(10, 15), windmill_type1(3, 10, 5)}) {
    const auto ref = analyze(g);
    EXPECT_NEAR(envelope_ktriple_upper(ref.degrees, ref.group_inverse, ref.spectrum, 1e-6), ref.kemeny, 1e-4);
  }
}

TEST(Envelopes, NormalizedEigenvalues) {
  const auto k3 = complete_graph(3);
  const auto spec = spectrum(assemble(k3));
  EXPECT_TRUE(normalized_eig_envelope(spec, spec, 0.01));
  const WeightedGraph bumped(3, {{0, 1, 2.0}, {1, 2}, {0, 2}});
  EXPECT_FALSE(normalized_eig_envelope(spec, spectrum(assemble(bumped)), 0.01));
}

TEST(Harness, VerifiedRunsSatisfyEveryEnvelope) {
  const std::vector<WeightedGraph> corpus{complete_bipartite(10, 15), windmill(3, 10), connected_er(60, 0.3, 1)};
  for (const auto& g : corpus) {
    const auto ref = analyze(g);
    for (double eps : {0.5, 1.0}) {
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto r = run_sparsification(ref, eps, seed, kHarnessMaxAttempts);
        ASSERT_TRUE(r.connected);
        EXPECT_LE(r.sparsified.edge_count(), std::min(r.samples, g.edge_count()));
        if (!r.verified()) continue;
        EXPECT_TRUE(r.envelopes.at("direct").contains(ref.kemeny, 1e-9));
        EXPECT_TRUE(r.envelopes.at("Kpp").contains(*r.kdoubleprime, 1e-9));
        EXPECT_TRUE(r.envelopes.at("Kp").contains(*r.kprime, 1e-9));
        EXPECT_LE(*r.ktripleprime, *r.ktriple_upper + 1e-9);
        EXPECT_TRUE(*r.normalized_envelope_holds);
      }
    }
  }
}

TEST(Harness, VerificationRateFloor) {
  const auto ref = analyze(connected_er(60, 0.3, 50));
  int verified = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    if (run_sparsification(ref, 1.0, seed, kHarnessMaxAttempts).verified()) ++verified;
  }
  EXPECT_GE(verified, 13);
}

TEST(Harness, DisconnectedSparsifierIsRefuted) {
  // a long path sparsified at large epsilon loses edges and splits
  const auto ref = analyze(path_graph(30));
  bool saw_split = false;
  for (std::uint64_t seed = 0; seed < 50 && !saw_split; ++seed) {
    const auto r = run_sparsification(ref, 8.0, seed);
    if (r.connected) continue;
    saw_split = true;
    EXPECT_EQ(r.verification, Verification::refuted);
    EXPECT_FALSE(r.ktripleprime.has_value());
    EXPECT_FALSE(r.kprime.has_value());
    EXPECT_TRUE(r.ktriple_upper.has_value());
  }
  EXPECT_TRUE(saw_split);
}

TEST(Record, RoundTrip) {
  const auto ref = analyze(complete_bipartite(10, 15));
  const auto r = run_sparsification(ref, 0.5, 42, kHarnessMaxAttempts);
  const auto line = format_record(r, ref.kemeny);
  const auto fields = parse_record(line);
  EXPECT_EQ(fields.at("seed"), std::to_string(r.seed));
  EXPECT_EQ(std::stod(fields.at("Kppp")), *r.ktripleprime);
  EXPECT_EQ(std::stoull(fields.at("edges")), r.sparsified.edge_count());
  EXPECT_EQ(fields.at("verified"), std::string(to_string(r.verification)));
  EXPECT_EQ(line, format_record(run_sparsification(ref, 0.5, 42, kHarnessMaxAttempts), ref.kemeny));
}
