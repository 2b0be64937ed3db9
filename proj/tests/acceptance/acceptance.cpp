// Acceptance gate: one PASS/FAIL line per criterion.
//   acceptance [--criterion N] [--cli PATH]

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "kemeny/constant.hpp"
#include "kemeny/experiment.hpp"
#include "kemeny/graph.hpp"
#include "kemeny/interlace.hpp"
#include "kemeny/sparsify.hpp"
#include "kemeny/spectral.hpp"
#include "support/oracles.hpp"

using namespace kemeny;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> problems;

  void fail(std::string what) {
    pass = false;
    problems.push_back(std::move(what));
  }
};

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }
double round2(double v) { return std::round(v * 100.0) / 100.0; }

std::string cli_path;

Outcome closed_families() {
  Outcome o;
  double worst = 0.0;
  for (std::size_t n = 2; n <= 50; ++n) {
    const double nn = static_cast<double>(n);
    const double e = rel(kemeny_eigen(spectrum(assemble(complete_graph(n)))), (nn - 1) * (nn - 1) / nn);
    worst = std::max(worst, e);
    if (e > 1e-9) o.fail(fmt::format("K_{} rel err {:.3g}", n, e));
  }
  for (std::size_t p = 2; p <= 20; ++p) {
    for (std::size_t q = 2; q <= p; ++q) {
      const double e = rel(kemeny_eigen(spectrum(assemble(complete_bipartite(p, q)))), static_cast<double>(p + q) - 1.5);
      worst = std::max(worst, e);
      if (e > 1e-9) o.fail(fmt::format("K_{{{},{}}} rel err {:.3g}", p, q, e));
    }
  }
  o.detail = fmt::format("K_n n=2..50, K_p,q 2<=q<=p<=20, max rel err {:.2e}", worst);
  return o;
}

Outcome degree_bound_rows() {
  struct Row {
    const char* name;
    WeightedGraph g;
    std::array<double, 5> expected;  // gamma2, gamman, lower, K, upper
  };
  const std::vector<Row> rows{
      {"K10,15", complete_bipartite(10, 15), {10, 25, 23.47, 23.50, 23.50}},
      {"W(3,10)", windmill(3, 10), {1, 31, 44.32, 45.45, 45.45}},
      {"W'(3,10,5)", windmill_type1(3, 10, 5), {5, 35, 34.49, 35.49, 35.49}},
      {"W''(3,10,5)", windmill_type2(3, 10, 5), {5, 35, 35.21, 35.54, 35.54}},
  };
  const char* cols[] = {"gamma2", "gamman", "lower", "K", "upper"};
  Outcome o;
  int cells = 0;
  for (const auto& r : rows) {
    const auto t = cmd_exact(r.g, r.name);
    for (std::size_t c = 0; c < 5; ++c) {
      ++cells;
      const double got = t.number(0, cols[c]);
      if (round2(got) != r.expected[c]) {
        o.fail(fmt::format("{} {} = {:.4f}, expected {:.2f}", r.name, cols[c], got, r.expected[c]));
      }
    }
    const double k = t.number(0, "K"), up = t.number(0, "upper");
    if (std::abs(up - k) > 1e-6 * k) o.fail(fmt::format("{} upper {:.10g} != K {:.10g}", r.name, up, k));
  }
  o.detail = fmt::format("{} cells to 2 decimals, upper = K within 1e-6", cells);
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  double worst = 0.0, worst_start = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 4 + rng() % 27;
    const bool unit = i % 2 == 0;
    const auto g = oracle::random_connected(n, 0.1 + 0.3 * static_cast<double>(rng() % 100) / 100.0, rng(),
                                            unit ? 1.0 : 0.25, unit ? 1.0 : 4.0);
    const auto ls = assemble(g);
    const auto dp = degree_profile(g);
    const double ke = kemeny_eigen(spectrum(ls));
    const double kg = kemeny_group_inverse(group_inverse(ls), dp);
    const double km = kemeny_mfpt_oracle(ls, dp);
    const double e = std::max(rel(kg, ke), rel(km, ke));
    worst = std::max(worst, e);
    if (e > 1e-7) o.fail(fmt::format("graph {} (n={}): eigen {:.12g} group {:.12g} mfpt {:.12g}", i, n, ke, kg, km));
    const auto starts = kemeny_mfpt_by_start(ls, dp);
    for (double s : starts) {
      const double d = std::abs(s - starts.front()) / ke;
      worst_start = std::max(worst_start, d);
      if (d > 1e-8) o.fail(fmt::format("graph {}: start-vertex spread {:.3g}", i, d));
    }
  }
  o.detail = fmt::format("100 graphs, max rel disagreement {:.2e}, max start spread {:.2e}", worst, worst_start);
  return o;
}

Outcome slightly_regular_formula() {
  std::vector<std::pair<std::string, WeightedGraph>> corpus{{"P4", path_graph(4)}};
  for (auto [p, q] : std::vector<std::pair<std::size_t, std::size_t>>{{10, 15}, {2, 3}, {4, 4}, {7, 2}, {1, 9}}) {
    corpus.emplace_back(fmt::format("K{},{}", p, q), complete_bipartite(p, q));
  }
  corpus.emplace_back("W(3,10)", windmill(3, 10));
  corpus.emplace_back("W'(3,10,5)", windmill_type1(3, 10, 5));
  corpus.emplace_back("W''(3,10,5)", windmill_type2(3, 10, 5));
  struct J {
    std::size_t n0;
    bool clique;
    std::size_t copies, size;
  };
  for (const J& j : {J{2, true, 3, 4}, J{3, false, 2, 5}, J{1, true, 5, 3}, J{4, true, 2, 2}, J{6, false, 4, 6}}) {
    const std::vector<WeightedGraph> sats(j.copies, complete_graph(j.size));
    corpus.emplace_back(fmt::format("join(n0={},{},{}xK{})", j.n0, j.clique ? "clique" : "empty", j.copies, j.size),
                        join_graph(j.clique ? complete_graph(j.n0) : empty_graph(j.n0), sats));
  }
  Outcome o;
  double worst = 0.0;
  for (const auto& [name, g] : corpus) {
    const auto ls = assemble(g);
    const auto dp = degree_profile(g);
    const auto cert = slightly_regular_certificate(ls, dp);
    if (!cert.accepted) {
      o.fail(name + " rejected (residual " + fmt::format("{:.3g}", cert.residual) + ")");
      continue;
    }
    const double k = kemeny_eigen(spectrum(ls));
    const double e = std::abs(kemeny_slightly_regular(cert, group_inverse(ls), dp) - k);
    worst = std::max(worst, e);
    if (e > 1e-6) o.fail(fmt::format("{}: formula off by {:.3g}", name, e));
  }
  const auto p5 = assemble(path_graph(5));
  if (slightly_regular_certificate(p5, degree_profile(path_graph(5))).accepted) o.fail("P5 accepted");
  o.detail = fmt::format("{} graphs, max abs err {:.2e}, P5 rejected", corpus.size(), worst);
  return o;
}

Outcome star_star() {
  Outcome o;
  const double kb = kemeny_star_star(complete_bipartite(10, 15));
  const double w = kemeny_star_star(windmill(3, 10));
  if (round2(kb) != 23.5) o.fail(fmt::format("K10,15: {:.4f}", kb));
  if (round2(w) != 43.88) o.fail(fmt::format("W(3,10): {:.4f}", w));
  o.detail = fmt::format("K**(K10,15) = {:.2f}, K**(W(3,10)) = {:.2f}", kb, w);
  return o;
}

WeightedGraph connected_er(std::size_t n, double p, std::uint64_t seed) {
  for (int attempt = 0;; ++attempt) {
    auto g = erdos_renyi(n, p, er_graph_seed(seed, 0, attempt));
    if (is_connected(g)) return g;
  }
}

Outcome sparsification_envelopes() {
  Outcome o;
  const std::vector<std::pair<std::string, WeightedGraph>> corpus{
      {"K10,15", complete_bipartite(10, 15)}, {"W(3,10)", windmill(3, 10)}, {"G(100,0.3)", connected_er(100, 0.3, 100)}};
  int runs = 0, verified = 0, checks = 0;
  auto slack = [](double x) { return 1e-9 * std::max(1.0, std::abs(x)); };
  for (const auto& [name, g] : corpus) {
    const auto ref = analyze(g);
    for (double eps : {0.5, 1.0}) {
      for (std::uint64_t trial = 0; trial < 20; ++trial) {
        const auto r = run_sparsification(ref, eps, trial_seed(6, trial), kHarnessMaxAttempts);
        ++runs;
        if (!r.verified()) continue;
        ++verified;
        const auto tag = fmt::format("{} eps={} trial={}", name, eps, trial);
        if (!r.envelopes.at("direct").contains(ref.kemeny, slack(ref.kemeny))) o.fail(tag + ": (a) direct");
        if (!r.envelopes.at("Kpp").contains(*r.kdoubleprime, slack(*r.kdoubleprime))) o.fail(tag + ": (b) K''");
        if (!r.envelopes.at("Kp").contains(*r.kprime, slack(*r.kprime))) o.fail(tag + ": (c) K'");
        if (*r.ktripleprime > *r.ktriple_upper + slack(*r.ktriple_upper)) o.fail(tag + ": (d) K''' upper");
        if (!*r.normalized_envelope_holds) o.fail(tag + ": (e) normalized eigenvalues");
        checks += 5;
      }
    }
  }
  if (verified == 0) o.fail("no verified run");
  o.detail = fmt::format("{} runs, {} verified, {} envelope checks", runs, verified, checks);
  return o;
}

Outcome sparsification_accuracy() {
  Outcome o;
  const auto t = cmd_er_study(250, {0.5}, {0.5}, 10, 7);
  if (t.failures) {
    o.fail("er-study cell failed");
    return o;
  }
  const double err = t.number(0, "rel_error");
  const double var = t.number(0, "edge_variation_pct");
  if (!(err <= 0.02)) o.fail(fmt::format("median relative error {:.4f} > 0.02", err));
  if (!(var >= 40.0)) o.fail(fmt::format("median edge reduction {:.1f}% < 40%", var));
  o.detail = fmt::format("G(250,0.5) |E|={} eps=0.5 10 trials: median rel err {:.4f}, median edge reduction {:.1f}%",
                         std::get<std::int64_t>(t.at(0, "E")), err, var);
  return o;
}

Outcome interlacing_containment() {
  Outcome o;
  std::mt19937_64 rng(8);
  int intervals = 0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 5 + rng() % 26;
    const auto g = oracle::random_connected(n, 0.15 + 0.3 * static_cast<double>(rng() % 100) / 100.0, rng());
    const auto ls = assemble(g);
    const auto spec = spectrum(ls);
    const double k = kemeny_eigen(spec);
    const double slack = 1e-9 * k;

    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const std::size_t m = 2 + rng() % (n - 2);
    const std::vector<Vertex> subset(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(m));
    if (!submatrix_bounds(ls, spec, subset).contains(k, slack)) o.fail(fmt::format("graph {}: submatrix", i));

    std::shuffle(perm.begin(), perm.end(), rng);
    const std::size_t parts = 2 + rng() % (n - 2);
    VertexPartition part;
    part.parts.resize(parts);
    for (std::size_t v = 0; v < n; ++v) part.parts[v < parts ? v : rng() % parts].push_back(perm[v]);
    if (!quotient_bounds(ls, spec, part).contains(k, slack)) o.fail(fmt::format("graph {}: quotient", i));

    const std::size_t r = 1 + rng() % 3;
    bool deleted = false;
    for (int attempt = 0; attempt < 20 && !deleted; ++attempt) {
      std::vector<Edge> edges = g.edges();
      std::shuffle(edges.begin(), edges.end(), rng);
      std::vector<std::pair<Vertex, Vertex>> del;
      for (std::size_t j = 0; j < r; ++j) del.emplace_back(edges[j].u, edges[j].v);
      if (!is_connected(remove_edges(g, del))) continue;
      const auto b = edge_deletion_bounds(g, del);
      if (!b.direct.contains(k, slack) || !b.via_kemeny_h.contains(k, slack)) {
        o.fail(fmt::format("graph {}: edge deletion r={}", i, r));
      }
      deleted = true;
    }
    intervals += deleted ? 4 : 2;
  }
  auto gap_of = [](const WeightedGraph& g) {
    const auto spec = spectrum(assemble(g));
    return std::abs(adjacent_pair_upper(g, degree_profile(g), spec) - kemeny_eigen(spec));
  };
  double kn_gap = 0.0, star_gap = 0.0;
  int loose_kn = 0, loose_stars = 0;
  for (std::size_t n = 3; n <= 30; ++n) {
    const double gap = gap_of(complete_graph(n));
    kn_gap = std::max(kn_gap, gap);
    if (gap > 1e-9) ++loose_kn;
  }
  for (std::size_t q = 2; q <= 20; ++q) {
    const double gap = gap_of(star_graph(q));
    star_gap = std::max(star_gap, gap);
    if (gap > 1e-9) ++loose_stars;
  }
  if (loose_kn) o.fail(fmt::format("adjacent-pair bound not tight on {} of 28 K_n (max gap {:.3g})", loose_kn, kn_gap));
  if (loose_stars) {
    o.fail(fmt::format("adjacent-pair bound not tight on {} of 19 stars K_1,q (gap {:.4f} at q=2 .. {:.4f} at q=20)",
                       loose_stars, gap_of(star_graph(2)), gap_of(star_graph(20))));
  }
  o.detail = fmt::format("50 graphs, {} intervals; adjacent-pair gap max {:.2e} on K_n, {:.2e} on stars", intervals,
                         kn_gap, star_gap);
  return o;
}

Outcome kn_minus_edge() {
  Outcome o;
  double worst = 0.0;
  for (std::size_t n = 4; n <= 30; ++n) {
    const double nn = static_cast<double>(n);
    const std::vector<std::pair<Vertex, Vertex>> del{{0, 1}};
    const auto b = edge_deletion_bounds(complete_graph(n), del);
    const double base = (nn - 1) * (nn - 2) / nn;
    const double lo = base + (nn - 1) / (nn + 1), hi = base + 1.0;
    const double kh = kemeny_eigen(spectrum(assemble(remove_edges(complete_graph(n), del))));
    const double kh_expr = 1.0 + (nn - 1) / (nn + 1) + (nn - 1) * (nn - 3) / nn;
    const double e = std::max({std::abs(b.direct.lower - lo), std::abs(b.direct.upper - hi), std::abs(kh - kh_expr)});
    worst = std::max(worst, e);
    if (e > 1e-9) o.fail(fmt::format("n={}: lower {:.12g} upper {:.12g} K(H) {:.12g}", n, b.direct.lower, b.direct.upper, kh));
  }
  o.detail = fmt::format("n=4..30, max abs err {:.2e}", worst);
  return o;
}

std::string capture(const std::string& command, int& status) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  status = pclose(pipe);
  return out;
}

Outcome determinism() {
  Outcome o;
  if (cli_path.empty() || !std::filesystem::exists(cli_path)) {
    o.fail("CLI not found (pass --cli PATH)");
    return o;
  }
  const auto dir = std::filesystem::temp_directory_path() / "kemeny_acceptance";
  std::filesystem::create_directories(dir);
  const auto edge_file = (dir / "er.txt").string();
  const std::string cli = "'" + cli_path + "'";
  int st = 0;
  capture(cli + " gen --gen er --params n=40,p=0.3 --seed 11 --out '" + edge_file + "'", st);
  if (st != 0) o.fail("gen failed");

  const std::vector<std::string> invocations{
      "gen --gen er --params n=60,p=0.2 --seed 5",
      "exact --gen windmill1 --params m=3,k=10,n0=5 --format csv",
      "exact --graph '" + edge_file + "' --format md",
      "sparsify --gen bipartite --params p=10,q=15 --eps 0.5,1,1.5,2 --trials 1 --seed 3 --format csv",
      "sparsify --graph '" + edge_file + "' --eps 0.5,1 --trials 4 --seed 99 --format md",
      "interlace --gen complete --params n=25 --random-pair --seed 17 --format csv",
      "interlace --gen path --params n=6 --partition '0,1,2|3,4,5' --subset 1,2,3 --format md",
      "interlace --gen complete --params n=5 --delete 0-1 --adjacent-pair --format csv",
      "er-study --n 120 --p 0.3,0.6 --eps 0.5,2 --trials 3 --seed 21 --format csv",
  };
  for (const auto& args : invocations) {
    int s1 = 0, s2 = 0;
    const auto a = capture(cli + " " + args + " 2>&1", s1);
    const auto b = capture(cli + " " + args + " 2>&1", s2);
    if (s1 != 0 || s2 != 0) o.fail(fmt::format("'{}' exited {} / {}", args, s1, s2));
    if (a.empty()) o.fail(fmt::format("'{}' produced no output", args));
    if (a != b) o.fail(fmt::format("'{}' output differs between runs", args));
  }
  std::filesystem::remove_all(dir);
  o.detail = fmt::format("{} CLI invocations run twice, byte-identical", invocations.size());
  return o;
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::stoi(argv[++i]);
    } else if (arg == "--cli" && i + 1 < argc) {
      cli_path = argv[++i];
    } else {
      std::cerr << "usage: acceptance [--criterion N] [--cli PATH]\n";
      return 2;
    }
  }

  const std::vector<Criterion> criteria{
      {"closed families exact", closed_families},
      {"degree-bound rows", degree_bound_rows},
      {"oracle equivalence", oracle_equivalence},
      {"slightly-regular formula", slightly_regular_formula},
      {"K** reproduction", star_star},
      {"sparsification envelopes", sparsification_envelopes},
      {"sparsification accuracy", sparsification_accuracy},
      {"interlacing containment", interlacing_containment},
      {"K_n minus an edge", kn_minus_edge},
      {"CLI determinism", determinism},
  };
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::cerr << "criterion out of range\n";
    return 2;
  }

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i + 1) != only) continue;
    Outcome out;
    try {
      out = criteria[i].run();
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    if (!out.pass) ++failed;
    fmt::print("{} [{:2}] {}: {}", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].title, out.detail);
    for (const auto& p : out.problems) fmt::print("; {}", p);
    fmt::print("\n");
  }
  return failed == 0 ? 0 : 1;
}
