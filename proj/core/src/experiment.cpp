#include "kemeny/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "kemeny/constant.hpp"
#include "kemeny/edge_list.hpp"
#include "kemeny/error.hpp"
#include "kemeny/random.hpp"
#include "kemeny/sparsify.hpp"
#include "kemeny/spectral.hpp"

namespace kemeny {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::size_t to_size(std::string_view s, std::string_view what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument(fmt::format("{}: '{}' is not a non-negative integer", what, s));
  }
  return v;
}

double to_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument(fmt::format("{}: '{}' is not a number", what, s));
  }
  return v;
}

std::size_t size_param(const GraphSource& src, const std::string& key) {
  auto it = src.params.find(key);
  if (it == src.params.end()) {
    throw std::invalid_argument(fmt::format("generator '{}' needs parameter {}", src.generator, key));
  }
  return to_size(it->second, key);
}

double median(std::vector<double> v) {
  if (v.empty()) return kNaN;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

double min_of(const std::vector<double>& v) {
  return v.empty() ? kNaN : *std::min_element(v.begin(), v.end());
}

double max_of(const std::vector<double>& v) {
  return v.empty() ? kNaN : *std::max_element(v.begin(), v.end());
}

Cell opt_cell(double v) {
  if (std::isnan(v)) return std::monostate{};
  return v;
}

std::string join_seeds(const std::vector<std::uint64_t>& seeds) {
  std::string s;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(seeds[i]);
  }
  return s;
}

std::string eps_list(const std::vector<double>& eps) {
  std::string s;
  for (std::size_t i = 0; i < eps.size(); ++i) s += fmt::format("{}{}", i ? "," : "", eps[i]);
  return s;
}

const std::vector<std::string> kTolerances = {
    "tol_eig=1e-9*max(1,gamma_n)", "tol_slightly_regular=1e-8", "tol_verify=1e-9"};

const char* const kSeedSplit = "trial seed = splitmix64(seed ^ 0x9E3779B97F4A7C15*(trial+1))";

// Per-epsilon aggregate of several sparsification trials.
struct SweepCell {
  std::vector<double> kppp, kpp, kp, edges, rel_error;
  std::vector<std::uint64_t> seeds;
  std::size_t connected = 0;
  std::size_t verified = 0;
  std::size_t samples = 0;
  BoundInterval kpp_env, kp_env;
  double kppp_upper = kNaN;
  std::vector<double> direct_lo, direct_hi;
};

SweepCell run_trials(const ReferenceAnalysis& ref, double eps, int trials, std::uint64_t seed) {
  SweepCell cell;
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t s = trial_seed(seed, static_cast<std::uint64_t>(trial));
    cell.seeds.push_back(s);
    const auto report = run_sparsification(ref, eps, s, kHarnessMaxAttempts);
    cell.samples = report.samples;
    cell.kpp_env = report.envelopes.at("Kpp");
    cell.kp_env = report.envelopes.at("Kp");
    cell.kppp_upper = *report.ktriple_upper;
    if (!report.connected) continue;
    ++cell.connected;
    if (report.verified()) ++cell.verified;
    cell.kppp.push_back(*report.ktripleprime);
    cell.kpp.push_back(*report.kdoubleprime);
    cell.kp.push_back(*report.kprime);
    cell.edges.push_back(static_cast<double>(report.sparsified.edge_count()));
    cell.rel_error.push_back(std::abs(*report.ktripleprime - ref.kemeny) / ref.kemeny);
    cell.direct_lo.push_back(report.envelopes.at("direct").lower);
    cell.direct_hi.push_back(report.envelopes.at("direct").upper);
  }
  return cell;
}

}  // namespace

std::string GraphSource::label() const {
  if (!path.empty()) return path.filename().string();
  std::string s = generator + "(";
  bool first = true;
  for (const auto& [k, v] : params) {
    s += fmt::format("{}{}={}", first ? "" : ",", k, v);
    first = false;
  }
  return s + ")";
}

std::map<std::string, std::string> parse_params(std::string_view text) {
  std::map<std::string, std::string> out;
  if (trim(text).empty()) return out;
  for (auto item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size()) {
      throw std::invalid_argument(fmt::format("parameter '{}' is not key=value", item));
    }
    out[std::string(trim(item.substr(0, eq)))] = std::string(trim(item.substr(eq + 1)));
  }
  return out;
}

WeightedGraph make_graph(const GraphSource& src, std::uint64_t seed) {
  if (!src.path.empty()) return read_edge_list(src.path);
  const auto& g = src.generator;
  if (g == "complete") return complete_graph(size_param(src, "n"));
  if (g == "bipartite") return complete_bipartite(size_param(src, "p"), size_param(src, "q"));
  if (g == "path") return path_graph(size_param(src, "n"));
  if (g == "star") return star_graph(size_param(src, "q"));
  if (g == "windmill") return windmill(size_param(src, "m"), size_param(src, "k"));
  if (g == "windmill1") return windmill_type1(size_param(src, "m"), size_param(src, "k"), size_param(src, "n0"));
  if (g == "windmill2") return windmill_type2(size_param(src, "m"), size_param(src, "k"), size_param(src, "n0"));
  if (g == "er") {
    auto it = src.params.find("p");
    if (it == src.params.end()) throw std::invalid_argument("generator 'er' needs parameter p");
    return erdos_renyi(size_param(src, "n"), to_double(it->second, "p"), seed);
  }
  throw std::invalid_argument(fmt::format("unknown generator '{}'", g));
}

void ExperimentSpec::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  for (double e : epsilons) {
    if (!(e > 0.0)) throw std::invalid_argument("every epsilon must be positive");
  }
}

Table cmd_exact(const WeightedGraph& g, const std::string& label) {
  if (!is_connected(g)) throw ConnectivityError(label + " is disconnected");
  const auto ls = assemble(g);
  const auto dp = degree_profile(g);
  const auto spec = spectrum(ls);
  const auto gi = group_inverse(ls);
  const auto bounds = degree_bounds(gi, dp, spec);
  const auto cert = slightly_regular_certificate(ls, dp);
  const double irr = irregularity(ls, dp);

  Table t;
  t.columns = {"graph", "n", "E", "gamma2", "gamman", "lower", "K", "upper", "slightly_regular",
               "sr_gamma", "K_sr", "Kss", "resistive", "H", "I", "R"};
  t.display_columns = {"graph", "gamma2", "gamman", "lower", "K", "upper"};
  t.provenance = {"command=exact graph=" + label};
  t.provenance.insert(t.provenance.end(), kTolerances.begin(), kTolerances.end());

  const std::string status = cert.is_regular ? "regular" : (cert.accepted ? "yes" : "no");
  const Cell k_sr = cert.accepted ? Cell{kemeny_slightly_regular(cert, gi, dp)} : Cell{};
  t.add_row({label, static_cast<std::int64_t>(g.vertex_count()), static_cast<std::int64_t>(g.edge_count()),
             spec.gamma2(), spec.gamma_max(), bounds.lower, kemeny_eigen(spec), bounds.upper, status,
             cert.gamma, k_sr, kemeny_star_star(dp, spec, irr), resistive_estimate(dp, spec),
             heterogeneity(dp), irr, kirchhoff_index(spec)});
  return t;
}

Table cmd_sparsify_sweep(const WeightedGraph& g, const std::string& label, const std::vector<double>& epsilons,
                         int trials, std::uint64_t seed) {
  ExperimentSpec check;
  check.epsilons = epsilons;
  check.trials = trials;
  check.validate();
  if (epsilons.empty()) throw std::invalid_argument("sparsify sweep needs at least one epsilon");

  const auto ref = analyze(g);
  Table t;
  t.columns = {"graph", "n", "E", "K", "eps", "trials", "connected_trials", "verified_trials", "t",
               "Eprime", "Eprime_min", "Eprime_max", "Kppp", "Kppp_min", "Kppp_max", "Kpp", "Kpp_min",
               "Kpp_max", "Kp", "Kp_min", "Kp_max", "Kpp_lo", "Kpp_hi", "Kp_lo", "Kp_hi", "direct_lo",
               "direct_hi", "Kppp_upper", "rel_error", "edge_variation_pct", "status", "seeds"};
  t.display_columns = {"eps", "Kppp", "Kpp", "Kp", "Eprime", "Kpp_lo", "Kpp_hi", "Kp_lo", "Kp_hi"};
  t.provenance = {fmt::format("command=sparsify graph={} seed={} trials={} eps={} max_attempts={}", label, seed,
                              trials, eps_list(epsilons), kHarnessMaxAttempts)};
  t.provenance.insert(t.provenance.end(), kTolerances.begin(), kTolerances.end());
  t.provenance.push_back(kSeedSplit);

  std::vector<double> sorted_eps = epsilons;
  std::stable_sort(sorted_eps.begin(), sorted_eps.end());
  const double edges = static_cast<double>(g.edge_count());
  for (double eps : sorted_eps) {
    const auto c = run_trials(ref, eps, trials, seed);
    const bool failed = c.connected == 0;
    if (failed) ++t.failures;
    const double eprime = median(c.edges);
    const double kppp = median(c.kppp);
    t.add_row({label, static_cast<std::int64_t>(g.vertex_count()), static_cast<std::int64_t>(g.edge_count()),
               ref.kemeny, eps, static_cast<std::int64_t>(trials), static_cast<std::int64_t>(c.connected),
               static_cast<std::int64_t>(c.verified), static_cast<std::int64_t>(c.samples), opt_cell(eprime),
               opt_cell(min_of(c.edges)), opt_cell(max_of(c.edges)), opt_cell(kppp), opt_cell(min_of(c.kppp)),
               opt_cell(max_of(c.kppp)), opt_cell(median(c.kpp)), opt_cell(min_of(c.kpp)),
               opt_cell(max_of(c.kpp)), opt_cell(median(c.kp)), opt_cell(min_of(c.kp)), opt_cell(max_of(c.kp)),
               c.kpp_env.lower, c.kpp_env.upper, c.kp_env.lower, c.kp_env.upper, opt_cell(median(c.direct_lo)),
               opt_cell(median(c.direct_hi)), c.kppp_upper, opt_cell(std::abs(kppp - ref.kemeny) / ref.kemeny),
               opt_cell(100.0 * (edges - eprime) / edges), std::string(failed ? "failed" : "ok"),
               join_seeds(c.seeds)});
  }
  return t;
}

Table cmd_interlace(const WeightedGraph& g, const std::string& label, const InterlaceRequest& request,
                    std::uint64_t seed) {
  if (!is_connected(g)) throw ConnectivityError(label + " is disconnected");
  const auto ls = assemble(g);
  const auto dp = degree_profile(g);
  const auto spec = spectrum(ls);
  const double k = kemeny_eigen(spec);

  Table t;
  t.columns = {"graph", "bound", "detail", "lower", "upper", "K", "contains"};
  t.provenance = {fmt::format("command=interlace graph={} seed={}", label, seed)};
  t.provenance.insert(t.provenance.end(), kTolerances.begin(), kTolerances.end());

  auto add = [&](const std::string& bound, const std::string& detail, std::optional<double> lo, double hi) {
    const bool inside = (!lo || *lo <= k + 1e-9) && k <= hi + 1e-9;
    t.add_row({label, bound, detail, lo ? Cell{*lo} : Cell{}, hi, k, std::string(inside ? "yes" : "no")});
  };
  auto vertex_text = [](const std::vector<Vertex>& vs) {
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i) s += fmt::format("{}{}", i ? "," : "", vs[i]);
    return s;
  };

  InterlaceRequest req = request;
  if (req.empty()) req.adjacent_pair_bound = true;

  if (req.subset) {
    const auto b = submatrix_bounds(ls, spec, *req.subset);
    add("submatrix", vertex_text(*req.subset), b.lower, b.upper);
  }
  if (req.random_adjacent_pair) {
    if (g.edge_count() == 0) throw std::invalid_argument("graph has no edges");
    CounterRng rng(seed);
    const auto pick = std::min(g.edge_count() - 1,
                               static_cast<std::size_t>(rng.next_uniform() * static_cast<double>(g.edge_count())));
    const std::vector<Vertex> pair{g.edges()[pick].u, g.edges()[pick].v};
    const auto b = submatrix_bounds(ls, spec, pair);
    add("submatrix", vertex_text(pair), b.lower, b.upper);
  }
  if (req.partition) {
    const auto b = quotient_bounds(ls, spec, *req.partition);
    std::string detail;
    for (std::size_t i = 0; i < req.partition->parts.size(); ++i) {
      detail += (i ? "|" : "") + vertex_text(req.partition->parts[i]);
    }
    add("quotient", detail, b.lower, b.upper);
  }
  if (!req.deleted_edges.empty()) {
    const auto b = edge_deletion_bounds(g, req.deleted_edges);
    std::string detail;
    for (std::size_t i = 0; i < req.deleted_edges.size(); ++i) {
      detail += fmt::format("{}{}-{}", i ? "," : "", req.deleted_edges[i].first, req.deleted_edges[i].second);
    }
    add("edge-deletion", detail, b.direct.lower, b.direct.upper);
  }
  if (req.adjacent_pair_bound) {
    add("adjacent-pair", "min over edges", std::nullopt, adjacent_pair_upper(g, dp, spec));
  }
  return t;
}

std::uint64_t er_graph_seed(std::uint64_t master, std::size_t p_index, int attempt) {
  return trial_seed(splitmix64(master ^ 0x45524750ULL),
                    static_cast<std::uint64_t>(p_index) * kMaxConnectedDraws + static_cast<std::uint64_t>(attempt));
}

Table cmd_er_study(std::size_t n, const std::vector<double>& ps, const std::vector<double>& epsilons, int trials,
                   std::uint64_t seed) {
  ExperimentSpec check;
  check.epsilons = epsilons;
  check.trials = trials;
  check.validate();
  if (n < 2) throw std::invalid_argument("er-study needs n >= 2");
  if (ps.empty() || epsilons.empty()) throw std::invalid_argument("er-study needs p and epsilon values");

  Table t;
  t.columns = {"n", "p", "eps", "E", "gamma2", "gamman", "lower", "K", "upper", "Kss", "Eprime", "Kppp",
               "rel_error", "edge_variation_pct", "trials", "verified_trials", "redraws", "graph_seed",
               "status", "seeds"};
  t.display_columns = {"n", "p", "eps", "E", "gamma2", "gamman", "lower", "K", "upper", "Kss", "Eprime", "Kppp",
                       "rel_error", "edge_variation_pct"};
  t.provenance = {fmt::format("command=er-study n={} seed={} trials={} eps={} max_draws={}", n, seed, trials,
                              eps_list(epsilons), kMaxConnectedDraws)};
  t.provenance.insert(t.provenance.end(), kTolerances.begin(), kTolerances.end());
  t.provenance.push_back(kSeedSplit);

  std::vector<double> sorted_eps = epsilons;
  std::stable_sort(sorted_eps.begin(), sorted_eps.end());
  for (std::size_t pi = 0; pi < ps.size(); ++pi) {
    const double p = ps[pi];
    std::optional<WeightedGraph> g;
    std::uint64_t graph_seed = 0;
    int redraws = 0;
    for (int attempt = 0; attempt < kMaxConnectedDraws; ++attempt) {
      graph_seed = er_graph_seed(seed, pi, attempt);
      auto candidate = erdos_renyi(n, p, graph_seed);
      if (is_connected(candidate)) {
        g = std::move(candidate);
        break;
      }
      ++redraws;
    }
    if (!g) {
      ++t.failures;
      for (double eps : sorted_eps) {
        std::vector<Cell> row(t.columns.size());
        row[0] = static_cast<std::int64_t>(n);
        row[1] = p;
        row[2] = eps;
        row[16] = static_cast<std::int64_t>(redraws);
        row[18] = std::string("failed");
        t.add_row(std::move(row));
      }
      continue;
    }

    const auto ref = analyze(*g);
    const auto bounds = degree_bounds(ref.group_inverse, ref.degrees, ref.spectrum);
    const double kss = kemeny_star_star(ref.degrees, ref.spectrum, irregularity(ref.laplacians, ref.degrees));
    const double edges = static_cast<double>(g->edge_count());
    for (double eps : sorted_eps) {
      const auto c = run_trials(ref, eps, trials, graph_seed);
      const bool failed = c.connected == 0;
      if (failed) ++t.failures;
      const double eprime = median(c.edges);
      const double kppp = median(c.kppp);
      t.add_row({static_cast<std::int64_t>(n), p, eps, static_cast<std::int64_t>(g->edge_count()),
                 ref.spectrum.gamma2(), ref.spectrum.gamma_max(), bounds.lower, ref.kemeny, bounds.upper, kss,
                 opt_cell(eprime), opt_cell(kppp), opt_cell(std::abs(kppp - ref.kemeny) / ref.kemeny),
                 opt_cell(100.0 * (edges - eprime) / edges), static_cast<std::int64_t>(trials),
                 static_cast<std::int64_t>(c.verified), static_cast<std::int64_t>(redraws),
                 std::to_string(graph_seed), std::string(failed ? "failed" : "ok"), join_seeds(c.seeds)});
    }
  }
  return t;
}

VertexPartition parse_partition(std::string_view text) {
  VertexPartition part;
  for (auto chunk : split(text, '|')) part.parts.push_back(parse_vertex_list(chunk));
  return part;
}

std::vector<Vertex> parse_vertex_list(std::string_view text) {
  std::vector<Vertex> out;
  if (trim(text).empty()) return out;
  for (auto item : split(text, ',')) out.push_back(to_size(item, "vertex"));
  return out;
}

std::vector<std::pair<Vertex, Vertex>> parse_edge_pairs(std::string_view text) {
  std::vector<std::pair<Vertex, Vertex>> out;
  if (trim(text).empty()) return out;
  for (auto item : split(text, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) throw std::invalid_argument(fmt::format("edge '{}' is not i-j", item));
    out.emplace_back(to_size(trim(item.substr(0, dash)), "vertex"), to_size(trim(item.substr(dash + 1)), "vertex"));
  }
  return out;
}

std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  for (auto item : split(text, ',')) out.push_back(to_double(item, "value"));
  return out;
}

}  // namespace kemeny
