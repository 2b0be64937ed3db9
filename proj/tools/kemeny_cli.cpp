#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "kemeny/edge_list.hpp"
#include "kemeny/experiment.hpp"
#include "kemeny/table.hpp"

namespace {

struct Common {
  std::string graph_path;
  std::string gen;
  std::string params;
  std::uint64_t seed = 0;
  std::string format = "md";
  std::string out;
};

void add_source(CLI::App* cmd, Common& c) {
  auto* graph = cmd->add_option("--graph", c.graph_path, "edge-list file (header 'n m', lines 'i j [c]')");
  auto* gen = cmd->add_option("--gen", c.gen,
                              "generator: complete, bipartite, path, star, windmill, windmill1, windmill2, er");
  graph->excludes(gen);
  cmd->add_option("--params", c.params, "generator parameters, e.g. p=10,q=15");
}

void add_output(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "master seed")->capture_default_str();
  cmd->add_option("--format", c.format, "csv or md")->check(CLI::IsMember({"csv", "md"}))->capture_default_str();
  cmd->add_option("--out", c.out, "output path (default stdout)");
}

kemeny::GraphSource source_of(const Common& c) {
  kemeny::GraphSource src;
  if (!c.graph_path.empty()) {
    src.path = c.graph_path;
    return src;
  }
  if (c.gen.empty()) throw std::invalid_argument("one of --graph or --gen is required");
  src.generator = c.gen;
  src.params = kemeny::parse_params(c.params);
  return src;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + c.out);
  f << text;
}

int finish(const Common& c, const kemeny::Table& t) {
  std::ostringstream os;
  if (c.format == "csv") {
    kemeny::write_csv(os, t);
  } else {
    kemeny::write_markdown(os, t);
  }
  emit(c, os.str());
  if (t.failures > 0) {
    std::cerr << fmt::format("kemeny: {} cell(s) failed\n", t.failures);
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kemeny's constant: exact formulas, sparsification and interlacing bounds"};
  app.require_subcommand(1);

  Common c;
  std::vector<double> eps{0.5, 1.0, 1.5, 2.0};
  int trials = 1;

  auto* exact = app.add_subcommand("exact", "spectrum, degree bounds, K, K** and slightly-regular status");
  add_source(exact, c);
  add_output(exact, c);

  auto* sparsify = app.add_subcommand("sparsify", "effective-resistance sparsification sweep over epsilon");
  add_source(sparsify, c);
  add_output(sparsify, c);
  sparsify->add_option("--eps", eps, "comma-separated epsilons")->delimiter(',')->capture_default_str();
  sparsify->add_option("--trials", trials, "trials per epsilon")->check(CLI::PositiveNumber)->capture_default_str();

  std::string subset, partition, deleted;
  bool random_pair = false, adjacent_pair = false;
  auto* interlace = app.add_subcommand("interlace", "interlacing bounds on K");
  add_source(interlace, c);
  add_output(interlace, c);
  interlace->add_option("--subset", subset, "vertex subset, e.g. 0,1,2");
  interlace->add_flag("--random-pair", random_pair, "random adjacent pair drawn from --seed");
  interlace->add_option("--partition", partition, "vertex partition, e.g. 0,1,2|3,4,5");
  interlace->add_option("--delete", deleted, "edges to delete, e.g. 0-1,2-3");
  interlace->add_flag("--adjacent-pair", adjacent_pair, "best adjacent-pair upper bound");

  std::size_t er_n = 250;
  std::vector<double> er_p{0.5};
  auto* er = app.add_subcommand("er-study", "Erdos-Renyi study over p and epsilon");
  add_output(er, c);
  er->add_option("--n", er_n, "vertex count")->capture_default_str();
  er->add_option("--p", er_p, "comma-separated edge probabilities")->delimiter(',')->capture_default_str();
  er->add_option("--eps", eps, "comma-separated epsilons")->delimiter(',')->capture_default_str();
  er->add_option("--trials", trials, "trials per cell")->check(CLI::PositiveNumber)->capture_default_str();

  auto* gen = app.add_subcommand("gen", "write a generated graph as an edge list");
  add_source(gen, c);
  gen->add_option("--seed", c.seed, "seed for random generators")->capture_default_str();
  gen->add_option("--out", c.out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      if (!c.graph_path.empty()) throw std::invalid_argument("gen needs --gen, not --graph");
      const auto g = kemeny::make_graph(source_of(c), c.seed);
      std::ostringstream os;
      kemeny::write_edge_list(os, g);
      emit(c, os.str());
      return 0;
    }
    if (*er) {
      return finish(c, kemeny::cmd_er_study(er_n, er_p, eps, trials, c.seed));
    }

    const auto src = source_of(c);
    const auto g = kemeny::make_graph(src, c.seed);
    const auto label = src.label();
    if (*exact) return finish(c, kemeny::cmd_exact(g, label));
    if (*sparsify) return finish(c, kemeny::cmd_sparsify_sweep(g, label, eps, trials, c.seed));

    kemeny::InterlaceRequest req;
    if (!subset.empty()) req.subset = kemeny::parse_vertex_list(subset);
    if (!partition.empty()) req.partition = kemeny::parse_partition(partition);
    req.deleted_edges = kemeny::parse_edge_pairs(deleted);
    req.random_adjacent_pair = random_pair;
    req.adjacent_pair_bound = adjacent_pair;
    return finish(c, kemeny::cmd_interlace(g, label, req, c.seed));
  } catch (const std::exception& e) {
    std::cerr << "kemeny: error: " << e.what() << '\n';
    return 2;
  }
}
