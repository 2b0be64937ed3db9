#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kemeny/graph.hpp"
#include "kemeny/interlace.hpp"
#include "kemeny/table.hpp"

namespace kemeny {

/// Either a named generator with key=value parameters or an edge-list path.
///
/// Generators: complete(n), bipartite(p,q), path(n), star(q), windmill(m,k),
/// windmill1(m,k,n0), windmill2(m,k,n0), er(n,p). `er` draws from the
/// experiment seed.
struct GraphSource {
  std::string generator;
  std::map<std::string, std::string> params;
  std::filesystem::path path;

  std::string label() const;
};

/// "k=v,k2=v2" -> map. Throws std::invalid_argument on malformed input.
std::map<std::string, std::string> parse_params(std::string_view text);

WeightedGraph make_graph(const GraphSource& source, std::uint64_t seed);

enum class OutputFormat { csv, markdown };

struct ExperimentSpec {
  GraphSource source;
  std::vector<double> epsilons{0.5, 1.0, 1.5, 2.0};
  int trials = 1;
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::markdown;

  /// Throws std::invalid_argument unless trials >= 1 and every epsilon > 0.
  void validate() const;
};

/// One row: gamma_2, gamma_n, the orthogonal-degree bounds, K, plus
/// slightly-regular status, K**, H, I and R_G in the CSV columns.
Table cmd_exact(const WeightedGraph& g, const std::string& label);

/// One row per epsilon; median with min/max across trials. Per-trial seeds
/// are trial_seed(seed, trial) and are listed in the `seeds` column.
Table cmd_sparsify_sweep(const WeightedGraph& g, const std::string& label, const std::vector<double>& epsilons,
                         int trials, std::uint64_t seed);

struct InterlaceRequest {
  std::optional<std::vector<Vertex>> subset;
  bool random_adjacent_pair = false;
  std::optional<VertexPartition> partition;
  std::vector<std::pair<Vertex, Vertex>> deleted_edges;
  bool adjacent_pair_bound = false;

  bool empty() const {
    return !subset && !random_adjacent_pair && !partition && deleted_edges.empty() && !adjacent_pair_bound;
  }
};

/// One row per requested bound with the exact K for containment display.
/// An empty request runs the adjacent-pair bound.
Table cmd_interlace(const WeightedGraph& g, const std::string& label, const InterlaceRequest& request,
                    std::uint64_t seed);

/// Erdos-Renyi study: for each p a connected G(n,p) is drawn (up to 64
/// attempts, redraws counted), then one row per epsilon with the degree
/// bounds, K, K**, median K''' over trials, relative error and % edge
/// variation.
Table cmd_er_study(std::size_t n, const std::vector<double>& ps, const std::vector<double>& epsilons, int trials,
                   std::uint64_t seed);

inline constexpr int kMaxConnectedDraws = 64;

/// Seed for the attempt-th draw of G(n, p_index).
std::uint64_t er_graph_seed(std::uint64_t master, std::size_t p_index, int attempt);

/// "0,1,2|3,4" -> partition; "0,1,2" -> subset; "0-1,2-3" -> edge pairs.
VertexPartition parse_partition(std::string_view text);
std::vector<Vertex> parse_vertex_list(std::string_view text);
std::vector<std::pair<Vertex, Vertex>> parse_edge_pairs(std::string_view text);
std::vector<double> parse_double_list(std::string_view text);

}  // namespace kemeny
