#include "kemeny/edge_list.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "kemeny/error.hpp"

namespace kemeny {

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& msg) {
  throw ParseError(fmt::format("edge list line {}: {}", line_no, msg));
}

}  // namespace

WeightedGraph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_content_line(in, line, line_no)) throw ParseError("edge list is empty");

  long long n = -1;
  long long m = -1;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> n >> m) || (header >> extra)) fail(line_no, "expected header 'n m'");
    if (n < 1 || m < 0) fail(line_no, "header needs n >= 1 and m >= 0");
  }

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  while (next_content_line(in, line, line_no)) {
    std::istringstream fields(line);
    long long i = -1;
    long long j = -1;
    double c = 1.0;
    std::string extra;
    if (!(fields >> i >> j)) fail(line_no, "expected 'i j [c]'");
    if (!(fields >> c)) {
      if (!fields.eof()) fail(line_no, "malformed conductance");
      c = 1.0;
    } else if (fields >> extra) {
      fail(line_no, "trailing fields");
    }
    if (i < 0 || j < 0 || i >= n || j >= n) fail(line_no, "vertex id out of range");
    if (i == j) fail(line_no, "self-loop");
    if (!(c > 0.0)) fail(line_no, "conductance must be positive");
    edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j), c});
  }
  if (static_cast<long long>(edges.size()) != m) {
    throw ParseError(fmt::format("edge list declares {} edges but contains {}", m, edges.size()));
  }
  return WeightedGraph(static_cast<std::size_t>(n), edges);
}

WeightedGraph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge list " + path.string());
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const WeightedGraph& g) {
  fmt::print(out, "{} {}\n", g.vertex_count(), g.edge_count());
  for (const Edge& e : g.edges()) fmt::print(out, "{} {} {:.17g}\n", e.u, e.v, e.weight);
}

void write_edge_list(const std::filesystem::path& path, const WeightedGraph& g) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write edge list " + path.string());
  write_edge_list(out, g);
}

}  // namespace kemeny
