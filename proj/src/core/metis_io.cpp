#include "wlpart/metis_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

#include "wlpart/errors.hpp"

namespace wlpart::io {

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
      ++i;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
      ++i;
    }
    if (i > start) {
      tokens.push_back(line.substr(start, i - start));
    }
  }
  return tokens;
}

bool is_comment(std::string_view line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos != std::string_view::npos && line[pos] == '%';
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

template <typename Int> Int parse_int(std::string_view tok, std::size_t line, const char *what) {
  Int value{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, std::string("expected integer ") + what + ", got '" + std::string(tok) + "'");
  }
  return value;
}

double parse_weight(std::string_view tok, std::size_t line, const char *what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, std::string("expected numeric ") + what + ", got '" + std::string(tok) + "'");
  }
  if (!(value > 0.0) || value == std::numeric_limits<double>::infinity()) {
    throw ParseError(line, std::string(what) + " must be positive, got '" + std::string(tok) + "'");
  }
  return value;
}

MetisHeader parse_header(const std::vector<std::string_view> &tokens, std::size_t line) {
  if (tokens.size() < 2 || tokens.size() > 4) {
    throw ParseError(line, "header must be 'n m [fmt [ncon]]'");
  }
  MetisHeader header;
  header.n = parse_int<VertexId>(tokens[0], line, "vertex count");
  header.m = parse_int<EdgeIndex>(tokens[1], line, "edge count");
  if (header.n <= 0) {
    throw ParseError(line, "vertex count must be positive");
  }
  if (header.m < 0) {
    throw ParseError(line, "edge count must be nonnegative");
  }
  if (tokens.size() >= 3) {
    const std::string_view fmt = tokens[2];
    if (fmt.size() > 3 || fmt.find_first_not_of("01") != std::string_view::npos) {
      throw ParseError(line, "unsupported fmt flag '" + std::string(fmt) + "'");
    }
    std::string padded = std::string(3 - fmt.size(), '0') + std::string(fmt);
    if (padded[0] == '1') {
      throw ParseError(line, "vertex sizes (fmt 1xx) are not supported");
    }
    header.has_vertex_weights = padded[1] == '1';
    header.has_edge_weights = padded[2] == '1';
  }
  header.ncon = header.has_vertex_weights ? 1 : 0;
  if (tokens.size() == 4) {
    const int ncon = parse_int<int>(tokens[3], line, "ncon");
    if (!header.has_vertex_weights || ncon != 1) {
      throw ParseError(line, "only a single vertex weight (ncon = 1) is supported");
    }
  }
  return header;
}

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  // Shortest representation that still round-trips, if one exists.
  for (int precision = 1; precision < 17; ++precision) {
    char shorter[32];
    std::snprintf(shorter, sizeof shorter, "%.*g", precision, value);
    if (std::strtod(shorter, nullptr) == value) {
      return shorter;
    }
  }
  return buf;
}

} // namespace

DoublyWeightedGraph parse_metis(std::istream &in) {
  std::string line;
  std::size_t line_no = 0;

  MetisHeader header;
  std::size_t header_line = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment(line) || is_blank(line)) {
      continue;
    }
    header = parse_header(split_tokens(line), line_no);
    header_line = line_no;
    have_header = true;
    break;
  }
  if (!have_header) {
    throw ParseError(line_no, "missing header line");
  }

  const auto n = static_cast<std::size_t>(header.n);
  std::vector<double> vertex_weights(n, 1.0);
  std::vector<std::vector<std::pair<VertexId, double>>> adjacency(n);
  std::vector<std::size_t> vertex_line(n, 0);

  std::size_t vertex = 0;
  EdgeIndex entries = 0;
  std::vector<VertexId> seen_stamp(n, -1);
  while (vertex < n && std::getline(in, line)) {
    ++line_no;
    if (is_comment(line)) {
      continue;
    }
    const auto tokens = split_tokens(line);
    std::size_t t = 0;
    if (header.has_vertex_weights) {
      if (tokens.empty()) {
        throw ParseError(line_no, "missing vertex weight");
      }
      vertex_weights[vertex] = parse_weight(tokens[t++], line_no, "vertex weight");
    }
    const std::size_t stride = header.has_edge_weights ? 2 : 1;
    if ((tokens.size() - t) % stride != 0) {
      throw ParseError(line_no, "neighbor without edge weight");
    }
    for (; t < tokens.size(); t += stride) {
      const auto id = parse_int<EdgeIndex>(tokens[t], line_no, "neighbor id");
      if (id < 1 || id > header.n) {
        throw ParseError(line_no, "neighbor id " + std::to_string(id) + " outside [1, " +
                                      std::to_string(header.n) + "]");
      }
      const auto v = static_cast<VertexId>(id - 1);
      if (static_cast<std::size_t>(v) == vertex) {
        throw ParseError(line_no, "self-loop on vertex " + std::to_string(id));
      }
      if (seen_stamp[v] == static_cast<VertexId>(vertex)) {
        throw ParseError(line_no, "duplicate neighbor " + std::to_string(id));
      }
      seen_stamp[v] = static_cast<VertexId>(vertex);
      const double w = header.has_edge_weights ? parse_weight(tokens[t + 1], line_no, "edge weight") : 1.0;
      adjacency[vertex].emplace_back(v, w);
      ++entries;
    }
    vertex_line[vertex] = line_no;
    ++vertex;
  }
  if (vertex < n) {
    throw ParseError(line_no, "expected " + std::to_string(n) + " vertex lines, found " + std::to_string(vertex));
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!is_comment(line) && !is_blank(line)) {
      throw ParseError(line_no, "unexpected content after the last vertex line");
    }
  }
  if (entries != 2 * header.m) {
    throw ParseError(header_line, "header declares " + std::to_string(header.m) + " edges but adjacency lists hold " +
                            std::to_string(entries) + " entries (expected twice the edge count)");
  }

  std::vector<EdgeIndex> offsets(n + 1, 0);
  std::vector<VertexId> neighbors;
  std::vector<double> weights;
  neighbors.reserve(static_cast<std::size_t>(entries));
  weights.reserve(static_cast<std::size_t>(entries));
  for (std::size_t u = 0; u < n; ++u) {
    auto &adj = adjacency[u];
    std::sort(adj.begin(), adj.end());
    for (const auto &[v, w] : adj) {
      neighbors.push_back(v);
      weights.push_back(w);
    }
    offsets[u + 1] = static_cast<EdgeIndex>(neighbors.size());
  }

  // Symmetry: every (u, v, w) needs a matching (v, u, w).
  for (std::size_t u = 0; u < n; ++u) {
    for (EdgeIndex e = offsets[u]; e < offsets[u + 1]; ++e) {
      const VertexId v = neighbors[e];
      const auto first = neighbors.begin() + offsets[v];
      const auto last = neighbors.begin() + offsets[v + 1];
      const auto it = std::lower_bound(first, last, static_cast<VertexId>(u));
      if (it == last || *it != static_cast<VertexId>(u)) {
        throw ParseError(vertex_line[u], "edge " + std::to_string(u + 1) + "-" + std::to_string(v + 1) +
                                             " is missing from the adjacency of vertex " + std::to_string(v + 1));
      }
      if (weights[it - neighbors.begin()] != weights[e]) {
        throw ParseError(vertex_line[u], "edge " + std::to_string(u + 1) + "-" + std::to_string(v + 1) +
                                             " has mismatched weights");
      }
    }
  }

  return {std::move(offsets), std::move(neighbors), std::move(weights), std::move(vertex_weights)};
}

DoublyWeightedGraph parse_metis_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_metis(in);
}

DoublyWeightedGraph read_metis_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(0, "cannot open '" + path + "'");
  }
  return parse_metis(in);
}

void emit_metis(const DoublyWeightedGraph &g, std::ostream &out) {
  if (g.has_self_loops()) {
    throw ContractViolation("METIS format cannot represent self-loops");
  }
  const auto &vw = g.vertex_weights();
  const auto &ew = g.raw_edge_weights();
  const bool vertex_weights = std::any_of(vw.begin(), vw.end(), [](double w) { return w != 1.0; });
  const bool edge_weights = std::any_of(ew.begin(), ew.end(), [](double w) { return w != 1.0; });

  out << g.n() << ' ' << g.m();
  if (vertex_weights || edge_weights) {
    out << ' ' << (vertex_weights ? (edge_weights ? "11" : "10") : "1");
  }
  out << '\n';
  for (VertexId u = 0; u < g.n(); ++u) {
    bool first = true;
    auto sep = [&] {
      if (!first) {
        out << ' ';
      }
      first = false;
    };
    if (vertex_weights) {
      sep();
      out << format_real(g.vertex_weight(u));
    }
    const auto adj = g.neighbors(u);
    const auto w = g.incident_weights(u);
    for (std::size_t i = 0; i < adj.size(); ++i) {
      sep();
      out << adj[i] + 1;
      if (edge_weights) {
        out << ' ' << format_real(w[i]);
      }
    }
    out << '\n';
  }
}

std::string emit_metis_string(const DoublyWeightedGraph &g) {
  std::ostringstream out;
  emit_metis(g, out);
  return out.str();
}

void write_partition(const Partition &p, std::ostream &out) {
  for (const BlockId b : p.assignment()) {
    out << b << '\n';
  }
}

Partition read_partition(std::istream &in, BlockId k) {
  std::vector<BlockId> assignment;
  std::string line;
  std::size_t line_no = 0;
  BlockId max_id = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line) || is_comment(line)) {
      continue;
    }
    const auto tokens = split_tokens(line);
    if (tokens.size() != 1) {
      throw ParseError(line_no, "expected one block id per line");
    }
    const auto b = parse_int<BlockId>(tokens[0], line_no, "block id");
    if (b < 0) {
      throw ParseError(line_no, "negative block id");
    }
    max_id = std::max(max_id, b);
    assignment.push_back(b);
  }
  if (k == 0) {
    k = max_id + 1;
  }
  if (max_id >= k) {
    throw ParseError(line_no, "block id exceeds k - 1");
  }
  return {std::max<BlockId>(k, 1), std::move(assignment)};
}

DoublyWeightedGraph parse_matrix_market_pattern(std::istream &in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) {
    throw ParseError(0, "empty Matrix Market file");
  }
  ++line_no;
  if (line.rfind("%%MatrixMarket", 0) != 0) {
    throw ParseError(line_no, "missing %%MatrixMarket banner");
  }
  const auto banner = split_tokens(line);
  if (banner.size() < 5 || banner[1] != "matrix" || banner[2] != "coordinate") {
    throw ParseError(line_no, "only 'matrix coordinate' Matrix Market files are supported");
  }

  std::vector<std::string_view> size_tokens;
  std::string size_line;
  while (std::getline(in, size_line)) {
    ++line_no;
    if (!is_comment(size_line) && !is_blank(size_line)) {
      size_tokens = split_tokens(size_line);
      break;
    }
  }
  if (size_tokens.size() != 3) {
    throw ParseError(line_no, "expected 'rows cols entries'");
  }
  const auto rows = parse_int<EdgeIndex>(size_tokens[0], line_no, "row count");
  const auto cols = parse_int<EdgeIndex>(size_tokens[1], line_no, "column count");
  const auto nnz = parse_int<EdgeIndex>(size_tokens[2], line_no, "entry count");
  if (rows != cols || rows <= 0 || rows > std::numeric_limits<VertexId>::max()) {
    throw ParseError(line_no, "matrix must be square with a positive dimension");
  }

  std::vector<std::pair<VertexId, VertexId>> pairs;
  pairs.reserve(static_cast<std::size_t>(nnz));
  EdgeIndex read = 0;
  while (read < nnz && std::getline(in, line)) {
    ++line_no;
    if (is_comment(line) || is_blank(line)) {
      continue;
    }
    const auto tokens = split_tokens(line);
    if (tokens.size() < 2) {
      throw ParseError(line_no, "expected 'row col [value]'");
    }
    const auto i = parse_int<EdgeIndex>(tokens[0], line_no, "row index");
    const auto j = parse_int<EdgeIndex>(tokens[1], line_no, "column index");
    if (i < 1 || j < 1 || i > rows || j > cols) {
      throw ParseError(line_no, "index out of range");
    }
    ++read;
    if (i != j) {
      const auto a = static_cast<VertexId>(std::min(i, j) - 1);
      const auto b = static_cast<VertexId>(std::max(i, j) - 1);
      pairs.emplace_back(a, b);
    }
  }
  if (read != nnz) {
    throw ParseError(line_no, "file ended before all entries were read");
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  GraphBuilder builder(static_cast<VertexId>(rows));
  for (const auto &[a, b] : pairs) {
    builder.add_edge(a, b, 1.0);
  }
  return builder.build();
}

} // namespace wlpart::io
