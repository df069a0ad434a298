#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "wlpart/graph.hpp"

namespace wlpart::io {

struct MetisHeader {
  VertexId n = 0;
  EdgeIndex m = 0;
  bool has_vertex_weights = false;
  bool has_edge_weights = false;
  int ncon = 0;
};

// METIS graph text. Vertex ids are 1-based in the file and 0-based in memory.
// Without vertex weights in the file, every vertex gets weight 1 (M = I).
// Throws ParseError carrying the offending line number.
[[nodiscard]] DoublyWeightedGraph parse_metis(std::istream &in);
[[nodiscard]] DoublyWeightedGraph parse_metis_string(std::string_view text);
[[nodiscard]] DoublyWeightedGraph read_metis_file(const std::string &path);

// Emits the graph so that parse_metis reproduces it exactly (weights are
// printed with round-trip precision). Graphs with self-loops are rejected:
// the format has no way to express them.
void emit_metis(const DoublyWeightedGraph &g, std::ostream &out);
[[nodiscard]] std::string emit_metis_string(const DoublyWeightedGraph &g);

// One 0-based block id per line.
void write_partition(const Partition &p, std::ostream &out);
// Reads block ids; k is taken as max id + 1 unless given.
[[nodiscard]] Partition read_partition(std::istream &in, BlockId k = 0);

// Matrix Market coordinate file to an unweighted graph: diagonal entries are
// dropped and the pattern is symmetrized. Used to convert SuiteSparse downloads.
[[nodiscard]] DoublyWeightedGraph parse_matrix_market_pattern(std::istream &in);

} // namespace wlpart::io
