#include "wlpart/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>

#include "wlpart/errors.hpp"

namespace wlpart {

DoublyWeightedGraph::DoublyWeightedGraph(std::vector<EdgeIndex> offsets, std::vector<VertexId> neighbors,
                                         std::vector<double> edge_weights,
                                         std::vector<double> vertex_weights,
                                         std::vector<double> self_loops)
    : _offsets(std::move(offsets)), _neighbors(std::move(neighbors)),
      _edge_weights(std::move(edge_weights)), _vertex_weights(std::move(vertex_weights)),
      _self_loops(std::move(self_loops)) {
  const auto n = static_cast<std::size_t>(_vertex_weights.size());
  if (_self_loops.empty()) {
    _self_loops.assign(n, 0.0);
  }
  if (_offsets.size() != n + 1 || _offsets.front() != 0 ||
      _offsets.back() != static_cast<EdgeIndex>(_neighbors.size()) ||
      _neighbors.size() != _edge_weights.size() || _self_loops.size() != n) {
    throw ContractViolation("graph arrays have inconsistent sizes");
  }

  for (std::size_t u = 0; u < n; ++u) {
    if (!(_vertex_weights[u] > 0.0) || !std::isfinite(_vertex_weights[u])) {
      throw ContractViolation("vertex weight of " + std::to_string(u) + " is not positive");
    }
    if (!(_self_loops[u] >= 0.0)) {
      throw ContractViolation("negative self-loop weight at " + std::to_string(u));
    }
    if (_offsets[u] > _offsets[u + 1]) {
      throw ContractViolation("offsets are not monotone");
    }
  }

  _degrees.assign(n, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    double d = 0.0;
    for (EdgeIndex e = _offsets[u]; e < _offsets[u + 1]; ++e) {
      const VertexId v = _neighbors[e];
      const double w = _edge_weights[e];
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        throw ContractViolation("neighbor id out of range");
      }
      if (static_cast<std::size_t>(v) == u) {
        throw ContractViolation("self-loops must be passed separately");
      }
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw ContractViolation("edge weight must be nonnegative and finite");
      }
      if (e > _offsets[u] && _neighbors[e - 1] >= v) {
        throw ContractViolation("neighbor lists must be sorted and duplicate free");
      }
      d += w;
    }
    _degrees[u] = d + _self_loops[u];
  }

  for (std::size_t u = 0; u < n; ++u) {
    for (EdgeIndex e = _offsets[u]; e < _offsets[u + 1]; ++e) {
      if (edge_weight(_neighbors[e], static_cast<VertexId>(u)) != _edge_weights[e]) {
        throw ContractViolation("adjacency is not symmetric at edge (" + std::to_string(u) + ", " +
                                std::to_string(_neighbors[e]) + ")");
      }
    }
  }
}

double DoublyWeightedGraph::edge_weight(VertexId u, VertexId v) const {
  if (u == v) {
    return _self_loops[u];
  }
  const auto adj = neighbors(u);
  const auto it = std::lower_bound(adj.begin(), adj.end(), v);
  if (it == adj.end() || *it != v) {
    return 0.0;
  }
  return _edge_weights[_offsets[u] + (it - adj.begin())];
}

bool DoublyWeightedGraph::has_self_loops() const noexcept {
  return std::any_of(_self_loops.begin(), _self_loops.end(), [](double w) { return w != 0.0; });
}

DoublyWeightedGraph DoublyWeightedGraph::with_vertex_weights(std::vector<double> vertex_weights) const {
  if (vertex_weights.size() != _vertex_weights.size()) {
    throw ContractViolation("vertex weight vector has wrong length");
  }
  return {_offsets, _neighbors, _edge_weights, std::move(vertex_weights), _self_loops};
}

std::vector<double> DoublyWeightedGraph::external_degrees() const {
  std::vector<double> ext(_vertex_weights.size());
  for (VertexId u = 0; u < n(); ++u) {
    const auto w = incident_weights(u);
    ext[u] = std::accumulate(w.begin(), w.end(), 0.0);
  }
  return ext;
}

double DoublyWeightedGraph::total_vertex_weight() const noexcept {
  return std::accumulate(_vertex_weights.begin(), _vertex_weights.end(), 0.0);
}

double DoublyWeightedGraph::total_volume() const noexcept {
  return std::accumulate(_degrees.begin(), _degrees.end(), 0.0);
}

GraphBuilder::GraphBuilder(VertexId n) : _n(n), _vertex_weights(n, 1.0), _self_loops(n, 0.0) {
  if (n <= 0) {
    throw ContractViolation("graph needs at least one vertex");
  }
}

void GraphBuilder::add_edge(VertexId u, VertexId v, double weight) {
  if (u < 0 || v < 0 || u >= _n || v >= _n) {
    throw ContractViolation("edge endpoint out of range");
  }
  if (u == v) {
    _self_loops[u] += weight;
    return;
  }
  _entries.push_back({std::min(u, v), std::max(u, v), weight});
}

void GraphBuilder::set_vertex_weight(VertexId u, double weight) {
  if (u < 0 || u >= _n) {
    throw ContractViolation("vertex id out of range");
  }
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw ContractViolation("vertex weight must be positive and finite");
  }
  _vertex_weights[u] = weight;
}

DoublyWeightedGraph GraphBuilder::build() const {
  // Parallel edges are summed once per undirected pair, in insertion order,
  // so both stored directions carry the bit-identical total.
  auto entries = _entries;
  std::stable_sort(entries.begin(), entries.end(), [](const Entry &a, const Entry &b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  std::vector<Entry> merged;
  merged.reserve(2 * entries.size());
  for (const auto &e : entries) {
    if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v) {
      merged.back().w += e.w;
    } else {
      merged.push_back(e);
    }
  }
  const std::size_t undirected = merged.size();
  for (std::size_t i = 0; i < undirected; ++i) {
    merged.push_back({merged[i].v, merged[i].u, merged[i].w});
  }
  std::sort(merged.begin(), merged.end(), [](const Entry &a, const Entry &b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });

  std::vector<EdgeIndex> offsets(_n + 1, 0);
  std::vector<VertexId> neighbors;
  std::vector<double> weights;
  neighbors.reserve(merged.size());
  weights.reserve(merged.size());
  for (const auto &e : merged) {
    neighbors.push_back(e.v);
    weights.push_back(e.w);
    ++offsets[e.u + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  return {std::move(offsets), std::move(neighbors), std::move(weights), _vertex_weights, _self_loops};
}

Partition::Partition(BlockId k, std::vector<BlockId> assignment) : _k(k), _assignment(std::move(assignment)) {
  if (k < 1) {
    throw ContractViolation("partition needs k >= 1");
  }
  for (const BlockId b : _assignment) {
    if (b < 0 || b >= k) {
      throw ContractViolation("block id " + std::to_string(b) + " outside [0, " + std::to_string(k) + ")");
    }
  }
}

Partition Partition::single_block(VertexId n) {
  return {1, std::vector<BlockId>(n, 0)};
}

std::vector<VertexId> Partition::block_sizes() const {
  std::vector<VertexId> sizes(_k, 0);
  for (const BlockId b : _assignment) {
    ++sizes[b];
  }
  return sizes;
}

bool Partition::has_empty_block() const {
  const auto sizes = block_sizes();
  return std::find(sizes.begin(), sizes.end(), 0) != sizes.end();
}

std::vector<VertexId> Partition::members(BlockId b) const {
  std::vector<VertexId> out;
  for (VertexId u = 0; u < size(); ++u) {
    if (_assignment[u] == b) {
      out.push_back(u);
    }
  }
  return out;
}

namespace {

void check_vertex_set(const DoublyWeightedGraph &g, std::span<const VertexId> s) {
  for (const VertexId u : s) {
    if (u < 0 || u >= g.n()) {
      throw ContractViolation("vertex id out of range");
    }
  }
}

void check_partition(const DoublyWeightedGraph &g, const Partition &p) {
  if (p.size() != g.n()) {
    throw ContractViolation("partition size does not match graph");
  }
  if (p.has_empty_block()) {
    throw ContractViolation("partition has an empty block");
  }
}

} // namespace

double cut(const DoublyWeightedGraph &g, std::span<const VertexId> a, std::span<const VertexId> b) {
  check_vertex_set(g, a);
  check_vertex_set(g, b);
  // 1 = in a, 2 = in b
  std::vector<std::uint8_t> side(g.n(), 0);
  for (const VertexId u : a) {
    side[u] = 1;
  }
  for (const VertexId u : b) {
    if (side[u] == 1) {
      throw ContractViolation("cut() requires disjoint vertex sets");
    }
    side[u] = 2;
  }
  double total = 0.0;
  for (const VertexId u : a) {
    const auto adj = g.neighbors(u);
    const auto w = g.incident_weights(u);
    for (std::size_t i = 0; i < adj.size(); ++i) {
      if (side[adj[i]] == 2) {
        total += w[i];
      }
    }
  }
  return total;
}

double mvol(const DoublyWeightedGraph &g, std::span<const VertexId> s) {
  check_vertex_set(g, s);
  if (s.empty()) {
    throw ContractViolation("mvol of an empty set");
  }
  double total = 0.0;
  for (const VertexId u : s) {
    total += g.vertex_weight(u);
  }
  return total;
}

double vol(const DoublyWeightedGraph &g, std::span<const VertexId> s) {
  check_vertex_set(g, s);
  if (s.empty()) {
    throw ContractViolation("vol of an empty set");
  }
  double total = 0.0;
  for (const VertexId u : s) {
    total += g.degree(u);
  }
  return total;
}

std::vector<double> block_cuts(const DoublyWeightedGraph &g, const Partition &p) {
  if (p.size() != g.n()) {
    throw ContractViolation("partition size does not match graph");
  }
  std::vector<double> cuts(p.k(), 0.0);
  for (VertexId u = 0; u < g.n(); ++u) {
    const BlockId bu = p.block(u);
    const auto adj = g.neighbors(u);
    const auto w = g.incident_weights(u);
    for (std::size_t i = 0; i < adj.size(); ++i) {
      if (p.block(adj[i]) != bu) {
        cuts[bu] += w[i];
      }
    }
  }
  return cuts;
}

std::vector<double> block_mvols(const DoublyWeightedGraph &g, const Partition &p) {
  if (p.size() != g.n()) {
    throw ContractViolation("partition size does not match graph");
  }
  std::vector<double> out(p.k(), 0.0);
  for (VertexId u = 0; u < g.n(); ++u) {
    out[p.block(u)] += g.vertex_weight(u);
  }
  return out;
}

namespace {

double ratio_cut_sum(const DoublyWeightedGraph &g, const Partition &p, bool use_degrees) {
  check_partition(g, p);
  const auto cuts = block_cuts(g, p);
  std::vector<double> denom(p.k(), 0.0);
  for (VertexId u = 0; u < g.n(); ++u) {
    denom[p.block(u)] += use_degrees ? g.degree(u) : g.vertex_weight(u);
  }
  if (p.k() == 1) {
    return 0.0;
  }
  double total = 0.0;
  for (BlockId b = 0; b < p.k(); ++b) {
    if (!(denom[b] > 0.0)) {
      throw ContractViolation("block " + std::to_string(b) + " has zero volume");
    }
    total += cuts[b] / denom[b];
  }
  return total;
}

} // namespace

double wcut(const DoublyWeightedGraph &g, const Partition &p) {
  return ratio_cut_sum(g, p, false);
}

double ncut(const DoublyWeightedGraph &g, const Partition &p) {
  return ratio_cut_sum(g, p, true);
}

double edge_cut(const DoublyWeightedGraph &g, const Partition &p) {
  const auto cuts = block_cuts(g, p);
  return std::accumulate(cuts.begin(), cuts.end(), 0.0) / 2.0;
}

double imbalance(const DoublyWeightedGraph &g, const Partition &p) {
  const auto mv = block_mvols(g, p);
  const double avg = g.total_vertex_weight() / p.k();
  return *std::max_element(mv.begin(), mv.end()) / avg;
}

std::vector<VertexId> connected_components(const DoublyWeightedGraph &g, VertexId *num_components) {
  std::vector<VertexId> comp(g.n(), -1);
  VertexId next = 0;
  std::queue<VertexId> frontier;
  for (VertexId s = 0; s < g.n(); ++s) {
    if (comp[s] >= 0) {
      continue;
    }
    comp[s] = next;
    frontier.push(s);
    while (!frontier.empty()) {
      const VertexId u = frontier.front();
      frontier.pop();
      const auto adj = g.neighbors(u);
      const auto w = g.incident_weights(u);
      for (std::size_t i = 0; i < adj.size(); ++i) {
        if (w[i] > 0.0 && comp[adj[i]] < 0) {
          comp[adj[i]] = next;
          frontier.push(adj[i]);
        }
      }
    }
    ++next;
  }
  if (num_components != nullptr) {
    *num_components = next;
  }
  return comp;
}

bool is_connected(const DoublyWeightedGraph &g) {
  VertexId count = 0;
  (void)connected_components(g, &count);
  return count <= 1;
}

Subgraph induced_subgraph(const DoublyWeightedGraph &g, std::span<const VertexId> vertices) {
  check_vertex_set(g, vertices);
  std::vector<VertexId> local(g.n(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    local[vertices[i]] = static_cast<VertexId>(i);
  }
  GraphBuilder builder(static_cast<VertexId>(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const VertexId u = vertices[i];
    builder.set_vertex_weight(static_cast<VertexId>(i), g.vertex_weight(u));
    if (g.self_loop(u) != 0.0) {
      builder.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(i), g.self_loop(u));
    }
    const auto adj = g.neighbors(u);
    const auto w = g.incident_weights(u);
    for (std::size_t e = 0; e < adj.size(); ++e) {
      const VertexId lv = local[adj[e]];
      if (lv > static_cast<VertexId>(i)) {
        builder.add_edge(static_cast<VertexId>(i), lv, w[e]);
      }
    }
  }
  return {builder.build(), std::vector<VertexId>(vertices.begin(), vertices.end())};
}

} // namespace wlpart
