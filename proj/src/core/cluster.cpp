#include "wlpart/cluster.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <string>
#include <tuple>

#include "wlpart/errors.hpp"
#include "wlpart/laplacian.hpp"
#include "wlpart/random.hpp"

namespace wlpart {

std::string_view strategy_name(Strategy s) noexcept {
  switch (s) {
  case Strategy::kRandom:
    return "random";
  case Strategy::kRegionGrowing:
    return "region-growing";
  case Strategy::kSpectral:
    return "spectral";
  case Strategy::kWeightedSpectral:
    return "weighted-spectral";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view name) {
  for (const Strategy s :
       {Strategy::kRandom, Strategy::kRegionGrowing, Strategy::kSpectral, Strategy::kWeightedSpectral}) {
    if (strategy_name(s) == name) {
      return s;
    }
  }
  throw ContractViolation("unknown strategy '" + std::string(name) + "'");
}

namespace {

void check_k(const DoublyWeightedGraph &g, BlockId k) {
  if (k < 1 || k > g.n()) {
    throw ContractViolation("need 1 <= k <= number of vertices (k = " + std::to_string(k) +
                            ", n = " + std::to_string(g.n()) + ")");
  }
}

} // namespace

Partition weighted_spectral(const DoublyWeightedGraph &g, BlockId k, std::uint64_t seed,
                            const SpectralOptions &options) {
  check_k(g, k);
  if (k == 1) {
    return Partition::single_block(g.n());
  }
  const WeightedLaplacian laplacian(g);
  const SpectralEmbedding embedding = smallest_k(laplacian, k, mix_seed(seed, 1), options.eigen);

  Eigen::MatrixXd rows = embedding.vectors;
  if (options.normalize_rows) {
    for (Eigen::Index r = 0; r < rows.rows(); ++r) {
      const double norm = rows.row(r).norm();
      if (norm > 0.0) {
        rows.row(r) /= norm;
      }
    }
  }
  const KMeansResult km = kmeans(rows, k, mix_seed(seed, 2), options.kmeans);
  return {k, km.assignment};
}

Partition plain_spectral(const DoublyWeightedGraph &g, BlockId k, std::uint64_t seed,
                         const SpectralOptions &options) {
  check_k(g, k);
  if (k == 1) {
    return Partition::single_block(g.n());
  }
  const auto &degrees = g.degrees();
  if (std::any_of(degrees.begin(), degrees.end(), [](double d) { return !(d > 0.0); })) {
    throw ContractViolation("normalized spectral clustering needs every vertex to have positive degree");
  }
  return weighted_spectral(g.with_vertex_weights(degrees), k, seed, options);
}

namespace {

// Farthest-first seeds by BFS hop distance, starting from `start`.
std::vector<VertexId> farthest_first_seeds(const DoublyWeightedGraph &g, VertexId start, BlockId k) {
  constexpr VertexId kInf = std::numeric_limits<VertexId>::max();
  std::vector<VertexId> min_dist(g.n(), kInf);
  std::vector<VertexId> seeds;
  std::vector<char> is_seed(g.n(), 0);
  VertexId next = start;
  std::vector<VertexId> dist(g.n());
  std::queue<VertexId> frontier;
  while (static_cast<BlockId>(seeds.size()) < k) {
    seeds.push_back(next);
    is_seed[next] = 1;
    std::fill(dist.begin(), dist.end(), kInf);
    dist[next] = 0;
    frontier.push(next);
    while (!frontier.empty()) {
      const VertexId u = frontier.front();
      frontier.pop();
      for (const VertexId v : g.neighbors(u)) {
        if (dist[v] == kInf) {
          dist[v] = dist[u] + 1;
          frontier.push(v);
        }
      }
    }
    VertexId best = -1;
    for (VertexId u = 0; u < g.n(); ++u) {
      min_dist[u] = std::min(min_dist[u], dist[u]);
      if (!is_seed[u] && (best < 0 || min_dist[u] > min_dist[best])) {
        best = u;
      }
    }
    next = best;
  }
  return seeds;
}

std::vector<BlockId> grow_regions(const DoublyWeightedGraph &g, const std::vector<VertexId> &seeds, double cap) {
  const auto k = static_cast<BlockId>(seeds.size());
  std::vector<BlockId> block(g.n(), -1);
  std::vector<double> load(k, 0.0);
  // Per-vertex connection weight to each block it touches.
  std::vector<std::vector<std::pair<BlockId, double>>> conn(g.n());

  // Max-heap on (connection, lower block, lower vertex).
  using Candidate = std::tuple<double, BlockId, VertexId>;
  auto worse = [](const Candidate &a, const Candidate &b) {
    if (std::get<0>(a) != std::get<0>(b)) {
      return std::get<0>(a) < std::get<0>(b);
    }
    if (std::get<1>(a) != std::get<1>(b)) {
      return std::get<1>(a) > std::get<1>(b);
    }
    return std::get<2>(a) > std::get<2>(b);
  };
  std::priority_queue<Candidate, std::vector<Candidate>, decltype(worse)> heap(worse);

  VertexId unassigned = g.n();
  auto assign = [&](VertexId u, BlockId b) {
    block[u] = b;
    load[b] += g.vertex_weight(u);
    --unassigned;
    const auto adj = g.neighbors(u);
    const auto w = g.incident_weights(u);
    for (std::size_t i = 0; i < adj.size(); ++i) {
      const VertexId v = adj[i];
      if (block[v] >= 0 || w[i] <= 0.0) {
        continue;
      }
      auto &entries = conn[v];
      auto it = std::find_if(entries.begin(), entries.end(), [b](const auto &e) { return e.first == b; });
      if (it == entries.end()) {
        entries.emplace_back(b, w[i]);
        heap.emplace(w[i], b, v);
      } else {
        it->second += w[i];
        heap.emplace(it->second, b, v);
      }
    }
  };

  for (BlockId b = 0; b < k; ++b) {
    assign(seeds[b], b);
  }

  while (unassigned > 0) {
    bool placed = false;
    while (!heap.empty()) {
      const auto [c, b, v] = heap.top();
      heap.pop();
      if (block[v] >= 0) {
        continue;
      }
      const auto &entries = conn[v];
      const auto it = std::find_if(entries.begin(), entries.end(), [b = b](const auto &e) { return e.first == b; });
      if (it->second != c) {
        continue; // superseded by a heavier entry
      }
      if (load[b] + g.vertex_weight(v) > cap) {
        continue; // loads only grow, so this pair stays infeasible
      }
      assign(v, b);
      placed = true;
      break;
    }
    if (placed) {
      continue;
    }

    // No feasible frontier move. Place one vertex, preferring vertices that
    // touch an assigned block, into the lightest block that can hold it.
    VertexId pick = -1;
    for (VertexId u = 0; u < g.n() && pick < 0; ++u) {
      if (block[u] < 0 && !conn[u].empty()) {
        pick = u;
      }
    }
    for (VertexId u = 0; u < g.n() && pick < 0; ++u) {
      if (block[u] < 0) {
        pick = u;
      }
    }
    BlockId target = -1;
    for (BlockId b = 0; b < k; ++b) {
      const bool fits = load[b] + g.vertex_weight(pick) <= cap;
      if (fits && (target < 0 || load[b] < load[target])) {
        target = b;
      }
    }
    if (target < 0) {
      target = static_cast<BlockId>(std::min_element(load.begin(), load.end()) - load.begin());
    }
    assign(pick, target);
  }
  return block;
}

} // namespace

Partition region_growing(const DoublyWeightedGraph &g, BlockId k, std::uint64_t seed,
                         const RegionGrowingOptions &options) {
  check_k(g, k);
  if (k == 1) {
    return Partition::single_block(g.n());
  }
  const double average = g.total_vertex_weight() / k;
  const double cap = (1.0 + options.epsilon) * average;

  std::vector<VertexId> starts(g.n());
  std::iota(starts.begin(), starts.end(), 0);
  Rng rng(seed);
  rng.shuffle(std::span<VertexId>(starts));
  starts.resize(std::min<std::size_t>(starts.size(), static_cast<std::size_t>(std::max(1, options.trials))));

  Partition best;
  double best_overload = std::numeric_limits<double>::infinity();
  double best_wcut = std::numeric_limits<double>::infinity();
  for (const VertexId start : starts) {
    Partition candidate(k, grow_regions(g, farthest_first_seeds(g, start, k), cap));
    const double overload = std::max(0.0, imbalance(g, candidate) - (1.0 + options.epsilon));
    const double value = wcut(g, candidate);
    if (overload < best_overload || (overload == best_overload && value < best_wcut)) {
      best = std::move(candidate);
      best_overload = overload;
      best_wcut = value;
    }
  }
  return best;
}

Partition random_clustering(const DoublyWeightedGraph &g, BlockId k, std::uint64_t seed) {
  check_k(g, k);
  Rng rng(seed);
  std::vector<BlockId> labels(g.n());
  std::vector<VertexId> sizes(k, 0);
  for (auto &label : labels) {
    label = static_cast<BlockId>(rng.below(static_cast<std::uint64_t>(k)));
    ++sizes[label];
  }
  for (BlockId b = 0; b < k; ++b) {
    while (sizes[b] == 0) {
      const auto v = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(g.n())));
      if (sizes[labels[v]] > 1) {
        --sizes[labels[v]];
        labels[v] = b;
        ++sizes[b];
      }
    }
  }
  return {k, std::move(labels)};
}

Partition initial_clustering(Strategy s, const DoublyWeightedGraph &g, BlockId k, std::uint64_t seed) {
  switch (s) {
  case Strategy::kRandom:
    return random_clustering(g, k, seed);
  case Strategy::kRegionGrowing:
    return region_growing(g, k, seed);
  case Strategy::kSpectral:
    return plain_spectral(g, k, seed);
  case Strategy::kWeightedSpectral:
    return weighted_spectral(g, k, seed);
  }
  throw ContractViolation("unknown strategy");
}

} // namespace wlpart
