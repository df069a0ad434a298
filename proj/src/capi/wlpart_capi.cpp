#include "wlpart/wlpart.h"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <new>
#include <string>
#include <system_error>

#include "wlpart/errors.hpp"
#include "wlpart/metis_io.hpp"
#include "wlpart/pipeline.hpp"

struct wlp_graph {
  wlpart::DoublyWeightedGraph graph;
};

struct wlp_partition {
  wlpart::Partition partition;
};

namespace {

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

void set_error(wlp_error *error, wlp_status status, const char *message) {
  if (error == nullptr) {
    return;
  }
  error->status = status;
  std::snprintf(error->message, WLP_MESSAGE_SIZE, "%s", message);
}

void clear_error(wlp_error *error) {
  set_error(error, WLP_OK, "");
}

// Runs fn, translating exceptions into a status. Order matters: the more
// specific exception types come first.
template <typename Fn>
wlp_status guarded(wlp_error *error, Fn &&fn) {
  try {
    fn();
    clear_error(error);
    return WLP_OK;
  } catch (const wlpart::ParseError &e) {
    set_error(error, WLP_PARSE_ERROR, e.what());
    return WLP_PARSE_ERROR;
  } catch (const wlpart::DisconnectedGraphError &e) {
    set_error(error, WLP_DISCONNECTED, e.what());
    return WLP_DISCONNECTED;
  } catch (const wlpart::ContractViolation &e) {
    set_error(error, WLP_INVALID_ARGUMENT, e.what());
    return WLP_INVALID_ARGUMENT;
  } catch (const wlpart::SolverError &e) {
    set_error(error, WLP_SOLVER_ERROR, e.what());
    return WLP_SOLVER_ERROR;
  } catch (const IoError &e) {
    set_error(error, WLP_IO_ERROR, e.what());
    return WLP_IO_ERROR;
  } catch (const std::bad_alloc &) {
    set_error(error, WLP_INTERNAL, "out of memory");
    return WLP_INTERNAL;
  } catch (const std::exception &e) {
    set_error(error, WLP_INTERNAL, e.what());
    return WLP_INTERNAL;
  }
}

wlpart::Strategy to_strategy(wlp_strategy s) {
  switch (s) {
  case WLP_RANDOM:
    return wlpart::Strategy::kRandom;
  case WLP_REGION_GROWING:
    return wlpart::Strategy::kRegionGrowing;
  case WLP_SPECTRAL:
    return wlpart::Strategy::kSpectral;
  case WLP_WEIGHTED_SPECTRAL:
    return wlpart::Strategy::kWeightedSpectral;
  }
  throw wlpart::ContractViolation("unknown strategy value " + std::to_string(static_cast<int>(s)));
}

template <typename T>
const T &require(const T *p, const char *what) {
  if (p == nullptr) {
    throw wlpart::ContractViolation(std::string(what) + " is NULL");
  }
  return *p;
}

} // namespace

extern "C" {

void wlp_config_init(wlp_config *config) {
  if (config == nullptr) {
    return;
  }
  const wlpart::RunConfig defaults;
  config->k = defaults.k;
  config->strategy = WLP_WEIGHTED_SPECTRAL;
  config->seed = defaults.seed;
  config->threshold = defaults.threshold;
  config->epsilon = defaults.epsilon;
  config->max_passes = defaults.max_passes;
  config->allow_disconnected = 0;
}

wlp_graph *wlp_graph_read_metis(const char *path, wlp_error *error) {
  wlp_graph *result = nullptr;
  guarded(error, [&] {
    const char *p = &require(path, "path");
    std::ifstream in(p);
    if (!in) {
      throw IoError(std::string("cannot open ") + p);
    }
    result = new wlp_graph{wlpart::io::parse_metis(in)};
  });
  return result;
}

wlp_graph *wlp_graph_parse_metis(const char *text, size_t length, wlp_error *error) {
  wlp_graph *result = nullptr;
  guarded(error, [&] {
    const char *t = &require(text, "text");
    result = new wlp_graph{wlpart::io::parse_metis_string(std::string_view(t, length))};
  });
  return result;
}

void wlp_graph_free(wlp_graph *graph) {
  delete graph;
}

int32_t wlp_graph_num_vertices(const wlp_graph *graph) {
  return graph == nullptr ? 0 : graph->graph.n();
}

int64_t wlp_graph_num_edges(const wlp_graph *graph) {
  return graph == nullptr ? 0 : graph->graph.m();
}

int wlp_graph_is_connected(const wlp_graph *graph) {
  return graph != nullptr && wlpart::is_connected(graph->graph) ? 1 : 0;
}

wlp_status wlp_convert_mtx(const char *mtx_path, const char *metis_path, wlp_error *error) {
  return guarded(error, [&] {
    const char *src = &require(mtx_path, "mtx_path");
    const char *dst = &require(metis_path, "metis_path");
    std::ifstream in(src);
    if (!in) {
      throw IoError(std::string("cannot open ") + src);
    }
    const auto g = wlpart::io::parse_matrix_market_pattern(in);
    std::ofstream out(dst);
    if (!out) {
      throw IoError(std::string("cannot write ") + dst);
    }
    wlpart::io::emit_metis(g, out);
    if (!out.flush()) {
      throw IoError(std::string("write failed for ") + dst);
    }
  });
}

wlp_partition *wlp_partition_graph(const wlp_graph *graph, const wlp_config *config, wlp_metrics *metrics,
                                   wlp_error *error) {
  wlp_partition *result = nullptr;
  guarded(error, [&] {
    const auto &g = require(graph, "graph").graph;
    const auto &c = require(config, "config");
    wlpart::RunConfig run;
    run.k = c.k;
    run.strategy = to_strategy(c.strategy);
    run.seed = c.seed;
    run.threshold = c.threshold;
    run.epsilon = c.epsilon;
    run.max_passes = c.max_passes;
    run.allow_disconnected = c.allow_disconnected != 0;
    if (run.threshold < 0 || !(run.epsilon >= 0.0) || run.max_passes < 0) {
      throw wlpart::ContractViolation("threshold, epsilon and max_passes must be non-negative");
    }
    wlpart::RunResult r = wlpart::run_partition(g, run);
    if (metrics != nullptr) {
      metrics->ncut = r.metrics.ncut;
      metrics->wcut_coarse = r.metrics.coarse_wcut;
      metrics->edge_cut = r.metrics.edge_cut;
      metrics->imbalance = r.metrics.imbalance;
      metrics->runtime_ms = r.metrics.runtime_ms;
      metrics->levels = static_cast<int32_t>(r.metrics.levels);
      metrics->coarse_vertices = r.metrics.coarse_vertices;
    }
    result = new wlp_partition{std::move(r.partition)};
  });
  return result;
}

wlp_partition *wlp_partition_from_assignment(int32_t k, const int32_t *blocks, int32_t n, wlp_error *error) {
  wlp_partition *result = nullptr;
  guarded(error, [&] {
    if (n < 0 || (n > 0 && blocks == nullptr)) {
      throw wlpart::ContractViolation("invalid assignment array");
    }
    result = new wlp_partition{wlpart::Partition(k, std::vector<wlpart::BlockId>(blocks, blocks + n))};
  });
  return result;
}

wlp_partition *wlp_partition_copy(const wlp_partition *partition) {
  if (partition == nullptr) {
    return nullptr;
  }
  try {
    return new wlp_partition{partition->partition};
  } catch (...) {
    return nullptr;
  }
}

void wlp_partition_free(wlp_partition *partition) {
  delete partition;
}

int32_t wlp_partition_size(const wlp_partition *partition) {
  return partition == nullptr ? 0 : partition->partition.size();
}

int32_t wlp_partition_num_blocks(const wlp_partition *partition) {
  return partition == nullptr ? 0 : partition->partition.k();
}

int32_t wlp_partition_block(const wlp_partition *partition, int32_t vertex) {
  if (partition == nullptr || vertex < 0 || vertex >= partition->partition.size()) {
    return -1;
  }
  return partition->partition.block(vertex);
}

int32_t wlp_partition_get_blocks(const wlp_partition *partition, int32_t *out, int32_t capacity) {
  if (partition == nullptr) {
    return 0;
  }
  const auto &a = partition->partition.assignment();
  const auto count = std::min<std::size_t>(a.size(), capacity < 0 ? 0 : static_cast<std::size_t>(capacity));
  if (out != nullptr && count > 0) {
    std::memcpy(out, a.data(), count * sizeof(int32_t));
  }
  return partition->partition.size();
}

wlp_status wlp_partition_write(const wlp_partition *partition, const char *path, wlp_error *error) {
  return guarded(error, [&] {
    const auto &p = require(partition, "partition").partition;
    const std::filesystem::path target(&require(path, "path"));
    std::filesystem::path temp = target;
    temp += ".tmp";
    {
      std::ofstream out(temp, std::ios::trunc);
      if (!out) {
        throw IoError("cannot write " + temp.string());
      }
      wlpart::io::write_partition(p, out);
      if (!out.flush()) {
        std::error_code ignored;
        std::filesystem::remove(temp, ignored);
        throw IoError("write failed for " + temp.string());
      }
    }
    std::error_code ec;
    std::filesystem::rename(temp, target, ec);
    if (ec) {
      std::error_code ignored;
      std::filesystem::remove(temp, ignored);
      throw IoError("cannot rename to " + target.string() + ": " + ec.message());
    }
  });
}

wlp_status wlp_evaluate(const wlp_graph *graph, const wlp_partition *partition, wlp_metrics *metrics,
                        wlp_error *error) {
  return guarded(error, [&] {
    const auto &g = require(graph, "graph").graph;
    const auto &p = require(partition, "partition").partition;
    if (metrics == nullptr) {
      throw wlpart::ContractViolation("metrics is NULL");
    }
    wlp_metrics &m = *metrics;
    m = wlp_metrics{};
    m.ncut = wlpart::ncut(g, p);
    m.edge_cut = wlpart::edge_cut(g, p);
    m.imbalance = wlpart::imbalance(g, p);
  });
}

const char *wlp_strategy_name(wlp_strategy strategy) {
  switch (strategy) {
  case WLP_RANDOM:
    return "random";
  case WLP_REGION_GROWING:
    return "region-growing";
  case WLP_SPECTRAL:
    return "spectral";
  case WLP_WEIGHTED_SPECTRAL:
    return "weighted-spectral";
  }
  return "unknown";
}

int wlp_strategy_from_name(const char *name, wlp_strategy *out) {
  if (name == nullptr || out == nullptr) {
    return -1;
  }
  for (const wlp_strategy s : {WLP_RANDOM, WLP_REGION_GROWING, WLP_SPECTRAL, WLP_WEIGHTED_SPECTRAL}) {
    if (std::strcmp(name, wlp_strategy_name(s)) == 0) {
      *out = s;
      return 0;
    }
  }
  return -1;
}

const char *wlp_status_name(wlp_status status) {
  switch (status) {
  case WLP_OK:
    return "ok";
  case WLP_INVALID_ARGUMENT:
    return "invalid argument";
  case WLP_PARSE_ERROR:
    return "parse error";
  case WLP_SOLVER_ERROR:
    return "solver error";
  case WLP_IO_ERROR:
    return "i/o error";
  case WLP_DISCONNECTED:
    return "disconnected graph";
  case WLP_INTERNAL:
    return "internal error";
  }
  return "unknown";
}

const char *wlp_version(void) {
  return "0.1.0";
}

} // extern "C"
