/* C interface to the wlpart multilevel partitioner. */
#ifndef WLPART_WLPART_H
#define WLPART_WLPART_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define WLP_API __declspec(dllexport)
#else
#define WLP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  WLP_OK = 0,
  WLP_INVALID_ARGUMENT = 1,
  WLP_PARSE_ERROR = 2,
  WLP_SOLVER_ERROR = 3,
  WLP_IO_ERROR = 4,
  WLP_DISCONNECTED = 5,
  WLP_INTERNAL = 6
} wlp_status;

typedef enum {
  WLP_RANDOM = 0,
  WLP_REGION_GROWING = 1,
  WLP_SPECTRAL = 2,
  WLP_WEIGHTED_SPECTRAL = 3
} wlp_strategy;

#define WLP_MESSAGE_SIZE 512

typedef struct {
  wlp_status status;
  char message[WLP_MESSAGE_SIZE];
} wlp_error;

typedef struct wlp_graph wlp_graph;
typedef struct wlp_partition wlp_partition;

typedef struct {
  int32_t k;
  wlp_strategy strategy;
  uint64_t seed;
  int32_t threshold; /* 0: max(30k, 200) */
  double epsilon;
  int32_t max_passes;
  int32_t allow_disconnected;
} wlp_config;

typedef struct {
  double ncut;
  double wcut_coarse;
  double edge_cut;
  double imbalance;
  double runtime_ms;
  int32_t levels;
  int32_t coarse_vertices;
} wlp_metrics;

/* Fills defaults: k = 2, weighted spectral, seed 1, epsilon 0.1. */
WLP_API void wlp_config_init(wlp_config *config);

/* Graphs. Every function that can fail takes an optional error out-parameter
   and returns NULL or a non-OK status on failure. */
WLP_API wlp_graph *wlp_graph_read_metis(const char *path, wlp_error *error);
WLP_API wlp_graph *wlp_graph_parse_metis(const char *text, size_t length, wlp_error *error);
WLP_API void wlp_graph_free(wlp_graph *graph);
WLP_API int32_t wlp_graph_num_vertices(const wlp_graph *graph);
WLP_API int64_t wlp_graph_num_edges(const wlp_graph *graph);
WLP_API int wlp_graph_is_connected(const wlp_graph *graph);

/* Converts a Matrix Market coordinate file to an unweighted METIS graph:
   diagonal dropped, pattern symmetrized. */
WLP_API wlp_status wlp_convert_mtx(const char *mtx_path, const char *metis_path, wlp_error *error);

/* Runs coarsening, initial clustering and refinement. metrics may be NULL. */
WLP_API wlp_partition *wlp_partition_graph(const wlp_graph *graph, const wlp_config *config, wlp_metrics *metrics,
                                           wlp_error *error);
WLP_API wlp_partition *wlp_partition_from_assignment(int32_t k, const int32_t *blocks, int32_t n,
                                                     wlp_error *error);
WLP_API wlp_partition *wlp_partition_copy(const wlp_partition *partition);
WLP_API void wlp_partition_free(wlp_partition *partition);
WLP_API int32_t wlp_partition_size(const wlp_partition *partition);
WLP_API int32_t wlp_partition_num_blocks(const wlp_partition *partition);
WLP_API int32_t wlp_partition_block(const wlp_partition *partition, int32_t vertex);
/* Copies min(capacity, size) block ids into out; returns the size. */
WLP_API int32_t wlp_partition_get_blocks(const wlp_partition *partition, int32_t *out, int32_t capacity);

/* One block id per line. Written to a temporary file and renamed, so a failed
   write never leaves a partial file at path. */
WLP_API wlp_status wlp_partition_write(const wlp_partition *partition, const char *path, wlp_error *error);

/* Fills ncut, edge_cut and imbalance of an existing partition. */
WLP_API wlp_status wlp_evaluate(const wlp_graph *graph, const wlp_partition *partition, wlp_metrics *metrics,
                                wlp_error *error);

WLP_API const char *wlp_strategy_name(wlp_strategy strategy);
/* Returns 0 and sets *out on success, -1 for an unknown name. */
WLP_API int wlp_strategy_from_name(const char *name, wlp_strategy *out);
WLP_API const char *wlp_status_name(wlp_status status);
WLP_API const char *wlp_version(void);

#ifdef __cplusplus
}
#endif

#endif
