// Command-line front end. Links only the C interface of libwlpart.
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include "metrics_csv.hpp"
#include "wlpart/wlpart.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

int exit_code(wlp_status status) {
  switch (status) {
  case WLP_OK:
    return kExitOk;
  case WLP_PARSE_ERROR:
    return kExitParse;
  case WLP_SOLVER_ERROR:
  case WLP_DISCONNECTED:
  case WLP_INTERNAL:
    return kExitSolver;
  case WLP_IO_ERROR:
    return kExitIo;
  case WLP_INVALID_ARGUMENT:
    return kExitUsage;
  }
  return kExitSolver;
}

int report(const wlp_error &error, const std::string &context) {
  std::cerr << "wlpart: " << context << ": " << error.message << '\n';
  return exit_code(error.status);
}

struct GraphDeleter {
  void operator()(wlp_graph *g) const {
    wlp_graph_free(g);
  }
};
struct PartitionDeleter {
  void operator()(wlp_partition *p) const {
    wlp_partition_free(p);
  }
};
using GraphHandle = std::unique_ptr<wlp_graph, GraphDeleter>;
using PartitionHandle = std::unique_ptr<wlp_partition, PartitionDeleter>;

std::string graph_name(const std::string &path) {
  const auto slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = base.find_last_of('.');
  if (dot != std::string::npos && dot > 0) {
    base.resize(dot);
  }
  return base;
}

struct CommonOptions {
  std::string strategy = "weighted-spectral";
  int32_t threshold = 0;
  double epsilon = 0.1;
  int32_t max_passes = 16;
  bool allow_disconnected = false;
};

void add_common(CLI::App *cmd, CommonOptions &o) {
  cmd->add_option("--threshold", o.threshold, "Stop coarsening at this many vertices (0: max(30k, 200))")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--epsilon", o.epsilon, "Refinement balance tolerance")->check(CLI::NonNegativeNumber);
  cmd->add_option("--max-passes", o.max_passes, "Refinement passes per level")->check(CLI::NonNegativeNumber);
  cmd->add_flag("--allow-disconnected", o.allow_disconnected,
                "Partition the largest component and attach the others whole");
}

wlp_config make_config(const CommonOptions &o, wlp_strategy strategy, int32_t k, uint64_t seed) {
  wlp_config config;
  wlp_config_init(&config);
  config.k = k;
  config.strategy = strategy;
  config.seed = seed;
  config.threshold = o.threshold;
  config.epsilon = o.epsilon;
  config.max_passes = o.max_passes;
  config.allow_disconnected = o.allow_disconnected ? 1 : 0;
  return config;
}

wlpart::csv::BenchmarkRecord make_record(const std::string &graph, wlp_strategy strategy, int32_t k, uint64_t seed,
                                         const wlp_metrics &m) {
  return {graph, wlp_strategy_name(strategy), k, seed, m.ncut, m.wcut_coarse, m.edge_cut, m.runtime_ms, m.imbalance};
}

// ---------------------------------------------------------------- partition

struct PartitionArgs {
  std::string graph;
  int32_t k = 2;
  uint64_t seed = 1;
  std::string out;
  std::string metrics;
  CommonOptions common;
};

int cmd_partition(const PartitionArgs &args) {
  wlp_strategy strategy{};
  if (wlp_strategy_from_name(args.common.strategy.c_str(), &strategy) != 0) {
    std::cerr << "wlpart: unknown strategy '" << args.common.strategy << "'\n";
    return kExitUsage;
  }
  wlp_error error{};
  GraphHandle graph(wlp_graph_read_metis(args.graph.c_str(), &error));
  if (!graph) {
    return report(error, args.graph);
  }
  const wlp_config config = make_config(args.common, strategy, args.k, args.seed);
  wlp_metrics metrics{};
  PartitionHandle partition(wlp_partition_graph(graph.get(), &config, &metrics, &error));
  if (!partition) {
    return report(error, "partitioning failed");
  }

  const std::string out = args.out.empty() ? args.graph + ".part." + std::to_string(args.k) : args.out;
  if (wlp_partition_write(partition.get(), out.c_str(), &error) != WLP_OK) {
    return report(error, out);
  }

  const auto record = make_record(graph_name(args.graph), strategy, args.k, args.seed, metrics);
  if (args.metrics.empty()) {
    wlpart::csv::write_preamble(std::cout);
    wlpart::csv::write_record(std::cout, record);
  } else {
    const std::string tmp = args.metrics + ".tmp";
    {
      std::ofstream file(tmp, std::ios::trunc);
      wlpart::csv::write_preamble(file);
      wlpart::csv::write_record(file, record);
      if (!file.flush()) {
        std::remove(tmp.c_str());
        std::cerr << "wlpart: cannot write " << args.metrics << '\n';
        return kExitIo;
      }
    }
    if (std::rename(tmp.c_str(), args.metrics.c_str()) != 0) {
      std::remove(tmp.c_str());
      std::cerr << "wlpart: cannot write " << args.metrics << '\n';
      return kExitIo;
    }
  }
  return kExitOk;
}

// -------------------------------------------------------------------- bench

struct BenchArgs {
  std::vector<std::string> graphs;
  std::vector<std::string> strategies{"random", "region-growing", "spectral", "weighted-spectral"};
  std::vector<int32_t> ks{4};
  int32_t repeats = 10;
  int32_t workers = 0;
  std::string records = "bench_records.csv";
  std::string summary = "bench_summary.csv";
  std::string plot;
  std::string failures = "bench_failures.csv";
  CommonOptions common;
};

struct Cell {
  std::size_t graph;
  wlp_strategy strategy;
  int32_t k;
  uint64_t seed;
};

struct CellOutcome {
  bool ok = false;
  wlp_metrics metrics{};
  std::string error;
};

struct Stats {
  std::vector<double> ncut;
  std::vector<double> edge_cut;
  std::vector<double> imbalance;
  std::vector<double> runtime;
  int failures = 0;
};

double mean(const std::vector<double> &v) {
  if (v.empty()) {
    return std::nan("");
  }
  double s = 0.0;
  for (const double x : v) {
    s += x;
  }
  return s / static_cast<double>(v.size());
}

double stddev(const std::vector<double> &v) {
  if (v.size() < 2) {
    return 0.0;
  }
  const double mu = mean(v);
  double s = 0.0;
  for (const double x : v) {
    s += (x - mu) * (x - mu);
  }
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

bool write_atomically(const std::string &path, const std::string &content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream file(tmp, std::ios::trunc);
    file << content;
    if (!file.flush()) {
      std::remove(tmp.c_str());
      return false;
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    return false;
  }
  return true;
}

int cmd_bench(const BenchArgs &args) {
  std::vector<wlp_strategy> strategies;
  for (const auto &name : args.strategies) {
    wlp_strategy s{};
    if (wlp_strategy_from_name(name.c_str(), &s) != 0) {
      std::cerr << "wlpart: unknown strategy '" << name << "'\n";
      return kExitUsage;
    }
    strategies.push_back(s);
  }

  std::vector<GraphHandle> graphs;
  std::vector<std::string> names;
  for (const auto &path : args.graphs) {
    wlp_error error{};
    GraphHandle g(wlp_graph_read_metis(path.c_str(), &error));
    if (!g) {
      return report(error, path);
    }
    graphs.push_back(std::move(g));
    names.push_back(graph_name(path));
  }

  std::vector<Cell> cells;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    for (const int32_t k : args.ks) {
      for (const wlp_strategy s : strategies) {
        for (int32_t r = 1; r <= args.repeats; ++r) {
          cells.push_back({gi, s, k, static_cast<uint64_t>(r)});
        }
      }
    }
  }

  std::vector<CellOutcome> outcomes(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const Cell &c = cells[i];
      const wlp_config config = make_config(args.common, c.strategy, c.k, c.seed);
      wlp_error error{};
      PartitionHandle p(wlp_partition_graph(graphs[c.graph].get(), &config, &outcomes[i].metrics, &error));
      outcomes[i].ok = static_cast<bool>(p);
      if (!p) {
        outcomes[i].error = error.message;
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const auto count = static_cast<std::size_t>(args.workers > 0 ? args.workers : static_cast<int32_t>(hw));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(count, cells.size()); ++t) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto &t : pool) {
    t.join();
  }

  // All output is produced here, after the workers are done.
  std::ostringstream records;
  std::ostringstream failures;
  wlpart::csv::write_preamble(records);
  failures << "graph,strategy,k,seed,error\n";
  std::map<std::tuple<std::size_t, int32_t, int>, Stats> stats;
  std::size_t failed = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell &c = cells[i];
    Stats &s = stats[{c.graph, c.k, static_cast<int>(c.strategy)}];
    if (!outcomes[i].ok) {
      ++failed;
      ++s.failures;
      failures << wlpart::csv::escape_field(names[c.graph]) << ',' << wlp_strategy_name(c.strategy) << ',' << c.k
               << ',' << c.seed << ',' << wlpart::csv::escape_field(outcomes[i].error) << '\n';
      std::cerr << "wlpart: " << names[c.graph] << ' ' << wlp_strategy_name(c.strategy) << " k=" << c.k
                << " seed=" << c.seed << ": " << outcomes[i].error << '\n';
      continue;
    }
    const wlp_metrics &m = outcomes[i].metrics;
    wlpart::csv::write_record(records, make_record(names[c.graph], c.strategy, c.k, c.seed, m));
    s.ncut.push_back(m.ncut);
    s.edge_cut.push_back(m.edge_cut);
    s.imbalance.push_back(m.imbalance);
    s.runtime.push_back(m.runtime_ms);
  }

  std::ostringstream summary;
  std::ostringstream plot;
  summary << "graph,strategy,k,runs,failures,mean_ncut,std_ncut,mean_edge_cut,mean_imbalance,mean_runtime_ms\n";
  plot << "graph,k,strategy,mean_ncut,std_ncut\n";
  using wlpart::csv::format_double;
  for (const auto &[key, s] : stats) {
    const auto &[gi, k, strategy] = key;
    const char *sname = wlp_strategy_name(static_cast<wlp_strategy>(strategy));
    summary << wlpart::csv::escape_field(names[gi]) << ',' << sname << ',' << k << ',' << s.ncut.size() << ','
            << s.failures << ',' << format_double(mean(s.ncut)) << ',' << format_double(stddev(s.ncut)) << ','
            << format_double(mean(s.edge_cut)) << ',' << format_double(mean(s.imbalance)) << ','
            << format_double(mean(s.runtime)) << '\n';
    plot << wlpart::csv::escape_field(names[gi]) << ',' << k << ',' << sname << ',' << format_double(mean(s.ncut))
         << ',' << format_double(stddev(s.ncut)) << '\n';
  }

  bool io_ok = write_atomically(args.records, records.str()) && write_atomically(args.summary, summary.str());
  if (!args.plot.empty()) {
    io_ok = io_ok && write_atomically(args.plot, plot.str());
  }
  if (failed > 0) {
    io_ok = io_ok && write_atomically(args.failures, failures.str());
  }
  if (!io_ok) {
    std::cerr << "wlpart: cannot write benchmark output\n";
    return kExitIo;
  }

  // Mean ncut table: one row per (graph, k), one column per strategy.
  std::cout << std::left << std::setw(16) << "graph" << std::setw(6) << "k";
  for (const wlp_strategy s : strategies) {
    std::cout << std::setw(20) << wlp_strategy_name(s);
  }
  std::cout << '\n';
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    for (const int32_t k : args.ks) {
      std::cout << std::setw(16) << names[gi] << std::setw(6) << k;
      for (const wlp_strategy s : strategies) {
        const Stats &st = stats[{gi, k, static_cast<int>(s)}];
        std::ostringstream cell;
        if (st.ncut.empty()) {
          cell << "failed";
        } else {
          cell << std::fixed << std::setprecision(3) << mean(st.ncut);
        }
        std::cout << std::setw(20) << cell.str();
      }
      std::cout << '\n';
    }
  }
  if (failed > 0) {
    std::cerr << "wlpart: " << failed << " of " << cells.size() << " runs failed; see " << args.failures << '\n';
  }
  return failed == cells.size() && !cells.empty() ? kExitSolver : kExitOk;
}

// -------------------------------------------------------------- convert-mtx

int cmd_convert(const std::string &in, const std::string &out) {
  wlp_error error{};
  if (wlp_convert_mtx(in.c_str(), out.c_str(), &error) != WLP_OK) {
    return report(error, in);
  }
  return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Multilevel graph partitioning with weighted spectral initial clustering"};
  app.set_version_flag("--version", std::string(wlp_version()));
  app.require_subcommand(1);
  const std::vector<std::string> strategy_names{"random", "region-growing", "spectral", "weighted-spectral"};

  PartitionArgs part;
  auto *partition = app.add_subcommand("partition", "Partition one graph");
  partition->add_option("graph", part.graph, "METIS graph file")->required();
  partition->add_option("--k", part.k, "Number of blocks")->check(CLI::PositiveNumber);
  partition->add_option("--strategy", part.common.strategy, "Initial clustering")
      ->check(CLI::IsMember(strategy_names));
  partition->add_option("--seed", part.seed, "Random seed");
  partition->add_option("--out", part.out, "Partition file (default <graph>.part.<k>)");
  partition->add_option("--metrics", part.metrics, "Metrics CSV (default stdout)");
  add_common(partition, part.common);

  BenchArgs bench;
  auto *bench_cmd = app.add_subcommand("bench", "Run strategies x k x seeds and summarize mean ncut");
  bench_cmd->add_option("graphs", bench.graphs, "METIS graph files")->required();
  bench_cmd->add_option("--strategies", bench.strategies, "Strategies to compare")
      ->delimiter(',')
      ->check(CLI::IsMember(strategy_names));
  bench_cmd->add_option("--k", bench.ks, "Block counts")->delimiter(',')->check(CLI::PositiveNumber);
  bench_cmd->add_option("--repeats", bench.repeats, "Seeds 1..repeats per cell")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--workers", bench.workers, "Worker threads (0: hardware concurrency)")
      ->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--records", bench.records, "Per-run CSV");
  bench_cmd->add_option("--summary", bench.summary, "Per-cell summary CSV");
  bench_cmd->add_option("--plot", bench.plot, "Plot-ready aggregate CSV");
  bench_cmd->add_option("--failures", bench.failures, "Failed runs CSV, written only when a run fails");
  add_common(bench_cmd, bench.common);

  std::string mtx_in;
  std::string metis_out;
  auto *convert = app.add_subcommand("convert-mtx", "Convert a Matrix Market pattern to a METIS graph");
  convert->add_option("input", mtx_in, "Matrix Market file")->required();
  convert->add_option("output", metis_out, "METIS graph file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*partition) {
    return cmd_partition(part);
  }
  if (*bench_cmd) {
    return cmd_bench(bench);
  }
  return cmd_convert(mtx_in, metis_out);
}
