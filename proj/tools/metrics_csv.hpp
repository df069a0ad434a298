#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wlpart::csv {

inline constexpr std::string_view kSchemaLine = "schema=1";
inline constexpr std::string_view kHeader = "graph,strategy,k,seed,ncut,wcut_coarse,edge_cut,runtime_ms,imbalance";

struct BenchmarkRecord {
  std::string graph;
  std::string strategy;
  std::int32_t k = 0;
  std::uint64_t seed = 0;
  double ncut = 0.0;
  double wcut_coarse = 0.0;
  double edge_cut = 0.0;
  double runtime_ms = 0.0;
  double imbalance = 1.0;

  friend bool operator==(const BenchmarkRecord &, const BenchmarkRecord &) = default;
};

class CsvError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Shortest decimal string that parses back to the same double.
[[nodiscard]] std::string format_double(double x);

// Quotes a field when it contains a comma, quote or line break.
[[nodiscard]] std::string escape_field(std::string_view field);

void write_preamble(std::ostream &out);
void write_record(std::ostream &out, const BenchmarkRecord &r);

[[nodiscard]] std::vector<std::string> split_line(std::string_view line);
[[nodiscard]] BenchmarkRecord parse_record(std::string_view line);

// Reads a whole metrics file: schema line, header, then records.
[[nodiscard]] std::vector<BenchmarkRecord> read_records(std::istream &in);

} // namespace wlpart::csv
