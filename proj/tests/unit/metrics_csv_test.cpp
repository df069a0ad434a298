#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "metrics_csv.hpp"
#include "wlpart/random.hpp"

namespace wlpart::csv {
namespace {

TEST(MetricsCsvTest, PreambleHasSchemaAndHeader) {
  std::ostringstream out;
  write_preamble(out);
  EXPECT_EQ(out.str(), "schema=1\ngraph,strategy,k,seed,ncut,wcut_coarse,edge_cut,runtime_ms,imbalance\n");
}

TEST(MetricsCsvTest, RandomRecordsRoundTrip) {
  Rng rng(31);
  std::vector<BenchmarkRecord> records;
  const char *names[] = {"add32", "with,comma", "quote\"d", "plain"};
  for (int i = 0; i < 200; ++i) {
    BenchmarkRecord r;
    r.graph = names[i % 4];
    r.strategy = "weighted-spectral";
    r.k = 1 + static_cast<std::int32_t>(rng.below(512));
    r.seed = rng.below(std::numeric_limits<std::uint64_t>::max());
    r.ncut = rng.uniform() * r.k;
    r.wcut_coarse = rng.uniform() / 3.0;
    r.edge_cut = std::floor(rng.uniform() * 1e6) + (i % 2 == 0 ? 0.5 : 0.0);
    r.runtime_ms = rng.uniform() * 1e4;
    r.imbalance = 1.0 + rng.uniform();
    records.push_back(r);
  }
  std::stringstream buffer;
  write_preamble(buffer);
  for (const auto &r : records) {
    write_record(buffer, r);
  }
  EXPECT_EQ(read_records(buffer), records);
}

TEST(MetricsCsvTest, RejectsMalformedInput) {
  EXPECT_THROW((void)parse_record("a,b,1,2,3"), CsvError);
  EXPECT_THROW((void)parse_record("a,b,x,2,3,4,5,6,7"), CsvError);
  EXPECT_THROW((void)parse_record("\"a,b,1,2,3,4,5,6,7"), CsvError);
  std::istringstream no_schema("graph,strategy,k,seed,ncut,wcut_coarse,edge_cut,runtime_ms,imbalance\n");
  EXPECT_THROW((void)read_records(no_schema), CsvError);
}

TEST(MetricsCsvTest, ShortestRoundTripFormatting) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  const double third = 1.0 / 3.0;
  EXPECT_EQ(std::stod(format_double(third)), third);
}

} // namespace
} // namespace wlpart::csv
