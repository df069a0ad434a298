#include "metrics_csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <system_error>

namespace wlpart::csv {

std::string format_double(double x) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), x);
  if (ec != std::errc{}) {
    throw CsvError("cannot format number");
  }
  return {buffer, end};
}

std::string escape_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

void write_preamble(std::ostream &out) {
  out << kSchemaLine << '\n' << kHeader << '\n';
}

void write_record(std::ostream &out, const BenchmarkRecord &r) {
  out << escape_field(r.graph) << ',' << escape_field(r.strategy) << ',' << r.k << ',' << r.seed << ','
      << format_double(r.ncut) << ',' << format_double(r.wcut_coarse) << ',' << format_double(r.edge_cut) << ','
      << format_double(r.runtime_ms) << ',' << format_double(r.imbalance) << '\n';
}

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"' && current.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (quoted) {
    throw CsvError("unterminated quoted field");
  }
  fields.push_back(std::move(current));
  return fields;
}

namespace {

template <typename T>
T parse_number(const std::string &field, const char *name) {
  T value{};
  const char *first = field.data();
  const char *last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || field.empty()) {
    throw CsvError(std::string("bad value for ") + name + ": '" + field + "'");
  }
  return value;
}

} // namespace

BenchmarkRecord parse_record(std::string_view line) {
  const auto f = split_line(line);
  if (f.size() != 9) {
    throw CsvError("expected 9 fields, got " + std::to_string(f.size()));
  }
  BenchmarkRecord r;
  r.graph = f[0];
  r.strategy = f[1];
  r.k = parse_number<std::int32_t>(f[2], "k");
  r.seed = parse_number<std::uint64_t>(f[3], "seed");
  r.ncut = parse_number<double>(f[4], "ncut");
  r.wcut_coarse = parse_number<double>(f[5], "wcut_coarse");
  r.edge_cut = parse_number<double>(f[6], "edge_cut");
  r.runtime_ms = parse_number<double>(f[7], "runtime_ms");
  r.imbalance = parse_number<double>(f[8], "imbalance");
  return r;
}

std::vector<BenchmarkRecord> read_records(std::istream &in) {
  std::string line;
  if (!std::getline(in, line) || line != kSchemaLine) {
    throw CsvError("missing schema line '" + std::string(kSchemaLine) + "'");
  }
  if (!std::getline(in, line) || line != kHeader) {
    throw CsvError("unexpected header");
  }
  std::vector<BenchmarkRecord> records;
  while (std::getline(in, line)) {
    if (!line.empty()) {
      records.push_back(parse_record(line));
    }
  }
  return records;
}

} // namespace wlpart::csv
