#include "edgediff/csv.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "edgediff/errors.hpp"

namespace edgediff::csv {

std::string format_float(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

std::string table(std::string_view header,
                  std::span<const std::vector<double>> columns) {
  std::string out(header);
  out += '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != rows) throw DomainError("csv columns differ in length");
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) out += ',';
      out += format_float(columns[c][r]);
    }
    out += '\n';
  }
  return out;
}

std::string counts_table(std::span<const CountsRecord> records) {
  std::string out(kCountsHeader);
  out += '\n';
  char buf[128];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, ",%" PRId64 ",%" PRId64 ",%" PRId64 ",",
                  r.coincidences, r.singles1, r.singles2);
    out += format_float(r.edge_position);
    out += buf;
    out += format_float(r.integration_time);
    out += '\n';
  }
  return out;
}

namespace {

template <typename T>
T parse_field(std::string_view field, int line) {
  T value{};
  const auto [end, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || end != field.data() + field.size()) {
    throw IoError("counts csv line " + std::to_string(line) +
                  ": bad field '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::vector<CountsRecord> parse_counts(std::string_view text) {
  std::vector<CountsRecord> records;
  int line = 0;
  std::size_t begin = 0;
  bool header_seen = false;
  while (begin < text.size()) {
    auto end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row = text.substr(begin, end - begin);
    begin = end + 1;
    ++line;
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    if (!header_seen) {
      if (row != kCountsHeader) {
        throw IoError("counts csv: expected header '" + std::string(kCountsHeader) +
                      "'");
      }
      header_seen = true;
      continue;
    }
    if (row.empty()) continue;
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
      const auto comma = row.find(',', start);
      fields.push_back(row.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 5) {
      throw IoError("counts csv line " + std::to_string(line) +
                    ": expected 5 fields");
    }
    CountsRecord r{
        .edge_position = parse_field<double>(fields[0], line),
        .coincidences = parse_field<std::int64_t>(fields[1], line),
        .singles1 = parse_field<std::int64_t>(fields[2], line),
        .singles2 = parse_field<std::int64_t>(fields[3], line),
        .integration_time = parse_field<double>(fields[4], line),
    };
    if (r.coincidences < 0 || r.singles1 < 0 || r.singles2 < 0) {
      throw IoError("counts csv line " + std::to_string(line) +
                    ": negative count");
    }
    records.push_back(r);
  }
  if (!header_seen) throw IoError("counts csv is empty");
  return records;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace edgediff::csv
