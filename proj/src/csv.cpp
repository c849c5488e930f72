#include "flutterid/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace flutterid {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim surrounding whitespace
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back("");
  return fields;
}

double parse_double(const std::string& s, const std::string& path, std::size_t line_no) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw DataError(path + ": line " + std::to_string(line_no) +
                    ": cannot parse number '" + s + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

TimeSeries read_time_series_csv(const std::string& path,
                                std::optional<double> expected_dt) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw DataError(path + ": empty file");
  ++line_no;
  const auto header = split_line(line);

  bool has_time = false;
  if (header.size() == 3 && header[0] == "t" && header[1] == "h" &&
      header[2] == "alpha") {
    has_time = true;
  } else if (header.size() == 2 && header[0] == "h" && header[1] == "alpha") {
    has_time = false;
  } else {
    throw DataError(path + ": line 1: expected header 't,h,alpha' or 'h,alpha'");
  }
  if (!has_time && !expected_dt) {
    throw DataError(path + ": no time column and no sampling interval configured");
  }

  TimeSeries ts;
  std::vector<double> times;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
    const auto fields = split_line(line);
    if (fields.size() != header.size()) {
      throw DataError(path + ": line " + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " fields, got " +
                      std::to_string(fields.size()));
    }
    std::size_t col = 0;
    if (has_time) times.push_back(parse_double(fields[col++], path, line_no));
    ts.h.push_back(parse_double(fields[col++], path, line_no));
    ts.alpha.push_back(parse_double(fields[col], path, line_no));
  }
  if (ts.h.size() < 2) throw DataError(path + ": fewer than 2 samples");

  if (has_time) {
    const double dt = times[1] - times[0];
    if (!(dt > 0.0)) throw DataError(path + ": time column not increasing");
    for (std::size_t i = 2; i < times.size(); ++i) {
      if (std::abs(times[i] - times[i - 1] - dt) > 1e-9) {
        throw DataError(path + ": line " + std::to_string(i + 2) +
                        ": non-uniform sampling interval");
      }
    }
    if (expected_dt && std::abs(dt - *expected_dt) > 1e-9) {
      throw DataError(path + ": sampling interval " + format_double(dt) +
                      " s does not match configured dt " + format_double(*expected_dt) +
                      " s");
    }
    ts.dt = dt;
  } else {
    ts.dt = *expected_dt;
  }
  ts.validate();
  return ts;
}

void write_time_series_csv(const std::string& path, const TimeSeries& ts) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << "t,h,alpha\n";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    out << format_double(static_cast<double>(i) * ts.dt) << ','
        << format_double(ts.h[i]) << ',' << format_double(ts.alpha[i]) << '\n';
  }
  if (!out) throw DataError("write failed for '" + path + "'");
}

void write_table_csv(const std::string& path, const std::string& header,
                     const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << header << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
  if (!out) throw DataError("write failed for '" + path + "'");
}

int CsvTable::column_index(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  return it == columns.end() ? -1 : static_cast<int>(it - columns.begin());
}

CsvTable read_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw DataError(path + ": empty file");
  ++line_no;
  table.columns = split_line(line);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
    const auto fields = split_line(line);
    if (fields.size() != table.columns.size()) {
      throw DataError(path + ": line " + std::to_string(line_no) +
                      ": inconsistent column count");
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_double(f, path, line_no));
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace flutterid
