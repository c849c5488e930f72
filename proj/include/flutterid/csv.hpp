#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flutterid/synth.hpp"

namespace flutterid {

/// Reads a displacement record.  Accepts headers `t,h,alpha` or `h,alpha`;
/// with a time column the sampling interval is checked for uniformity and,
/// when expected_dt is given, against it (tolerance 1e-9 s).  Malformed
/// rows raise DataError naming the offending line.
TimeSeries read_time_series_csv(const std::string& path,
                                std::optional<double> expected_dt);

/// Writes `t,h,alpha` rows with t = i * dt.
void write_time_series_csv(const std::string& path, const TimeSeries& ts);

/// Generic table writer: one header line, rows of doubles at full precision.
void write_table_csv(const std::string& path, const std::string& header,
                     const std::vector<std::vector<double>>& rows);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int column_index(const std::string& name) const;  // -1 when absent
};

CsvTable read_table_csv(const std::string& path);

std::string format_double(double v);

}  // namespace flutterid
