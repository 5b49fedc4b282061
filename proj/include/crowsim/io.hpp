#pragma once

#include <filesystem>
#include <string>
#include <vector>

// Table emission. Doubles are written with std::to_chars (shortest exact
// form), so re-parsing a CSV or JSON file reproduces the in-memory values
// bit for bit and identical runs produce byte-identical files.

namespace crowsim {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::initializer_list<double> values) {
    rows.emplace_back(values);
  }
};

std::string format_double(double v);

void write_csv(const std::filesystem::path& path, const Table& table);
void write_json_records(const std::filesystem::path& path, const Table& table);

// UTF-8 CSV with one header row, columns of decimal numbers ("nan" allowed)
Table read_csv(const std::filesystem::path& path);

}  // namespace crowsim
