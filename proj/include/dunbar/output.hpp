#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dunbar::output {

/// Decimal with 6 significant digits, "%.6g" style.
std::string format_number(double v);

/// RFC-4180 style table: one header row, LF line endings, fields quoted only
/// when they contain a comma, quote or line break.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  using Cell = std::optional<std::string>;  // nullopt renders as an empty field

  void add_row(std::vector<Cell> cells);
  std::size_t row_count() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// Self-contained SVG 1.1 line chart: axes, ticks, one polyline per series
/// and a legend. Output depends only on the data.
class LineChart {
 public:
  LineChart(std::string title, std::string x_label, std::string y_label);

  void add_series(Series s);
  std::string render() const;

 private:
  std::string title_;
  std::string x_label_;
  std::string y_label_;
  std::vector<Series> series_;
};

class WriteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes every (path, contents) pair through a sibling temporary file and
/// renames them into place only after all temporaries were written. On
/// failure no target path is touched and WriteError is thrown.
void write_files_atomically(const std::vector<std::pair<std::filesystem::path, std::string>>& files);

}  // namespace dunbar::output
