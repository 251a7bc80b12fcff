#pragma once
#include <string>
#include <vector>

namespace prpsim::io {

/// One CSV cell: a number, a text tag (outcome names, flags), or NA.
struct Cell {
  enum class Kind { Number, Text, Missing } kind;
  double num = 0.0;
  std::string text;

  static Cell number(double v);  ///< NaN collapses to NA
  static Cell str(std::string s) { return {Kind::Text, 0.0, std::move(s)}; }
  static Cell na() { return {Kind::Missing, 0.0, {}}; }
};

/// In-memory table rendered as CSV (and mirrored as JSON on request).
/// Layout contract: one `# key=value ...` comment line echoing the run
/// parameters, a header of column names, then rows. Numbers are printed
/// with 12 significant digits; missing values render as `NA`.
class Table {
 public:
  Table(std::string comment, std::vector<std::string> columns);

  void add_row(std::vector<Cell> cells);

  std::string to_csv() const;
  std::string to_json() const;

  /// Writes `<base>.csv` (and `<base>.json` when with_json).
  void write(const std::string& base_path, bool with_json) const;

  size_t rows() const { return rows_.size(); }
  const std::vector<std::string>& columns() const { return columns_; }
  const Cell& at(size_t row, size_t col) const { return rows_[row][col]; }

 private:
  std::string comment_;
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

std::string format_number(double v);  ///< the 12-significant-digit format

/// Writes text to path, replacing the file. Throws prpsim::Error on failure.
void write_file(const std::string& path, const std::string& text);

}  // namespace prpsim::io
