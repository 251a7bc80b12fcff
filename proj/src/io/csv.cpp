#include "prpsim/io/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "prpsim/error.hpp"

namespace prpsim::io {

Cell Cell::number(double v) {
  if (std::isnan(v)) return na();
  return {Kind::Number, v, {}};
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

Table::Table(std::string comment, std::vector<std::string> columns)
    : comment_(std::move(comment)), columns_(std::move(columns)) {}

void Table::add_row(std::vector<Cell> cells) {
  if (cells.size() != columns_.size()) {
    raise(ErrorCode::Validation, "row width does not match column count");
  }
  rows_.push_back(std::move(cells));
}

std::string Table::to_csv() const {
  std::ostringstream out;
  out << "# " << comment_ << "\n";
  for (size_t c = 0; c < columns_.size(); ++c) {
    out << (c ? "," : "") << columns_[c];
  }
  out << "\n";
  for (const auto& row : rows_) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out << ",";
      switch (row[c].kind) {
        case Cell::Kind::Number: out << format_number(row[c].num); break;
        case Cell::Kind::Text: out << row[c].text; break;
        case Cell::Kind::Missing: out << "NA"; break;
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string Table::to_json() const {
  nlohmann::json j;
  j["comment"] = comment_;
  j["columns"] = columns_;
  auto rows = nlohmann::json::array();
  for (const auto& row : rows_) {
    auto jr = nlohmann::json::array();
    for (const auto& cell : row) {
      switch (cell.kind) {
        case Cell::Kind::Number: jr.push_back(cell.num); break;
        case Cell::Kind::Text: jr.push_back(cell.text); break;
        case Cell::Kind::Missing: jr.push_back(nullptr); break;
      }
    }
    rows.push_back(std::move(jr));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

void Table::write(const std::string& base_path, bool with_json) const {
  write_file(base_path + ".csv", to_csv());
  if (with_json) write_file(base_path + ".json", to_json());
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(ErrorCode::Validation, "cannot open output file " + path);
  out << text;
  if (!out) raise(ErrorCode::Validation, "failed writing " + path);
}

}  // namespace prpsim::io
