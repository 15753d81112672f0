#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "vicsim/runner.hpp"

namespace vicsim {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size())
    throw std::invalid_argument("row has " + std::to_string(row.size()) + " cells, table has " +
                                std::to_string(columns_.size()) + " columns");
  rows_.push_back(std::move(row));
}

std::size_t Table::column_index(const std::string& name) const {
  for (std::size_t k = 0; k < columns_.size(); ++k)
    if (columns_[k] == name) return k;
  throw std::out_of_range("no column " + name);
}

double Table::number(std::size_t row, const std::string& column) const {
  return std::get<double>(rows_.at(row).at(column_index(column)));
}

std::vector<double> Table::column(const std::string& name) const {
  const auto k = column_index(name);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(std::get<double>(r[k]));
  return out;
}

std::string Table::to_csv() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < columns_.size(); ++k) os << (k ? "," : "") << columns_[k];
  os << '\n';
  for (const auto& r : rows_) {
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (k) os << ',';
      if (const auto* d = std::get_if<double>(&r[k]))
        os << format_number(*d);
      else
        os << std::get<std::string>(r[k]);
    }
    os << '\n';
  }
  return os.str();
}

nlohmann::json Table::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rows_) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (const auto* d = std::get_if<double>(&r[k])) {
        if (std::isfinite(*d))
          obj[columns_[k]] = *d;
        else
          obj[columns_[k]] = nullptr;
      } else {
        obj[columns_[k]] = std::get<std::string>(r[k]);
      }
    }
    rows.push_back(std::move(obj));
  }
  return {{"columns", columns_}, {"rows", rows}};
}

}  // namespace vicsim
