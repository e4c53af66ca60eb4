#include "rankpc/dataset.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "rankpc/text.hpp"

namespace rankpc {

Dataset::Dataset(std::size_t n, std::size_t p, std::vector<double> values, std::vector<std::string> names)
    : n_(n), p_(p), values_(std::move(values)), names_(std::move(names)) {
  if (n_ < 2) throw std::invalid_argument("a dataset needs at least two observations");
  if (values_.size() != n_ * p_) throw std::invalid_argument("dataset size does not match n * p");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw std::invalid_argument("non-finite value in column " + std::to_string(i / n_) + ", row " +
                                  std::to_string(i % n_));
    }
  }
  if (names_.empty()) {
    names_.reserve(p_);
    for (std::size_t j = 0; j < p_; ++j) names_.push_back("X" + std::to_string(j));
  }
  if (names_.size() != p_) throw std::invalid_argument("one column name per variable required");
}

Dataset Dataset::from_columns(const std::vector<std::vector<double>>& columns, std::vector<std::string> names) {
  if (columns.empty()) throw std::invalid_argument("a dataset needs at least one column");
  const std::size_t n = columns.front().size();
  std::vector<double> values;
  values.reserve(n * columns.size());
  for (const auto& col : columns) {
    if (col.size() != n) throw std::invalid_argument("columns have different lengths");
    values.insert(values.end(), col.begin(), col.end());
  }
  return Dataset(n, columns.size(), std::move(values), std::move(names));
}

std::span<const double> Dataset::column(std::size_t j) const {
  if (j >= p_) throw std::out_of_range("column " + std::to_string(j) + " out of range");
  return std::span<const double>(values_).subspan(j * n_, n_);
}

Dataset read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("csv: empty input");
  std::vector<std::string> names;
  for (auto field : text::split(text::trim(line), ',')) names.emplace_back(text::trim(field));
  const std::size_t p = names.size();

  std::vector<std::vector<double>> columns(p);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    auto trimmed = text::trim(line);
    if (trimmed.empty()) continue;
    auto fields = text::split(trimmed, ',');
    if (fields.size() != p) {
      throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected " + std::to_string(p) +
                               " fields, got " + std::to_string(fields.size()));
    }
    for (std::size_t j = 0; j < p; ++j) {
      try {
        columns[j].push_back(text::parse_double(fields[j]));
      } catch (const std::invalid_argument& e) {
        throw std::runtime_error("csv line " + std::to_string(line_no) + ": " + e.what());
      }
    }
  }
  return Dataset::from_columns(columns, std::move(names));
}

void write_csv(std::ostream& out, const Dataset& data) {
  for (std::size_t j = 0; j < data.p(); ++j) out << (j ? "," : "") << data.names()[j];
  out << '\n';
  for (std::size_t i = 0; i < data.n(); ++i) {
    for (std::size_t j = 0; j < data.p(); ++j) out << (j ? "," : "") << text::format_double(data.at(i, j));
    out << '\n';
  }
}

}  // namespace rankpc
