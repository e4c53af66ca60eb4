#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace rankpc {

/// n x p table of finite observations, stored column-major.
class Dataset {
 public:
  /// `values` holds column 0 first, then column 1, and so on. Throws
  /// std::invalid_argument for n < 2, a size mismatch, or a non-finite value.
  Dataset(std::size_t n, std::size_t p, std::vector<double> values, std::vector<std::string> names = {});

  static Dataset from_columns(const std::vector<std::vector<double>>& columns,
                              std::vector<std::string> names = {});

  std::size_t n() const noexcept { return n_; }
  std::size_t p() const noexcept { return p_; }

  std::span<const double> column(std::size_t j) const;
  double at(std::size_t row, std::size_t col) const { return column(col)[row]; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::size_t n_;
  std::size_t p_;
  std::vector<double> values_;
  std::vector<std::string> names_;
};

/// CSV with one header row and one observation per line; '.' is always the
/// decimal separator.
Dataset read_csv(std::istream& in);
void write_csv(std::ostream& out, const Dataset& data);

}  // namespace rankpc
