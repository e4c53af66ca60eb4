#include "rankpc/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "rankpc/errors.hpp"
#include "rankpc/text.hpp"

namespace rankpc {

std::string_view to_string(CorrelationMethod m) {
  switch (m) {
    case CorrelationMethod::pearson:
      return "pearson";
    case CorrelationMethod::spearman:
      return "spearman";
    case CorrelationMethod::kendall:
      return "kendall";
  }
  return "unknown";
}

CorrelationMethod parse_correlation_method(std::string_view name) {
  if (name == "pearson") return CorrelationMethod::pearson;
  if (name == "spearman") return CorrelationMethod::spearman;
  if (name == "kendall") return CorrelationMethod::kendall;
  throw std::invalid_argument("unknown correlation method '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// CorrelationMatrix

CorrelationMatrix::CorrelationMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  constexpr double kTol = 1e-10;
  if (values_.rows() != values_.cols()) throw std::invalid_argument("correlation matrix must be square");
  const Eigen::Index p = values_.rows();
  for (Eigen::Index i = 0; i < p; ++i) {
    if (!(std::abs(values_(i, i) - 1.0) <= kTol)) {
      throw std::invalid_argument("correlation matrix diagonal entry " + std::to_string(i) + " is not 1");
    }
    values_(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < p; ++j) {
      const double a = values_(i, j);
      const double b = values_(j, i);
      if (!(std::abs(a - b) <= kTol)) throw std::invalid_argument("correlation matrix is not symmetric");
      if (!(std::abs(a) <= 1.0 + kTol)) throw std::invalid_argument("correlation entry outside [-1, 1]");
      const double v = std::clamp(a == b ? a : 0.5 * (a + b), -1.0, 1.0);
      values_(i, j) = v;
      values_(j, i) = v;
    }
  }
}

CorrelationMatrix CorrelationMatrix::identity(int p) {
  return CorrelationMatrix(Eigen::MatrixXd::Identity(p, p));
}

Eigen::MatrixXd CorrelationMatrix::principal(std::span<const int> indices) const {
  const auto k = static_cast<Eigen::Index>(indices.size());
  Eigen::MatrixXd out(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) out(a, b) = values_(indices[a], indices[b]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pairwise estimators

namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("samples have different lengths");
  if (x.size() < 2) throw std::invalid_argument("at least two observations are required");
}

/// Indices of `column` in ascending order of value.
std::vector<int> sort_order(std::span<const double> column) {
  std::vector<int> order(column.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return column[a] < column[b]; });
  return order;
}

std::vector<int> ranks_from_order(std::span<const double> column, const std::vector<int>& order) {
  std::vector<int> out(column.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0 && column[order[k]] == column[order[k - 1]]) {
      throw TieError("tied value " + text::format_double(column[order[k]]) + " (rank statistics need tie-free data)",
                     column[order[k]]);
    }
    out[order[k]] = static_cast<int>(k) + 1;
  }
  return out;
}

double spearman_from_ranks(const std::vector<int>& rx, const std::vector<int>& ry) {
  std::int64_t sum_sq = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const std::int64_t d = rx[i] - ry[i];
    sum_sq += d * d;
  }
  const double n = static_cast<double>(rx.size());
  return 1.0 - 6.0 * static_cast<double>(sum_sq) / (n * (n * n - 1.0));
}

/// Inversions in `seq`, counted while merge-sorting it in place.
std::int64_t count_inversions(std::vector<int>& seq, std::vector<int>& scratch, std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t count = count_inversions(seq, scratch, lo, mid) + count_inversions(seq, scratch, mid, hi);
  std::size_t i = lo;
  std::size_t j = mid;
  std::size_t k = lo;
  while (i < mid && j < hi) {
    if (seq[j] < seq[i]) {
      count += static_cast<std::int64_t>(mid - i);
      scratch[k++] = seq[j++];
    } else {
      scratch[k++] = seq[i++];
    }
  }
  while (i < mid) scratch[k++] = seq[i++];
  while (j < hi) scratch[k++] = seq[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo), scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            seq.begin() + static_cast<std::ptrdiff_t>(lo));
  return count;
}

/// With no ties, sum_{i<j} sign(dx) sign(dy) = pairs - 2 * discordant. The
/// final division matches the plain double-sum formula bit for bit.
double kendall_from_order(const std::vector<int>& order_x, const std::vector<int>& ranks_y) {
  const std::size_t n = order_x.size();
  std::vector<int> seq(n);
  for (std::size_t k = 0; k < n; ++k) seq[k] = ranks_y[order_x[k]];
  std::vector<int> scratch(n);
  const std::int64_t discordant = count_inversions(seq, scratch, 0, n);
  const std::int64_t pairs = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
  const std::int64_t sign_sum = pairs - 2 * discordant;
  return 2.0 * static_cast<double>(sign_sum) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

}  // namespace

std::vector<int> ranks(std::span<const double> column) {
  if (column.empty()) throw std::invalid_argument("cannot rank an empty sample");
  return ranks_from_order(column, sort_order(column));
}

double spearman_rho(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  return spearman_from_ranks(ranks(x), ranks(y));
}

double kendall_tau(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const auto order_x = sort_order(x);
  ranks_from_order(x, order_x);  // tie check on x
  return kendall_from_order(order_x, ranks(y));
}

double sine_spearman(double rho_s) {
  if (!(rho_s >= -1.0 && rho_s <= 1.0)) throw std::invalid_argument("Spearman correlation outside [-1, 1]");
  if (std::abs(rho_s) == 1.0) return rho_s;  // sin(pi/6) is not exactly 0.5 in floating point
  return std::clamp(2.0 * std::sin(std::numbers::pi * rho_s / 6.0), -1.0, 1.0);
}

double sine_kendall(double tau) {
  if (!(tau >= -1.0 && tau <= 1.0)) throw std::invalid_argument("Kendall correlation outside [-1, 1]");
  return std::clamp(std::sin(std::numbers::pi * tau / 2.0), -1.0, 1.0);
}

double spearman_tail_bound(long long n, double eps) {
  if (n < 2 || !(eps > 0.0)) throw std::invalid_argument("tail bound needs n >= 2 and eps > 0");
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return 2.0 * std::exp(-(2.0 / (9.0 * pi2)) * static_cast<double>(n) * eps * eps);
}

double kendall_tail_bound(long long n, double eps) {
  if (n < 2 || !(eps > 0.0)) throw std::invalid_argument("tail bound needs n >= 2 and eps > 0");
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return 2.0 * std::exp(-(2.0 / pi2) * static_cast<double>(n) * eps * eps);
}

double pearson(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw std::invalid_argument("zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationMatrix estimate_correlation_matrix(const Dataset& data, CorrelationMethod method) {
  const std::size_t p = data.p();
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  auto column_label = [&](std::size_t j) { return "column " + std::to_string(j) + " (" + data.names()[j] + ")"; };

  std::vector<std::vector<int>> orders;
  std::vector<std::vector<int>> col_ranks;
  if (method != CorrelationMethod::pearson) {
    orders.reserve(p);
    col_ranks.reserve(p);
    for (std::size_t j = 0; j < p; ++j) {
      orders.push_back(sort_order(data.column(j)));
      try {
        col_ranks.push_back(ranks_from_order(data.column(j), orders.back()));
      } catch (const TieError& e) {
        throw TieError(column_label(j) + ": " + e.what(), e.tied_value());
      }
    }
  }

  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = a + 1; b < p; ++b) {
      double r = 0.0;
      switch (method) {
        case CorrelationMethod::pearson:
          try {
            r = pearson(data.column(a), data.column(b));
          } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("columns " + std::to_string(a) + ", " + std::to_string(b) + ": " + e.what());
          }
          break;
        case CorrelationMethod::spearman:
          r = sine_spearman(spearman_from_ranks(col_ranks[a], col_ranks[b]));
          break;
        case CorrelationMethod::kendall:
          r = sine_kendall(kendall_from_order(orders[a], col_ranks[b]));
          break;
      }
      out(a, b) = r;
      out(b, a) = r;
    }
  }
  return CorrelationMatrix(std::move(out));
}

void write_csv(std::ostream& out, const CorrelationMatrix& sigma) {
  for (int i = 0; i < sigma.size(); ++i) {
    for (int j = 0; j < sigma.size(); ++j) out << (j ? "," : "") << text::format_double(sigma(i, j));
    out << '\n';
  }
}

}  // namespace rankpc
