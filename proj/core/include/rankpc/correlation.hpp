#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "rankpc/dataset.hpp"

namespace rankpc {

enum class CorrelationMethod { pearson, spearman, kendall };

std::string_view to_string(CorrelationMethod m);
/// Throws std::invalid_argument for unknown names.
CorrelationMethod parse_correlation_method(std::string_view name);

/// Symmetric matrix with unit diagonal and entries in [-1, 1]. Positive
/// definiteness is not checked here; consumers that invert discover it.
class CorrelationMatrix {
 public:
  /// Validates symmetry and the unit diagonal to within 1e-10, then stores an
  /// exactly symmetric copy with an exact unit diagonal and clamped entries.
  explicit CorrelationMatrix(Eigen::MatrixXd values);
  static CorrelationMatrix identity(int p);

  int size() const noexcept { return static_cast<int>(values_.rows()); }
  double operator()(int i, int j) const { return values_(i, j); }
  const Eigen::MatrixXd& matrix() const noexcept { return values_; }

  /// Principal submatrix on `indices`, in the given order.
  Eigen::MatrixXd principal(std::span<const int> indices) const;

  friend bool operator==(const CorrelationMatrix& a, const CorrelationMatrix& b) {
    return a.values_.rows() == b.values_.rows() && a.values_ == b.values_;
  }

 private:
  Eigen::MatrixXd values_;
};

/// Ranks 1..n in O(n log n). Throws TieError if two entries are equal.
std::vector<int> ranks(std::span<const double> column);

/// 1 - 6 sum d_i^2 / (n (n^2 - 1)) over rank differences d_i.
double spearman_rho(std::span<const double> x, std::span<const double> y);

/// Kendall's tau via merge-sort discordant-pair counting, O(n log n).
double kendall_tau(std::span<const double> x, std::span<const double> y);

/// 2 sin(pi rho / 6), clamped to [-1, 1].
double sine_spearman(double rho_s);
/// sin(pi tau / 2), clamped to [-1, 1].
double sine_kendall(double tau);

/// P(|sine_spearman(rho_hat) - rho| > eps) <= 2 exp(-(2 / (9 pi^2)) n eps^2)
/// for Gaussian-copula data.
double spearman_tail_bound(long long n, double eps);
/// P(|sine_kendall(tau_hat) - rho| > eps) <= 2 exp(-(2 / pi^2) n eps^2).
double kendall_tail_bound(long long n, double eps);

/// Sample Pearson correlation, clamped to [-1, 1].
double pearson(std::span<const double> x, std::span<const double> y);

/// Pairwise estimates over all columns. Rank methods have the sine transform
/// applied. Errors carry the offending column (pair).
CorrelationMatrix estimate_correlation_matrix(const Dataset& data, CorrelationMethod method);

void write_csv(std::ostream& out, const CorrelationMatrix& sigma);

}  // namespace rankpc
