#pragma once

#include <Eigen/Core>
#include <optional>
#include <span>

#include "rankpc/correlation.hpp"
#include "rankpc/graph.hpp"

namespace rankpc {

/// rho_{uv|S}: u != v, neither in S.
struct PartialQuery {
  Node u;
  Node v;
  NodeSet given;

  /// Throws std::invalid_argument / std::out_of_range for an invalid query on p nodes.
  void validate(int p) const;
};

/// Evaluates the classical recursion on conditioning sets, eliminating the
/// smallest index of S at every step. Throws DegenerateCorrelationError when a
/// factor 1 - rho^2 drops to 1e-12 or below.
double partial_corr_recursive(const CorrelationMatrix& sigma, const PartialQuery& query);

/// Same recursion, eliminating the element of S that comes first in
/// `elimination_priority` (a permutation of 0..p-1).
double partial_corr_recursive(const CorrelationMatrix& sigma, const PartialQuery& query,
                              std::span<const Node> elimination_priority);

/// -P_uv / sqrt(P_uu P_vv) with P the inverse of the principal submatrix on
/// (u, v, S), obtained from a Cholesky factorization. Throws ConditioningError
/// if that submatrix is not positive definite.
double partial_corr_inverse(const CorrelationMatrix& sigma, const PartialQuery& query);

/// Smallest nonzero |rho_{uv|S}| over all u, v, S with |{u, v} u S| <= q.
/// Partial correlations with magnitude at most 1e-9 count as zero. Returns
/// nullopt when every partial correlation vanishes. Requires 2 <= q <= p.
std::optional<double> c_min(const CorrelationMatrix& sigma, int q);

inline constexpr double kPartialZeroTolerance = 1e-9;

/// Smallest eigenvalue over all q x q principal submatrices. Requires 2 <= q <= p.
double lambda_min_q(const CorrelationMatrix& sigma, int q);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Eigen::MatrixXd& symmetric);

/// Largest absolute entry.
double max_abs_entry(const Eigen::MatrixXd& m);

/// Inputs of the finite-sample error bound for the rank PC algorithm.
/// a, b: tail-bound constants of the correlation estimator
/// (P(|rho_hat - rho| > eps) < a exp(-b n eps^2)); q = deg(G) + 2;
/// c, lambda: c_min and lambda_min at size q.
struct BoundInputs {
  double a;
  double b;
  int p;
  long long n;
  int q;
  double c;
  double lambda;

  /// Throws std::invalid_argument unless a, b > 0, p, q >= 1, n > q and
  /// c, lambda in (0, 1].
  void validate() const;
};

/// (a/2) p^2 exp(-b lambda^4 n c^2 / (36 q^2)).
double rpc_error_bound(const BoundInputs& in);

/// The bound before relaxing ((4 + c) q + lambda c q)^2 to 36 q^2:
/// a p (p - 1) / 2 * exp(-b n eps^2) with eps = rpc_uniform_error(c, lambda, q).
double rpc_error_bound_unrelaxed(const BoundInputs& in);

/// Threshold used in the error-bound argument: gamma = c / 2.
double rpc_proof_threshold(double c);

/// Uniform accuracy of the correlation estimate that makes every test with
/// |S| <= q - 2 correct: eps = c lambda^2 / ((4 + c) q + lambda c q).
double rpc_uniform_error(double c, double lambda, int q);

/// Perturbed-inverse inequality:
/// ||(sigma + e)^-1 - sigma^-1||_inf <= (q eps / l^2) / (1 - q eps / l), l = lambda_min(sigma).
/// Throws std::invalid_argument unless sigma is symmetric positive definite and
/// ||e||_inf < eps < l / q. Returns whether the inequality held.
bool lemma1_bound_check(const Eigen::MatrixXd& sigma, const Eigen::MatrixXd& e, double eps);

/// |a12 / sqrt(a11 a22) - b12 / sqrt(b11 b22)| < 2 delta / (1 - delta) for
/// symmetric 2x2 matrices. Throws std::invalid_argument unless a is positive
/// definite with a11, a22 >= 1, ||a - b||_inf < delta < 1, and b11, b22 > 0.
bool lemma3_bound_check(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b, double delta);

}  // namespace rankpc
