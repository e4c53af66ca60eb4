#include "rankpc/partial.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rankpc/combinations.hpp"
#include "rankpc/errors.hpp"

namespace rankpc {

void PartialQuery::validate(int p) const {
  if (u < 0 || u >= p || v < 0 || v >= p) throw std::out_of_range("partial correlation node out of range");
  given.check_bounds(p);
  if (u == v) throw std::invalid_argument("partial correlation needs two distinct nodes");
  if (given.contains(u) || given.contains(v)) {
    throw std::invalid_argument("conditioning set contains an endpoint");
  }
}

namespace {

constexpr double kDenominatorTolerance = 1e-12;

double recurse(const CorrelationMatrix& sigma, Node u, Node v, const std::vector<Node>& given,
               const std::vector<int>& priority) {
  if (given.empty()) return sigma(u, v);
  const Node w = *std::min_element(given.begin(), given.end(),
                                   [&](Node a, Node b) { return priority[a] < priority[b]; });
  std::vector<Node> rest;
  rest.reserve(given.size() - 1);
  for (Node x : given) {
    if (x != w) rest.push_back(x);
  }
  const double r_uv = recurse(sigma, u, v, rest, priority);
  const double r_uw = recurse(sigma, u, w, rest, priority);
  const double r_vw = recurse(sigma, v, w, rest, priority);
  const double left = 1.0 - r_uw * r_uw;
  const double right = 1.0 - r_vw * r_vw;
  if (left <= kDenominatorTolerance || right <= kDenominatorTolerance) {
    throw DegenerateCorrelationError("degenerate partial correlation while eliminating node " + std::to_string(w));
  }
  return (r_uv - r_uw * r_vw) / std::sqrt(left * right);
}

/// Partial correlation of rows 0 and 1 given the remaining rows of psi.
double partial_from_submatrix(const Eigen::MatrixXd& psi, const std::vector<int>& indices) {
  Eigen::LLT<Eigen::MatrixXd> llt(psi);
  if (llt.info() != Eigen::Success) {
    std::string msg = "principal submatrix on {";
    for (std::size_t i = 0; i < indices.size(); ++i) msg += (i ? "," : "") + std::to_string(indices[i]);
    throw ConditioningError(msg + "} is not positive definite", indices);
  }
  const Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(psi.rows(), psi.cols()));
  return -inv(0, 1) / std::sqrt(inv(0, 0) * inv(1, 1));
}

void check_q(const CorrelationMatrix& sigma, int q) {
  if (q < 2 || q > sigma.size()) {
    throw std::invalid_argument("q = " + std::to_string(q) + " outside [2, " + std::to_string(sigma.size()) + "]");
  }
}

}  // namespace

double partial_corr_recursive(const CorrelationMatrix& sigma, const PartialQuery& query) {
  std::vector<Node> identity(static_cast<std::size_t>(sigma.size()));
  std::iota(identity.begin(), identity.end(), 0);
  return partial_corr_recursive(sigma, query, identity);
}

double partial_corr_recursive(const CorrelationMatrix& sigma, const PartialQuery& query,
                              std::span<const Node> elimination_priority) {
  const int p = sigma.size();
  query.validate(p);
  if (static_cast<int>(elimination_priority.size()) != p) {
    throw std::invalid_argument("elimination priority must be a permutation of all nodes");
  }
  std::vector<int> rank_of(p, -1);
  for (std::size_t i = 0; i < elimination_priority.size(); ++i) {
    const Node x = elimination_priority[i];
    if (x < 0 || x >= p || rank_of[x] != -1) {
      throw std::invalid_argument("elimination priority must be a permutation of all nodes");
    }
    rank_of[x] = static_cast<int>(i);
  }
  return recurse(sigma, query.u, query.v, query.given.values(), rank_of);
}

double partial_corr_inverse(const CorrelationMatrix& sigma, const PartialQuery& query) {
  query.validate(sigma.size());
  std::vector<int> indices{query.u, query.v};
  indices.insert(indices.end(), query.given.begin(), query.given.end());
  return partial_from_submatrix(sigma.principal(indices), indices);
}

std::optional<double> c_min(const CorrelationMatrix& sigma, int q) {
  check_q(sigma, q);
  // Every (u, v, S) with |{u, v} u S| <= q sits inside some index set of size
  // exactly q, so this is the minimum over all q x q principal submatrices.
  const int p = sigma.size();
  std::optional<double> best;
  for (Node u = 0; u < p; ++u) {
    for (Node v = u + 1; v < p; ++v) {
      std::vector<Node> pool;
      for (Node x = 0; x < p; ++x) {
        if (x != u && x != v) pool.push_back(x);
      }
      for (std::size_t k = 0; k <= static_cast<std::size_t>(q - 2); ++k) {
        for_each_combination(pool, k, [&](const std::vector<Node>& s) {
          const double r = std::abs(partial_corr_inverse(sigma, PartialQuery{u, v, NodeSet(s)}));
          if (r > kPartialZeroTolerance && (!best || r < *best)) best = r;
          return false;
        });
      }
    }
  }
  return best;
}

double min_eigenvalue(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue computation did not converge");
  return solver.eigenvalues().minCoeff();
}

double lambda_min_q(const CorrelationMatrix& sigma, int q) {
  check_q(sigma, q);
  std::vector<int> all(static_cast<std::size_t>(sigma.size()));
  std::iota(all.begin(), all.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  for_each_combination(all, static_cast<std::size_t>(q), [&](const std::vector<int>& subset) {
    best = std::min(best, min_eigenvalue(sigma.principal(subset)));
    return false;
  });
  return best;
}

double max_abs_entry(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// ---------------------------------------------------------------------------
// Error bound

void BoundInputs::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("constant A must be positive");
  if (!(b > 0.0) || !std::isfinite(b)) throw std::invalid_argument("constant B must be positive");
  if (p < 1 || q < 1) throw std::invalid_argument("p and q must be positive");
  if (n <= q) throw std::invalid_argument("the bound requires n > q");
  if (!(c > 0.0 && c <= 1.0)) throw std::invalid_argument("c must lie in (0, 1]");
  if (!(lambda > 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in (0, 1]");
}

double rpc_error_bound(const BoundInputs& in) {
  in.validate();
  const double q = in.q;
  const double exponent = in.b * std::pow(in.lambda, 4) * static_cast<double>(in.n) * in.c * in.c / (36.0 * q * q);
  return in.a / 2.0 * static_cast<double>(in.p) * in.p * std::exp(-exponent);
}

double rpc_error_bound_unrelaxed(const BoundInputs& in) {
  in.validate();
  const double eps = rpc_uniform_error(in.c, in.lambda, in.q);
  const double pairs = static_cast<double>(in.p) * (in.p - 1) / 2.0;
  return in.a * pairs * std::exp(-in.b * static_cast<double>(in.n) * eps * eps);
}

double rpc_proof_threshold(double c) { return c / 2.0; }

double rpc_uniform_error(double c, double lambda, int q) {
  return c * lambda * lambda / ((4.0 + c) * q + lambda * c * q);
}

// ---------------------------------------------------------------------------
// Perturbation inequalities

bool lemma1_bound_check(const Eigen::MatrixXd& sigma, const Eigen::MatrixXd& e, double eps) {
  if (sigma.rows() != sigma.cols() || sigma.rows() == 0) throw std::invalid_argument("sigma must be square");
  if (e.rows() != sigma.rows() || e.cols() != sigma.cols()) throw std::invalid_argument("shape mismatch");
  if (!sigma.isApprox(sigma.transpose(), 1e-12)) throw std::invalid_argument("sigma must be symmetric");
  const double q = static_cast<double>(sigma.rows());
  const double lmin = min_eigenvalue(sigma);
  if (!(lmin > 0.0)) throw std::invalid_argument("sigma must be positive definite");
  if (!(max_abs_entry(e) < eps && eps < lmin / q)) {
    throw std::invalid_argument("requires ||E||_inf < eps < lambda_min / q");
  }
  const Eigen::MatrixXd perturbed_inv = (sigma + e).partialPivLu().inverse();
  const Eigen::MatrixXd inv = sigma.llt().solve(Eigen::MatrixXd::Identity(sigma.rows(), sigma.cols()));
  const double lhs = max_abs_entry(perturbed_inv - inv);
  const double ratio = q * eps / lmin;
  const double rhs = (q * eps / (lmin * lmin)) / (1.0 - ratio);
  return lhs <= rhs;
}

bool lemma3_bound_check(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b, double delta) {
  if (a(0, 1) != a(1, 0) || b(0, 1) != b(1, 0)) throw std::invalid_argument("matrices must be symmetric");
  if (!(a(0, 0) >= 1.0 && a(1, 1) >= 1.0)) throw std::invalid_argument("a11 and a22 must be at least 1");
  if (!(a(0, 0) * a(1, 1) - a(0, 1) * a(0, 1) > 0.0)) throw std::invalid_argument("a must be positive definite");
  if (!(delta < 1.0)) throw std::invalid_argument("delta must be below 1");
  if (!(max_abs_entry(a - b) < delta)) throw std::invalid_argument("requires ||A - B||_inf < delta");
  if (!(b(0, 0) > 0.0 && b(1, 1) > 0.0)) throw std::invalid_argument("b11 and b22 must be positive");
  const double ra = a(0, 1) / std::sqrt(a(0, 0) * a(1, 1));
  const double rb = b(0, 1) / std::sqrt(b(0, 0) * b(1, 1));
  return std::abs(ra - rb) < 2.0 * delta / (1.0 - delta);
}

}  // namespace rankpc
