#pragma once

#include <limits>
#include <memory>
#include <variant>

#include "rankpc/correlation.hpp"
#include "rankpc/dataset.hpp"
#include "rankpc/graph.hpp"

namespace rankpc {

enum class CiDecision { independent, dependent };

struct CiOutcome {
  CiDecision decision = CiDecision::dependent;
  /// Set when the estimated submatrix could not be inverted (or gave
  /// |rho| >= 1) and the query fell back to "dependent".
  bool degenerate = false;
  /// Estimated partial correlation; NaN for the oracle and degenerate queries.
  double partial = std::numeric_limits<double>::quiet_NaN();
};

/// Answers "is X_u independent of X_v given X_S?". Implementations are
/// immutable, symmetric in (u, v) and safe to query concurrently.
class CiDecider {
 public:
  virtual ~CiDecider() = default;

  virtual CiOutcome decide(Node u, Node v, const NodeSet& s) const = 0;
  virtual int node_count() const = 0;
  /// Largest |S| this decider can answer.
  virtual int max_conditioning_size() const = 0;
};

/// Independent iff |rho_hat| <= gamma. Throws on NaN or gamma outside [0, 1].
CiDecision threshold_decide(double rho_hat, double gamma);

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile. Throws std::invalid_argument outside (0, 1).
double inverse_normal_cdf(double prob);

/// Fisher-z test with the n - |S| - 3 adjustment: independent iff
/// sqrt(n - |S| - 3) |atanh(rho_hat)| <= Phi^-1(1 - alpha / 2).
/// Throws std::invalid_argument if n - |S| - 3 < 1 or |rho_hat| >= 1.
CiDecision fisher_z_decide(double rho_hat, long long n, int s_size, double alpha);

/// Partial-correlation cutoff equivalent to the Fisher-z test:
/// (exp(z / sqrt(m)) - 1) / (exp(z / sqrt(m)) + 1), m = n - |S| - 3.
double gamma_threshold(long long n, int s_size, double z);

/// z(alpha) = 2 Phi^-1(1 - alpha / 2), the argument for gamma_threshold that
/// reproduces fisher_z_decide at level alpha.
double fisher_z_cutoff(double alpha);

struct ThresholdRule {
  double gamma;
};

struct FisherZRule {
  double alpha;
};

using DecisionRule = std::variant<ThresholdRule, FisherZRule>;

struct TestConfig {
  CorrelationMethod method = CorrelationMethod::spearman;
  DecisionRule rule = FisherZRule{0.01};
};

/// Estimates the correlation matrix once and answers queries from partial
/// correlations obtained by inversion. A non positive definite submatrix is
/// answered "dependent" with CiOutcome::degenerate set.
std::unique_ptr<CiDecider> make_rank_ci_decider(const Dataset& data, const TestConfig& config);

/// Same decider over an already estimated matrix, so several rules can share
/// one estimate. `n` is the sample size behind the estimate.
std::unique_ptr<CiDecider> make_correlation_ci_decider(std::shared_ptr<const CorrelationMatrix> sigma, long long n,
                                                       const DecisionRule& rule);

/// Answers exactly d_separated(dag, u, v, s).
std::unique_ptr<CiDecider> make_oracle_decider(Dag dag);

}  // namespace rankpc
