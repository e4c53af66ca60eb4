#include "rankpc/citest.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rankpc/errors.hpp"
#include "rankpc/partial.hpp"

namespace rankpc {

CiDecision threshold_decide(double rho_hat, double gamma) {
  if (std::isnan(rho_hat)) throw std::invalid_argument("partial correlation is NaN");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in [0, 1]");
  return std::abs(rho_hat) <= gamma ? CiDecision::independent : CiDecision::dependent;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double inverse_normal_cdf(double prob) {
  if (!(prob > 0.0 && prob < 1.0)) throw std::invalid_argument("probability must lie in (0, 1)");
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * prob);
}

namespace {

double adjusted_sample_size(long long n, int s_size) {
  if (s_size < 0) throw std::invalid_argument("negative conditioning-set size");
  const long long m = n - s_size - 3;
  if (m < 1) {
    throw std::invalid_argument("sample size " + std::to_string(n) + " too small for |S| = " + std::to_string(s_size));
  }
  return static_cast<double>(m);
}

}  // namespace

CiDecision fisher_z_decide(double rho_hat, long long n, int s_size, double alpha) {
  if (std::isnan(rho_hat)) throw std::invalid_argument("partial correlation is NaN");
  if (!(std::abs(rho_hat) < 1.0)) throw std::invalid_argument("|partial correlation| must be below 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  const double m = adjusted_sample_size(n, s_size);
  const double statistic = std::sqrt(m) * std::abs(0.5 * std::log((1.0 + rho_hat) / (1.0 - rho_hat)));
  return statistic <= inverse_normal_cdf(1.0 - alpha / 2.0) ? CiDecision::independent : CiDecision::dependent;
}

double gamma_threshold(long long n, int s_size, double z) {
  if (!(z >= 0.0)) throw std::invalid_argument("z must be nonnegative");
  const double m = adjusted_sample_size(n, s_size);
  const double e = std::exp(z / std::sqrt(m));
  return (e - 1.0) / (e + 1.0);
}

double fisher_z_cutoff(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  return 2.0 * inverse_normal_cdf(1.0 - alpha / 2.0);
}

namespace {

class CorrelationCiDecider final : public CiDecider {
 public:
  CorrelationCiDecider(std::shared_ptr<const CorrelationMatrix> sigma, long long n, DecisionRule rule)
      : sigma_(std::move(sigma)), n_(n), rule_(rule) {
    if (!sigma_) throw std::invalid_argument("null correlation matrix");
    if (n_ < 2) throw std::invalid_argument("sample size must be at least 2");
    std::visit(
        [](const auto& r) {
          using R = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<R, ThresholdRule>) {
            if (!(r.gamma >= 0.0 && r.gamma <= 1.0)) throw std::invalid_argument("gamma must lie in [0, 1]");
          } else {
            if (!(r.alpha > 0.0 && r.alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
          }
        },
        rule_);
  }

  CiOutcome decide(Node u, Node v, const NodeSet& s) const override {
    // Canonical endpoint order keeps the floating-point result symmetric.
    if (u > v) std::swap(u, v);
    CiOutcome out;
    double rho = 0.0;
    try {
      rho = partial_corr_inverse(*sigma_, PartialQuery{u, v, s});
    } catch (const ConditioningError&) {
      out.degenerate = true;
      return out;
    }
    if (!(std::abs(rho) < 1.0)) {
      out.degenerate = true;
      return out;
    }
    out.partial = rho;
    const int s_size = static_cast<int>(s.size());
    out.decision = std::visit(
        [&](const auto& r) {
          using R = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<R, ThresholdRule>) {
            return threshold_decide(rho, r.gamma);
          } else {
            return fisher_z_decide(rho, n_, s_size, r.alpha);
          }
        },
        rule_);
    return out;
  }

  int node_count() const override { return sigma_->size(); }

  int max_conditioning_size() const override {
    const int by_nodes = std::max(sigma_->size() - 2, 0);
    if (std::holds_alternative<FisherZRule>(rule_)) {
      return static_cast<int>(std::clamp<long long>(n_ - 4, 0, by_nodes));
    }
    return by_nodes;
  }

 private:
  std::shared_ptr<const CorrelationMatrix> sigma_;
  long long n_;
  DecisionRule rule_;
};

class OracleCiDecider final : public CiDecider {
 public:
  explicit OracleCiDecider(Dag dag) : dag_(std::move(dag)) {}

  CiOutcome decide(Node u, Node v, const NodeSet& s) const override {
    CiOutcome out;
    out.decision = d_separated(dag_, u, v, s) ? CiDecision::independent : CiDecision::dependent;
    return out;
  }

  int node_count() const override { return dag_.node_count(); }
  int max_conditioning_size() const override { return std::max(dag_.node_count() - 2, 0); }

 private:
  Dag dag_;
};

}  // namespace

std::unique_ptr<CiDecider> make_correlation_ci_decider(std::shared_ptr<const CorrelationMatrix> sigma, long long n,
                                                       const DecisionRule& rule) {
  return std::make_unique<CorrelationCiDecider>(std::move(sigma), n, rule);
}

std::unique_ptr<CiDecider> make_rank_ci_decider(const Dataset& data, const TestConfig& config) {
  auto sigma = std::make_shared<const CorrelationMatrix>(estimate_correlation_matrix(data, config.method));
  return make_correlation_ci_decider(std::move(sigma), static_cast<long long>(data.n()), config.rule);
}

std::unique_ptr<CiDecider> make_oracle_decider(Dag dag) { return std::make_unique<OracleCiDecider>(std::move(dag)); }

}  // namespace rankpc
