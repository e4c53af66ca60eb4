#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rankpc/citest.hpp"
#include "rankpc/simulate.hpp"

namespace rankpc {
namespace {

TEST(ThresholdDecide, Examples) {
  EXPECT_EQ(threshold_decide(0.0, 0.1), CiDecision::independent);
  EXPECT_EQ(threshold_decide(0.5, 0.1), CiDecision::dependent);
  EXPECT_EQ(threshold_decide(0.1, 0.1), CiDecision::independent);
  EXPECT_EQ(threshold_decide(-0.1, 0.1), CiDecision::independent);
  EXPECT_THROW(threshold_decide(std::nan(""), 0.1), std::invalid_argument);
  EXPECT_THROW(threshold_decide(0.0, 1.5), std::invalid_argument);
}

TEST(InverseNormalCdf, Examples) {
  EXPECT_EQ(inverse_normal_cdf(0.5), 0.0);
  EXPECT_NEAR(inverse_normal_cdf(0.975), 1.959963984540054, 1e-12);
  for (double eps : {1e-10, 1e-4, 0.1, 0.3, 0.4999}) {
    EXPECT_NEAR(inverse_normal_cdf(0.5 + eps), -inverse_normal_cdf(0.5 - eps), 1e-12);
    EXPECT_GT(inverse_normal_cdf(0.5 + eps), 0.0);
  }
  EXPECT_THROW(inverse_normal_cdf(0.0), std::invalid_argument);
  EXPECT_THROW(inverse_normal_cdf(1.0), std::invalid_argument);
}

// Upper-tail probabilities round towards 1, so the round trip is only
// well conditioned on the lower side; antisymmetry covers the rest.
TEST(InverseNormalCdf, InvertsCdf) {
  for (double x = -8.0; x <= 0.0; x += 0.25) {
    EXPECT_NEAR(inverse_normal_cdf(normal_cdf(x)), x, 1e-9 * std::max(1.0, std::abs(x)));
  }
}

TEST(FisherZ, Examples) {
  EXPECT_EQ(fisher_z_decide(0.0, 10, 2, 0.05), CiDecision::independent);
  EXPECT_EQ(fisher_z_decide(0.05, 100, 0, 1.0 - 1e-12), CiDecision::dependent);
  EXPECT_EQ(fisher_z_decide(0.9, 50, 1, 0.01), CiDecision::dependent);
  EXPECT_THROW(fisher_z_decide(0.1, 5, 2, 0.05), std::invalid_argument);
  EXPECT_THROW(fisher_z_decide(1.0, 100, 0, 0.05), std::invalid_argument);
  EXPECT_THROW(fisher_z_decide(0.1, 100, 0, 0.0), std::invalid_argument);
}

TEST(GammaThreshold, Examples) {
  EXPECT_EQ(gamma_threshold(100, 3, 0.0), 0.0);
  for (long long n : {10LL, 100LL, 1000LL, 100000LL}) {
    for (double c : {0.05, 0.3, 0.9, 1.0}) {
      const double z_n = std::sqrt(static_cast<double>(n - 3)) * std::log((1.0 + c / 3.0) / (1.0 - c / 3.0));
      EXPECT_NEAR(gamma_threshold(n, 0, z_n), c / 3.0, 1e-12);
    }
  }
  EXPECT_THROW(gamma_threshold(4, 1, 1.0), std::invalid_argument);
  EXPECT_THROW(gamma_threshold(100, 0, -1.0), std::invalid_argument);
}

TEST(GammaThreshold, RangeAndMonotonicity) {
  std::mt19937_64 rng(300);
  std::uniform_real_distribution<double> zs(0.0, 12.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const long long n = 10 + trial;
    const int s = trial % 5;
    const double z = zs(rng);
    const double g = gamma_threshold(n, s, z);
    EXPECT_GE(g, 0.0);
    EXPECT_LT(g, 1.0);
    EXPECT_LE(g, gamma_threshold(n, s + 1, z));
    EXPECT_LE(g, gamma_threshold(n, s, z + 0.5));
  }
}

TEST(FisherZ, EquivalentToThresholdAtGamma) {
  std::mt19937_64 rng(301);
  std::uniform_real_distribution<double> rho(-0.999, 0.999);
  std::uniform_real_distribution<double> log_alpha(-8.0, -0.01);
  std::uniform_int_distribution<long long> n_dist(5, 5000);
  int disagreements = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const long long n = n_dist(rng);
    const int s = std::uniform_int_distribution<int>(0, static_cast<int>(std::min<long long>(n - 4, 10)))(rng);
    const double alpha = std::pow(10.0, log_alpha(rng));
    // Half the draws land near the cutoff, where a mismatch would show.
    double r = rho(rng);
    const double gamma = gamma_threshold(n, s, fisher_z_cutoff(alpha));
    if (trial % 2 == 0) r = std::copysign(gamma * (1.0 + 1e-6 * (rho(rng))), r);
    disagreements += fisher_z_decide(r, n, s, alpha) != threshold_decide(r, gamma);
  }
  EXPECT_EQ(disagreements, 0);
}

TEST(CorrelationDecider, SymmetricAndCached) {
  std::mt19937_64 rng(302);
  auto sigma = std::make_shared<const CorrelationMatrix>(testing::random_correlation(6, rng));
  const auto decider = make_correlation_ci_decider(sigma, 200, FisherZRule{0.05});
  EXPECT_EQ(decider->node_count(), 6);
  EXPECT_EQ(decider->max_conditioning_size(), 4);
  for (Node u = 0; u < 6; ++u) {
    for (Node v = 0; v < 6; ++v) {
      if (u == v) continue;
      Node w = 0;
      while (w == u || w == v) ++w;
      const NodeSet s{w};
      const CiOutcome a = decider->decide(u, v, s);
      const CiOutcome b = decider->decide(v, u, s);
      EXPECT_EQ(a.decision, b.decision);
      EXPECT_EQ(a.partial, b.partial);
    }
  }
  EXPECT_EQ(make_correlation_ci_decider(sigma, 6, FisherZRule{0.05})->max_conditioning_size(), 2);
  EXPECT_THROW(make_correlation_ci_decider(sigma, 100, ThresholdRule{2.0}), std::invalid_argument);
  EXPECT_THROW(make_correlation_ci_decider(sigma, 100, FisherZRule{0.0}), std::invalid_argument);
}

TEST(CorrelationDecider, NonPositiveDefiniteMeansDependent) {
  Eigen::MatrixXd m(3, 3);
  m << 1.0, 0.9, 0.9, 0.9, 1.0, -0.9, 0.9, -0.9, 1.0;  // not PD
  auto sigma = std::make_shared<const CorrelationMatrix>(m);
  const auto decider = make_correlation_ci_decider(sigma, 100, ThresholdRule{1.0});
  const CiOutcome out = decider->decide(0, 1, {2});
  EXPECT_TRUE(out.degenerate);
  EXPECT_EQ(out.decision, CiDecision::dependent);
  EXPECT_TRUE(std::isnan(out.partial));
}

TEST(RankDecider, StrongDependenceIsDetected) {
  std::mt19937_64 rng(303);
  std::vector<double> x = testing::random_distinct(300, rng);
  std::vector<double> y(x.size());
  std::vector<double> z = testing::random_distinct(300, rng);
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::exp(x[i]) + 0.1 * z[i];
  const Dataset data = Dataset::from_columns({x, y, z});
  for (auto method : {CorrelationMethod::spearman, CorrelationMethod::kendall}) {
    const auto decider = make_rank_ci_decider(data, {method, FisherZRule{0.01}});
    EXPECT_EQ(decider->decide(0, 1, {}).decision, CiDecision::dependent);
    EXPECT_EQ(decider->decide(1, 0, {2}).decision, decider->decide(0, 1, {2}).decision);
  }
}

TEST(OracleDecider, DelegatesToDSeparation) {
  const Dag chain(3, std::vector<Edge>{{0, 1}, {1, 2}});
  const auto oracle = make_oracle_decider(chain);
  EXPECT_EQ(oracle->decide(0, 2, {1}).decision, CiDecision::independent);
  EXPECT_EQ(oracle->decide(0, 2, {}).decision, CiDecision::dependent);
  const Dag collider(3, std::vector<Edge>{{0, 1}, {2, 1}});
  const auto c = make_oracle_decider(collider);
  EXPECT_EQ(c->decide(0, 2, {}).decision, CiDecision::independent);
  EXPECT_EQ(c->decide(2, 0, {1}).decision, CiDecision::dependent);
}

// Measured, not asserted against a fixed value: agreement between the rank
// test on simulated data and the d-separation oracle at level 0 and 1.
TEST(RankDecider, AgreesWithOracleMostOfTheTimeOnLargeSamples) {
  RngStream rng(304);
  std::size_t agree = 0;
  std::size_t total = 0;
  for (int rep = 0; rep < 10; ++rep) {
    const Dag g = random_dag(6, 0.4, rng);
    const SemModel model = make_sem(g, random_weights(g, rng), Regime::f11);
    const Dataset data = sample_sem(model, 2000, rng);
    const auto rank = make_rank_ci_decider(data, {CorrelationMethod::spearman, FisherZRule{0.001}});
    const auto oracle = make_oracle_decider(g);
    for (Node u = 0; u < 6; ++u) {
      for (Node v = u + 1; v < 6; ++v) {
        for (Node w = 0; w < 6; ++w) {
          const NodeSet s = (w == u || w == v) ? NodeSet{} : NodeSet{w};
          agree += rank->decide(u, v, s).decision == oracle->decide(u, v, s).decision;
          ++total;
        }
      }
    }
  }
  const double rate = static_cast<double>(agree) / static_cast<double>(total);
  RecordProperty("oracle_agreement", std::to_string(rate));
  std::cout << "rank test / oracle agreement: " << rate << '\n';
  EXPECT_GT(rate, 0.8);
}

}  // namespace
}  // namespace rankpc
