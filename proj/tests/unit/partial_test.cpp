#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "rankpc/combinations.hpp"
#include "rankpc/errors.hpp"
#include "rankpc/partial.hpp"

namespace rankpc {
namespace {

CorrelationMatrix equicorrelated(int p, double r) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(p, p, r);
  m.diagonal().setOnes();
  return CorrelationMatrix(m);
}

CorrelationMatrix two_by_two(double r) { return equicorrelated(2, r); }

CorrelationMatrix random_sigma(int p, std::mt19937_64& rng) {
  return CorrelationMatrix(testing::random_correlation(p, rng));
}

std::vector<Node> draw_subset(std::vector<Node> pool, std::size_t k, std::mt19937_64& rng) {
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(k);
  return pool;
}

TEST(PartialCorrelation, Examples) {
  const auto id = CorrelationMatrix::identity(4);
  EXPECT_EQ(partial_corr_recursive(id, {0, 1, {2, 3}}), 0.0);
  EXPECT_EQ(partial_corr_inverse(id, {0, 1, {2, 3}}), 0.0);

  const auto eq = equicorrelated(3, 0.5);
  EXPECT_NEAR(partial_corr_recursive(eq, {0, 1, {2}}), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(partial_corr_inverse(eq, {0, 1, {2}}), 1.0 / 3.0, 1e-14);

  EXPECT_EQ(partial_corr_recursive(eq, {0, 2, {}}), 0.5);
  EXPECT_NEAR(partial_corr_inverse(two_by_two(0.9), {0, 1, {}}), 0.9, 1e-14);
}

TEST(PartialCorrelation, InvalidQueries) {
  const auto id = CorrelationMatrix::identity(3);
  EXPECT_THROW(partial_corr_inverse(id, {0, 0, {}}), std::invalid_argument);
  EXPECT_THROW(partial_corr_inverse(id, {0, 1, {1}}), std::invalid_argument);
  EXPECT_THROW(partial_corr_recursive(id, {0, 3, {}}), std::out_of_range);
}

TEST(PartialCorrelation, DegenerateInputsRaise) {
  // X2 = X0 exactly: conditioning on 2 kills the denominator.
  Eigen::MatrixXd m(3, 3);
  m << 1.0, 0.3, 1.0, 0.3, 1.0, 0.3, 1.0, 0.3, 1.0;
  const CorrelationMatrix sigma(m);
  EXPECT_THROW(partial_corr_recursive(sigma, {0, 1, {2}}), DegenerateCorrelationError);
  try {
    partial_corr_inverse(sigma, {0, 1, {2}});
    FAIL() << "expected a conditioning error";
  } catch (const ConditioningError& e) {
    EXPECT_EQ(e.indices(), (std::vector<int>{0, 1, 2}));
  }
}

TEST(PartialCorrelation, RecursionMatchesInversion) {
  std::mt19937_64 rng(200);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int p = 2 + trial % 7;
    const auto sigma = random_sigma(p, rng);
    for (Node u = 0; u < p; ++u) {
      for (Node v = u + 1; v < p; ++v) {
        std::vector<Node> pool;
        for (Node x = 0; x < p; ++x) {
          if (x != u && x != v) pool.push_back(x);
        }
        for (std::size_t k = 0; k <= std::min<std::size_t>(4, pool.size()); ++k) {
          const PartialQuery q{u, v, NodeSet(draw_subset(pool, k, rng))};
          ASSERT_NEAR(partial_corr_recursive(sigma, q), partial_corr_inverse(sigma, q), 1e-10);
          ++checked;
        }
      }
    }
  }
  EXPECT_GT(checked, 3000);
}

TEST(PartialCorrelation, EliminationOrderDoesNotMatter) {
  std::mt19937_64 rng(201);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = 4 + trial % 5;
    const auto sigma = random_sigma(p, rng);
    std::vector<Node> perm(p);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Node> rest(perm.begin() + 2, perm.end());
    const PartialQuery q{0, 1, NodeSet(draw_subset(rest, std::min(4, p - 2), rng))};
    const double baseline = partial_corr_recursive(sigma, q);
    std::shuffle(perm.begin(), perm.end(), rng);
    EXPECT_NEAR(partial_corr_recursive(sigma, q, perm), baseline, 1e-10);
  }
  const std::vector<Node> not_a_permutation{0, 0, 1};
  EXPECT_THROW(partial_corr_recursive(CorrelationMatrix::identity(3), {0, 1, {}}, not_a_permutation),
               std::invalid_argument);
}

TEST(CMin, Examples) {
  EXPECT_FALSE(c_min(CorrelationMatrix::identity(4), 3).has_value());
  EXPECT_NEAR(*c_min(two_by_two(0.4), 2), 0.4, 1e-15);
  EXPECT_NEAR(*c_min(equicorrelated(3, 0.5), 3), 1.0 / 3.0, 1e-14);
  EXPECT_THROW(c_min(CorrelationMatrix::identity(3), 1), std::invalid_argument);
  EXPECT_THROW(c_min(CorrelationMatrix::identity(3), 4), std::invalid_argument);
}

TEST(CMin, MatchesExhaustiveMinimum) {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 20; ++trial) {
    const int p = 3 + trial % 3;
    const auto sigma = random_sigma(p, rng);
    const int q = 2 + trial % (p - 1);
    double best = 2.0;
    // all (u, v, S) with |S| <= q - 2 via bitmasks
    for (Node u = 0; u < p; ++u) {
      for (Node v = u + 1; v < p; ++v) {
        for (unsigned mask = 0; mask < (1u << p); ++mask) {
          if ((mask >> u & 1u) || (mask >> v & 1u) || std::popcount(mask) > q - 2) continue;
          std::vector<Node> s;
          for (Node x = 0; x < p; ++x) {
            if (mask >> x & 1u) s.push_back(x);
          }
          best = std::min(best, std::abs(partial_corr_recursive(sigma, {u, v, NodeSet(s)})));
        }
      }
    }
    EXPECT_NEAR(*c_min(sigma, q), best, 1e-12);
  }
}

TEST(LambdaMin, Examples) {
  EXPECT_NEAR(lambda_min_q(CorrelationMatrix::identity(5), 3), 1.0, 1e-14);
  EXPECT_NEAR(lambda_min_q(two_by_two(0.5), 2), 0.5, 1e-14);
  std::mt19937_64 rng(203);
  for (int trial = 0; trial < 50; ++trial) {
    const auto sigma = random_sigma(5, rng);
    EXPECT_LE(lambda_min_q(sigma, 3), lambda_min_q(sigma, 2) + 1e-14);
  }
}

// A principal submatrix has its eigenvalues interlaced inside those of the
// bigger matrix, and its partial correlations are a subset of the bigger
// matrix's. Both minima therefore shrink (weakly) as the index set grows.
TEST(Conditioning, MinimaShrinkAsIndexSetGrows) {
  std::mt19937_64 rng(204);
  for (int trial = 0; trial < 100; ++trial) {
    const int p = 6;
    const auto sigma = random_sigma(p, rng);
    std::vector<int> all(p);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<int> big(all.begin(), all.begin() + 5);
    std::vector<int> small(big.begin(), big.begin() + 3);
    std::sort(big.begin(), big.end());
    std::sort(small.begin(), small.end());
    const CorrelationMatrix s_small(sigma.principal(small));
    const CorrelationMatrix s_big(sigma.principal(big));
    EXPECT_LE(min_eigenvalue(s_big.matrix()), min_eigenvalue(s_small.matrix()) + 1e-12);
    EXPECT_LE(*c_min(s_big, 5), *c_min(s_small, 3) + 1e-12);
    EXPECT_LE(lambda_min_q(sigma, 5), lambda_min_q(sigma, 3) + 1e-12);
  }
}

TEST(LambdaMin, AtMostOneForCorrelationMatrices) {
  std::mt19937_64 rng(205);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = 2 + trial % 7;
    const auto sigma = random_sigma(p, rng);
    for (int q = 2; q <= p; ++q) EXPECT_LE(lambda_min_q(sigma, q), 1.0 + 1e-12);
  }
}

TEST(InverseDiagonal, AtLeastOne) {
  std::mt19937_64 rng(206);
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::MatrixXd sigma = testing::random_correlation(2 + trial % 9, rng);
    const Eigen::VectorXd diag = sigma.inverse().diagonal();
    ASSERT_GE(diag.minCoeff(), 1.0 - 1e-9);
  }
}

TEST(ErrorBound, Examples) {
  const double b = 2.0 / (9.0 * std::numbers::pi * std::numbers::pi);
  const BoundInputs in{2.0, b, 10, 1000, 4, 0.5, 0.5};
  EXPECT_NEAR(rpc_error_bound(in), 99.94, 0.005);
  BoundInputs tiny_c = in;
  tiny_c.c = 1e-300;
  EXPECT_NEAR(rpc_error_bound(tiny_c), 100.0, 1e-12);
  BoundInputs more_n = in;
  more_n.n = 100000;
  EXPECT_LT(rpc_error_bound(more_n), rpc_error_bound(in));
}

TEST(ErrorBound, ValidatesInputs) {
  const BoundInputs good{2.0, 0.1, 10, 100, 4, 0.5, 0.5};
  auto with = [&](auto mutate) {
    BoundInputs b = good;
    mutate(b);
    return b;
  };
  EXPECT_THROW(rpc_error_bound(with([](BoundInputs& b) { b.n = 4; })), std::invalid_argument);
  EXPECT_THROW(rpc_error_bound(with([](BoundInputs& b) { b.c = 1.5; })), std::invalid_argument);
  EXPECT_THROW(rpc_error_bound(with([](BoundInputs& b) { b.lambda = 0.0; })), std::invalid_argument);
  EXPECT_THROW(rpc_error_bound(with([](BoundInputs& b) { b.a = -1.0; })), std::invalid_argument);
}

TEST(ErrorBound, RelaxedFormDominatesUnrelaxed) {
  std::mt19937_64 rng(207);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const BoundInputs in{unit(rng) * 4, unit(rng), 2 + trial % 50, 10 + trial * 7, 2 + trial % 6, unit(rng),
                         unit(rng)};
    // eps >= c lambda^2 / (6q), so the relaxed exponent is never larger.
    EXPECT_GE(rpc_uniform_error(in.c, in.lambda, in.q), in.c * in.lambda * in.lambda / (6.0 * in.q) - 1e-15);
    EXPECT_LE(rpc_error_bound_unrelaxed(in), rpc_error_bound(in) * (1 + 1e-12));
  }
}

TEST(ProofQuantities, ThresholdAndUniformError) {
  EXPECT_EQ(rpc_proof_threshold(0.4), 0.2);
  const double c = 0.4;
  const double lambda = 0.6;
  const int q = 3;
  EXPECT_DOUBLE_EQ(rpc_uniform_error(c, lambda, q), c * lambda * lambda / ((4 + c) * q + lambda * c * q));
}

TEST(PerturbedInverseBound, HoldsOnRandomAdmissibleInputs) {
  std::mt19937_64 rng(208);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const int q0 = 3;
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(q0, q0);
  const Eigen::MatrixXd sigma0 = testing::random_correlation(q0, rng);
  const double lmin0 = min_eigenvalue(sigma0);
  EXPECT_TRUE(lemma1_bound_check(sigma0, zero, 0.5 * lmin0 / q0));
  EXPECT_THROW(lemma1_bound_check(sigma0, zero, lmin0 / q0), std::invalid_argument);

  for (int trial = 0; trial < 1000; ++trial) {
    const int q = 2 + trial % 5;
    const Eigen::MatrixXd sigma = testing::random_correlation(q, rng);
    const double lmin = min_eigenvalue(sigma);
    const double eps = lmin / q * (0.05 + 0.9 * (0.5 + 0.5 * unit(rng)));
    Eigen::MatrixXd e(q, q);
    for (int i = 0; i < q; ++i) {
      for (int j = 0; j < q; ++j) e(i, j) = unit(rng) * eps * 0.999;
    }
    ASSERT_TRUE(lemma1_bound_check(sigma, e, eps)) << "trial " << trial;
  }
}

TEST(NormalizedEntryBound, HoldsOnRandomAdmissibleInputs) {
  std::mt19937_64 rng(209);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::Matrix2d a;
  a << 1.5, 0.4, 0.4, 1.2;
  EXPECT_TRUE(lemma3_bound_check(a, a, 0.1));
  EXPECT_THROW(lemma3_bound_check(a, a, 1.0), std::invalid_argument);

  for (int trial = 0; trial < 1000; ++trial) {
    const double a11 = 1.0 + 3.0 * unit(rng);
    const double a22 = 1.0 + 3.0 * unit(rng);
    const double a12 = (2.0 * unit(rng) - 1.0) * 0.99 * std::sqrt(a11 * a22);
    a << a11, a12, a12, a22;
    const double delta = 0.01 + 0.98 * unit(rng);
    Eigen::Matrix2d b = a;
    const double d11 = (2.0 * unit(rng) - 1.0) * delta * 0.999;
    const double d22 = (2.0 * unit(rng) - 1.0) * delta * 0.999;
    const double d12 = (2.0 * unit(rng) - 1.0) * delta * 0.999;
    b(0, 0) += d11;
    b(1, 1) += d22;
    b(0, 1) += d12;
    b(1, 0) += d12;
    ASSERT_TRUE(lemma3_bound_check(a, b, delta)) << "trial " << trial;
  }
}

TEST(Combinations, LexicographicOrderAndEarlyStop) {
  std::vector<std::vector<int>> seen;
  for_each_combination(std::vector<int>{1, 2, 3, 4}, 2, [&](const std::vector<int>& c) {
    seen.push_back(c);
    return false;
  });
  EXPECT_EQ(seen, (std::vector<std::vector<int>>{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}));
  int calls = 0;
  EXPECT_TRUE(for_each_combination(std::vector<int>{1, 2, 3}, 1, [&](const std::vector<int>&) { return ++calls == 2; }));
  EXPECT_EQ(calls, 2);
  EXPECT_FALSE(for_each_combination(std::vector<int>{1}, 2, [](const std::vector<int>&) { return true; }));
}

}  // namespace
}  // namespace rankpc
