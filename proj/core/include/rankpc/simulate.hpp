#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <random>
#include <string_view>

#include "rankpc/correlation.hpp"
#include "rankpc/dataset.hpp"
#include "rankpc/graph.hpp"

namespace rankpc {

/// Deterministic random stream. The seed fully determines the sequence;
/// split() derives independent child streams (one per replicate).
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  RngStream split(std::uint64_t stream_id) const;

  /// Uniform on [0, 1).
  double uniform();
  double standard_normal();
  bool bernoulli(double prob);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Order-sensitive hash of a base seed and a list of coordinates.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> coordinates);

enum class NoiseKind { standard_normal, cauchy_mixture };
enum class MarginalTransform { identity, f11 };

/// The three data-generating regimes of the simulation study.
enum class Regime { normal, f11, contaminated };

std::string_view to_string(Regime r);
Regime parse_regime(std::string_view name);

/// Linear structural equation model X_v = sum_{u -> v} w(u, v) X_u + eps_v.
/// `weights(u, v)` is the coefficient of edge u -> v and zero elsewhere.
struct SemModel {
  Dag dag;
  Eigen::MatrixXd weights;
  NoiseKind noise = NoiseKind::standard_normal;
  MarginalTransform transform = MarginalTransform::identity;

  /// Throws std::invalid_argument if weights has the wrong shape or a
  /// nonzero entry off the edge set.
  void validate() const;
};

SemModel make_sem(Dag dag, Eigen::MatrixXd weights, Regime regime);

/// Includes each u -> v, u < v, independently with probability s.
Dag random_dag(int p, double s, RngStream& rng);

/// Independent Uniform(0.1, 1) coefficient per edge.
Eigen::MatrixXd random_weights(const Dag& dag, RngStream& rng);

/// Draws n observations row by row: noise in topological order, then the
/// structural equations, then the marginal transform column by column. The
/// transform consumes no randomness, so for a fixed seed the f11 regime is a
/// strictly increasing image of the normal regime.
Dataset sample_sem(const SemModel& model, std::size_t n, RngStream& rng);

/// Cov(X) for unit-variance noise. Throws std::invalid_argument under Cauchy
/// contamination, where the variance does not exist.
Eigen::MatrixXd implied_covariance_matrix(const SemModel& model);

/// implied_covariance_matrix normalized to unit diagonal.
CorrelationMatrix implied_covariance(const SemModel& model);

/// F(1,1) quantile tan^2(pi u / 2). Throws outside (0, 1).
double f11_transform(double u);

/// f11_transform(Phi(z)) evaluated through the tail that keeps precision, so
/// it stays strictly increasing for |z| <= 26. Further out the exact value
/// underflows to 0 or overflows to infinity.
double f11_from_standard_normal(double z);

/// 0.8 / 0.2 mixture of standard normal and standard Cauchy.
double contaminated_noise(RngStream& rng);

/// Edge list with weights, "u -> v : w".
void write_sem(std::ostream& out, const SemModel& model);
/// Reads a weighted edge list; noise and transform come from `regime`.
SemModel read_sem(std::istream& in, Regime regime);

}  // namespace rankpc
