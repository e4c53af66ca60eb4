#include "rankpc/simulate.hpp"

#include <Eigen/LU>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "rankpc/citest.hpp"
#include "rankpc/graph_io.hpp"
#include "rankpc/text.hpp"

namespace rankpc {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> coordinates) {
  std::uint64_t h = mix64(base);
  for (std::uint64_t c : coordinates) h = mix64(h ^ mix64(c));
  return h;
}

RngStream RngStream::split(std::uint64_t stream_id) const { return RngStream(derive_seed(seed_, {stream_id})); }

double RngStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double RngStream::standard_normal() { return normal_(engine_); }

bool RngStream::bernoulli(double prob) { return uniform() < prob; }

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::normal:
      return "normal";
    case Regime::f11:
      return "f11";
    case Regime::contaminated:
      return "contaminated";
  }
  return "unknown";
}

Regime parse_regime(std::string_view name) {
  if (name == "normal") return Regime::normal;
  if (name == "f11") return Regime::f11;
  if (name == "contaminated") return Regime::contaminated;
  throw std::invalid_argument("unknown regime '" + std::string(name) + "'");
}

void SemModel::validate() const {
  const int p = dag.node_count();
  if (weights.rows() != p || weights.cols() != p) throw std::invalid_argument("weight matrix must be p x p");
  for (int u = 0; u < p; ++u) {
    for (int v = 0; v < p; ++v) {
      if (weights(u, v) != 0.0 && !dag.has_edge(u, v)) {
        throw std::invalid_argument("nonzero weight on non-edge " + std::to_string(u) + " -> " + std::to_string(v));
      }
    }
  }
}

SemModel make_sem(Dag dag, Eigen::MatrixXd weights, Regime regime) {
  SemModel model{std::move(dag), std::move(weights), NoiseKind::standard_normal, MarginalTransform::identity};
  if (regime == Regime::f11) model.transform = MarginalTransform::f11;
  if (regime == Regime::contaminated) model.noise = NoiseKind::cauchy_mixture;
  model.validate();
  return model;
}

Dag random_dag(int p, double s, RngStream& rng) {
  if (p < 1) throw std::invalid_argument("random_dag needs p >= 1");
  if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("edge probability must lie in [0, 1]");
  std::vector<Edge> edges;
  for (Node u = 0; u < p; ++u) {
    for (Node v = u + 1; v < p; ++v) {
      if (rng.bernoulli(s)) edges.push_back({u, v});
    }
  }
  return Dag(p, edges);
}

Eigen::MatrixXd random_weights(const Dag& dag, RngStream& rng) {
  const int p = dag.node_count();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(p, p);
  for (const Edge& e : dag.edges()) {
    double u = 0.0;
    do {
      u = rng.uniform();
    } while (u == 0.0);  // keep the open interval (0.1, 1)
    w(e.from, e.to) = 0.1 + 0.9 * u;
  }
  return w;
}

double contaminated_noise(RngStream& rng) {
  if (rng.uniform() < 0.8) return rng.standard_normal();
  return std::tan(std::numbers::pi * (rng.uniform() - 0.5));
}

double f11_transform(double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("f11_transform needs u in (0, 1)");
  if (u <= 0.5) {
    const double t = std::tan(std::numbers::pi * u / 2.0);
    return t * t;
  }
  // tan(pi u / 2) = 1 / tan(pi (1 - u) / 2); 1 - u is exact here.
  const double t = 1.0 / std::tan(std::numbers::pi * (1.0 - u) / 2.0);
  return t * t;
}

double f11_from_standard_normal(double z) {
  if (z <= 0.0) {
    const double t = std::tan(std::numbers::pi * normal_cdf(z) / 2.0);
    return t * t;
  }
  const double upper_tail = 0.5 * std::erfc(z / std::numbers::sqrt2);
  const double t = 1.0 / std::tan(std::numbers::pi * upper_tail / 2.0);
  return t * t;
}

Eigen::MatrixXd implied_covariance_matrix(const SemModel& model) {
  model.validate();
  if (model.noise != NoiseKind::standard_normal) {
    throw std::invalid_argument("implied covariance is undefined under Cauchy contamination");
  }
  const int p = model.dag.node_count();
  // X = B X + eps with B = W^T, so X = (I - B)^-1 eps.
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(p, p) - model.weights.transpose();
  const Eigen::MatrixXd a_inv = a.partialPivLu().solve(Eigen::MatrixXd::Identity(p, p));
  return a_inv * a_inv.transpose();
}

CorrelationMatrix implied_covariance(const SemModel& model) {
  const Eigen::MatrixXd cov = implied_covariance_matrix(model);
  const Eigen::VectorXd inv_sd = cov.diagonal().cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd corr = inv_sd.asDiagonal() * cov * inv_sd.asDiagonal();
  corr = 0.5 * (corr + corr.transpose()).eval();
  corr.diagonal().setOnes();
  return CorrelationMatrix(std::move(corr));
}

Dataset sample_sem(const SemModel& model, std::size_t n, RngStream& rng) {
  model.validate();
  if (n < 1) throw std::invalid_argument("sample size must be positive");
  const int p = model.dag.node_count();
  const auto& order = model.dag.topological_order();
  std::vector<double> values(n * static_cast<std::size_t>(p));
  auto cell = [&](std::size_t row, int col) -> double& { return values[static_cast<std::size_t>(col) * n + row]; };

  for (std::size_t i = 0; i < n; ++i) {
    for (Node v : order) {
      double x = model.noise == NoiseKind::standard_normal ? rng.standard_normal() : contaminated_noise(rng);
      for (Node u : model.dag.parents(v)) x += model.weights(u, v) * cell(i, u);
      cell(i, v) = x;
    }
  }

  if (model.transform == MarginalTransform::f11) {
    const Eigen::MatrixXd cov = implied_covariance_matrix(model);
    for (int v = 0; v < p; ++v) {
      const double sd = std::sqrt(cov(v, v));
      for (std::size_t i = 0; i < n; ++i) cell(i, v) = f11_from_standard_normal(cell(i, v) / sd);
    }
  }
  return Dataset(n, static_cast<std::size_t>(p), std::move(values));
}

void write_sem(std::ostream& out, const SemModel& model) {
  out << "p=" << model.dag.node_count() << '\n';
  for (const Edge& e : model.dag.edges()) {
    out << e.from << " -> " << e.to << " : " << text::format_double(model.weights(e.from, e.to)) << '\n';
  }
}

SemModel read_sem(std::istream& in, Regime regime) {
  const EdgeList list = parse_edge_list(in);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(list.node_count, list.node_count);
  for (const auto& e : list.entries) {
    if (!e.weight) throw std::invalid_argument("SEM edge " + std::to_string(e.from) + " -> " +
                                               std::to_string(e.to) + " has no weight");
    w(e.from, e.to) = *e.weight;
  }
  return make_sem(to_dag(list), std::move(w), regime);
}

}  // namespace rankpc
