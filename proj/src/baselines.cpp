#include "pgain/baselines.hpp"

#include <cmath>

#include "pgain/error.hpp"
#include "series.hpp"

namespace pgain {

namespace {

ScoreVector from_series(const Graph& g, MetricDescriptor metric,
                        detail::SeriesOutcome run, std::size_t k_max) {
  ScoreVector s;
  s.metric = std::move(metric);
  s.values = std::move(run.sum);
  s.graph_fingerprint = g.fingerprint();
  s.converged = run.stop == StopReason::tolerance;
  if (!s.converged) {
    s.warnings.push_back("series truncated at k_max = " + std::to_string(k_max));
  }
  return s;
}

}  // namespace

ScoreVector degree_centrality(const Graph& g) {
  ScoreVector s;
  s.metric = {"degree", {}};
  const auto d = degrees(g);
  s.values.assign(d.begin(), d.end());
  s.graph_fingerprint = g.fingerprint();
  return s;
}

ScoreVector katz(const Graph& g, double delta, const SpectralEstimate& spectral,
                 double tol, std::size_t k_max, unsigned threads) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorKind::domain, "katz: delta must be non-negative");
  }
  if (!(tol > 0.0)) throw Error(ErrorKind::domain, "katz: tol must be > 0");
  if (delta > 0.0 && delta * spectral.lambda1 >= kDeltaSafetyMargin) {
    throw Error(ErrorKind::divergence_risk,
                "katz: delta is not below 0.9999 / lambda1; the Neumann "
                "series would not converge");
  }
  if (k_max == 0) k_max = default_k_max_geometric(delta, spectral.lambda1, tol);

  detail::SeriesSpec spec;
  spec.first = detail::ones(g.num_nodes());
  spec.first_index = 0;
  spec.factor = [delta](std::size_t) { return delta; };
  return from_series(g, {"katz", {{"delta", delta}}},
                     detail::sum_series(g, spec, k_max, tol, threads), k_max);
}

ScoreVector katz(const Graph& g, double delta, double tol, std::size_t k_max,
                 unsigned threads) {
  return katz(g, delta,
              estimate_spectral_radius(g, kDefaultSpectralTol,
                                       kDefaultSpectralMaxIters, threads),
              tol, k_max, threads);
}

ScoreVector pagerank(const Graph& g, double alpha, double tol,
                     std::size_t max_iters, unsigned threads) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::domain, "pagerank: alpha must lie in (0, 1)");
  }
  if (!(tol > 0.0)) throw Error(ErrorKind::domain, "pagerank: tol must be > 0");

  const std::size_t n = g.num_nodes();
  const double teleport = (1.0 - alpha) / static_cast<double>(n);
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  std::vector<double> scaled(n);
  std::vector<double> y(n);

  ScoreVector s;
  s.metric = {"pagerank", {{"alpha", alpha}}};
  s.graph_fingerprint = g.fingerprint();
  s.converged = false;

  for (std::size_t it = 0; it < max_iters; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      scaled[i] = x[i] / static_cast<double>(g.degree(i));
    }
    spmv(g, scaled, y, threads);
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = teleport + alpha * y[i];
      change += std::abs(v - x[i]);
      x[i] = v;
    }
    if (change < tol) {
      s.converged = true;
      break;
    }
  }
  double total = 0.0;
  for (double v : x) total += v;
  for (double& v : x) v /= total;
  s.values = std::move(x);
  if (!s.converged) {
    s.warnings.push_back("pagerank did not reach L1 change < tol within " +
                         std::to_string(max_iters) + " iterations");
  }
  return s;
}

ScoreVector eigenvector_centrality(const Graph& g, double tol,
                                   std::size_t max_iters, unsigned threads) {
  return principal_eigenvector(g, tol, max_iters, threads);
}

ScoreVector communicability_centrality(const Graph& g,
                                       const SpectralEstimate& spectral,
                                       double tol, std::size_t k_max,
                                       unsigned threads) {
  if (spectral.lambda1 > kMaxExponentialLambda) {
    throw Error(ErrorKind::overflow_risk,
                "communicability: lambda1 exceeds 650; exp(A) 1 would overflow");
  }
  if (!(tol > 0.0)) {
    throw Error(ErrorKind::domain, "communicability: tol must be > 0");
  }
  if (k_max == 0) k_max = default_k_max_exponential(spectral.lambda1) + 1;

  detail::SeriesSpec spec;
  spec.first = detail::ones(g.num_nodes());
  spec.first_index = 0;
  spec.factor = [](std::size_t k) { return 1.0 / static_cast<double>(k); };
  return from_series(g, {"communicability", {}},
                     detail::sum_series(g, spec, k_max, tol, threads), k_max);
}

ScoreVector communicability_centrality(const Graph& g, double tol,
                                       std::size_t k_max, unsigned threads) {
  return communicability_centrality(
      g,
      estimate_spectral_radius(g, kDefaultSpectralTol, kDefaultSpectralMaxIters,
                               threads),
      tol, k_max, threads);
}

}  // namespace pgain
