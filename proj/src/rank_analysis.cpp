#include "pgain/rank_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "pgain/baselines.hpp"
#include "pgain/error.hpp"
#include "pgain/gain_series.hpp"

namespace pgain {

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    // positions i..j-1 (0-based) -> ranks i+1..j
    const double r = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = r;
    i = j;
  }
  return ranks;
}

std::optional<double> try_spearman_rho(std::span<const double> a,
                                       std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::dimension, "spearman: vectors differ in length");
  }
  if (a.size() < 2) {
    throw Error(ErrorKind::dimension, "spearman: need at least two entries");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::isnan(a[i]) || std::isnan(b[i])) {
      throw Error(ErrorKind::domain, "spearman: NaN score");
    }
  }
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  const double mean = 0.5 * static_cast<double>(a.size() + 1);
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    const double da = ra[i] - mean;
    const double db = rb[i] - mean;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) return std::nullopt;
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

double spearman_rho(std::span<const double> a, std::span<const double> b) {
  auto rho = try_spearman_rho(a, b);
  if (!rho) {
    throw Error(ErrorKind::undefined_correlation,
                "spearman: constant input has no rank variance");
  }
  return *rho;
}

double spearman_rho(const ScoreVector& a, const ScoreVector& b) {
  if (a.graph_fingerprint != b.graph_fingerprint) {
    throw Error(ErrorKind::domain,
                "spearman: score vectors belong to different graphs");
  }
  return spearman_rho(a.values, b.values);
}

std::vector<double> default_delta_grid(double lambda1, std::size_t count) {
  if (!(lambda1 > 0.0)) {
    throw Error(ErrorKind::domain, "delta grid needs a positive lambda1");
  }
  const double lo = std::log(1e-3 / lambda1);
  const double hi = std::log(0.999 / lambda1);
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = count > 1 ? static_cast<double>(i) / (count - 1) : 1.0;
    grid[i] = std::exp(lo + t * (hi - lo));
  }
  if (count > 0) grid.back() = 0.999 / lambda1;
  return grid;
}

namespace {

ScoreVector compute_metric(const Graph& g, const std::string& name,
                           double delta, const SpectralEstimate& spectral,
                           const AnalysisOptions& opts) {
  if (name == "degree") return degree_centrality(g);
  if (name == "eigenvector") {
    return eigenvector_centrality(g, kDefaultSpectralTol,
                                  kDefaultSpectralMaxIters, opts.threads);
  }
  if (name == "pagerank") {
    return pagerank(g, opts.alpha, opts.tol, kDefaultPageRankMaxIters,
                    opts.threads);
  }
  if (name == "katz") return katz(g, delta, spectral, opts.tol, 0, opts.threads);
  SeriesConfig cfg;
  cfg.delta = delta;
  cfg.tol = opts.tol;
  cfg.threads = opts.threads;
  if (name == "gpg") return geometric_potential_gain(g, cfg, spectral).scores;
  if (name == "epg") return exponential_potential_gain(g, cfg, spectral).scores;
  throw Error(ErrorKind::domain, "unknown metric '" + name + "'");
}

bool depends_on_delta(const std::string& name) {
  return name == "katz" || name == "gpg";
}

}  // namespace

CorrelationTable correlation_table(const Graph& g, double delta,
                                   const SpectralEstimate& spectral,
                                   const AnalysisOptions& opts) {
  CorrelationTable t;
  t.metrics = kTableMetrics;
  t.delta = delta;
  std::vector<ScoreVector> scores;
  for (const auto& m : t.metrics) {
    scores.push_back(compute_metric(g, m, delta, spectral, opts));
  }
  const std::size_t k = t.metrics.size();
  t.rho.assign(k, std::vector<double>(k, NAN));
  for (std::size_t i = 0; i < k; ++i) {
    t.rho[i][i] = 1.0;
    for (std::size_t j = i + 1; j < k; ++j) {
      const auto r = try_spearman_rho(scores[i].values, scores[j].values);
      t.rho[i][j] = t.rho[j][i] = r.value_or(NAN);
    }
  }
  return t;
}

SweepResult delta_sweep(const Graph& g, std::span<const double> delta_grid,
                        std::span<const std::string> metrics,
                        const SpectralEstimate& spectral,
                        const AnalysisOptions& opts) {
  for (std::size_t i = 0; i < delta_grid.size(); ++i) {
    if (i > 0 && !(delta_grid[i] > delta_grid[i - 1])) {
      throw Error(ErrorKind::domain, "delta grid must be strictly increasing");
    }
    if (!(delta_grid[i] >= 0.0) ||
        delta_grid[i] * spectral.lambda1 >= kDeltaSafetyMargin) {
      throw Error(ErrorKind::divergence_risk,
                  "delta grid entries must lie in [0, 0.9999 / lambda1)");
    }
  }
  for (const auto& m : metrics) {
    if (std::find(kSweepMetrics.begin(), kSweepMetrics.end(), m) ==
        kSweepMetrics.end()) {
      throw Error(ErrorKind::domain, "unknown sweep metric '" + m + "'");
    }
  }

  SweepResult out;
  out.delta_grid.assign(delta_grid.begin(), delta_grid.end());
  out.metrics.assign(metrics.begin(), metrics.end());

  std::map<std::string, ScoreVector> fixed;
  for (const auto& m : metrics) {
    if (!depends_on_delta(m)) {
      fixed.emplace(m, compute_metric(g, m, 0.0, spectral, opts));
    }
  }
  for (double delta : delta_grid) {
    const ScoreVector gpg = compute_metric(g, "gpg", delta, spectral, opts);
    std::vector<std::optional<double>> row;
    for (const auto& m : metrics) {
      if (depends_on_delta(m)) {
        const ScoreVector other = compute_metric(g, m, delta, spectral, opts);
        row.push_back(try_spearman_rho(gpg.values, other.values));
      } else {
        row.push_back(try_spearman_rho(gpg.values, fixed.at(m).values));
      }
    }
    out.rho.push_back(std::move(row));
  }
  return out;
}

}  // namespace pgain
