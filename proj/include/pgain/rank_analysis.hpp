#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pgain/graph.hpp"
#include "pgain/scores.hpp"
#include "pgain/spectral.hpp"

namespace pgain {

/// 1-based ranks, ascending by value; tied values share the mean of the
/// positions they occupy.
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman's rho as the Pearson correlation of average ranks. Throws
/// undefined_correlation when either input has no rank variance, dimension
/// on length mismatch or fewer than two entries.
double spearman_rho(std::span<const double> a, std::span<const double> b);

/// Also requires both vectors to come from the same graph.
double spearman_rho(const ScoreVector& a, const ScoreVector& b);

/// rho, or nullopt where it is undefined (constant input).
std::optional<double> try_spearman_rho(std::span<const double> a,
                                       std::span<const double> b);

/// Metrics recognised by the table and sweep: degree, eigenvector, pagerank,
/// katz, gpg, epg.
inline const std::vector<std::string> kTableMetrics = {
    "degree", "eigenvector", "pagerank", "katz", "gpg", "epg"};
inline const std::vector<std::string> kSweepMetrics = {
    "degree", "eigenvector", "pagerank", "katz", "epg"};

struct CorrelationTable {
  std::vector<std::string> metrics;
  /// Symmetric, unit diagonal; NaN marks an undefined pair.
  std::vector<std::vector<double>> rho;
  double delta = 0.0;
};

struct SweepResult {
  std::vector<double> delta_grid;
  std::vector<std::string> metrics;
  /// rho[d][m] = rho(GPG at delta_grid[d], metrics[m]); nullopt = undefined.
  std::vector<std::vector<std::optional<double>>> rho;
};

struct AnalysisOptions {
  double alpha = 0.85;
  double tol = 1e-12;
  unsigned threads = 1;
};

/// `count` log-spaced points in [1e-3 / lambda1, 0.999 / lambda1].
std::vector<double> default_delta_grid(double lambda1, std::size_t count = 20);

/// Pairwise rho over kTableMetrics with GPG and Katz evaluated at `delta`.
CorrelationTable correlation_table(const Graph& g, double delta,
                                   const SpectralEstimate& spectral,
                                   const AnalysisOptions& opts = {});

/// rho(GPG, X) for every delta in the grid and every metric X. Metrics that
/// do not depend on delta are computed once.
SweepResult delta_sweep(const Graph& g, std::span<const double> delta_grid,
                        std::span<const std::string> metrics,
                        const SpectralEstimate& spectral,
                        const AnalysisOptions& opts = {});

}  // namespace pgain
