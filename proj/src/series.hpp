#pragma once

// Shared truncated power-series driver behind the gain and baseline metrics.

#include <functional>
#include <span>
#include <vector>

#include "pgain/gain_series.hpp"
#include "pgain/graph.hpp"

namespace pgain::detail {

struct SeriesSpec {
  std::vector<double> first;      // term with index first_index
  std::size_t first_index = 1;
  std::function<double(std::size_t)> factor;  // t_k = factor(k) * A * t_{k-1}
};

struct SeriesOutcome {
  std::vector<double> sum;
  std::vector<ConvergenceRecord> records;
  StopReason stop = StopReason::k_max;
  double last_relative_increment = 0.0;
};

/// Sums terms first_index..last_index. A positive `tol` enables the
/// relative-increment stop; a non-empty `reference` fills epsilon_k.
SeriesOutcome sum_series(const Graph& g, const SeriesSpec& spec,
                         std::size_t last_index, double tol, unsigned threads,
                         std::span<const double> reference = {});

/// Median of x[k+1] / x[k] over the last third of the prefix where
/// x > floor (and positive).
double median_tail_ratio(std::span<const double> x, double floor);

std::vector<double> ones(std::size_t n);

}  // namespace pgain::detail
