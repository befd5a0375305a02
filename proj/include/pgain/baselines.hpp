#pragma once

#include <cstddef>

#include "pgain/gain_series.hpp"
#include "pgain/graph.hpp"
#include "pgain/scores.hpp"
#include "pgain/spectral.hpp"

namespace pgain {

inline constexpr double kDefaultPageRankAlpha = 0.85;
inline constexpr double kDefaultPageRankTol = 1e-12;
inline constexpr std::size_t kDefaultPageRankMaxIters = 1000;

ScoreVector degree_centrality(const Graph& g);

/// (I - delta A)^{-1} 1 as the truncated Neumann series sum_{j>=0}
/// delta^j A^j 1, the j = 0 term included. k_max = 0 picks the same default
/// as the geometric potential gain.
ScoreVector katz(const Graph& g, double delta, const SpectralEstimate& spectral,
                 double tol = kDefaultSeriesTol, std::size_t k_max = 0,
                 unsigned threads = 1);
ScoreVector katz(const Graph& g, double delta, double tol = kDefaultSeriesTol,
                 std::size_t k_max = 0, unsigned threads = 1);

/// Stationary vector of the damped random walk with uniform teleportation:
/// p = (1 - alpha)/n sum_k alpha^k (D^{-1} A)^T^k 1. Entries sum to one.
/// Iterates until the L1 change drops below `tol`.
ScoreVector pagerank(const Graph& g, double alpha = kDefaultPageRankAlpha,
                     double tol = kDefaultPageRankTol,
                     std::size_t max_iters = kDefaultPageRankMaxIters,
                     unsigned threads = 1);

ScoreVector eigenvector_centrality(
    const Graph& g, double tol = kDefaultSpectralTol,
    std::size_t max_iters = kDefaultSpectralMaxIters, unsigned threads = 1);

/// exp(A) 1 = sum_{j>=0} A^j / j! 1. Same overflow guard as the exponential
/// potential gain.
ScoreVector communicability_centrality(const Graph& g,
                                       const SpectralEstimate& spectral,
                                       double tol = kDefaultSeriesTol,
                                       std::size_t k_max = 0,
                                       unsigned threads = 1);
ScoreVector communicability_centrality(const Graph& g,
                                       double tol = kDefaultSeriesTol,
                                       std::size_t k_max = 0,
                                       unsigned threads = 1);

}  // namespace pgain
