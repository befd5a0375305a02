#pragma once

#include <cstddef>

#include "pgain/graph.hpp"
#include "pgain/scores.hpp"

namespace pgain {

struct SpectralEstimate {
  double lambda1 = 0.0;
  std::size_t iterations = 0;
  /// Relative change of the Rayleigh quotient at termination.
  double residual = 0.0;
  bool converged = false;
};

inline constexpr double kDefaultSpectralTol = 1e-10;
inline constexpr std::size_t kDefaultSpectralMaxIters = 10000;

/// Spectral radius of the adjacency matrix by power iteration on A + I,
/// started from the all-ones vector. The shift makes lambda1 + 1 strictly
/// dominant, so bipartite graphs do not oscillate. Stops once successive
/// Rayleigh quotients agree to `tol` relative; on hitting `max_iters` the
/// estimate is returned with converged == false.
SpectralEstimate estimate_spectral_radius(
    const Graph& g, double tol = kDefaultSpectralTol,
    std::size_t max_iters = kDefaultSpectralMaxIters, unsigned threads = 1);

/// Perron vector of A: unit L2 norm, nonnegative, with
/// ||A v - lambda1 v|| <= tol * lambda1 when converged. Disconnected graphs
/// get a warning since the vector is then supported on one component only.
/// `estimate`, when given, receives the matching eigenvalue.
ScoreVector principal_eigenvector(
    const Graph& g, double tol = kDefaultSpectralTol,
    std::size_t max_iters = kDefaultSpectralMaxIters, unsigned threads = 1,
    SpectralEstimate* estimate = nullptr);

}  // namespace pgain
