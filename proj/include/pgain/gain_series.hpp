#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pgain/graph.hpp"
#include "pgain/scores.hpp"
#include "pgain/spectral.hpp"

namespace pgain {

inline constexpr double kDefaultSeriesTol = 1e-12;
inline constexpr std::size_t kDefaultGeometricKMax = 100;
/// delta must stay below this fraction of 1 / lambda1.
inline constexpr double kDeltaSafetyMargin = 0.9999;
/// Largest lambda1 for which the exponential series is attempted; the peak
/// term grows like e^lambda1.
inline constexpr double kMaxExponentialLambda = 650.0;

struct SeriesConfig {
  double delta = 0.0;
  /// Maximum walk length; 0 selects the variant default.
  std::size_t k_max = 0;
  double tol = kDefaultSeriesTol;
  /// Reference length for epsilon curves; 0 picks one automatically.
  std::size_t k_ref = 0;
  unsigned threads = 1;
};

enum class SeriesVariant { geometric, exponential };
enum class StopReason { tolerance, k_max };

std::string_view to_string(SeriesVariant v) noexcept;
std::string_view to_string(StopReason r) noexcept;

struct ConvergenceRecord {
  std::size_t k = 0;
  double increment_norm = 0.0;
  double partial_norm = 0.0;
  /// Relative L2 distance to the reference; NaN when no curve was requested.
  double epsilon_k = 0.0;
};

struct ConvergenceReport {
  SeriesVariant variant = SeriesVariant::geometric;
  double delta = 0.0;
  double lambda1 = 0.0;
  std::vector<ConvergenceRecord> records;
  StopReason stop_reason = StopReason::k_max;
  /// Median ratio of successive increments (plain runs) or of successive
  /// epsilon values (curves) over the last third of the usable records.
  double rate_estimate = 0.0;
};

struct GainResult {
  ScoreVector scores;
  ConvergenceReport report;
};

/// Walk-length cap large enough for `tol` at the given decay, never below
/// the default of 100.
std::size_t default_k_max_geometric(double delta, double lambda1,
                                    double tol = kDefaultSeriesTol);
/// max(ceil(4 e lambda1), 30).
std::size_t default_k_max_exponential(double lambda1);

/// sum_{j>=1} delta^{j-1} A^j 1, accumulated through y_1 = A 1 and
/// y_j = delta A y_{j-1}. Stops at the first k with ||y_k|| / ||g_k|| < tol,
/// or at k_max. Throws divergence_risk unless
/// delta < 0.9999 / spectral.lambda1, and domain for negative delta.
GainResult geometric_potential_gain(const Graph& g, const SeriesConfig& cfg,
                                    const SpectralEstimate& spectral);
GainResult geometric_potential_gain(const Graph& g, const SeriesConfig& cfg);

/// sum_{j>=1} A^j / (j-1)! 1, i.e. A exp(A) 1, via t_1 = A 1 and
/// t_j = A t_{j-1} / (j-1). cfg.delta is ignored. Throws overflow_risk when
/// lambda1 exceeds 650.
GainResult exponential_potential_gain(const Graph& g, const SeriesConfig& cfg,
                                      const SpectralEstimate& spectral);
GainResult exponential_potential_gain(const Graph& g, const SeriesConfig& cfg);

/// Epsilon curve for k = 1..cfg.k_max against a surrogate truth summed to
/// cfg.k_ref terms. Throws unreliable_reference if the k_ref increment is
/// still above 1e-12 relative, domain if k_ref <= k_max.
ConvergenceReport convergence_curve(const Graph& g, const SeriesConfig& cfg,
                                    SeriesVariant variant,
                                    const SpectralEstimate& spectral);

/// Same curve against an externally supplied exact value (e.g. a dense
/// solve); cfg.k_ref is unused.
ConvergenceReport convergence_curve(const Graph& g, const SeriesConfig& cfg,
                                    SeriesVariant variant,
                                    const SpectralEstimate& spectral,
                                    std::span<const double> reference);

struct Crossover {
  double delta_c = 0.0;
  /// delta_c < 1 / lambda.
  bool admissible = false;
};

/// delta_c = (e^lambda - 1) / (lambda e^lambda): the decay at which the
/// geometric and exponential eigenvalue transforms agree for `lambda`.
Crossover crossover_delta(double lambda);

struct TransformedSpectra {
  std::vector<double> geometric;    // lambda / (1 - delta lambda)
  std::vector<double> exponential;  // lambda e^lambda
};

TransformedSpectra eigenvalue_transforms(std::span<const double> lambdas,
                                         double delta);

}  // namespace pgain
