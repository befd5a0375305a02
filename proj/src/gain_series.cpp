#include "pgain/gain_series.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "pgain/error.hpp"
#include "pgain/vector_ops.hpp"
#include "series.hpp"

namespace pgain {

namespace {

// Target relative size of the last reference increment, and the level
// above which the reference is rejected.
constexpr double kReferenceTarget = 1e-16;
constexpr double kReferenceReject = 1e-12;
// Epsilon values below this are rounding noise and carry no rate signal.
constexpr double kEpsilonNoiseFloor = 1e-13;

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void check_tol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw Error(ErrorKind::domain, "series tolerance must be positive");
  }
}

void check_geometric_delta(double delta, double lambda1) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorKind::domain,
                "delta must be a finite non-negative number, got " +
                    fmt_double(delta));
  }
  if (delta > 0.0 && delta * lambda1 >= kDeltaSafetyMargin) {
    throw Error(ErrorKind::divergence_risk,
                "delta = " + fmt_double(delta) + " is not below 0.9999/lambda1 = " +
                    fmt_double(kDeltaSafetyMargin / lambda1) +
                    "; the Neumann series would not converge");
  }
}

void check_exponential_lambda(double lambda1) {
  if (lambda1 > kMaxExponentialLambda) {
    throw Error(ErrorKind::overflow_risk,
                "lambda1 = " + fmt_double(lambda1) +
                    " exceeds 650; the exponential series would overflow. "
                    "Use the geometric potential gain instead");
  }
}

detail::SeriesSpec geometric_spec(const Graph& g, double delta) {
  detail::SeriesSpec s;
  const auto d = degrees(g);
  s.first.assign(d.begin(), d.end());
  s.first_index = 1;
  s.factor = [delta](std::size_t) { return delta; };
  return s;
}

detail::SeriesSpec exponential_spec(const Graph& g) {
  detail::SeriesSpec s;
  const auto d = degrees(g);
  s.first.assign(d.begin(), d.end());
  s.first_index = 1;
  s.factor = [](std::size_t k) { return 1.0 / static_cast<double>(k - 1); };
  return s;
}

std::size_t resolve_k_max(const SeriesConfig& cfg, SeriesVariant v,
                          double lambda1) {
  if (cfg.k_max > 0) return cfg.k_max;
  return v == SeriesVariant::geometric
             ? default_k_max_geometric(cfg.delta, lambda1, cfg.tol)
             : default_k_max_exponential(lambda1);
}

std::size_t default_k_ref(SeriesVariant v, double delta, double lambda1,
                          std::size_t k_max) {
  std::size_t k = k_max + 1;
  if (v == SeriesVariant::geometric) {
    const double rate = delta * lambda1;
    if (rate > 0.0) {
      // relative increment at k is at most rate^(k-1)
      const double need = std::log(kReferenceTarget) / std::log(rate) + 2.0;
      k = std::max(k, static_cast<std::size_t>(std::ceil(need)));
    }
  } else if (lambda1 > 0.0) {
    // relative increment at k is at most lambda^(k-1) / (k-1)!
    const double target = std::log(kReferenceTarget);
    std::size_t j = 1;
    while ((j - 1) * std::log(lambda1) - std::lgamma(static_cast<double>(j)) >
           target) {
      ++j;
    }
    k = std::max(k, j + 1);
  }
  return k;
}

ScoreVector make_scores(const Graph& g, MetricDescriptor metric,
                        detail::SeriesOutcome& run, std::size_t k_max) {
  ScoreVector s;
  s.metric = std::move(metric);
  s.values = std::move(run.sum);
  s.graph_fingerprint = g.fingerprint();
  s.converged = run.stop == StopReason::tolerance;
  if (!s.converged) {
    s.warnings.push_back("series truncated at k_max = " +
                         std::to_string(k_max) +
                         " with relative increment " +
                         fmt_double(run.last_relative_increment));
  }
  return s;
}

double increment_rate(const std::vector<ConvergenceRecord>& records) {
  std::vector<double> inc;
  inc.reserve(records.size());
  for (const auto& r : records) inc.push_back(r.increment_norm);
  return detail::median_tail_ratio(inc, 0.0);
}

ConvergenceReport curve_against(const Graph& g, const SeriesConfig& cfg,
                                SeriesVariant variant, double lambda1,
                                std::size_t k_max,
                                std::span<const double> reference) {
  const auto spec = variant == SeriesVariant::geometric
                        ? geometric_spec(g, cfg.delta)
                        : exponential_spec(g);
  auto run = detail::sum_series(g, spec, k_max, 0.0, cfg.threads, reference);

  ConvergenceReport rep;
  rep.variant = variant;
  rep.delta = variant == SeriesVariant::geometric ? cfg.delta : NAN;
  rep.lambda1 = lambda1;
  rep.records = std::move(run.records);
  rep.stop_reason = StopReason::k_max;
  std::vector<double> eps;
  eps.reserve(rep.records.size());
  for (const auto& r : rep.records) eps.push_back(r.epsilon_k);
  rep.rate_estimate = detail::median_tail_ratio(eps, kEpsilonNoiseFloor);
  return rep;
}

void check_variant_preconditions(const SeriesConfig& cfg, SeriesVariant v,
                                 double lambda1) {
  check_tol(cfg.tol);
  if (v == SeriesVariant::geometric) {
    check_geometric_delta(cfg.delta, lambda1);
  } else {
    check_exponential_lambda(lambda1);
  }
}

}  // namespace

std::string_view to_string(SeriesVariant v) noexcept {
  return v == SeriesVariant::geometric ? "geometric" : "exponential";
}

std::string_view to_string(StopReason r) noexcept {
  return r == StopReason::tolerance ? "tolerance" : "k_max";
}

std::size_t default_k_max_geometric(double delta, double lambda1, double tol) {
  const double rate = delta * lambda1;
  if (!(rate > 0.0) || rate >= 1.0 || !(tol > 0.0)) return kDefaultGeometricKMax;
  const double need = std::ceil(std::log(tol) / std::log(rate)) + 1.0;
  return std::max(kDefaultGeometricKMax, static_cast<std::size_t>(need));
}

std::size_t default_k_max_exponential(double lambda1) {
  const auto k = static_cast<std::size_t>(std::ceil(4.0 * std::exp(1.0) * lambda1));
  return std::max<std::size_t>(k, 30);
}

GainResult geometric_potential_gain(const Graph& g, const SeriesConfig& cfg,
                                    const SpectralEstimate& spectral) {
  check_variant_preconditions(cfg, SeriesVariant::geometric, spectral.lambda1);
  const std::size_t k_max =
      resolve_k_max(cfg, SeriesVariant::geometric, spectral.lambda1);

  auto run = detail::sum_series(g, geometric_spec(g, cfg.delta), k_max,
                                cfg.tol, cfg.threads);
  GainResult out;
  out.report.variant = SeriesVariant::geometric;
  out.report.delta = cfg.delta;
  out.report.lambda1 = spectral.lambda1;
  out.report.stop_reason = run.stop;
  out.report.records = run.records;
  out.report.rate_estimate = increment_rate(out.report.records);
  out.scores = make_scores(g, {"gpg", {{"delta", cfg.delta}}}, run, k_max);
  return out;
}

GainResult geometric_potential_gain(const Graph& g, const SeriesConfig& cfg) {
  return geometric_potential_gain(
      g, cfg,
      estimate_spectral_radius(g, kDefaultSpectralTol, kDefaultSpectralMaxIters,
                               cfg.threads));
}

GainResult exponential_potential_gain(const Graph& g, const SeriesConfig& cfg,
                                      const SpectralEstimate& spectral) {
  check_variant_preconditions(cfg, SeriesVariant::exponential,
                              spectral.lambda1);
  const std::size_t k_max =
      resolve_k_max(cfg, SeriesVariant::exponential, spectral.lambda1);

  auto run = detail::sum_series(g, exponential_spec(g), k_max, cfg.tol,
                                cfg.threads);
  GainResult out;
  out.report.variant = SeriesVariant::exponential;
  out.report.delta = NAN;
  out.report.lambda1 = spectral.lambda1;
  out.report.stop_reason = run.stop;
  out.report.records = run.records;
  out.report.rate_estimate = increment_rate(out.report.records);
  out.scores = make_scores(g, {"epg", {}}, run, k_max);
  return out;
}

GainResult exponential_potential_gain(const Graph& g, const SeriesConfig& cfg) {
  return exponential_potential_gain(
      g, cfg,
      estimate_spectral_radius(g, kDefaultSpectralTol, kDefaultSpectralMaxIters,
                               cfg.threads));
}

ConvergenceReport convergence_curve(const Graph& g, const SeriesConfig& cfg,
                                    SeriesVariant variant,
                                    const SpectralEstimate& spectral) {
  check_variant_preconditions(cfg, variant, spectral.lambda1);
  const std::size_t k_max = resolve_k_max(cfg, variant, spectral.lambda1);
  const std::size_t k_ref =
      cfg.k_ref > 0 ? cfg.k_ref
                    : default_k_ref(variant, cfg.delta, spectral.lambda1, k_max);
  if (k_ref <= k_max) {
    throw Error(ErrorKind::domain, "k_ref (" + std::to_string(k_ref) +
                                       ") must exceed k_max (" +
                                       std::to_string(k_max) + ")");
  }

  const auto spec = variant == SeriesVariant::geometric
                        ? geometric_spec(g, cfg.delta)
                        : exponential_spec(g);
  auto ref = detail::sum_series(g, spec, k_ref, 0.0, cfg.threads);
  if (ref.last_relative_increment > kReferenceReject) {
    throw Error(ErrorKind::unreliable_reference,
                "reference increment at k_ref = " + std::to_string(k_ref) +
                    " is still " + fmt_double(ref.last_relative_increment) +
                    " relative; raise k_ref");
  }
  return curve_against(g, cfg, variant, spectral.lambda1, k_max, ref.sum);
}

ConvergenceReport convergence_curve(const Graph& g, const SeriesConfig& cfg,
                                    SeriesVariant variant,
                                    const SpectralEstimate& spectral,
                                    std::span<const double> reference) {
  check_variant_preconditions(cfg, variant, spectral.lambda1);
  if (reference.size() != g.num_nodes()) {
    throw Error(ErrorKind::dimension, "reference length does not match graph");
  }
  const std::size_t k_max = resolve_k_max(cfg, variant, spectral.lambda1);
  return curve_against(g, cfg, variant, spectral.lambda1, k_max, reference);
}

Crossover crossover_delta(double lambda) {
  if (lambda == 0.0 || !std::isfinite(lambda)) {
    throw Error(ErrorKind::domain,
                "crossover is undefined for lambda = 0: both transforms vanish "
                "for every delta");
  }
  // (e^l - 1) / (l e^l) == (1 - e^-l) / l
  Crossover c;
  c.delta_c = -std::expm1(-lambda) / lambda;
  c.admissible = c.delta_c < 1.0 / lambda;
  return c;
}

TransformedSpectra eigenvalue_transforms(std::span<const double> lambdas,
                                         double delta) {
  TransformedSpectra t;
  t.geometric.reserve(lambdas.size());
  t.exponential.reserve(lambdas.size());
  for (double l : lambdas) {
    const double denom = 1.0 - delta * l;
    if (std::abs(denom) <= 4.0 * std::numeric_limits<double>::epsilon()) {
      throw Error(ErrorKind::pole, "delta * lambda = 1 for lambda = " +
                                       fmt_double(l) + "; geometric transform has a pole");
    }
    t.geometric.push_back(l / denom);
    t.exponential.push_back(l * std::exp(l));
  }
  return t;
}

}  // namespace pgain
