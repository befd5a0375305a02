#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pgain/baselines.hpp"
#include "pgain/error.hpp"
#include "pgain/fixtures.hpp"
#include "pgain/gain_series.hpp"
#include "pgain/oracle.hpp"
#include "pgain/vector_ops.hpp"
#include "test_support.hpp"

using namespace pgain;
using std::numbers::e;

namespace {

SeriesConfig config(double delta, double tol = kDefaultSeriesTol,
                    std::size_t k_max = 0) {
  SeriesConfig c;
  c.delta = delta;
  c.tol = tol;
  c.k_max = k_max;
  return c;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& err) {
    return err.kind();
  }
  ADD_FAILURE() << "no pgain::Error thrown";
  return ErrorKind::io;
}

}  // namespace

TEST(GeometricGain, TriangleClosedForm) {
  const auto r = geometric_potential_gain(fixtures::complete_graph(3), config(0.25, 1e-15));
  for (double v : r.scores.values) EXPECT_NEAR(v, 4.0, 1e-12);
  EXPECT_EQ(r.report.stop_reason, StopReason::tolerance);
  EXPECT_TRUE(r.scores.converged);
  EXPECT_EQ(r.scores.metric.name, "gpg");
}

TEST(GeometricGain, ZeroDeltaIsDegreeExactly) {
  std::mt19937_64 rng(61);
  const Graph g = fixtures::erdos_renyi(40, 0.2, rng);
  const auto r = geometric_potential_gain(g, config(0.0));
  const auto d = degrees(g);
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_EQ(r.scores.values[i], double(d[i]));
}

TEST(GeometricGain, SingleEdge) {
  const auto r = geometric_potential_gain(fixtures::single_edge(), config(0.5, 1e-15));
  for (double v : r.scores.values) EXPECT_NEAR(v, 2.0, 1e-12);
}

TEST(GeometricGain, MatchesDenseNeumannSolve) {
  std::mt19937_64 rng(67);
  for (int t = 0; t < 10; ++t) {
    const Graph g = fixtures::random_connected_graph(15, 0.3, rng);
    const auto spec = estimate_spectral_radius(g);
    const double delta = 0.5 / spec.lambda1;
    const auto r = geometric_potential_gain(g, config(delta, 1e-14), spec);
    const auto ref = oracle::dense_neumann_solve(oracle::dense_from_graph(g), delta);
    EXPECT_LE(max_relative_deviation(r.scores.values, ref.gpg), 1e-10);
  }
}

TEST(GeometricGain, RefusesDivergentDelta) {
  const Graph g = fixtures::complete_graph(3);  // lambda1 = 2
  EXPECT_EQ(kind_of([&] { geometric_potential_gain(g, config(0.5)); }),
            ErrorKind::divergence_risk);
  EXPECT_EQ(kind_of([&] { geometric_potential_gain(g, config(1.1 / 2.0)); }),
            ErrorKind::divergence_risk);
  EXPECT_EQ(kind_of([&] { geometric_potential_gain(g, config(-0.1)); }),
            ErrorKind::domain);
  EXPECT_NO_THROW(geometric_potential_gain(g, config(0.999 / 2.0, 1e-12, 40000)));
}

TEST(GeometricGain, TruncationIsReported) {
  const auto r = geometric_potential_gain(fixtures::complete_graph(4), config(0.3, 1e-12, 5));
  EXPECT_EQ(r.report.stop_reason, StopReason::k_max);
  EXPECT_EQ(r.report.records.size(), 5u);
  EXPECT_FALSE(r.scores.converged);
  EXPECT_FALSE(r.scores.warnings.empty());
}

TEST(GeometricGain, DefaultKMaxGrowsNearCriticalDelta) {
  EXPECT_EQ(default_k_max_geometric(0.25, 2.0), 100u);
  EXPECT_GT(default_k_max_geometric(0.999 / 2.0, 2.0), 20000u);
}

TEST(GeometricGain, KatzIdentity) {
  const auto corpus = fixtures::random_corpus(71, 30);
  for (const Graph& g : corpus) {
    const auto spec = estimate_spectral_radius(g);
    const double delta = 0.6 / spec.lambda1;
    const auto gpg = geometric_potential_gain(g, config(delta, 1e-15), spec);
    const auto kz = katz(g, delta, spec, 1e-15);
    EXPECT_LE(max_relative_deviation(gpg.scores.values, spmv(g, kz.values)), 1e-10);
  }
}

TEST(GeometricGain, DegreeLimit) {
  const auto corpus = fixtures::random_corpus(73, 20);
  for (const Graph& g : corpus) {
    const auto r = geometric_potential_gain(g, config(1e-9));
    const auto d = degrees(g);
    for (std::size_t i = 0; i < d.size(); ++i) {
      EXPECT_LT(std::abs(r.scores.values[i] - d[i]) / d[i], 1e-6);
    }
  }
}

TEST(GeometricGain, PositiveScores) {
  const auto corpus = fixtures::random_corpus(79, 20);
  for (const Graph& g : corpus) {
    const auto spec = estimate_spectral_radius(g);
    for (double v : geometric_potential_gain(g, config(0.3 / spec.lambda1), spec).scores.values) {
      EXPECT_GT(v, 0.0);
    }
    for (double v : exponential_potential_gain(g, config(0.0), spec).scores.values) {
      EXPECT_GT(v, 0.0);
    }
  }
}

// After the start-up transient ||y_{k+1}|| <= delta lambda1 ||y_k||.
TEST(GeometricGain, IncrementsContractAtDeltaLambda) {
  const auto corpus = fixtures::random_corpus(83, 20);
  for (const Graph& g : corpus) {
    const auto spec = estimate_spectral_radius(g);
    const double rate = 0.5;
    const auto r = geometric_potential_gain(g, config(rate / spec.lambda1, 1e-14), spec);
    const auto& rec = r.report.records;
    for (std::size_t k = rec.size() / 2; k + 1 < rec.size(); ++k) {
      EXPECT_LE(rec[k + 1].increment_norm, rate * rec[k].increment_norm * (1 + 1e-9));
    }
  }
}

TEST(RegularGraphs, ClosedForms) {
  struct Case { Graph g; double d; };
  std::vector<Case> cases;
  cases.push_back({fixtures::complete_graph(3), 2});
  cases.push_back({fixtures::cycle_graph(6), 2});
  cases.push_back({fixtures::complete_graph(5), 4});
  cases.push_back({fixtures::single_edge(), 1});
  for (const auto& c : cases) {
    const double delta = 0.3 / c.d;
    const auto gpg = geometric_potential_gain(c.g, config(delta, 1e-15));
    const auto epg = exponential_potential_gain(c.g, config(0.0, 1e-15));
    for (double v : gpg.scores.values) {
      EXPECT_LT(pgain::testing::rel_err(v, c.d / (1 - delta * c.d)), 1e-10);
    }
    for (double v : epg.scores.values) {
      EXPECT_LT(pgain::testing::rel_err(v, c.d * std::exp(c.d)), 1e-10);
    }
  }
}

TEST(ExponentialGain, TriangleAndSingleEdge) {
  for (double v : exponential_potential_gain(fixtures::complete_graph(3), config(0)).scores.values) {
    EXPECT_NEAR(v, 14.778112197861299, 1e-10);
  }
  for (double v : exponential_potential_gain(fixtures::single_edge(), config(0)).scores.values) {
    EXPECT_NEAR(v, 2.718281828459045, 1e-11);
  }
}

TEST(ExponentialGain, MatchesDenseExponential) {
  std::mt19937_64 rng(89);
  for (int t = 0; t < 10; ++t) {
    const Graph g = fixtures::random_connected_graph(15, 0.3, rng);
    const auto r = exponential_potential_gain(g, config(0.0, 1e-15));
    const auto ref = oracle::dense_expm_action(oracle::dense_from_graph(g));
    EXPECT_LE(max_relative_deviation(r.scores.values, ref.epg), 1e-10);
  }
}

TEST(ExponentialGain, DefaultKMax) {
  EXPECT_EQ(default_k_max_exponential(2.0), 30u);  // ceil(4e*2) = 22 is below the floor
  EXPECT_EQ(default_k_max_exponential(5.0), 55u);
  EXPECT_EQ(default_k_max_exponential(1.0), 30u);
  EXPECT_EQ(default_k_max_exponential(132.57), 1442u);
}

TEST(ExponentialGain, OverflowGuard) {
  SpectralEstimate huge;
  huge.lambda1 = 651.0;
  huge.converged = true;
  const Graph g = fixtures::complete_graph(3);
  try {
    exponential_potential_gain(g, config(0.0), huge);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::overflow_risk);
    EXPECT_NE(std::string(err.what()).find("geometric"), std::string::npos);
  }
  // A real graph above the cap.
  EXPECT_EQ(kind_of([] {
              exponential_potential_gain(fixtures::complete_graph(660), config(0.0));
            }),
            ErrorKind::overflow_risk);
}

TEST(ConvergenceCurve, TriangleIsExactPowerOfHalf) {
  const Graph g = fixtures::complete_graph(3);
  const auto spec = estimate_spectral_radius(g);
  const auto rep = convergence_curve(g, config(0.25, 1e-12, 40), SeriesVariant::geometric, spec);
  ASSERT_EQ(rep.records.size(), 40u);
  for (const auto& r : rep.records) {
    EXPECT_NEAR(r.epsilon_k, std::pow(0.5, double(r.k)), 1e-12) << r.k;
  }
  EXPECT_NEAR(rep.rate_estimate, 0.5, 1e-9);
}

TEST(ConvergenceCurve, TriangleRateAtPointFour) {
  const Graph g = fixtures::complete_graph(3);
  const auto rep = convergence_curve(g, config(0.4), SeriesVariant::geometric,
                                     estimate_spectral_radius(g));
  EXPECT_NEAR(rep.rate_estimate, 0.8, 0.01);
}

TEST(ConvergenceCurve, RandomGraphRateAndBound) {
  std::mt19937_64 rng(97);
  for (int t = 0; t < 5; ++t) {
    const Graph g = fixtures::random_connected_graph(30, 0.2, rng);
    const auto spec = estimate_spectral_radius(g);
    const double rate = 0.5;
    const double delta = rate / spec.lambda1;
    const auto exact = oracle::dense_neumann_solve(oracle::dense_from_graph(g), delta);
    const auto rep = convergence_curve(g, config(delta, 1e-12, 60),
                                       SeriesVariant::geometric, spec, exact.gpg);
    EXPECT_GE(rep.rate_estimate, 0.45);
    EXPECT_LE(rep.rate_estimate, 0.55);
    for (const auto& r : rep.records) {
      const double bound = std::pow(rate, double(r.k)) / (1 - rate);
      EXPECT_LE(r.epsilon_k, bound + 1e-14) << "k = " << r.k;
    }
    // The surrogate reference agrees with the exact curve above the noise floor.
    const auto sur = convergence_curve(g, config(delta, 1e-12, 60),
                                       SeriesVariant::geometric, spec);
    for (std::size_t k = 0; k < 30; ++k) {
      EXPECT_NEAR(sur.records[k].epsilon_k, rep.records[k].epsilon_k,
                  1e-12 + 1e-6 * rep.records[k].epsilon_k);
    }
  }
}

TEST(ConvergenceCurve, ExponentialDecaysSuperGeometrically) {
  const Graph g = fixtures::cycle_graph(6);
  const auto rep = convergence_curve(g, config(0.0, 1e-12, 25),
                                     SeriesVariant::exponential,
                                     estimate_spectral_radius(g));
  EXPECT_LT(rep.records.back().epsilon_k, 1e-13);
  EXPECT_LT(rep.rate_estimate, 0.2);
}

TEST(ConvergenceCurve, ReferenceChecks) {
  const Graph g = fixtures::complete_graph(3);
  const auto spec = estimate_spectral_radius(g);
  SeriesConfig c = config(0.4, 1e-12, 20);
  c.k_ref = 30;  // 0.8^29 is far above 1e-12
  EXPECT_EQ(kind_of([&] { convergence_curve(g, c, SeriesVariant::geometric, spec); }),
            ErrorKind::unreliable_reference);
  c.k_ref = 20;
  EXPECT_EQ(kind_of([&] { convergence_curve(g, c, SeriesVariant::geometric, spec); }),
            ErrorKind::domain);
}

TEST(Crossover, LambdaTwo) {
  const auto c = crossover_delta(2.0);
  EXPECT_NEAR(c.delta_c, 0.43233235838169365, 1e-15);
  EXPECT_TRUE(c.admissible);
  EXPECT_NEAR(2.0 / (1 - 2.0 * c.delta_c), 2.0 * e * e, 1e-12 * 2 * e * e);
}

TEST(Crossover, LambdaOne) {
  const auto c = crossover_delta(1.0);
  EXPECT_NEAR(c.delta_c, 0.6321205588285577, 1e-15);
  EXPECT_TRUE(c.admissible);
}

TEST(Crossover, SmallLambdaLimitIsOne) {
  EXPECT_NEAR(crossover_delta(1e-8).delta_c, 1.0, 1e-8);
  EXPECT_NEAR(crossover_delta(1e-3).delta_c, 1.0 - 0.5e-3, 1e-6);
}

TEST(Crossover, IdentityHoldsAcrossLambdas) {
  for (double l : {0.5, 1.0, 2.0, 5.0, 0.1, 3.3}) {
    const auto c = crossover_delta(l);
    const double lhs = l / (1 - c.delta_c * l);
    EXPECT_LT(pgain::testing::rel_err(lhs, l * std::exp(l)), 1e-12) << l;
  }
}

TEST(Crossover, ZeroLambdaIsDomainError) {
  EXPECT_EQ(kind_of([] { crossover_delta(0.0); }), ErrorKind::domain);
}

TEST(EigenvalueTransforms, Examples) {
  const std::vector<double> zero{0.0};
  auto t = eigenvalue_transforms(zero, 0.3);
  EXPECT_EQ(t.geometric[0], 0.0);
  EXPECT_EQ(t.exponential[0], 0.0);

  const std::vector<double> two{2.0};
  t = eigenvalue_transforms(two, 0.25);
  EXPECT_DOUBLE_EQ(t.geometric[0], 4.0);
  EXPECT_DOUBLE_EQ(t.exponential[0], 14.778112197861299);

  const std::vector<double> k3{2.0, -1.0, -1.0};
  t = eigenvalue_transforms(k3, 0.25);
  EXPECT_DOUBLE_EQ(t.geometric[0], 4.0);
  EXPECT_DOUBLE_EQ(t.geometric[1], -0.8);
  EXPECT_DOUBLE_EQ(t.geometric[2], -0.8);
}

TEST(EigenvalueTransforms, PoleIsAnError) {
  const std::vector<double> l{4.0};
  EXPECT_EQ(kind_of([&] { eigenvalue_transforms(l, 0.25); }), ErrorKind::pole);
}

// Both transforms act on the same eigenbasis, so the dense spectrum pushed
// through them reproduces the scores: g = V f(L) V^T 1.
TEST(EigenvalueTransforms, ReproduceScoresThroughEigenbasis) {
  std::mt19937_64 rng(101);
  const Graph g = fixtures::random_connected_graph(12, 0.4, rng);
  const auto a = oracle::dense_from_graph(g);
  const auto eig = oracle::dense_symmetric_eigen(a);
  const double delta = 0.4 / eig.values.front();
  const auto t = eigenvalue_transforms(eig.values, delta);
  const std::size_t n = g.num_nodes();
  std::vector<double> gpg(n, 0.0), epg(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double proj = 0.0;
    for (std::size_t k = 0; k < n; ++k) proj += eig.vectors(k, j);
    for (std::size_t i = 0; i < n; ++i) {
      gpg[i] += t.geometric[j] * proj * eig.vectors(i, j);
      epg[i] += t.exponential[j] * proj * eig.vectors(i, j);
    }
  }
  EXPECT_LE(max_relative_deviation(
                gpg, geometric_potential_gain(g, config(delta, 1e-15)).scores.values),
            1e-10);
  EXPECT_LE(max_relative_deviation(
                epg, exponential_potential_gain(g, config(0, 1e-15)).scores.values),
            1e-10);
}
