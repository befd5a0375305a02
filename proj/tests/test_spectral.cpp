#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pgain/error.hpp"
#include "pgain/fixtures.hpp"
#include "pgain/oracle.hpp"
#include "pgain/spectral.hpp"
#include "pgain/vector_ops.hpp"
#include "test_support.hpp"

using namespace pgain;

TEST(SpectralRadius, CompleteGraph) {
  const auto est = estimate_spectral_radius(fixtures::complete_graph(3));
  EXPECT_TRUE(est.converged);
  EXPECT_NEAR(est.lambda1, 2.0, 1e-10);
  EXPECT_NEAR(estimate_spectral_radius(fixtures::complete_graph(7)).lambda1, 6.0,
              1e-10);
}

TEST(SpectralRadius, StarWithFourLeaves) {
  EXPECT_NEAR(estimate_spectral_radius(fixtures::star_graph(4)).lambda1, 2.0,
              1e-10);
}

TEST(SpectralRadius, PathOnThreeNodes) {
  EXPECT_NEAR(estimate_spectral_radius(fixtures::path_graph(3)).lambda1,
              std::sqrt(2.0), 1e-10);
}

// Even cycles are bipartite: the spectrum contains both +2 and -2, and an
// unshifted power iteration would oscillate.
TEST(SpectralRadius, EvenCyclesNeedTheShift) {
  for (std::size_t n : {4u, 6u, 8u, 10u, 20u}) {
    const auto est = estimate_spectral_radius(fixtures::cycle_graph(n));
    EXPECT_TRUE(est.converged) << n;
    EXPECT_NEAR(est.lambda1, 2.0, 1e-10) << n;
  }
}

TEST(SpectralRadius, DegreeBoundsHoldOnRandomGraphs) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 40; ++t) {
    const Graph g = fixtures::erdos_renyi(60, 0.08, rng);
    const auto est = estimate_spectral_radius(g);
    const double avg = 2.0 * g.num_edges() / g.num_nodes();
    const double dmax = static_cast<double>(g.max_degree());
    EXPECT_LE(est.lambda1, dmax * (1 + 1e-12));
    EXPECT_GE(est.lambda1, std::max(avg, std::sqrt(dmax)) * (1 - 1e-9));
    if (est.converged) EXPECT_LT(est.residual, kDefaultSpectralTol);
  }
}

TEST(SpectralRadius, MatchesJacobi) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 20; ++t) {
    const Graph g = fixtures::random_connected_graph(25, 0.2, rng);
    const double ref = oracle::dense_spectral_radius(oracle::dense_from_graph(g));
    EXPECT_NEAR(estimate_spectral_radius(g).lambda1, ref, 1e-8 * ref);
  }
}

TEST(SpectralRadius, NonConvergenceIsFlagged) {
  std::mt19937_64 rng(47);
  const Graph g = fixtures::random_connected_graph(40, 0.1, rng);
  const auto est = estimate_spectral_radius(g, 1e-14, 2);
  EXPECT_FALSE(est.converged);
  EXPECT_EQ(est.iterations, 2u);
}

TEST(SpectralRadius, RejectsNonPositiveTolerance) {
  EXPECT_THROW(estimate_spectral_radius(fixtures::single_edge(), 0.0), Error);
}

TEST(PrincipalEigenvector, CompleteGraphIsUniform) {
  for (std::size_t n : {3u, 5u, 9u}) {
    const auto v = principal_eigenvector(fixtures::complete_graph(n));
    for (double x : v.values) EXPECT_NEAR(x, 1.0 / std::sqrt(double(n)), 1e-12);
  }
}

TEST(PrincipalEigenvector, StarCenterToLeafRatioIsLambda) {
  const auto v = principal_eigenvector(fixtures::star_graph(4));
  for (std::size_t i = 1; i < 5; ++i) {
    EXPECT_NEAR(v.values[0] / v.values[i], 2.0, 1e-9);
  }
}

TEST(PrincipalEigenvector, MatchesJacobiTopVector) {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 10; ++t) {
    const Graph g = fixtures::random_connected_graph(12, 0.5, rng);
    const auto a = oracle::dense_from_graph(g);
    const auto eig = oracle::dense_symmetric_eigen(a);
    std::vector<double> ref(g.num_nodes());
    double s = 0;
    for (std::size_t k = 0; k < ref.size(); ++k) s += ref[k] = eig.vectors(k, 0);
    const double sign = s < 0 ? -1.0 : 1.0;
    const auto v = principal_eigenvector(g);
    ASSERT_TRUE(v.converged);
    for (std::size_t k = 0; k < ref.size(); ++k) {
      EXPECT_NEAR(v.values[k], sign * ref[k], 1e-8);
    }
  }
}

TEST(PrincipalEigenvector, ResidualInvariant) {
  std::mt19937_64 rng(59);
  for (int t = 0; t < 20; ++t) {
    const Graph g = fixtures::random_connected_graph(50, 0.1, rng);
    const double tol = 1e-10;
    SpectralEstimate est;
    const auto v = principal_eigenvector(g, tol, kDefaultSpectralMaxIters, 1, &est);
    ASSERT_TRUE(v.converged);
    EXPECT_NEAR(norm2(v.values), 1.0, 1e-12);
    const auto av = spmv(g, v.values);
    double r2 = 0;
    for (std::size_t i = 0; i < av.size(); ++i) {
      const double r = av[i] - est.lambda1 * v.values[i];
      r2 += r * r;
    }
    EXPECT_LE(std::sqrt(r2), 10 * tol * est.lambda1);
    for (double x : v.values) EXPECT_GT(x, 0.0);
  }
}

TEST(PrincipalEigenvector, DisconnectedGraphWarns) {
  const auto v = principal_eigenvector(pgain::testing::load_string("a b\nb c\nc a\nx y\n"));
  ASSERT_FALSE(v.warnings.empty());
  EXPECT_NE(v.warnings.back().find("disconnected"), std::string::npos);
}
