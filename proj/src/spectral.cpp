#include "pgain/spectral.hpp"

#include <cmath>

#include "pgain/error.hpp"
#include "pgain/vector_ops.hpp"

namespace pgain {

namespace {

struct PowerState {
  SpectralEstimate estimate;
  std::vector<double> vector;
  double eigen_residual = 0.0;  // ||A v - lambda v|| for `vector`
};

// Shifted power iteration. With `need_vector` the loop also waits for the
// eigen-residual of the current iterate to drop below tol * lambda.
PowerState power_iterate(const Graph& g, double tol, std::size_t max_iters,
                         unsigned threads, bool need_vector) {
  if (!(tol > 0.0)) throw Error(ErrorKind::domain, "tolerance must be > 0");
  const std::size_t n = g.num_nodes();

  PowerState st;
  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> w(n);
  double prev = NAN;

  for (std::size_t it = 1; it <= max_iters; ++it) {
    spmv(g, v, w, threads);
    for (std::size_t i = 0; i < n; ++i) w[i] += v[i];

    const double mu = dot(v, w);  // Rayleigh quotient of A + I, ||v|| = 1
    const double lambda = mu - 1.0;
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = w[i] - mu * v[i];
      r2 += r * r;
    }
    const double rel_change =
        std::isnan(prev) ? INFINITY : std::abs(lambda - prev) / std::abs(lambda);
    prev = lambda;

    st.estimate.lambda1 = lambda;
    st.estimate.iterations = it;
    st.estimate.residual = rel_change;
    st.eigen_residual = std::sqrt(r2);

    bool done = rel_change < tol;
    if (need_vector) done = done && st.eigen_residual <= tol * lambda;
    if (done) {
      st.estimate.converged = true;
      st.vector = std::move(v);
      return st;
    }

    const double norm = norm2(w);
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
  }
  st.vector = std::move(v);
  return st;
}

}  // namespace

SpectralEstimate estimate_spectral_radius(const Graph& g, double tol,
                                          std::size_t max_iters,
                                          unsigned threads) {
  return power_iterate(g, tol, max_iters, threads, false).estimate;
}

ScoreVector principal_eigenvector(const Graph& g, double tol,
                                  std::size_t max_iters, unsigned threads,
                                  SpectralEstimate* estimate) {
  PowerState st = power_iterate(g, tol, max_iters, threads, true);
  if (estimate) *estimate = st.estimate;

  ScoreVector out;
  out.metric = {"eigenvector", {{"tol", tol}}};
  out.values = std::move(st.vector);
  out.graph_fingerprint = g.fingerprint();
  out.converged = st.estimate.converged;
  if (!st.estimate.converged) {
    out.warnings.push_back("power iteration did not converge within " +
                           std::to_string(max_iters) + " iterations");
  }
  if (!g.is_connected()) {
    out.warnings.push_back(
        "graph is disconnected; the Perron vector is supported on the "
        "dominant component only");
  }
  return out;
}

}  // namespace pgain
