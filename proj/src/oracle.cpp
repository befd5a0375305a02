#include "pgain/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pgain/baselines.hpp"
#include "pgain/error.hpp"
#include "pgain/fixtures.hpp"
#include "pgain/gain_series.hpp"
#include "pgain/spectral.hpp"
#include "pgain/vector_ops.hpp"

namespace pgain::oracle {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> DenseMatrix::apply(std::span<const double> x) const {
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& rhs) const {
  DenseMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < n_; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

DenseMatrix dense_from_graph(const Graph& g, std::size_t cap) {
  const std::size_t n = g.num_nodes();
  if (n > cap) {
    throw Error(ErrorKind::resource_cap,
                "dense oracle limited to " + std::to_string(cap) +
                    " nodes, graph has " + std::to_string(n));
  }
  DenseMatrix a(n);
  for (NodeIndex i = 0; i < n; ++i) {
    for (NodeIndex j : g.neighbors(i)) a(i, j) = 1.0;
  }
  return a;
}

SymmetricEigen dense_symmetric_eigen(const DenseMatrix& input, double tol,
                                     std::size_t max_sweeps) {
  const std::size_t n = input.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (input(i, j) != input(j, i)) {
        throw Error(ErrorKind::domain, "Jacobi eigensolver needs a symmetric matrix");
      }
    }
  }
  DenseMatrix a = input;
  DenseMatrix v = DenseMatrix::identity(n);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) s += a(i, j) * a(i, j);
      }
    }
    return std::sqrt(s);
  };

  std::size_t sweep = 0;
  while (off_norm() >= tol) {
    if (sweep == max_sweeps) {
      throw Error(ErrorKind::non_convergence,
                  "Jacobi eigensolver did not converge");
    }
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });
  SymmetricEigen out;
  out.sweeps = sweep;
  out.vectors = DenseMatrix(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values.push_back(a(order[j], order[j]));
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = v(k, order[j]);
  }
  return out;
}

double dense_spectral_radius(const DenseMatrix& a) {
  if (a.size() == 0) return 0.0;
  const auto eig = dense_symmetric_eigen(a);
  return std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
}

std::vector<double> dense_solve(DenseMatrix m, std::vector<double> b) {
  const std::size_t n = m.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
    }
    if (m(piv, col) == 0.0) {
      throw Error(ErrorKind::domain, "singular linear system");
    }
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      std::swap(b[piv], b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m(r, col) / m(col, col);
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) m(r, j) -= f * m(col, j);
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= m(i, j) * x[j];
    x[i] = s / m(i, i);
  }
  return x;
}

NeumannSolution dense_neumann_solve(const DenseMatrix& a, double delta) {
  const std::size_t n = a.size();
  const double lambda1 = dense_spectral_radius(a);
  if (!(delta * lambda1 < 1.0)) {
    throw Error(ErrorKind::divergence_risk,
                "dense Neumann solve needs delta * lambda1 < 1");
  }
  DenseMatrix m = DenseMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) -= delta * a(i, j);
  }
  NeumannSolution out;
  out.katz = dense_solve(std::move(m), std::vector<double>(n, 1.0));
  out.gpg = a.apply(out.katz);
  return out;
}

DenseMatrix dense_expm(const DenseMatrix& a) {
  const std::size_t n = a.size();
  const double lambda1 = dense_spectral_radius(a);
  int squarings = 0;
  if (lambda1 > 0.0) {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(lambda1))) + 2);
  }
  DenseMatrix b = a;
  const double scale = std::ldexp(1.0, -squarings);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) b(i, j) *= scale;
  }
  // Horner: I + B/1 (I + B/2 (I + ... (I + B/30)))
  constexpr int kTerms = 30;
  DenseMatrix t = DenseMatrix::identity(n);
  for (int k = kTerms; k >= 1; --k) {
    DenseMatrix bt = b * t;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) bt(i, j) /= k;
      bt(i, i) += 1.0;
    }
    t = std::move(bt);
  }
  for (int s = 0; s < squarings; ++s) t = t * t;
  return t;
}

ExpmAction dense_expm_action(const DenseMatrix& a) {
  const DenseMatrix e = dense_expm(a);
  ExpmAction out;
  out.communicability = e.apply(std::vector<double>(a.size(), 1.0));
  out.epg = a.apply(out.communicability);
  return out;
}

std::vector<double> dense_eigenvector_centrality(const DenseMatrix& a) {
  const auto eig = dense_symmetric_eigen(a);
  const std::size_t n = a.size();
  std::vector<double> v(n);
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    v[k] = eig.vectors(k, 0);
    sum += v[k];
  }
  const double sign = sum < 0.0 ? -1.0 : 1.0;
  const double norm = norm2(v);
  for (double& x : v) x = sign * x / norm;
  return v;
}

std::vector<double> dense_pagerank(const DenseMatrix& a, double alpha,
                                   std::size_t iterations) {
  const std::size_t n = a.size();
  DenseMatrix google(n);
  std::vector<double> deg(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) deg[i] += a(i, j);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // column-stochastic: column j spreads node j's mass over its neighbors
      google(i, j) = alpha * a(j, i) / deg[j] + (1.0 - alpha) / n;
    }
  }
  std::vector<double> p(n, 1.0 / n);
  for (std::size_t it = 0; it < iterations; ++it) p = google.apply(p);
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= total;
  return p;
}

std::vector<double> brute_force_rank(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t less = 0;
    std::size_t equal = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (values[j] < values[i]) ++less;
      else if (j != i && values[j] == values[i]) ++equal;
    }
    ranks[i] = 1.0 + static_cast<double>(less) + 0.5 * static_cast<double>(equal);
  }
  return ranks;
}

double brute_force_spearman(std::span<const double> a, std::span<const double> b) {
  const auto ra = brute_force_rank(a);
  const auto rb = brute_force_rank(b);
  const double n = static_cast<double>(ra.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return NAN;
  return sab / std::sqrt(saa * sbb);
}

VerificationReport verify_against_oracle(std::uint64_t seed,
                                         std::size_t corpus_size,
                                         double tolerance) {
  const std::vector<std::string> names = {"gpg",      "epg",        "katz",
                                          "communicability", "eigenvector",
                                          "pagerank"};
  std::vector<double> worst(names.size(), 0.0);
  constexpr double kTightTol = 1e-15;

  const auto corpus = fixtures::random_corpus(seed, corpus_size);
  for (const Graph& g : corpus) {
    const DenseMatrix a = dense_from_graph(g);
    const auto spectral = estimate_spectral_radius(g);
    const double delta = 0.5 / spectral.lambda1;

    SeriesConfig cfg;
    cfg.delta = delta;
    cfg.tol = kTightTol;
    const auto gpg = geometric_potential_gain(g, cfg, spectral).scores.values;
    const auto epg = exponential_potential_gain(g, cfg, spectral).scores.values;
    const auto kz = katz(g, delta, spectral, kTightTol).values;
    const auto comm = communicability_centrality(g, spectral, kTightTol).values;
    const auto ec = eigenvector_centrality(g, 1e-13).values;
    const auto pr = pagerank(g, 0.85, 1e-15, 100000).values;

    const auto neumann = dense_neumann_solve(a, delta);
    const auto expm = dense_expm_action(a);
    const auto ec_ref = dense_eigenvector_centrality(a);
    const auto pr_ref = dense_pagerank(a, 0.85);

    const std::vector<double> dev = {
        max_relative_deviation(gpg, neumann.gpg),
        max_relative_deviation(epg, expm.epg),
        max_relative_deviation(kz, neumann.katz),
        max_relative_deviation(comm, expm.communicability),
        max_relative_deviation(ec, ec_ref),
        max_relative_deviation(pr, pr_ref)};
    for (std::size_t i = 0; i < dev.size(); ++i) {
      worst[i] = std::max(worst[i], dev[i]);
    }
  }

  VerificationReport rep;
  rep.graphs = corpus.size();
  rep.tolerance = tolerance;
  rep.pass = true;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const bool ok = worst[i] <= tolerance;
    rep.rows.push_back({names[i], worst[i], ok});
    rep.pass = rep.pass && ok;
  }
  return rep;
}

}  // namespace pgain::oracle
