#pragma once

// Dense brute-force references for small graphs. Everything here is O(n^2)
// memory and O(n^3) time; it exists to check the sparse paths, not to
// replace them.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pgain/graph.hpp"

namespace pgain::oracle {

inline constexpr std::size_t kDefaultDenseCap = 2000;

class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }

  std::vector<double> apply(std::span<const double> x) const;
  DenseMatrix operator*(const DenseMatrix& rhs) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Exact 0/1 adjacency. Throws resource_cap above `cap` nodes.
DenseMatrix dense_from_graph(const Graph& g, std::size_t cap = kDefaultDenseCap);

struct SymmetricEigen {
  std::vector<double> values;  // descending
  DenseMatrix vectors;         // column j pairs with values[j]
  std::size_t sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm is below
/// `tol`. Throws non_convergence after `max_sweeps`.
SymmetricEigen dense_symmetric_eigen(const DenseMatrix& a, double tol = 1e-12,
                                     std::size_t max_sweeps = 100);

double dense_spectral_radius(const DenseMatrix& a);

/// Solution of M x = b by Gaussian elimination with partial pivoting.
std::vector<double> dense_solve(DenseMatrix m, std::vector<double> b);

struct NeumannSolution {
  std::vector<double> katz;  // (I - delta A)^{-1} 1
  std::vector<double> gpg;   // A (I - delta A)^{-1} 1
};

/// Direct solve of (I - delta A) x = 1. Throws divergence_risk unless
/// delta * lambda1 < 1.
NeumannSolution dense_neumann_solve(const DenseMatrix& a, double delta);

struct ExpmAction {
  std::vector<double> communicability;  // exp(A) 1
  std::vector<double> epg;              // A exp(A) 1
};

/// exp(A) by scaling and squaring: s = max(0, ceil(log2 lambda1) + 2)
/// halvings, 30-term Taylor polynomial, s squarings.
ExpmAction dense_expm_action(const DenseMatrix& a);
DenseMatrix dense_expm(const DenseMatrix& a);

/// Top eigenvector from the Jacobi decomposition, unit norm, positive sum.
std::vector<double> dense_eigenvector_centrality(const DenseMatrix& a);

/// Power iteration on the full Google matrix alpha P^T + (1 - alpha)/n 11^T
/// with P = D^{-1} A, run for a fixed number of steps.
std::vector<double> dense_pagerank(const DenseMatrix& a, double alpha,
                                   std::size_t iterations = 2000);

/// O(n^2) average ranks by pairwise comparison counting.
std::vector<double> brute_force_rank(std::span<const double> values);

/// Pearson correlation of brute_force_rank vectors, computed with two-pass
/// means. NaN when either side has no variance.
double brute_force_spearman(std::span<const double> a, std::span<const double> b);

struct VerificationRow {
  std::string metric;
  double max_relative_deviation = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::size_t graphs = 0;
  double tolerance = 0.0;
  std::vector<VerificationRow> rows;
  bool pass = false;
};

/// Random connected corpus (n in [5, 60], density in [0.1, 0.6]); compares
/// every sparse metric against its dense counterpart and reports the worst
/// max-relative deviation per metric.
VerificationReport verify_against_oracle(std::uint64_t seed,
                                         std::size_t corpus_size,
                                         double tolerance = 1e-9);

}  // namespace pgain::oracle
