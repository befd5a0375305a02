#include "series.hpp"

#include <algorithm>
#include <cmath>

#include "pgain/error.hpp"
#include "pgain/vector_ops.hpp"

namespace pgain::detail {

std::vector<double> ones(std::size_t n) { return std::vector<double>(n, 1.0); }

SeriesOutcome sum_series(const Graph& g, const SeriesSpec& spec,
                         std::size_t last_index, double tol, unsigned threads,
                         std::span<const double> reference) {
  const std::size_t n = g.num_nodes();
  const double ref_norm = reference.empty() ? 0.0 : norm2(reference);

  SeriesOutcome out;
  out.sum.assign(n, 0.0);
  std::vector<double> term = spec.first;
  std::vector<double> next(n);

  for (std::size_t k = spec.first_index; k <= last_index; ++k) {
    if (k > spec.first_index) {
      spmv(g, term, next, threads);
      const double f = spec.factor(k);
      for (std::size_t i = 0; i < n; ++i) next[i] *= f;
      term.swap(next);
    }
    double inc2 = 0.0;
    double sum2 = 0.0;
    double err2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      out.sum[i] += term[i];
      inc2 += term[i] * term[i];
      sum2 += out.sum[i] * out.sum[i];
      if (!reference.empty()) {
        const double d = reference[i] - out.sum[i];
        err2 += d * d;
      }
    }
    ConvergenceRecord rec;
    rec.k = k;
    rec.increment_norm = std::sqrt(inc2);
    rec.partial_norm = std::sqrt(sum2);
    rec.epsilon_k = reference.empty() ? NAN : std::sqrt(err2) / ref_norm;
    if (!std::isfinite(rec.increment_norm) || !std::isfinite(rec.partial_norm)) {
      throw Error(ErrorKind::overflow_risk,
                  "series term overflowed at k = " + std::to_string(k));
    }
    out.records.push_back(rec);

    out.last_relative_increment =
        rec.partial_norm > 0.0 ? rec.increment_norm / rec.partial_norm : 0.0;
    if (tol > 0.0 && (rec.increment_norm == 0.0 ||
                      out.last_relative_increment < tol)) {
      out.stop = StopReason::tolerance;
      return out;
    }
  }
  out.stop = StopReason::k_max;
  return out;
}

double median_tail_ratio(std::span<const double> x, double floor) {
  std::size_t len = 0;
  while (len < x.size() && x[len] > floor && x[len] > 0.0) ++len;
  if (len < 2) return NAN;
  const std::size_t ratios = len - 1;
  const std::size_t take = std::max<std::size_t>(1, ratios / 3);
  std::vector<double> r;
  for (std::size_t k = len - 1 - take; k + 1 < len; ++k) {
    r.push_back(x[k + 1] / x[k]);
  }
  std::sort(r.begin(), r.end());
  const std::size_t m = r.size();
  return m % 2 ? r[m / 2] : 0.5 * (r[m / 2 - 1] + r[m / 2]);
}

}  // namespace pgain::detail
