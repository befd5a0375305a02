#include "pgain/export.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "pgain/error.hpp"

namespace pgain {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw Error(ErrorKind::io, "cannot format number");
  return std::string(buf, end);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(s);
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_id_map_csv(const Graph& g, std::ostream& out) {
  out << "internal_index,original_label\n";
  for (NodeIndex i = 0; i < g.num_nodes(); ++i) {
    out << i << ',' << csv_field(g.ids().label(i)) << '\n';
  }
}

void write_scores_csv(const Graph& g, const ScoreVector& scores,
                      std::ostream& out) {
  if (scores.graph_fingerprint != g.fingerprint() ||
      scores.size() != g.num_nodes()) {
    throw Error(ErrorKind::domain, "scores do not belong to this graph");
  }
  std::vector<NodeIndex> order(g.num_nodes());
  std::iota(order.begin(), order.end(), NodeIndex{0});
  const auto& v = scores.values;
  std::sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) {
    if (v[a] != v[b]) return v[a] > v[b];
    return g.ids().label(a) < g.ids().label(b);
  });
  out << "original_label,score\n";
  for (NodeIndex i : order) {
    out << csv_field(g.ids().label(i)) << ',' << format_double(v[i]) << '\n';
  }
}

void write_convergence_csv(const ConvergenceReport& report, std::ostream& out) {
  out << "k,increment_norm,epsilon_k\n";
  for (const auto& r : report.records) {
    out << r.k << ',' << format_double(r.increment_norm) << ','
        << format_double(r.epsilon_k) << '\n';
  }
}

void write_sweep_csv(const SweepResult& sweep, std::ostream& out) {
  out << "delta,metric,rho\n";
  for (std::size_t d = 0; d < sweep.delta_grid.size(); ++d) {
    for (std::size_t m = 0; m < sweep.metrics.size(); ++m) {
      const auto& rho = sweep.rho[d][m];
      out << format_double(sweep.delta_grid[d]) << ',' << sweep.metrics[m] << ','
          << (rho ? format_double(*rho) : std::string("undefined")) << '\n';
    }
  }
}

void write_correlation_csv(const CorrelationTable& table, std::ostream& out) {
  out << "metric";
  for (const auto& m : table.metrics) out << ',' << m;
  out << '\n';
  for (std::size_t i = 0; i < table.metrics.size(); ++i) {
    out << table.metrics[i];
    for (std::size_t j = 0; j < table.metrics.size(); ++j) {
      const double r = table.rho[i][j];
      out << ',' << (std::isnan(r) ? std::string("undefined") : format_double(r));
    }
    out << '\n';
  }
}

}  // namespace pgain
