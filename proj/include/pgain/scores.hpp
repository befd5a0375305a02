#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pgain {

/// Which centrality produced a score vector, with its numeric parameters in
/// insertion order (e.g. {"delta", 0.01}).
struct MetricDescriptor {
  std::string name;
  std::vector<std::pair<std::string, double>> parameters;
};

/// Per-node scores bound to the graph they were computed on.
struct ScoreVector {
  MetricDescriptor metric;
  std::vector<double> values;
  std::uint64_t graph_fingerprint = 0;
  bool converged = true;
  std::vector<std::string> warnings;

  std::size_t size() const noexcept { return values.size(); }
};

}  // namespace pgain
