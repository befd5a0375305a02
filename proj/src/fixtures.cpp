#include "pgain/fixtures.hpp"

#include <algorithm>
#include <unordered_set>

#include "pgain/error.hpp"

namespace pgain::fixtures {

using EdgeList = std::vector<std::pair<NodeIndex, NodeIndex>>;

Graph single_edge() {
  const EdgeList e{{0, 1}};
  return Graph::from_index_edges(2, e);
}

Graph complete_graph(std::size_t n) {
  EdgeList e;
  for (NodeIndex i = 0; i < n; ++i) {
    for (NodeIndex j = i + 1; j < n; ++j) e.emplace_back(i, j);
  }
  return Graph::from_index_edges(n, e);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw Error(ErrorKind::domain, "cycle needs at least 3 nodes");
  EdgeList e;
  for (NodeIndex i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::from_index_edges(n, e);
}

Graph path_graph(std::size_t n) {
  EdgeList e;
  for (NodeIndex i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_index_edges(n, e);
}

Graph star_graph(std::size_t leaves) {
  EdgeList e;
  for (NodeIndex i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph::from_index_edges(leaves + 1, e);
}

Graph random_connected_graph(std::size_t n, double p, std::mt19937_64& rng) {
  EdgeList e;
  for (NodeIndex i = 1; i < n; ++i) {
    std::uniform_int_distribution<NodeIndex> pick(0, i - 1);
    e.emplace_back(pick(rng), i);
  }
  std::bernoulli_distribution coin(p);
  for (NodeIndex i = 0; i < n; ++i) {
    for (NodeIndex j = i + 1; j < n; ++j) {
      if (coin(rng)) e.emplace_back(i, j);
    }
  }
  return Graph::from_index_edges(n, e);
}

Graph erdos_renyi(std::size_t n, double p, std::mt19937_64& rng) {
  EdgeList e;
  std::bernoulli_distribution coin(p);
  for (NodeIndex i = 0; i < n; ++i) {
    for (NodeIndex j = i + 1; j < n; ++j) {
      if (coin(rng)) e.emplace_back(i, j);
    }
  }
  return Graph::from_index_edges(n, e);
}

Graph preferential_attachment(std::size_t n, std::size_t m,
                              std::mt19937_64& rng) {
  if (m == 0 || n <= m) {
    throw Error(ErrorKind::domain, "preferential attachment needs n > m > 0");
  }
  EdgeList e;
  e.reserve(n * m);
  // Every edge endpoint appears once here, so uniform picks are
  // degree-proportional.
  std::vector<NodeIndex> endpoints;
  endpoints.reserve(2 * n * m);
  for (NodeIndex i = 0; i <= m; ++i) {
    for (NodeIndex j = i + 1; j <= m; ++j) {
      e.emplace_back(i, j);
      endpoints.push_back(i);
      endpoints.push_back(j);
    }
  }
  std::vector<NodeIndex> targets;
  for (NodeIndex v = m + 1; v < n; ++v) {
    targets.clear();
    std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
    while (targets.size() < m) {
      const NodeIndex t = endpoints[pick(rng)];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) {
        targets.push_back(t);
      }
    }
    for (NodeIndex t : targets) {
      e.emplace_back(t, v);
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return Graph::from_index_edges(n, e);
}

std::vector<Graph> random_corpus(std::uint64_t seed, std::size_t count,
                                 std::size_t n_min, std::size_t n_max,
                                 double p_min, double p_max) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(n_min, n_max);
  std::uniform_real_distribution<double> density(p_min, p_max);
  std::vector<Graph> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = size(rng);
    const double p = density(rng);
    out.push_back(random_connected_graph(n, p, rng));
  }
  return out;
}

bool is_regular(const Graph& g) {
  for (NodeIndex i = 1; i < g.num_nodes(); ++i) {
    if (g.degree(i) != g.degree(0)) return false;
  }
  return true;
}

}  // namespace pgain::fixtures
