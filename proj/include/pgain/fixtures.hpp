#pragma once

// Small deterministic graph families for tests, verification runs and the
// scale benchmark.

#include <cstdint>
#include <random>
#include <vector>

#include "pgain/graph.hpp"

namespace pgain::fixtures {

Graph single_edge();
Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
/// Node 0 is the center.
Graph star_graph(std::size_t leaves);

/// Random recursive spanning tree overlaid with G(n, p) edges, so the
/// result is connected with exactly n nodes.
Graph random_connected_graph(std::size_t n, double p, std::mt19937_64& rng);

/// Plain G(n, p); nodes left isolated are dropped by the builder.
Graph erdos_renyi(std::size_t n, double p, std::mt19937_64& rng);

/// Barabasi-Albert growth from a clique on m + 1 nodes; each new node links
/// to m distinct existing nodes chosen proportionally to degree.
Graph preferential_attachment(std::size_t n, std::size_t m,
                              std::mt19937_64& rng);

/// `count` random connected graphs with n in [n_min, n_max] and edge
/// probability in [p_min, p_max].
std::vector<Graph> random_corpus(std::uint64_t seed, std::size_t count,
                                 std::size_t n_min = 5, std::size_t n_max = 60,
                                 double p_min = 0.1, double p_max = 0.6);

bool is_regular(const Graph& g);

}  // namespace pgain::fixtures
