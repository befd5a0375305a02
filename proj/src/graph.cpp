#include "pgain/graph.hpp"

#include <algorithm>
#include <fstream>
#include <thread>

#include "pgain/error.hpp"

namespace pgain {

namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void fnv_bytes(std::uint64_t& h, const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
}

template <typename T>
void fnv_span(std::uint64_t& h, std::span<const T> s) {
  fnv_bytes(h, s.data(), s.size_bytes());
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

}  // namespace

IdMap::IdMap(std::vector<std::string> labels) : labels_(std::move(labels)) {
  index_.reserve(labels_.size());
  for (NodeIndex i = 0; i < labels_.size(); ++i) {
    if (!index_.emplace(labels_[i], i).second) {
      throw Error(ErrorKind::domain, "duplicate node label '" + labels_[i] + "'");
    }
  }
}

NodeIndex IdMap::index(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) {
    throw std::out_of_range("unknown node label '" + label + "'");
  }
  return it->second;
}

Graph Graph::from_edges(std::vector<std::string> labels,
                        std::span<const std::pair<NodeIndex, NodeIndex>> edges,
                        LoadSummary* summary) {
  const std::size_t n_in = labels.size();
  LoadSummary local;
  LoadSummary& s = summary ? *summary : local;
  s.edges_read = std::max<std::uint64_t>(s.edges_read, edges.size());

  std::vector<std::pair<NodeIndex, NodeIndex>> clean;
  clean.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u >= n_in || v >= n_in) {
      throw Error(ErrorKind::domain, "edge endpoint out of range");
    }
    if (u == v) {
      ++s.self_loops_dropped;
      continue;
    }
    clean.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(clean.begin(), clean.end());
  const auto last = std::unique(clean.begin(), clean.end());
  s.duplicates_collapsed = static_cast<std::uint64_t>(clean.end() - last);
  clean.erase(last, clean.end());

  std::vector<std::uint64_t> deg(n_in, 0);
  for (auto [u, v] : clean) {
    ++deg[u];
    ++deg[v];
  }

  // Compact away nodes that ended up without neighbors.
  constexpr NodeIndex kDropped = ~NodeIndex{0};
  std::vector<NodeIndex> remap(n_in, kDropped);
  std::vector<std::string> kept;
  kept.reserve(n_in);
  for (NodeIndex i = 0; i < n_in; ++i) {
    if (deg[i] == 0) continue;
    remap[i] = kept.size();
    kept.push_back(std::move(labels[i]));
  }
  s.isolated_dropped = n_in - kept.size();
  if (kept.empty()) {
    throw Error(ErrorKind::empty_graph, "graph has no edges after cleaning");
  }

  Graph g;
  const std::size_t n = kept.size();
  g.row_offsets_.assign(n + 1, 0);
  for (NodeIndex i = 0; i < n_in; ++i) {
    if (remap[i] != kDropped) g.row_offsets_[remap[i] + 1] = deg[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    g.max_degree_ = std::max(g.max_degree_, g.row_offsets_[i + 1]);
    g.row_offsets_[i + 1] += g.row_offsets_[i];
  }
  // Edges are sorted by (min, max), so every row receives its smaller
  // neighbors first and its larger ones afterwards, both ascending.
  g.col_indices_.resize(2 * clean.size());
  std::vector<std::uint64_t> cursor(g.row_offsets_.begin(),
                                    g.row_offsets_.end() - 1);
  for (auto [u, v] : clean) {
    const NodeIndex a = remap[u];
    const NodeIndex b = remap[v];
    g.col_indices_[cursor[a]++] = b;
    g.col_indices_[cursor[b]++] = a;
  }
  g.ids_ = IdMap(std::move(kept));

  std::uint64_t h = kFnvOffset;
  const std::uint64_t n64 = n;
  fnv_bytes(h, &n64, sizeof n64);
  fnv_span(h, std::span<const std::uint64_t>(g.row_offsets_));
  fnv_span(h, std::span<const NodeIndex>(g.col_indices_));
  for (const auto& label : g.ids_.labels()) {
    fnv_bytes(h, label.data(), label.size());
    const char sep = '\n';
    fnv_bytes(h, &sep, 1);
  }
  g.fingerprint_ = h;

  s.nodes = n;
  s.edges = clean.size();
  return g;
}

Graph Graph::from_index_edges(
    std::size_t n, std::span<const std::pair<NodeIndex, NodeIndex>> edges,
    LoadSummary* summary) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return from_edges(std::move(labels), edges, summary);
}

bool Graph::is_connected() const {
  const std::size_t n = num_nodes();
  std::vector<char> seen(n, 0);
  std::vector<NodeIndex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeIndex u = stack.back();
    stack.pop_back();
    for (NodeIndex v : neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == n;
}

Graph load_edge_list(std::istream& in, LoadSummary* summary) {
  LoadSummary local;
  LoadSummary& s = summary ? *summary : local;
  s = LoadSummary{};

  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeIndex> index;
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;

  auto intern = [&](std::string_view token) {
    auto [it, inserted] = index.try_emplace(std::string(token), labels.size());
    if (inserted) labels.emplace_back(token);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest(line);
    std::string_view tokens[2];
    std::size_t count = 0;
    while (count < 2) {
      std::size_t b = 0;
      while (b < rest.size() && is_space(rest[b])) ++b;
      rest.remove_prefix(b);
      if (rest.empty()) break;
      std::size_t e = 0;
      while (e < rest.size() && !is_space(rest[e])) ++e;
      tokens[count++] = rest.substr(0, e);
      rest.remove_prefix(e);
    }
    if (count == 0) continue;
    if (tokens[0].front() == '%' || tokens[0].front() == '#') continue;
    if (count < 2) {
      throw ParseError(line_no, "expected a pair of node labels, found 1 token");
    }
    ++s.lines_read;
    const NodeIndex u = intern(tokens[0]);
    const NodeIndex v = intern(tokens[1]);
    edges.emplace_back(u, v);
  }
  if (in.bad()) throw Error(ErrorKind::io, "read error on edge list stream");

  s.edges_read = edges.size();
  return Graph::from_edges(std::move(labels), edges, &s);
}

Graph load_edge_list_file(const std::string& path, LoadSummary* summary) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "'");
  return load_edge_list(in, summary);
}

DegreeVector degrees(const Graph& g) {
  DegreeVector d(g.num_nodes());
  for (NodeIndex i = 0; i < d.size(); ++i) d[i] = g.degree(i);
  return d;
}

void spmv(const Graph& g, std::span<const double> x, std::span<double> y,
          unsigned threads) {
  const std::size_t n = g.num_nodes();
  if (x.size() != n || y.size() != n) {
    throw Error(ErrorKind::dimension,
                "spmv: expected vectors of length " + std::to_string(n));
  }
  const auto offsets = g.row_offsets();
  const auto cols = g.col_indices();
  auto rows = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double acc = 0.0;
      for (std::uint64_t k = offsets[i]; k < offsets[i + 1]; ++k) {
        acc += x[cols[k]];
      }
      y[i] = acc;
    }
  };
  if (threads <= 1 || n < 4096) {
    rows(0, n);
    return;
  }
  // Balance on stored entries rather than rows.
  std::vector<std::jthread> workers;
  const std::uint64_t nnz = offsets[n];
  std::size_t begin = 0;
  for (unsigned t = 0; t < threads && begin < n; ++t) {
    const std::uint64_t target = nnz * (t + 1) / threads;
    auto it = std::lower_bound(offsets.begin() + begin, offsets.end(), target);
    std::size_t end = std::min<std::size_t>(it - offsets.begin(), n);
    if (t + 1 == threads) end = n;
    if (end <= begin) end = std::min(begin + 1, n);
    workers.emplace_back(rows, begin, end);
    begin = end;
  }
  if (begin < n) rows(begin, n);
}

std::vector<double> spmv(const Graph& g, std::span<const double> x,
                         unsigned threads) {
  std::vector<double> y(g.num_nodes());
  spmv(g, x, y, threads);
  return y;
}

void write_canonical_edge_list(const Graph& g, std::ostream& out) {
  std::vector<std::pair<const std::string*, const std::string*>> edges;
  edges.reserve(g.num_edges());
  for (NodeIndex u = 0; u < g.num_nodes(); ++u) {
    for (NodeIndex v : g.neighbors(u)) {
      const std::string& a = g.ids().label(u);
      const std::string& b = g.ids().label(v);
      if (a < b) edges.emplace_back(&a, &b);
    }
  }
  std::sort(edges.begin(), edges.end(), [](const auto& l, const auto& r) {
    if (*l.first != *r.first) return *l.first < *r.first;
    return *l.second < *r.second;
  });
  for (const auto& [a, b] : edges) out << *a << ' ' << *b << '\n';
}

}  // namespace pgain
