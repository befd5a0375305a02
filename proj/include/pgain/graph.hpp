#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pgain {

using NodeIndex = std::uint64_t;

/// Counters collected while cleaning an edge list.
struct LoadSummary {
  std::uint64_t lines_read = 0;
  std::uint64_t edges_read = 0;
  std::uint64_t self_loops_dropped = 0;
  std::uint64_t duplicates_collapsed = 0;
  std::uint64_t isolated_dropped = 0;
  std::uint64_t nodes = 0;
  std::uint64_t edges = 0;
};

/// Bijection between original node labels and dense internal indices.
class IdMap {
 public:
  IdMap() = default;
  explicit IdMap(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(NodeIndex i) const { return labels_.at(i); }
  std::span<const std::string> labels() const noexcept { return labels_; }

  /// Throws std::out_of_range for unknown labels.
  NodeIndex index(const std::string& label) const;
  bool contains(const std::string& label) const {
    return index_.contains(label);
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeIndex> index_;
};

/// Immutable simple undirected graph in CSR form.
///
/// Every undirected edge is stored in both directions, rows are sorted and
/// duplicate free, there are no self-loops and no isolated nodes. Once built
/// the structure is read-only, so concurrent readers need no locking.
class Graph {
 public:
  /// Builds a graph from index pairs over `labels`. Self-loops and repeated
  /// edges are dropped, then nodes left without neighbors are removed while
  /// the relative order of the survivors is preserved.
  static Graph from_edges(
      std::vector<std::string> labels,
      std::span<const std::pair<NodeIndex, NodeIndex>> edges,
      LoadSummary* summary = nullptr);

  /// Convenience for fixtures: nodes labelled "0".."n-1".
  static Graph from_index_edges(
      std::size_t n, std::span<const std::pair<NodeIndex, NodeIndex>> edges,
      LoadSummary* summary = nullptr);

  std::size_t num_nodes() const noexcept { return row_offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return col_indices_.size() / 2; }

  std::span<const std::uint64_t> row_offsets() const noexcept {
    return row_offsets_;
  }
  std::span<const NodeIndex> col_indices() const noexcept {
    return col_indices_;
  }
  std::span<const NodeIndex> neighbors(NodeIndex i) const noexcept {
    return {col_indices_.data() + row_offsets_[i],
            col_indices_.data() + row_offsets_[i + 1]};
  }
  std::uint64_t degree(NodeIndex i) const noexcept {
    return row_offsets_[i + 1] - row_offsets_[i];
  }
  std::uint64_t max_degree() const noexcept { return max_degree_; }

  const IdMap& ids() const noexcept { return ids_; }

  /// 64-bit FNV-1a digest of structure and labels. Binds score vectors and
  /// cache entries to one specific graph.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  bool is_connected() const;

 private:
  Graph() = default;

  std::vector<std::uint64_t> row_offsets_{0};
  std::vector<NodeIndex> col_indices_;
  IdMap ids_;
  std::uint64_t max_degree_ = 0;
  std::uint64_t fingerprint_ = 0;
};

/// Reads a whitespace separated edge list. Lines starting with '%' or '#'
/// are comments; columns after the first two (KONECT weights, timestamps)
/// are ignored. Internal indices follow first appearance.
Graph load_edge_list(std::istream& in, LoadSummary* summary = nullptr);
Graph load_edge_list_file(const std::string& path,
                          LoadSummary* summary = nullptr);

using DegreeVector = std::vector<std::uint64_t>;

DegreeVector degrees(const Graph& g);

/// y = A x. Each row is reduced sequentially in neighbor order, so the result
/// does not depend on `threads`.
void spmv(const Graph& g, std::span<const double> x, std::span<double> y,
          unsigned threads = 1);
std::vector<double> spmv(const Graph& g, std::span<const double> x,
                         unsigned threads = 1);

/// Writes "u v\n" per edge with u < v lexicographically, edges sorted.
void write_canonical_edge_list(const Graph& g, std::ostream& out);

/// Writes "internal_index,original_label" rows under a header line.
void write_id_map_csv(const Graph& g, std::ostream& out);

}  // namespace pgain
