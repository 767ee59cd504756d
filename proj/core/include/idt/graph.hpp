#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace idt {

/// Dense storage limit. Larger graphs are rejected with a LimitError.
inline constexpr std::size_t kMaxNodes = 4096;

using Edge = std::pair<std::size_t, std::size_t>;

/// Simple undirected graph: symmetric 0/1 adjacency, zero diagonal, stored as
/// one bit-row per node.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t node_count);

  /// Duplicate and reversed pairs collapse into one undirected edge.
  /// Self-loops and out-of-range endpoints throw DataError.
  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges);

  std::size_t node_count() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return words_; }
  bool adjacent(std::size_t i, std::size_t j) const noexcept {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1U;
  }
  std::size_t degree(std::size_t i) const noexcept { return degree_[i]; }
  std::span<const std::uint64_t> row(std::size_t i) const noexcept {
    return {bits_.data() + i * words_, words_};
  }
  std::vector<std::size_t> neighbors(std::size_t i) const;
  std::size_t edge_count() const noexcept;
  /// Each edge once, as (i, j) with i < j, in row-major order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void connect(std::size_t i, std::size_t j);

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint32_t> degree_;
};

/// d_v for every node.
std::vector<std::size_t> degree_vector(const Graph& g);

/// Binary node-attribute matrix U. Column j is the indicator vector of U_j.
/// Stored column-major so derived features can be appended cheaply.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols);

  static FeatureMatrix from_rows(const std::vector<std::vector<std::uint8_t>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }
  std::uint8_t at(std::size_t row, std::size_t col) const { return columns_[col][row]; }
  void set(std::size_t row, std::size_t col, bool value) { columns_[col][row] = value ? 1 : 0; }
  std::span<const std::uint8_t> column(std::size_t col) const { return columns_[col]; }
  /// Throws DataError on a length mismatch or a non-binary entry.
  void append_column(std::vector<std::uint8_t> values);

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::vector<std::vector<std::uint8_t>> columns_;
};

struct LabeledGraph {
  Graph graph;
  FeatureMatrix features;
  std::size_t label = 0;

  friend bool operator==(const LabeledGraph&, const LabeledGraph&) = default;
};

struct Dataset {
  std::vector<LabeledGraph> graphs;
  std::size_t num_classes = 1;
  std::size_t feature_count = 0;

  std::size_t size() const noexcept { return graphs.size(); }
  std::vector<std::size_t> labels() const;
  /// Throws DataError unless every member matches feature_count and every
  /// label is below num_classes.
  void validate() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

}  // namespace idt
