#include "idt/graph.hpp"

#include <bit>
#include <string>

#include "idt/error.hpp"

namespace idt {

Graph::Graph(std::size_t node_count)
    : n_(node_count), words_((node_count + 63) / 64), degree_(node_count, 0) {
  if (node_count > kMaxNodes) {
    throw LimitError("graph has " + std::to_string(node_count) + " nodes; dense storage supports at most " +
                     std::to_string(kMaxNodes));
  }
  bits_.assign(n_ * words_, 0);
}

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges) {
  Graph g(node_count);
  for (const auto& [a, b] : edges) {
    if (a >= node_count || b >= node_count) {
      throw DataError("edge (" + std::to_string(a) + ", " + std::to_string(b) + ") outside a graph of " +
                      std::to_string(node_count) + " nodes");
    }
    if (a == b) throw DataError("self-loop at node " + std::to_string(a));
    g.connect(a, b);
  }
  return g;
}

void Graph::connect(std::size_t i, std::size_t j) {
  if (adjacent(i, j)) return;
  bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
  bits_[j * words_ + i / 64] |= std::uint64_t{1} << (i % 64);
  ++degree_[i];
  ++degree_[j];
}

std::vector<std::size_t> Graph::neighbors(std::size_t i) const {
  std::vector<std::size_t> out;
  out.reserve(degree_[i]);
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t word = bits_[i * words_ + w];
    while (word != 0) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

std::size_t Graph::edge_count() const noexcept {
  std::size_t total = 0;
  for (auto d : degree_) total += d;
  return total / 2;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j : neighbors(i)) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<std::size_t> degree_vector(const Graph& g) {
  std::vector<std::size_t> out(g.node_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = g.degree(i);
  return out;
}

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), columns_(cols, std::vector<std::uint8_t>(rows, 0)) {}

FeatureMatrix FeatureMatrix::from_rows(const std::vector<std::vector<std::uint8_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  FeatureMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DataError("ragged feature rows");
    for (std::size_t j = 0; j < cols; ++j) {
      if (rows[i][j] > 1) throw DataError("feature entries must be 0 or 1");
      m.columns_[j][i] = rows[i][j];
    }
  }
  return m;
}

void FeatureMatrix::append_column(std::vector<std::uint8_t> values) {
  if (values.size() != rows_) {
    throw DataError("feature column has " + std::to_string(values.size()) + " entries, expected " +
                    std::to_string(rows_));
  }
  for (auto v : values) {
    if (v > 1) throw DataError("feature entries must be 0 or 1");
  }
  columns_.push_back(std::move(values));
}

std::vector<std::size_t> Dataset::labels() const {
  std::vector<std::size_t> out;
  out.reserve(graphs.size());
  for (const auto& g : graphs) out.push_back(g.label);
  return out;
}

void Dataset::validate() const {
  if (num_classes == 0) throw DataError("dataset must have at least one class");
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const auto& g = graphs[i];
    if (g.features.cols() != feature_count) {
      throw DataError("graph " + std::to_string(i) + " has " + std::to_string(g.features.cols()) +
                      " features, expected " + std::to_string(feature_count));
    }
    if (g.features.rows() != g.graph.node_count()) {
      throw DataError("graph " + std::to_string(i) + " feature rows do not match node count");
    }
    if (g.label >= num_classes) {
      throw DataError("graph " + std::to_string(i) + " label " + std::to_string(g.label) +
                      " out of range");
    }
  }
}

}  // namespace idt
