#include "idt/synth.hpp"

#include "idt/error.hpp"
#include "idt/random.hpp"
#include "idt/semantics.hpp"

namespace idt {

Dataset gen_er_dataset(std::size_t count, std::size_t n, double p, const Formula& label_formula, std::uint64_t seed) {
  if (n == 0) throw DataError("graphs need at least one node");
  if (!(p >= 0.0 && p <= 1.0)) throw DataError("edge probability must lie in [0, 1]");
  if (atom_bound(label_formula) > 2) throw DataError("label formula may only use the atoms U0 and U1");
  Dataset ds;
  ds.num_classes = 2;
  ds.feature_count = 2;
  ds.graphs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, i));
    std::vector<Edge> edges;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (rng.bernoulli(p)) edges.emplace_back(a, b);
      }
    }
    LabeledGraph lg;
    lg.graph = Graph::from_edges(n, edges);
    lg.features = FeatureMatrix(n, 2);
    for (std::size_t v = 0; v < n; ++v) {
      lg.features.set(v, 0, true);
      lg.features.set(v, 1, rng.bernoulli(0.5));
    }
    lg.label = eval_graph(lg.graph, lg.features, label_formula) ? 1 : 0;
    ds.graphs.push_back(std::move(lg));
  }
  return ds;
}

std::string_view shape_name(Shape s) noexcept {
  switch (s) {
    case Shape::kWheel:
      return "wheel";
    case Shape::kHouse:
      return "house";
    case Shape::kGrid:
      return "grid";
  }
  return "?";
}

Graph shape_graph(Shape s) {
  std::vector<Edge> edges;
  switch (s) {
    case Shape::kWheel:
      for (std::size_t i = 1; i <= 5; ++i) {
        edges.emplace_back(0, i);
        edges.emplace_back(i, i % 5 + 1);
      }
      return Graph::from_edges(6, edges);
    case Shape::kHouse:
      edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 0}, {4, 1}};
      return Graph::from_edges(5, edges);
    case Shape::kGrid:
      for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) {
          if (c + 1 < 3) edges.emplace_back(3 * r + c, 3 * r + c + 1);
          if (r + 1 < 3) edges.emplace_back(3 * r + c, 3 * (r + 1) + c);
        }
      }
      return Graph::from_edges(9, edges);
  }
  throw InvariantError("unknown shape");
}

Graph barabasi_albert_tree(std::size_t nodes, std::uint64_t seed) {
  if (nodes < 2) return Graph(nodes);
  Rng rng(seed);
  std::vector<Edge> edges{{0, 1}};
  std::vector<std::size_t> endpoints{0, 1};  // node repeated once per incident edge
  for (std::size_t v = 2; v < nodes; ++v) {
    const auto target = endpoints[rng.uniform_index(endpoints.size())];
    edges.emplace_back(target, v);
    endpoints.push_back(target);
    endpoints.push_back(v);
  }
  return Graph::from_edges(nodes, edges);
}

Dataset gen_bamultishapes(std::size_t count, std::uint64_t seed, const BaMultiShapesOptions& options) {
  if (count == 0) throw DataError("count must be positive");
  // Shape subsets as bit masks over kAllShapes.
  const std::vector<unsigned> two_shapes = {0b011, 0b101, 0b110};
  const std::vector<unsigned> other = {0b000, 0b001, 0b010, 0b100, 0b111};

  Rng plan(derive_seed(seed, 0xba5e));
  std::vector<std::size_t> labels(count, 1);
  for (std::size_t i = 0; i < count / 2; ++i) labels[i] = 0;
  plan.shuffle(labels);

  Dataset ds;
  ds.num_classes = 2;
  ds.feature_count = 1;
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, i));
    const auto& pool = labels[i] == 0 ? two_shapes : other;
    const unsigned mask = pool[rng.uniform_index(pool.size())];
    const Graph base = barabasi_albert_tree(options.base_nodes, rng.next());
    std::vector<Edge> edges = base.edges();
    std::size_t n = base.node_count();
    for (std::size_t s = 0; s < kAllShapes.size(); ++s) {
      if (!(mask & (1U << s))) continue;
      const Graph shape = shape_graph(kAllShapes[s]);
      for (const auto& [a, b] : shape.edges()) edges.emplace_back(n + a, n + b);
      const auto from = n + rng.uniform_index(shape.node_count());
      const auto to = rng.uniform_index(base.node_count());
      edges.emplace_back(from, to);
      n += shape.node_count();
    }
    LabeledGraph lg;
    lg.graph = Graph::from_edges(n, edges);
    lg.features = FeatureMatrix(n, 1);
    for (std::size_t v = 0; v < n; ++v) lg.features.set(v, 0, true);
    lg.label = labels[i];
    ds.graphs.push_back(std::move(lg));
  }
  return ds;
}

}  // namespace idt
