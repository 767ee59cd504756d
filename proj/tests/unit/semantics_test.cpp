#include <vector>

#include "doctest.h"
#include "generators.hpp"
#include "idt/error.hpp"
#include "idt/modal.hpp"
#include "idt/semantics.hpp"
#include "idt/syntax.hpp"

using namespace idt;

namespace {

// The four-node graph with edges v0-v1, v0-v2, v1-v2, v1-v3,
// U0 = (0101), U1 = (1001).
LabeledGraph example_graph() {
  LabeledGraph lg;
  const std::vector<Edge> edges = {{0, 1}, {0, 2}, {1, 2}, {1, 3}};
  lg.graph = Graph::from_edges(4, edges);
  lg.features = FeatureMatrix::from_rows({{0, 1}, {1, 0}, {0, 0}, {1, 1}});
  return lg;
}

std::vector<std::uint32_t> as_u32(const NodeVector& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("neighbourhood sizes of every modal parameter") {
  const auto g = example_graph().graph;
  const std::size_t n = 4;
  for (auto m : kAllModals) {
    const auto sizes = neighborhood_sizes(g, m);
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t d = g.degree(v);
      std::size_t want = 0;
      switch (m) {
        case Modal::kZero: want = 0; break;
        case Modal::kOne: want = n; break;
        case Modal::kId: want = 1; break;
        case Modal::kAdj: want = d; break;
        case Modal::kOneMinusId: want = n - 1; break;
        case Modal::kOneMinusAdj: want = n - d; break;
        case Modal::kIdPlusAdj: want = 1 + d; break;
        case Modal::kOneMinusIdMinusAdj: want = n - 1 - d; break;
      }
      CHECK(sizes[v] == want);
    }
  }
}

TEST_CASE("the worked evaluation of A(!(A U1 = 1)) > 1 step by step") {
  const auto lg = example_graph();
  const auto& g = lg.graph;
  const auto& u = lg.features;
  const auto a_u1 = modal_counts(g, Modal::kAdj, u.column(1));
  CHECK(a_u1 == std::vector<std::uint32_t>{0, 2, 1, 0});
  const auto eq1 = eval_nodes(g, u, parse_formula("A U1 = 1"));
  CHECK(as_u32(eq1) == std::vector<std::uint32_t>{0, 0, 1, 0});
  const auto neg = eval_nodes(g, u, parse_formula("!(A U1 = 1)"));
  CHECK(as_u32(neg) == std::vector<std::uint32_t>{1, 1, 0, 1});
  CHECK(modal_counts(g, Modal::kAdj, neg) == std::vector<std::uint32_t>{1, 2, 2, 1});
  const auto phi = eval_nodes(g, u, parse_formula("A(!(A U1 = 1)) > 1"));
  CHECK(as_u32(phi) == std::vector<std::uint32_t>{0, 1, 1, 0});
  CHECK(eval_nodes_reference(g, u, parse_formula("A(!(A U1 = 1)) > 1")) == phi);
}

TEST_CASE("graph satisfaction requires every node; the empty graph satisfies everything") {
  const auto lg = example_graph();
  CHECK(eval_graph(lg.graph, lg.features, Formula::top()));
  CHECK_FALSE(eval_graph(lg.graph, lg.features, parse_formula("0 T > 0")));
  CHECK_FALSE(eval_graph(lg.graph, lg.features, parse_formula("A(!(A U1 = 1)) > 1")));
  CHECK(eval_graph(lg.graph, lg.features, parse_formula("1 U1 > 0.25")));
  CHECK_FALSE(eval_graph(lg.graph, lg.features, parse_formula("1 U1 > 0.5")));
  const Graph empty(0);
  CHECK(eval_graph(empty, FeatureMatrix(0, 2), parse_formula("0 T > 0")));
}

TEST_CASE("relative tests are false on empty neighbourhoods") {
  const Graph g(1);
  const FeatureMatrix u = FeatureMatrix::from_rows({{1}});
  CHECK(eval_nodes(g, u, parse_formula("A U0 > 0.5")) == NodeVector{0});
  CHECK(eval_nodes(g, u, parse_formula("A U0 <= 0.5")) == NodeVector{1});
  CHECK(eval_nodes(g, u, parse_formula("I U0 > 0.5")) == NodeVector{1});
}

TEST_CASE("atoms beyond the feature matrix are rejected") {
  const auto lg = example_graph();
  CHECK_THROWS_AS(eval_nodes(lg.graph, lg.features, parse_formula("A U2 > 0")), DataError);
}

TEST_CASE("matrix semantics agrees with explicit enumeration on random inputs") {
  Rng rng(2024);
  for (int i = 0; i < 4000; ++i) {
    const std::size_t n = 1 + rng.uniform_index(8);
    const Graph g = testing::random_graph(rng, n, rng.uniform01());
    const FeatureMatrix u = testing::random_features(rng, n, 3);
    const Formula f = testing::random_formula(rng, rng.uniform_index(4), {3, 5, true});
    REQUIRE(eval_nodes(g, u, f) == eval_nodes_reference(g, u, f));
  }
}
