#include <algorithm>
#include <vector>

#include "doctest.h"
#include "generators.hpp"
#include "idt/compile.hpp"
#include "idt/error.hpp"
#include "idt/semantics.hpp"
#include "idt/syntax.hpp"

using namespace idt;

namespace {

void check_agreement(const Idt& idt, const Formula& f, Rng& rng, std::size_t atoms, int graphs) {
  for (int i = 0; i < graphs; ++i) {
    const std::size_t n = rng.uniform_index(9);
    const auto g = testing::random_graph(rng, n, rng.uniform01());
    const auto u = testing::random_features(rng, n, atoms);
    const auto expected = eval_nodes_reference(g, u, f);
    REQUIRE(idt_node_predict(idt, g, u) == expected);
    const bool all = std::all_of(expected.begin(), expected.end(), [](auto b) { return b != 0; });
    REQUIRE(idt_predict(idt, g, u) == (all ? 1U : 0U));
  }
}

}  // namespace

TEST_CASE("an atom compiles to one identity layer") {
  const auto idt = compile_formula_to_idt(Formula::atom(0), 1);
  REQUIRE(idt.layers.size() == 1);
  const auto& root = idt.layers[0].trees.at(0).nodes.at(0);
  REQUIRE(root.split.has_value());
  CHECK(root.split->feature.modal == Modal::kId);
  CHECK(root.split->feature.source == 0);
  CHECK(root.split->threshold == Rational(0));
  Rng rng(1);
  check_agreement(idt, Formula::atom(0), rng, 1, 200);
}

TEST_CASE("depth padding") {
  CHECK(render_formula(normalize_depth(parse_formula("U0"), 1)) == "I U0 > 0");
  CHECK(render_formula(normalize_depth(parse_formula("(1(A U0 = 0) > 2) & (A U1 = 1) & U0"), 2)) ==
        "(1(A U0 = 0) > 2) & (I(A U1 = 1) > 0) & (I(I U0 > 0) > 0)");
}

TEST_CASE("the two-level example compiles to two layers") {
  const auto f = parse_formula("(1(A U0 = 0) > 2) & (A U1 = 1) & U0");
  const auto idt = compile_formula_to_idt(f);
  CHECK(idt.atom_count == 2);
  CHECK(idt.layers.size() == 2);
  Rng rng(2);
  check_agreement(idt, f, rng, 2, 300);
}

TEST_CASE("Top compiles to an always-satisfied classifier") {
  const auto idt = compile_formula_to_idt(Formula::top(), 1);
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto g = testing::random_graph(rng, rng.uniform_index(6), 0.5);
    CHECK(idt_predict(idt, g, testing::random_features(rng, g.node_count(), 1)) == 1);
  }
}

TEST_CASE("compiled classifiers agree with the semantics") {
  Rng rng(4);
  testing::FormulaShape shape;
  shape.max_count = 3;
  int compiled = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto f = testing::random_formula(rng, 2, shape);
    Idt idt;
    try {
      idt = compile_formula_to_idt(f, 2);
    } catch (const LimitError&) {
      continue;
    }
    ++compiled;
    check_agreement(idt, f, rng, 2, 25);
  }
  CHECK(compiled > 40);
}

TEST_CASE("too many guards on one level") {
  std::vector<Formula> parts;
  for (std::uint64_t n = 0; n < 20; ++n) parts.push_back(Formula::count_gt(Modal::kAdj, Formula::atom(0), n));
  CHECK_THROWS_AS(compile_formula_to_idt(Formula::conj_all(parts)), LimitError);
}
