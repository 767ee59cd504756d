#include "idt/explain.hpp"

#include <cstdio>
#include <sstream>

#include "idt/leaf_sets.hpp"

namespace idt {

namespace {

std::string values(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%.3f", i ? " " : "", v[i]);
    out += buf;
  }
  return out + "]";
}

void print_tree(std::ostringstream& out, const DecisionTree& tree, std::size_t i, const std::string& indent,
                Notation notation, bool graph_level) {
  const auto& node = tree.nodes[i];
  if (node.is_leaf()) {
    out << indent << "leaf #" << i;
    if (graph_level) {
      out << " -> class " << node.label;
    } else if (!node.value.empty()) {
      out << ' ' << values(node.value);
    }
    if (node.samples > 0) out << "  (" << node.samples << " rows)";
    out << '\n';
    return;
  }
  out << indent << render_formula(split_formula(*node.split), notation) << '\n';
  out << indent << "  yes:\n";
  print_tree(out, tree, static_cast<std::size_t>(node.right), indent + "    ", notation, graph_level);
  out << indent << "  no:\n";
  print_tree(out, tree, static_cast<std::size_t>(node.left), indent + "    ", notation, graph_level);
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

void dot_tree(std::ostringstream& out, const DecisionTree& tree, const std::string& prefix, bool graph_level) {
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const auto& node = tree.nodes[i];
    std::string label;
    if (node.is_leaf()) {
      label = graph_level ? "class " + std::to_string(node.label) : "leaf #" + std::to_string(i);
      out << "    " << prefix << i << " [shape=box, label=\"" << dot_escape(label) << "\"];\n";
    } else {
      label = render_formula(split_formula(*node.split));
      out << "    " << prefix << i << " [shape=ellipse, label=\"" << dot_escape(label) << "\"];\n";
      out << "    " << prefix << i << " -> " << prefix << node.right << " [label=\"yes\"];\n";
      out << "    " << prefix << i << " -> " << prefix << node.left << " [label=\"no\", style=dashed];\n";
    }
  }
}

}  // namespace

std::string explain_text(const Idt& idt, Notation notation) {
  std::ostringstream out;
  out << "atoms: U0..U" << (idt.atom_count == 0 ? 0 : idt.atom_count - 1) << " (" << idt.atom_count << ")\n";
  for (std::size_t b = 0; b < idt.base_formulas.size(); ++b) {
    out << "U" << idt.atom_count + b << " := " << render_formula(idt.base_formulas[b], notation) << '\n';
  }
  for (std::size_t li = 0; li < idt.layers.size(); ++li) {
    const auto& layer = idt.layers[li];
    for (std::size_t t = 0; t < layer.trees.size(); ++t) {
      out << "\nlayer " << li << ", tree " << t << ":\n";
      print_tree(out, layer.trees[t], 0, "  ", notation, false);
      out << "  leaf sets:\n";
      for (std::size_t s = 0; s < layer.leaf_sets[t].size(); ++s) {
        const auto& set = layer.leaf_sets[t][s];
        out << "    U" << layer.leaf_set_columns[t][s] << " = {";
        for (std::size_t k = 0; k < set.leaves.size(); ++k) out << (k ? ", #" : "#") << set.leaves[k];
        out << "}: " << render_formula(set.formula, notation) << '\n';
      }
    }
  }
  out << "\nfinal tree:\n";
  print_tree(out, idt.final_tree, 0, "  ", notation, true);
  if (idt.node_output) out << "\nnode output: U" << *idt.node_output << '\n';
  out << "\nrules:\n";
  const auto rules = class_rules(idt);
  for (std::size_t c = 0; c < rules.size(); ++c) out << "  class " << c << ": " << render_formula(rules[c], notation) << '\n';
  return out.str();
}

std::string explain_dot(const Idt& idt) {
  std::ostringstream out;
  out << "digraph idt {\n  node [fontname=\"monospace\"];\n";
  for (std::size_t li = 0; li < idt.layers.size(); ++li) {
    const auto& layer = idt.layers[li];
    for (std::size_t t = 0; t < layer.trees.size(); ++t) {
      out << "  subgraph cluster_l" << li << "_t" << t << " {\n    label=\"layer " << li << ", tree " << t << "\";\n";
      dot_tree(out, layer.trees[t], "l" + std::to_string(li) + "t" + std::to_string(t) + "n", false);
      out << "  }\n";
    }
  }
  out << "  subgraph cluster_final {\n    label=\"final\";\n";
  dot_tree(out, idt.final_tree, "fn", true);
  out << "  }\n}\n";
  return out.str();
}

}  // namespace idt
