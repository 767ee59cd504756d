#include "idt/idt_io.hpp"

#include <fstream>
#include <sstream>

#include "idt/error.hpp"
#include "idt/syntax.hpp"
#include "json.hpp"

namespace idt {

namespace {

using nlohmann::json;

constexpr std::string_view kFormat = "idt/1";

json tree_to_json(const DecisionTree& tree) {
  json nodes = json::array();
  for (const auto& node : tree.nodes) {
    json j;
    if (node.split) {
      const auto& s = *node.split;
      j["split"] = {{"modal", modal_token(s.feature.modal)},
                    {"source", s.feature.source},
                    {"kind", s.feature.kind == ValueKind::kCount ? "count" : "ratio"},
                    {"threshold", s.threshold.to_string()}};
      j["left"] = node.left;
      j["right"] = node.right;
    }
    j["value"] = node.value;
    j["samples"] = node.samples;
    j["sse"] = node.sse;
    if (node.label >= 0) j["label"] = node.label;
    nodes.push_back(std::move(j));
  }
  return nodes;
}

DecisionTree tree_from_json(const json& nodes) {
  DecisionTree tree;
  for (const auto& j : nodes) {
    TreeNode node;
    if (j.contains("split")) {
      const auto& s = j.at("split");
      const auto token = s.at("modal").get<std::string>();
      const auto modal = modal_from_token(token);
      if (!modal) throw DataError("unknown modal parameter '" + token + "'");
      const auto kind = s.at("kind").get<std::string>();
      if (kind != "count" && kind != "ratio") throw DataError("unknown split kind '" + kind + "'");
      SplitTest split;
      split.feature = {*modal, s.at("source").get<std::size_t>(), kind == "count" ? ValueKind::kCount : ValueKind::kRatio};
      try {
        split.threshold = Rational::parse(s.at("threshold").get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw DataError(std::string("bad threshold: ") + e.what());
      }
      node.split = split;
      node.left = j.at("left").get<std::int32_t>();
      node.right = j.at("right").get<std::int32_t>();
    }
    node.value = j.at("value").get<std::vector<double>>();
    node.samples = j.at("samples").get<std::size_t>();
    node.sse = j.at("sse").get<double>();
    node.label = j.value("label", -1);
    tree.nodes.push_back(std::move(node));
  }
  return tree;
}

json config_to_json(const IdtConfig& c) {
  json modals = json::array();
  for (auto m : c.layer_modals) modals.push_back(modal_token(m));
  json j = {{"layers", c.layers},
            {"trees_per_layer", c.trees_per_layer},
            {"layer_depth", c.layer_depth},
            {"layer_min_rows_leaf", c.layer_min_rows_leaf},
            {"feature_rate", c.feature_rate},
            {"ccp_alpha", c.ccp_alpha},
            {"final_min_rows_leaf", c.final_min_rows_leaf},
            {"layer_modals", modals},
            {"seed", c.seed}};
  j["final_max_depth"] = c.final_max_depth ? json(*c.final_max_depth) : json(nullptr);
  return j;
}

IdtConfig config_from_json(const json& j) {
  IdtConfig c;
  c.layers = j.at("layers").get<std::size_t>();
  c.trees_per_layer = j.at("trees_per_layer").get<std::size_t>();
  c.layer_depth = j.at("layer_depth").get<std::size_t>();
  c.layer_min_rows_leaf = j.at("layer_min_rows_leaf").get<std::size_t>();
  c.feature_rate = j.at("feature_rate").get<double>();
  c.ccp_alpha = j.at("ccp_alpha").get<double>();
  c.final_min_rows_leaf = j.at("final_min_rows_leaf").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  if (!j.at("final_max_depth").is_null()) c.final_max_depth = j.at("final_max_depth").get<std::size_t>();
  c.layer_modals.clear();
  for (const auto& m : j.at("layer_modals")) {
    const auto modal = modal_from_token(m.get<std::string>());
    if (!modal) throw DataError("unknown modal parameter in config");
    c.layer_modals.push_back(*modal);
  }
  return c;
}

json formulas_to_json(const std::vector<Formula>& fs) {
  json out = json::array();
  for (const auto& f : fs) out.push_back(render_formula(f));
  return out;
}

std::vector<Formula> formulas_from_json(const json& j) {
  std::vector<Formula> out;
  for (const auto& s : j) out.push_back(parse_formula(s.get<std::string>()));
  return out;
}

}  // namespace

std::string idt_to_json(const Idt& idt) {
  json doc;
  doc["format"] = kFormat;
  doc["atom_count"] = idt.atom_count;
  doc["num_classes"] = idt.num_classes;
  doc["config"] = config_to_json(idt.config);
  doc["base_formulas"] = formulas_to_json(idt.base_formulas);
  json layers = json::array();
  for (const auto& layer : idt.layers) {
    json l;
    l["pool_offset"] = layer.pool_offset;
    json trees = json::array();
    for (std::size_t t = 0; t < layer.trees.size(); ++t) {
      json sets = json::array();
      for (std::size_t s = 0; s < layer.leaf_sets[t].size(); ++s) {
        const auto& set = layer.leaf_sets[t][s];
        sets.push_back({{"leaves", set.leaves},
                        {"formula", render_formula(set.formula)},
                        {"column", layer.leaf_set_columns[t][s]}});
      }
      trees.push_back({{"nodes", tree_to_json(layer.trees[t])}, {"leaf_sets", std::move(sets)}});
    }
    l["trees"] = std::move(trees);
    l["emitted"] = formulas_to_json(layer.emitted);
    layers.push_back(std::move(l));
  }
  doc["layers"] = std::move(layers);
  doc["final_tree"] = tree_to_json(idt.final_tree);
  doc["node_output"] = idt.node_output ? json(*idt.node_output) : json(nullptr);
  return doc.dump(1) + "\n";
}

Idt idt_from_json(std::string_view text) {
  Idt idt;
  try {
    const json doc = json::parse(text);
    const auto format = doc.at("format").get<std::string>();
    if (format != kFormat) throw DataError("unsupported model format '" + format + "'");
    idt.atom_count = doc.at("atom_count").get<std::size_t>();
    idt.num_classes = doc.at("num_classes").get<std::size_t>();
    idt.config = config_from_json(doc.at("config"));
    idt.base_formulas = formulas_from_json(doc.at("base_formulas"));
    for (const auto& l : doc.at("layers")) {
      IdtLayer layer;
      layer.pool_offset = l.at("pool_offset").get<std::size_t>();
      for (const auto& t : l.at("trees")) {
        layer.trees.push_back(tree_from_json(t.at("nodes")));
        auto& sets = layer.leaf_sets.emplace_back();
        auto& columns = layer.leaf_set_columns.emplace_back();
        for (const auto& s : t.at("leaf_sets")) {
          sets.push_back({s.at("leaves").get<std::vector<std::size_t>>(), parse_formula(s.at("formula").get<std::string>())});
          columns.push_back(s.at("column").get<std::size_t>());
        }
      }
      layer.emitted = formulas_from_json(l.at("emitted"));
      idt.layers.push_back(std::move(layer));
    }
    idt.final_tree = tree_from_json(doc.at("final_tree"));
    if (!doc.at("node_output").is_null()) idt.node_output = doc.at("node_output").get<std::size_t>();
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed model document: ") + e.what());
  } catch (const ParseError& e) {
    throw DataError(std::string("malformed formula in model document: ") + e.what());
  }
  try {
    validate_idt(idt);
  } catch (const InvariantError& e) {
    throw DataError(e.what());
  }
  return idt;
}

void save_idt(const Idt& idt, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << idt_to_json(idt);
  if (!out) throw DataError("failed writing " + path.string());
}

Idt load_idt(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return idt_from_json(buffer.str());
}

}  // namespace idt
