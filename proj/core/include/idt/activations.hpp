#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "idt/graph.hpp"

namespace idt {

/// GNN activations of one graph. layers[k] is X^(k+1), nodes x dims[k],
/// row-major; output is the class-score vector; pred the GNN's class.
struct GraphActivations {
  std::size_t nodes = 0;
  std::vector<std::size_t> dims;
  std::vector<std::vector<float>> layers;
  std::vector<float> output;
  std::size_t pred = 0;

  friend bool operator==(const GraphActivations&, const GraphActivations&) = default;
};

/// Contents of one idtact/1 file. Format:
///
///   line 1: {"format":"idtact/1","layer_count":l,"num_classes":c,
///            "graph_count":N, "config":{...}, "fold":f, "test_indices":[...]}
///   then one line per graph:
///           {"graph":i,"nodes":n,"dims":[d1..dl],
///            "layers":["<base64>",...],"output":"<base64>","pred":k}
///
/// Every base64 payload is little-endian IEEE-754 float32, row-major.
/// "fold" and "test_indices" are optional; "config" is free-form and kept
/// verbatim.
struct ActivationDumps {
  std::size_t layer_count = 0;
  std::size_t num_classes = 0;
  std::string config_json = "{}";
  std::optional<std::size_t> fold;
  std::optional<std::vector<std::size_t>> test_indices;
  std::vector<GraphActivations> graphs;  // indexed by graph id

  friend bool operator==(const ActivationDumps&, const ActivationDumps&) = default;
};

std::string base64_encode(std::span<const std::uint8_t> bytes);
/// Throws DataError on invalid input.
std::vector<std::uint8_t> base64_decode(std::string_view text);

/// Parses and checks internal consistency (shapes, finiteness, each graph id
/// exactly once). Throws DataError naming the graph and layer at fault.
ActivationDumps read_activations(std::istream& in);
void write_activations(std::ostream& out, const ActivationDumps& dumps);

/// Reads a file and checks it against the dataset: graph count, node counts,
/// and class count.
ActivationDumps load_activations(const std::filesystem::path& path, const Dataset& dataset);
void save_activations(const std::filesystem::path& path, const ActivationDumps& dumps);

/// For a directory, every fold_<k>.act inside keyed by k; for a file, that
/// file under key 0.
std::map<std::size_t, std::filesystem::path> activation_files(const std::filesystem::path& path);

}  // namespace idt
