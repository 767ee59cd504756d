#pragma once

#include <filesystem>
#include <string>

#include "idt/graph.hpp"

namespace idt {

/// Loads a dataset in the TU Dortmund plain-text layout:
///   <DS>_A.txt               "i, j" per line, 1-based global node ids
///   <DS>_graph_indicator.txt graph id per node line
///   <DS>_graph_labels.txt    label per graph line
///   <DS>_node_labels.txt     optional, integer label per node line
///
/// Node labels become one-hot feature columns (one per distinct label value,
/// ascending). Without node labels, a `<DS>_node_attributes.txt` whose entries
/// are all 0/1 is read as binary feature columns; otherwise a single always-1
/// column is synthesized. Graph labels are remapped to 0..k-1 in ascending
/// order. Self-loops in the edge list are dropped.
Dataset load_tu_dataset(const std::filesystem::path& directory);

/// Writes `dataset` as <directory>/<name>_*.txt. One-hot feature matrices are
/// written as node labels, anything else as 0/1 node attributes, so that
/// load_tu_dataset reproduces the dataset.
void write_tu_dataset(const Dataset& dataset, const std::filesystem::path& directory,
                      const std::string& name);

}  // namespace idt
