#include "idt/tu_format.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "idt/error.hpp"

namespace idt {

namespace fs = std::filesystem;

namespace {

std::string locate_prefix(const fs::path& directory) {
  if (!fs::is_directory(directory)) {
    throw DataError("dataset directory '" + directory.string() + "' does not exist");
  }
  std::vector<std::string> prefixes;
  for (const auto& entry : fs::directory_iterator(directory)) {
    const std::string name = entry.path().filename().string();
    constexpr std::string_view kSuffix = "_A.txt";
    if (name.size() > kSuffix.size() && name.ends_with(kSuffix)) {
      prefixes.push_back(name.substr(0, name.size() - kSuffix.size()));
    }
  }
  if (prefixes.empty()) {
    const std::string stem = directory.filename().empty() ? directory.parent_path().filename().string()
                                                          : directory.filename().string();
    throw DataError("missing required file " + (directory / (stem + "_A.txt")).string());
  }
  std::sort(prefixes.begin(), prefixes.end());
  return prefixes.front();
}

std::ifstream open_required(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("missing required file " + path.string());
  return in;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::int64_t parse_int(std::string_view token, const fs::path& file, std::size_t line) {
  const std::string t = trim(token);
  std::int64_t value = 0;
  const auto* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, value);
  if (ec != std::errc() || ptr != end || t.empty()) {
    throw DataError(file.filename().string() + ":" + std::to_string(line) + ": expected an integer, got '" +
                    t + "'");
  }
  return value;
}

/// Reads a file with one integer per non-empty line.
std::vector<std::int64_t> read_column(std::ifstream& in, const fs::path& file) {
  std::vector<std::int64_t> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    // Some TU files carry several comma-separated values; the first is the label.
    const auto comma = line.find(',');
    out.push_back(parse_int(std::string_view(line).substr(0, comma), file, line_no));
  }
  return out;
}

std::optional<std::vector<std::vector<std::uint8_t>>> read_binary_attributes(const fs::path& file,
                                                                             std::size_t nodes) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  std::vector<std::vector<std::uint8_t>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::uint8_t> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const std::string t = trim(cell);
      if (t == "0" || t == "0.0") {
        row.push_back(0);
      } else if (t == "1" || t == "1.0") {
        row.push_back(1);
      } else {
        return std::nullopt;  // real-valued attributes are ignored
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) return std::nullopt;
    rows.push_back(std::move(row));
  }
  if (rows.size() != nodes) return std::nullopt;
  return rows;
}

}  // namespace

Dataset load_tu_dataset(const fs::path& directory) {
  const std::string prefix = locate_prefix(directory);
  const fs::path edges_file = directory / (prefix + "_A.txt");
  const fs::path indicator_file = directory / (prefix + "_graph_indicator.txt");
  const fs::path labels_file = directory / (prefix + "_graph_labels.txt");
  const fs::path node_labels_file = directory / (prefix + "_node_labels.txt");
  const fs::path node_attr_file = directory / (prefix + "_node_attributes.txt");

  auto indicator_in = open_required(indicator_file);
  auto labels_in = open_required(labels_file);
  auto edges_in = open_required(edges_file);

  const std::vector<std::int64_t> indicator = read_column(indicator_in, indicator_file);
  const std::vector<std::int64_t> raw_labels = read_column(labels_in, labels_file);
  const std::size_t total_nodes = indicator.size();
  const std::size_t graph_count = raw_labels.size();

  // Map each global node to (graph, local index).
  std::vector<std::size_t> node_graph(total_nodes);
  std::vector<std::size_t> node_local(total_nodes);
  std::vector<std::size_t> graph_sizes(graph_count, 0);
  for (std::size_t v = 0; v < total_nodes; ++v) {
    const std::int64_t gid = indicator[v];
    if (gid < 1 || static_cast<std::size_t>(gid) > graph_count) {
      throw DataError(indicator_file.filename().string() + ":" + std::to_string(v + 1) + ": graph id " +
                      std::to_string(gid) + " outside 1.." + std::to_string(graph_count));
    }
    node_graph[v] = static_cast<std::size_t>(gid - 1);
    node_local[v] = graph_sizes[node_graph[v]]++;
  }

  std::vector<std::vector<Edge>> graph_edges(graph_count);
  {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(edges_in, line)) {
      ++line_no;
      if (trim(line).empty()) continue;
      const auto comma = line.find(',');
      if (comma == std::string::npos) {
        throw DataError(edges_file.filename().string() + ":" + std::to_string(line_no) +
                        ": expected 'i, j'");
      }
      const std::int64_t a = parse_int(std::string_view(line).substr(0, comma), edges_file, line_no);
      const std::int64_t b = parse_int(std::string_view(line).substr(comma + 1), edges_file, line_no);
      for (std::int64_t id : {a, b}) {
        if (id < 1 || static_cast<std::size_t>(id) > total_nodes) {
          throw DataError(edges_file.filename().string() + ":" + std::to_string(line_no) + ": node id " +
                          std::to_string(id) + " does not exist");
        }
      }
      const auto ia = static_cast<std::size_t>(a - 1);
      const auto ib = static_cast<std::size_t>(b - 1);
      if (node_graph[ia] != node_graph[ib]) {
        throw DataError(edges_file.filename().string() + ":" + std::to_string(line_no) + ": node " +
                        std::to_string(b) + " referenced outside its graph " +
                        std::to_string(node_graph[ia] + 1));
      }
      if (ia == ib) continue;
      graph_edges[node_graph[ia]].emplace_back(node_local[ia], node_local[ib]);
    }
  }

  // Features.
  std::vector<std::vector<std::uint8_t>> node_rows(total_nodes);
  std::size_t feature_count = 1;
  if (std::ifstream nl_in(node_labels_file); nl_in) {
    const std::vector<std::int64_t> node_labels = read_column(nl_in, node_labels_file);
    if (node_labels.size() != total_nodes) {
      throw DataError(node_labels_file.filename().string() + " has " + std::to_string(node_labels.size()) +
                      " lines, expected " + std::to_string(total_nodes));
    }
    std::map<std::int64_t, std::size_t> index;
    for (auto l : node_labels) index.emplace(l, 0);
    std::size_t next = 0;
    for (auto& [value, idx] : index) idx = next++;
    feature_count = index.size();
    for (std::size_t v = 0; v < total_nodes; ++v) {
      node_rows[v].assign(feature_count, 0);
      node_rows[v][index[node_labels[v]]] = 1;
    }
  } else if (auto attrs = read_binary_attributes(node_attr_file, total_nodes)) {
    feature_count = attrs->empty() ? 0 : attrs->front().size();
    node_rows = std::move(*attrs);
  } else {
    for (auto& row : node_rows) row.assign(1, 1);
  }

  std::map<std::int64_t, std::size_t> label_index;
  for (auto l : raw_labels) label_index.emplace(l, 0);
  {
    std::size_t next = 0;
    for (auto& [value, idx] : label_index) idx = next++;
  }

  Dataset ds;
  ds.feature_count = feature_count;
  ds.num_classes = std::max<std::size_t>(1, label_index.size());
  ds.graphs.resize(graph_count);
  for (std::size_t gi = 0; gi < graph_count; ++gi) {
    ds.graphs[gi].graph = Graph::from_edges(graph_sizes[gi], graph_edges[gi]);
    ds.graphs[gi].features = FeatureMatrix(graph_sizes[gi], feature_count);
    ds.graphs[gi].label = label_index[raw_labels[gi]];
  }
  for (std::size_t v = 0; v < total_nodes; ++v) {
    auto& fm = ds.graphs[node_graph[v]].features;
    for (std::size_t j = 0; j < feature_count; ++j) fm.set(node_local[v], j, node_rows[v][j] != 0);
  }
  ds.validate();
  return ds;
}

void write_tu_dataset(const Dataset& dataset, const fs::path& directory, const std::string& name) {
  fs::create_directories(directory);
  auto open = [&](const std::string& suffix) {
    std::ofstream out(directory / (name + suffix));
    if (!out) throw DataError("cannot write " + (directory / (name + suffix)).string());
    return out;
  };

  bool one_hot = dataset.feature_count > 0;
  std::vector<bool> column_used(dataset.feature_count, false);
  for (const auto& lg : dataset.graphs) {
    for (std::size_t v = 0; v < lg.graph.node_count() && one_hot; ++v) {
      std::size_t ones = 0;
      for (std::size_t j = 0; j < dataset.feature_count; ++j) {
        if (lg.features.at(v, j)) {
          ++ones;
          column_used[j] = true;
        }
      }
      one_hot = ones == 1;
    }
  }
  // A never-used one-hot column would vanish on reload.
  one_hot = one_hot && std::all_of(column_used.begin(), column_used.end(), [](bool b) { return b; });

  auto a_out = open("_A.txt");
  auto ind_out = open("_graph_indicator.txt");
  auto lab_out = open("_graph_labels.txt");
  std::ofstream feat_out = one_hot ? open("_node_labels.txt") : open("_node_attributes.txt");

  std::size_t offset = 0;
  for (std::size_t gi = 0; gi < dataset.graphs.size(); ++gi) {
    const auto& lg = dataset.graphs[gi];
    const std::size_t n = lg.graph.node_count();
    for (const auto& [i, j] : lg.graph.edges()) {
      a_out << offset + i + 1 << ", " << offset + j + 1 << '\n';
      a_out << offset + j + 1 << ", " << offset + i + 1 << '\n';
    }
    for (std::size_t v = 0; v < n; ++v) {
      ind_out << gi + 1 << '\n';
      if (one_hot) {
        for (std::size_t j = 0; j < dataset.feature_count; ++j) {
          if (lg.features.at(v, j)) feat_out << j << '\n';
        }
      } else {
        for (std::size_t j = 0; j < dataset.feature_count; ++j) {
          feat_out << (j ? ", " : "") << static_cast<int>(lg.features.at(v, j));
        }
        feat_out << '\n';
      }
    }
    lab_out << lg.label << '\n';
    offset += n;
  }
}

}  // namespace idt
