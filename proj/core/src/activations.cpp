#include "idt/activations.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <regex>

#include "idt/error.hpp"
#include "json.hpp"

namespace idt {

namespace {

using nlohmann::json;

constexpr std::string_view kFormat = "idtact/1";
constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string encode_floats(const std::vector<float>& values) {
  std::vector<std::uint8_t> bytes(values.size() * 4);
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto bits = std::bit_cast<std::uint32_t>(values[i]);
    for (int b = 0; b < 4; ++b) bytes[i * 4 + b] = static_cast<std::uint8_t>(bits >> (8 * b));
  }
  return base64_encode(bytes);
}

std::vector<float> decode_floats(std::string_view text, const std::string& where) {
  std::vector<std::uint8_t> bytes;
  try {
    bytes = base64_decode(text);
  } catch (const DataError& e) {
    throw DataError(where + ": " + e.what());
  }
  if (bytes.size() % 4 != 0) throw DataError(where + ": payload is not a whole number of float32 values");
  std::vector<float> out(bytes.size() / 4);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint32_t bits = 0;
    for (int b = 0; b < 4; ++b) bits |= static_cast<std::uint32_t>(bytes[i * 4 + b]) << (8 * b);
    out[i] = std::bit_cast<float>(bits);
    if (!std::isfinite(out[i])) throw DataError(where + ": non-finite value at position " + std::to_string(i));
  }
  return out;
}

}  // namespace

std::string base64_encode(std::span<const std::uint8_t> bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 2 < bytes.size(); i += 3) {
    const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
    out += kAlphabet[(v >> 6) & 63];
    out += kAlphabet[v & 63];
  }
  if (i + 1 == bytes.size()) {
    const std::uint32_t v = bytes[i] << 16;
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
    out += "==";
  } else if (i + 2 == bytes.size()) {
    const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8);
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
    out += kAlphabet[(v >> 6) & 63];
    out += '=';
  }
  return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
  static const auto table = [] {
    std::array<int, 256> t{};
    t.fill(-1);
    for (int i = 0; i < 64; ++i) t[static_cast<unsigned char>(kAlphabet[i])] = i;
    return t;
  }();
  if (text.size() % 4 != 0) throw DataError("base64 length is not a multiple of 4");
  std::vector<std::uint8_t> out;
  out.reserve(text.size() / 4 * 3);
  for (std::size_t i = 0; i < text.size(); i += 4) {
    int v[4];
    int pad = 0;
    for (int k = 0; k < 4; ++k) {
      const char c = text[i + k];
      if (c == '=' && i + 4 == text.size() && k >= 2) {
        v[k] = 0;
        ++pad;
        continue;
      }
      if (pad > 0) throw DataError("base64 padding in the middle of the input");
      v[k] = table[static_cast<unsigned char>(c)];
      if (v[k] < 0) throw DataError("invalid base64 character at position " + std::to_string(i + k));
    }
    const std::uint32_t w = (v[0] << 18) | (v[1] << 12) | (v[2] << 6) | v[3];
    out.push_back(static_cast<std::uint8_t>(w >> 16));
    if (pad < 2) out.push_back(static_cast<std::uint8_t>(w >> 8));
    if (pad < 1) out.push_back(static_cast<std::uint8_t>(w));
  }
  return out;
}

ActivationDumps read_activations(std::istream& in) {
  ActivationDumps d;
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw DataError("activation file is empty");
  std::size_t graph_count = 0;
  try {
    const json header = json::parse(line);
    const auto format = header.at("format").get<std::string>();
    if (format != kFormat) throw DataError("unsupported activation format '" + format + "'");
    d.layer_count = header.at("layer_count").get<std::size_t>();
    d.num_classes = header.at("num_classes").get<std::size_t>();
    graph_count = header.at("graph_count").get<std::size_t>();
    if (header.contains("config")) d.config_json = header.at("config").dump();
    if (header.contains("fold") && !header.at("fold").is_null()) d.fold = header.at("fold").get<std::size_t>();
    if (header.contains("test_indices") && !header.at("test_indices").is_null()) {
      d.test_indices = header.at("test_indices").get<std::vector<std::size_t>>();
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed activation header: ") + e.what());
  }
  if (d.layer_count == 0) throw DataError("activation header declares zero layers");
  d.graphs.resize(graph_count);
  std::vector<bool> seen(graph_count, false);
  while (next_line()) {
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    }
    try {
      const auto id = rec.at("graph").get<std::size_t>();
      const std::string where = "graph " + std::to_string(id);
      if (id >= graph_count) throw DataError(where + ": id outside the declared graph count");
      if (seen[id]) throw DataError(where + ": duplicate record");
      seen[id] = true;
      GraphActivations g;
      g.nodes = rec.at("nodes").get<std::size_t>();
      g.dims = rec.at("dims").get<std::vector<std::size_t>>();
      if (g.dims.size() != d.layer_count) throw DataError(where + ": expected " + std::to_string(d.layer_count) + " layers");
      const auto& layers = rec.at("layers");
      if (layers.size() != d.layer_count) throw DataError(where + ": layer payload count mismatch");
      for (std::size_t k = 0; k < d.layer_count; ++k) {
        const std::string lw = where + " layer " + std::to_string(k + 1);
        auto values = decode_floats(layers[k].get<std::string>(), lw);
        if (values.size() != g.nodes * g.dims[k]) {
          throw DataError(lw + ": " + std::to_string(values.size()) + " values, expected " +
                          std::to_string(g.nodes) + " x " + std::to_string(g.dims[k]));
        }
        g.layers.push_back(std::move(values));
      }
      g.output = decode_floats(rec.at("output").get<std::string>(), where + " output");
      if (g.output.size() != d.num_classes) throw DataError(where + " output: expected " + std::to_string(d.num_classes) + " scores");
      g.pred = rec.at("pred").get<std::size_t>();
      if (g.pred >= d.num_classes) throw DataError(where + ": predicted class out of range");
      d.graphs[id] = std::move(g);
    } catch (const json::exception& e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  for (std::size_t i = 0; i < graph_count; ++i) {
    if (!seen[i]) throw DataError("graph " + std::to_string(i) + ": no activation record");
  }
  for (std::size_t k = 0; k < d.layer_count && graph_count > 0; ++k) {
    for (const auto& g : d.graphs) {
      if (g.dims[k] != d.graphs.front().dims[k]) {
        throw DataError("layer " + std::to_string(k + 1) + ": hidden dimension differs between graphs");
      }
    }
  }
  if (d.test_indices) {
    for (auto i : *d.test_indices) {
      if (i >= graph_count) throw DataError("test index " + std::to_string(i) + " out of range");
    }
  }
  return d;
}

void write_activations(std::ostream& out, const ActivationDumps& d) {
  json header = {{"format", kFormat},
                 {"layer_count", d.layer_count},
                 {"num_classes", d.num_classes},
                 {"graph_count", d.graphs.size()},
                 {"config", json::parse(d.config_json)}};
  if (d.fold) header["fold"] = *d.fold;
  if (d.test_indices) header["test_indices"] = *d.test_indices;
  out << header.dump() << '\n';
  for (std::size_t i = 0; i < d.graphs.size(); ++i) {
    const auto& g = d.graphs[i];
    json layers = json::array();
    for (const auto& l : g.layers) layers.push_back(encode_floats(l));
    json rec = {{"graph", i},
                {"nodes", g.nodes},
                {"dims", g.dims},
                {"layers", std::move(layers)},
                {"output", encode_floats(g.output)},
                {"pred", g.pred}};
    out << rec.dump() << '\n';
  }
}

ActivationDumps load_activations(const std::filesystem::path& path, const Dataset& dataset) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path.string());
  ActivationDumps d;
  try {
    d = read_activations(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  if (d.graphs.size() != dataset.size()) {
    throw DataError(path.string() + ": " + std::to_string(d.graphs.size()) + " graphs, dataset has " +
                    std::to_string(dataset.size()));
  }
  if (d.num_classes != dataset.num_classes) {
    throw DataError(path.string() + ": " + std::to_string(d.num_classes) + " classes, dataset has " +
                    std::to_string(dataset.num_classes));
  }
  for (std::size_t i = 0; i < d.graphs.size(); ++i) {
    const auto n = dataset.graphs[i].graph.node_count();
    if (d.graphs[i].nodes != n) {
      throw DataError(path.string() + ": graph " + std::to_string(i) + " layer 1: " + std::to_string(d.graphs[i].nodes) +
                      " rows, graph has " + std::to_string(n) + " nodes");
    }
  }
  return d;
}

void save_activations(const std::filesystem::path& path, const ActivationDumps& dumps) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  write_activations(out, dumps);
}

std::map<std::size_t, std::filesystem::path> activation_files(const std::filesystem::path& path) {
  std::map<std::size_t, std::filesystem::path> out;
  if (!std::filesystem::is_directory(path)) {
    if (!std::filesystem::exists(path)) throw DataError("activation path " + path.string() + " does not exist");
    out.emplace(0, path);
    return out;
  }
  static const std::regex pattern(R"(fold_(\d+)\.act)");
  for (const auto& entry : std::filesystem::directory_iterator(path)) {
    std::smatch m;
    const auto name = entry.path().filename().string();
    if (std::regex_match(name, m, pattern)) out.emplace(std::stoul(m[1].str()), entry.path());
  }
  if (out.empty()) throw DataError("no fold_<k>.act files in " + path.string());
  return out;
}

}  // namespace idt
