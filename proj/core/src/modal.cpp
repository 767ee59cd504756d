#include "idt/modal.hpp"

#include <bit>

namespace idt {

std::string_view modal_token(Modal m) noexcept {
  switch (m) {
    case Modal::kZero: return "0";
    case Modal::kOne: return "1";
    case Modal::kId: return "I";
    case Modal::kAdj: return "A";
    case Modal::kOneMinusId: return "1-I";
    case Modal::kOneMinusAdj: return "1-A";
    case Modal::kIdPlusAdj: return "I+A";
    case Modal::kOneMinusIdMinusAdj: return "1-I-A";
  }
  return "?";
}

std::optional<Modal> modal_from_token(std::string_view token) noexcept {
  for (Modal m : kAllModals) {
    if (modal_token(m) == token) return m;
  }
  return std::nullopt;
}

std::vector<std::uint32_t> neighborhood_sizes(const Graph& g, Modal m) {
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> out(n);
  for (std::size_t v = 0; v < n; ++v) {
    const auto d = static_cast<std::uint32_t>(g.degree(v));
    const auto nn = static_cast<std::uint32_t>(n);
    switch (m) {
      case Modal::kZero: out[v] = 0; break;
      case Modal::kOne: out[v] = nn; break;
      case Modal::kId: out[v] = 1; break;
      case Modal::kAdj: out[v] = d; break;
      case Modal::kOneMinusId: out[v] = nn - 1; break;
      case Modal::kOneMinusAdj: out[v] = nn - d; break;
      case Modal::kIdPlusAdj: out[v] = d + 1; break;
      case Modal::kOneMinusIdMinusAdj: out[v] = nn - d - 1; break;
    }
  }
  return out;
}

std::vector<std::uint32_t> modal_counts(const Graph& g, Modal m, std::span<const std::uint8_t> x) {
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> out(n, 0);
  if (m == Modal::kZero) return out;

  std::uint32_t total = 0;
  for (auto b : x) total += b;

  const bool needs_adj = m == Modal::kAdj || m == Modal::kOneMinusAdj || m == Modal::kIdPlusAdj ||
                         m == Modal::kOneMinusIdMinusAdj;
  std::vector<std::uint32_t> adj;
  if (needs_adj) {
    const std::size_t words = g.words_per_row();
    std::vector<std::uint64_t> packed(words, 0);
    for (std::size_t w = 0; w < n; ++w) {
      if (x[w]) packed[w / 64] |= std::uint64_t{1} << (w % 64);
    }
    adj.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
      const auto row = g.row(v);
      std::uint32_t c = 0;
      for (std::size_t w = 0; w < words; ++w) c += static_cast<std::uint32_t>(std::popcount(row[w] & packed[w]));
      adj[v] = c;
    }
  }

  for (std::size_t v = 0; v < n; ++v) {
    const std::uint32_t self = x[v];
    switch (m) {
      case Modal::kZero: break;
      case Modal::kOne: out[v] = total; break;
      case Modal::kId: out[v] = self; break;
      case Modal::kAdj: out[v] = adj[v]; break;
      case Modal::kOneMinusId: out[v] = total - self; break;
      case Modal::kOneMinusAdj: out[v] = total - adj[v]; break;
      case Modal::kIdPlusAdj: out[v] = self + adj[v]; break;
      case Modal::kOneMinusIdMinusAdj: out[v] = total - self - adj[v]; break;
    }
  }
  return out;
}

}  // namespace idt
