#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "idt/graph.hpp"

namespace idt {

/// The eight modal parameters. Each names a neighbourhood selector eps_S(v).
enum class Modal : std::uint8_t {
  kZero,
  kOne,
  kId,
  kAdj,
  kOneMinusId,
  kOneMinusAdj,
  kIdPlusAdj,
  kOneMinusIdMinusAdj,
};

inline constexpr std::array<Modal, 8> kAllModals = {
    Modal::kZero,       Modal::kOne,         Modal::kId,        Modal::kAdj,
    Modal::kOneMinusId, Modal::kOneMinusAdj, Modal::kIdPlusAdj, Modal::kOneMinusIdMinusAdj,
};

/// Concrete-syntax token: "0", "1", "I", "A", "1-I", "1-A", "I+A", "1-I-A".
std::string_view modal_token(Modal m) noexcept;
std::optional<Modal> modal_from_token(std::string_view token) noexcept;

/// |eps_S(v)| for every node.
std::vector<std::uint32_t> neighborhood_sizes(const Graph& g, Modal m);

/// Entry v is the number of w in eps_S(v) with x[w] = 1, i.e. the product of
/// the parameter's matrix with the indicator vector x. One-family parameters
/// use the global count instead of materializing the all-ones matrix.
std::vector<std::uint32_t> modal_counts(const Graph& g, Modal m, std::span<const std::uint8_t> x);

}  // namespace idt
