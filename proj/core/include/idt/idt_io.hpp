#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "idt/idt.hpp"

namespace idt {

/// Self-describing JSON document, format tag "idt/1". Thresholds are stored
/// as exact strings, formulas in the concrete grammar. Training rows are not
/// stored.
std::string idt_to_json(const Idt& idt);

/// Throws DataError on malformed documents, unknown format tags, or models
/// that fail validation.
Idt idt_from_json(std::string_view text);

void save_idt(const Idt& idt, const std::filesystem::path& path);
Idt load_idt(const std::filesystem::path& path);

}  // namespace idt
