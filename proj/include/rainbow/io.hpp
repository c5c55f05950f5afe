#pragma once

#include <rainbow/core.hpp>

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

namespace rainbow {

inline constexpr std::string_view instance_format = "rainbow-instance/1";

/// Strict parse of a rainbow-instance/1 document; unknown fields, a wrong
/// format tag, or structural violations raise ParseError.
[[nodiscard]] auto parse_instance(std::string_view text) -> FamilySystem;
[[nodiscard]] auto instance_from_json(const nlohmann::json & doc) -> FamilySystem;

/// One family per line; the output parses back to an equal instance.
[[nodiscard]] auto serialize_instance(const FamilySystem & sys) -> std::string;

[[nodiscard]] auto read_instance(const std::filesystem::path & path) -> FamilySystem;
void write_instance(const std::filesystem::path & path, const FamilySystem & sys);

[[nodiscard]] auto read_text_file(const std::filesystem::path & path) -> std::string;
void write_text_file(const std::filesystem::path & path, std::string_view text);

} // namespace rainbow
