#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace leoho {

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

// Parses the whole of text as a double; false on any trailing garbage.
bool parse_double(std::string_view text, double& out);

// Writes content to a sibling temp file, then renames it over path.
// Throws IoError on failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace leoho
