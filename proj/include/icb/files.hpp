#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace icb {

// Writes to "<path>.tmp" then renames over `path`; creates parent directories.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace icb
