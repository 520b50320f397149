#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace feesim {

// Full round-trip decimal formatting (17 significant digits) so CSV
// fixtures are bit-stable across IEEE-754 platforms.
std::string format_full(double value);

// Write-temp-then-rename, so interrupted runs never leave partial files.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace feesim
