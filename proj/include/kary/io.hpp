#pragma once

#include <filesystem>
#include <string>

#include "kary/bytes.hpp"

namespace kary {

// All throw IoError.
Bytes read_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, ByteView data);
void write_text_file(const std::filesystem::path& path, const std::string& text);
void append_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace kary
