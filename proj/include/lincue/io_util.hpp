#pragma once

#include <stdexcept>
#include <string>

namespace lincue {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Writes via a temp file in the same directory, then renames into place.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

bool file_exists(const std::string& path);

void ensure_directory(const std::string& path);

}  // namespace lincue
