#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lincue {

struct CsvError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// RFC-4180 CSV. Quoted fields may contain commas, newlines and doubled quotes.
namespace csv {

// Parses a whole document. Records keep their 1-based line number of the
// first physical line they started on (for error messages).
struct Record {
    std::vector<std::string> fields;
    std::size_t line = 0;
};

std::vector<Record> parse(const std::string& content);

// Reads and parses a file; throws CsvError on I/O failure.
std::vector<Record> parse_file(const std::string& path);

// Quotes a field only when needed.
std::string escape(const std::string& field);

std::string join_row(const std::vector<std::string>& fields);

}  // namespace csv
}  // namespace lincue
