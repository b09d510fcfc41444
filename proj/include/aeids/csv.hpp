#pragma once

#include <optional>
#include <string>
#include <vector>

namespace aeids {

// Parsed CSV: comma delimiter, mandatory header row, double-quote escaping
// with "" for a literal quote. An empty cell is a null marker.
struct CsvFile {
    std::vector<std::string> header;
    std::vector<std::vector<std::optional<std::string>>> rows;
};

// Throws FileError if unreadable, ParseError (naming the line) on ragged or
// malformed rows.
CsvFile read_csv_file(const std::string& path);

// One CSV record; quotes fields only when they need it.
std::string csv_join(const std::vector<std::string>& fields);

// Shortest round-trip decimal form of a double; reloading the text yields
// the identical bit pattern.
std::string format_double(double value);

// Strict full-string parse after trimming ASCII whitespace.
bool parse_double(const std::string& text, double& out);

std::string trim(const std::string& s);
std::string to_lower(const std::string& s);

}  // namespace aeids
