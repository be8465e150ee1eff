#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace stratlab::harness {

// In-memory CSV table. Fields never contain commas, quotes or newlines in the
// schemas written here, so no quoting is applied; reading rejects quotes.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Column index by name; throws std::invalid_argument if absent.
    std::size_t column(std::string_view name) const;
    bool has_column(std::string_view name) const;

    std::string to_string() const;
    static CsvTable parse(std::string_view text);
};

CsvTable read_csv(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it into place, so readers
// never observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

// Shortest decimal representation that round-trips.
std::string format_double(double v);

}  // namespace stratlab::harness
