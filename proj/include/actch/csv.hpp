#pragma once

#include <string>
#include <variant>
#include <vector>

namespace actch {

// CSV output: header row, 12-significant-digit decimals, trailing newline,
// UTF-8. Formatting is locale-independent so identical inputs produce
// byte-identical files.

using CsvValue = std::variant<double, long long, std::string>;

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<CsvValue>> rows;

    void add_row(std::vector<CsvValue> row);
    std::string to_string() const;
};

/// Format with 12 significant digits (round-trips through parsing).
std::string format_real(double v);

/// Write the table to `path`; throws ConfigError on an unwritable path.
void emit_csv(const CsvTable& table, const std::string& path);

/// Minimal reader for the files emit_csv writes (used by round-trip checks).
CsvTable parse_csv(const std::string& text);

}  // namespace actch
