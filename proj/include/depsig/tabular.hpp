#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace depsig {

enum class TableFormat { Tsv, Csv };

// One parsed data row. line_no is the 1-based line of the row's first
// character in the source file (header is line 1).
struct TableRow {
    std::vector<std::string> fields;
    std::size_t line_no = 0;
};

struct Table {
    std::vector<std::string> header;
    std::vector<TableRow> rows;

    // Index of a header column, or npos.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t column(const std::string& name) const;
};

// Reads a delimited file with a mandatory header row. CSV follows RFC 4180:
// fields may be double-quoted, quotes escape as "", and quoted fields may
// contain commas, quotes and newlines. TSV has no quoting; a tab always
// separates fields and a newline always ends the row.
Table read_table(const std::filesystem::path& path, TableFormat format);

// Field encoders for writing. The TSV variant throws MalformedRow if the
// field contains a tab, CR or LF (TSV has no escape mechanism); the CSV
// variant quotes whenever needed.
std::string tsv_field(const std::string& value, std::size_t row_for_error);
std::string csv_field(const std::string& value);

// Round-trip safe double formatting: shortest decimal string that parses
// back to the identical bits. Used by every CSV/report emitter.
std::string format_double(double value);

} // namespace depsig
