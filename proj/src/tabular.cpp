#include "depsig/tabular.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "depsig/errors.hpp"

namespace depsig {

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    return npos;
}

namespace {

std::string read_whole_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string content = std::move(buf).str();
    if (content.rfind("\xEF\xBB\xBF", 0) == 0) content.erase(0, 3); // UTF-8 BOM
    return content;
}

// Splits one physical line on tabs. No escaping in TSV.
std::vector<std::string> split_tsv(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == '\t') {
            fields.emplace_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return fields;
}

std::vector<TableRow> parse_tsv(const std::string& content) {
    std::vector<TableRow> rows;
    std::size_t line_no = 1;
    std::size_t pos = 0;
    while (pos < content.size()) {
        std::size_t eol = content.find('\n', pos);
        std::size_t next = (eol == std::string::npos) ? content.size() : eol + 1;
        std::string_view line(content.data() + pos, (eol == std::string::npos ? content.size() : eol) - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) rows.push_back({split_tsv(line), line_no});
        pos = next;
        ++line_no;
    }
    return rows;
}

// RFC 4180 state machine. Quoted fields may contain commas, escaped quotes
// ("") and newlines; a quote inside an unquoted field is malformed.
std::vector<TableRow> parse_csv(const std::string& content) {
    std::vector<TableRow> rows;
    std::vector<std::string> fields;
    std::string field;
    std::size_t line_no = 1;
    std::size_t row_start_line = 1;
    bool in_quotes = false;
    bool field_was_quoted = false;
    bool row_has_content = false;

    auto end_field = [&] {
        fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
    };
    auto end_row = [&] {
        end_field();
        // A physically empty line is not a record.
        if (fields.size() > 1 || !fields[0].empty() || row_has_content) {
            rows.push_back({std::move(fields), row_start_line});
        }
        fields.clear();
        row_has_content = false;
        row_start_line = line_no;
    };

    for (std::size_t i = 0; i < content.size(); ++i) {
        const char c = content[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < content.size() && content[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line_no;
                field += c;
            }
            continue;
        }
        switch (c) {
        case '"':
            if (!field.empty() || field_was_quoted) {
                throw MalformedRow(row_start_line, "stray '\"' inside unquoted field");
            }
            in_quotes = true;
            field_was_quoted = true;
            row_has_content = true;
            break;
        case ',':
            end_field();
            row_has_content = true;
            break;
        case '\r':
            // swallowed; the following '\n' ends the row
            break;
        case '\n':
            ++line_no;
            end_row();
            break;
        default:
            field += c;
            row_has_content = true;
            break;
        }
    }
    if (in_quotes) throw MalformedRow(row_start_line, "unterminated quoted field");
    if (row_has_content || !field.empty() || !fields.empty()) end_row(); // no trailing newline
    return rows;
}

} // namespace

Table read_table(const std::filesystem::path& path, TableFormat format) {
    const std::string content = read_whole_file(path);
    std::vector<TableRow> all =
        format == TableFormat::Tsv ? parse_tsv(content) : parse_csv(content);
    if (all.empty()) throw DataError("file has no header row: " + path.string());

    Table table;
    table.header = std::move(all.front().fields);
    table.rows.assign(std::make_move_iterator(all.begin() + 1),
                      std::make_move_iterator(all.end()));
    return table;
}

std::string tsv_field(const std::string& value, std::size_t row_for_error) {
    if (value.find_first_of("\t\r\n") != std::string::npos) {
        throw MalformedRow(row_for_error,
                           "text contains a tab or newline; TSV cannot represent it, use CSV");
    }
    return value;
}

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') quoted += "\"\"";
        else quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string format_double(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

} // namespace depsig
