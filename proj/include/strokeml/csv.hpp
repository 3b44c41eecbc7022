#pragma once

#include <cctype>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace strokeml {

inline const std::set<std::string>& default_missing_tokens() {
    static const std::set<std::string> tokens = {"", "N/A", "NA"};
    return tokens;
}

// Raw string table straight from the CSV. Cell strings are preserved
// verbatim; which of them count as missing is decided by missing_tokens.
struct RawTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;  // row-major
    std::set<std::string> missing_tokens = default_missing_tokens();

    std::size_t row_count() const { return rows.size(); }
    std::size_t column_count() const { return header.size(); }

    bool is_missing(const std::string& cell) const {
        return missing_tokens.count(cell) > 0;
    }

    int column_index(const std::string& name) const {
        for (std::size_t j = 0; j < header.size(); ++j) {
            if (header[j] == name) return static_cast<int>(j);
        }
        return -1;
    }
};

namespace detail {

// One RFC 4180 record; quoted fields may contain commas, doubled quotes and
// embedded newlines. Returns false on clean EOF before any content.
inline bool read_record(std::istream& in, std::vector<std::string>& fields) {
    fields.clear();
    std::string field;
    bool in_quotes = false;
    bool any = false;
    int c;
    while ((c = in.get()) != EOF) {
        any = true;
        char ch = static_cast<char>(c);
        if (in_quotes) {
            if (ch == '"') {
                if (in.peek() == '"') {
                    field.push_back('"');
                    in.get();
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(ch);
            }
        } else if (ch == '"') {
            in_quotes = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (ch == '\r') {
            if (in.peek() == '\n') in.get();
            fields.push_back(std::move(field));
            return true;
        } else if (ch == '\n') {
            fields.push_back(std::move(field));
            return true;
        } else {
            field.push_back(ch);
        }
    }
    if (!any) return false;
    fields.push_back(std::move(field));
    return true;
}

inline bool parse_double(const std::string& s, double& out) {
    const char* b = s.data();
    const char* e = s.data() + s.size();
    while (b < e && (*b == ' ' || *b == '\t')) ++b;
    auto [p, ec] = std::from_chars(b, e, out);
    if (ec != std::errc()) return false;
    while (p < e && (*p == ' ' || *p == '\t')) ++p;
    return p == e;
}

}  // namespace detail

// Reads the whole file; first line is the header. Ragged rows are rejected
// with their 1-based data row number.
inline RawTable read_csv(const std::string& path,
                         std::set<std::string> missing_tokens = default_missing_tokens()) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_csv: cannot open '" + path + "'");
    RawTable table;
    table.missing_tokens = std::move(missing_tokens);
    std::vector<std::string> fields;
    if (!detail::read_record(in, fields)) {
        throw std::runtime_error("read_csv: empty file '" + path + "'");
    }
    table.header = fields;
    std::size_t line = 0;
    while (detail::read_record(in, fields)) {
        ++line;
        if (fields.size() == 1 && fields[0].empty() && in.peek() == EOF) break;  // trailing newline
        if (fields.size() != table.header.size()) {
            throw std::runtime_error("read_csv: row " + std::to_string(line) + " has " +
                                     std::to_string(fields.size()) + " cells, expected " +
                                     std::to_string(table.header.size()));
        }
        table.rows.push_back(fields);
    }
    return table;
}

inline void write_csv(const std::string& path, const RawTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_csv: cannot open '" + path + "'");
    auto quote = [](const std::string& s) {
        if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += "\"\"";
            else q.push_back(c);
        }
        q += "\"";
        return q;
    };
    for (std::size_t j = 0; j < table.header.size(); ++j) {
        out << (j ? "," : "") << quote(table.header[j]);
    }
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            out << (j ? "," : "") << quote(row[j]);
        }
        out << "\n";
    }
}

enum class SchemaKind { Id, Continuous, Categorical, Binary, Label };

inline const char* to_string(SchemaKind k) {
    switch (k) {
        case SchemaKind::Id: return "id";
        case SchemaKind::Continuous: return "continuous";
        case SchemaKind::Categorical: return "categorical";
        case SchemaKind::Binary: return "binary";
        case SchemaKind::Label: return "label";
    }
    return "?";
}

// Expected stroke-table schema. Keys are matched case-insensitively against
// the file header; a rename map translates nonstandard headers first.
inline const std::vector<std::pair<std::string, SchemaKind>>& expected_schema() {
    static const std::vector<std::pair<std::string, SchemaKind>> schema = {
        {"id", SchemaKind::Id},
        {"gender", SchemaKind::Categorical},
        {"age", SchemaKind::Continuous},
        {"hypertension", SchemaKind::Binary},
        {"heart_disease", SchemaKind::Binary},
        {"ever_married", SchemaKind::Categorical},
        {"work_type", SchemaKind::Categorical},
        {"residence_type", SchemaKind::Categorical},
        {"avg_glucose_level", SchemaKind::Continuous},
        {"bmi", SchemaKind::Continuous},
        {"smoking_status", SchemaKind::Categorical},
        {"stroke", SchemaKind::Label},
    };
    return schema;
}

struct SchemaReport {
    std::vector<SchemaKind> kinds;             // aligned with table.header
    std::vector<std::string> unexpected;       // present but not in the schema
};

namespace detail {
inline std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}
}  // namespace detail

// Checks all expected columns are present and numeric columns hold numbers
// (missing tokens aside). Extra columns are reported, not rejected.
inline SchemaReport validate_schema(const RawTable& table,
                                    const std::map<std::string, std::string>& rename = {}) {
    if (table.row_count() == 0) throw std::runtime_error("validate_schema: table has no rows");
    std::unordered_map<std::string, SchemaKind> want;
    for (const auto& [name, kind] : expected_schema()) want[name] = kind;

    SchemaReport report;
    report.kinds.resize(table.column_count(), SchemaKind::Continuous);
    std::set<std::string> seen;
    for (std::size_t j = 0; j < table.column_count(); ++j) {
        std::string name = table.header[j];
        if (auto it = rename.find(name); it != rename.end()) name = it->second;
        name = detail::lower(name);
        auto it = want.find(name);
        if (it == want.end()) {
            report.unexpected.push_back(table.header[j]);
            report.kinds[j] = SchemaKind::Categorical;
            continue;
        }
        seen.insert(name);
        report.kinds[j] = it->second;
    }
    for (const auto& [name, kind] : expected_schema()) {
        if (!seen.count(name)) {
            throw std::runtime_error("validate_schema: missing required column '" + name + "'");
        }
    }
    for (std::size_t j = 0; j < table.column_count(); ++j) {
        const SchemaKind k = report.kinds[j];
        if (k != SchemaKind::Continuous && k != SchemaKind::Binary && k != SchemaKind::Label &&
            k != SchemaKind::Id) {
            continue;
        }
        for (std::size_t i = 0; i < table.row_count(); ++i) {
            const std::string& cell = table.rows[i][j];
            if (table.is_missing(cell)) continue;
            double v;
            if (!detail::parse_double(cell, v)) {
                throw std::runtime_error("validate_schema: non-numeric cell '" + cell +
                                         "' at row " + std::to_string(i + 1) + ", column '" +
                                         table.header[j] + "'");
            }
            if (k == SchemaKind::Binary || k == SchemaKind::Label) {
                if (v != 0.0 && v != 1.0) {
                    throw std::runtime_error("validate_schema: column '" + table.header[j] +
                                             "' must be 0/1, got '" + cell + "' at row " +
                                             std::to_string(i + 1));
                }
            }
        }
    }
    return report;
}

// Exact per-column missing-cell counts.
inline std::map<std::string, std::size_t> missing_profile(const RawTable& table) {
    std::map<std::string, std::size_t> profile;
    for (const auto& name : table.header) profile[name] = 0;
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (table.is_missing(row[j])) ++profile[table.header[j]];
        }
    }
    return profile;
}

}  // namespace strokeml
