#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "strokeml/csv.hpp"
#include "strokeml/dataset.hpp"

namespace strokeml {

// Per-column category -> dense code map. Codes are 0..v-1 in lexicographic
// category order.
struct EncodingMap {
    // column name -> ordered categories; code of categories[i] is i
    std::map<std::string, std::vector<std::string>> columns;

    int code(const std::string& column, const std::string& category) const {
        const auto& cats = columns.at(column);
        auto it = std::lower_bound(cats.begin(), cats.end(), category);
        if (it == cats.end() || *it != category) return -1;
        return static_cast<int>(it - cats.begin());
    }
    const std::string& category(const std::string& column, int code) const {
        return columns.at(column).at(static_cast<std::size_t>(code));
    }
    std::size_t cardinality(const std::string& column) const {
        return columns.at(column).size();
    }
};

struct NormalizationParams {
    // column name -> (min, max) observed when the params were fitted
    std::map<std::string, std::pair<double, double>> columns;
};

inline RawTable drop_columns(const RawTable& table, const std::vector<std::string>& names) {
    std::set<std::size_t> drop;
    for (const auto& name : names) {
        int j = table.column_index(name);
        if (j < 0) throw std::runtime_error("drop_columns: unknown column '" + name + "'");
        drop.insert(static_cast<std::size_t>(j));
    }
    RawTable out;
    out.missing_tokens = table.missing_tokens;
    for (std::size_t j = 0; j < table.column_count(); ++j) {
        if (!drop.count(j)) out.header.push_back(table.header[j]);
    }
    out.rows.reserve(table.row_count());
    for (const auto& row : table.rows) {
        std::vector<std::string> r;
        r.reserve(out.header.size());
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (!drop.count(j)) r.push_back(row[j]);
        }
        out.rows.push_back(std::move(r));
    }
    return out;
}

struct DropMissingResult {
    RawTable table;
    std::size_t dropped_rows = 0;
};

inline DropMissingResult drop_missing_rows(const RawTable& table) {
    DropMissingResult result;
    result.table.header = table.header;
    result.table.missing_tokens = table.missing_tokens;
    result.table.rows.reserve(table.row_count());
    for (const auto& row : table.rows) {
        bool missing = false;
        for (const auto& cell : row) {
            if (table.is_missing(cell)) {
                missing = true;
                break;
            }
        }
        if (missing) {
            ++result.dropped_rows;
        } else {
            result.table.rows.push_back(row);
        }
    }
    return result;
}

struct EncodeResult {
    Dataset data;
    EncodingMap encoding;
};

// Replaces every categorical cell by its dense lexicographic code and maps
// the label column to {0,1}. The table must contain no missing cells.
inline EncodeResult label_encode(const RawTable& table, const SchemaReport& schema) {
    if (table.column_count() != schema.kinds.size()) {
        throw std::invalid_argument("label_encode: schema/table mismatch");
    }
    EncodeResult result;
    std::vector<Column> columns;
    std::vector<int> labels(table.row_count(), 0);
    for (std::size_t j = 0; j < table.column_count(); ++j) {
        const SchemaKind kind = schema.kinds[j];
        const std::string& name = table.header[j];
        if (kind == SchemaKind::Id) {
            throw std::invalid_argument("label_encode: drop the id column first");
        }
        if (kind == SchemaKind::Label) {
            for (std::size_t i = 0; i < table.row_count(); ++i) {
                double v;
                if (!detail::parse_double(table.rows[i][j], v) || (v != 0.0 && v != 1.0)) {
                    throw std::runtime_error("label_encode: bad label '" + table.rows[i][j] +
                                             "' at row " + std::to_string(i + 1));
                }
                labels[i] = static_cast<int>(v);
            }
            continue;
        }
        Column col;
        col.name = name;
        col.values.resize(table.row_count());
        if (kind == SchemaKind::Categorical) {
            std::set<std::string> cats;
            for (const auto& row : table.rows) {
                if (table.is_missing(row[j])) {
                    throw std::runtime_error("label_encode: missing cell in column '" + name + "'");
                }
                cats.insert(row[j]);
            }
            std::vector<std::string> ordered(cats.begin(), cats.end());  // lexicographic
            result.encoding.columns[name] = ordered;
            std::map<std::string, int> code;
            for (std::size_t c = 0; c < ordered.size(); ++c) code[ordered[c]] = static_cast<int>(c);
            for (std::size_t i = 0; i < table.row_count(); ++i) {
                col.values[i] = code[table.rows[i][j]];
            }
            col.kind = ColumnKind::CategoricalEncoded;
        } else {
            for (std::size_t i = 0; i < table.row_count(); ++i) {
                double v;
                if (!detail::parse_double(table.rows[i][j], v)) {
                    throw std::runtime_error("label_encode: non-numeric cell '" + table.rows[i][j] +
                                             "' in column '" + name + "'");
                }
                col.values[i] = v;
            }
            col.kind = kind == SchemaKind::Binary ? ColumnKind::Binary : ColumnKind::Continuous;
        }
        columns.push_back(std::move(col));
    }
    result.data = Dataset(std::move(columns), std::move(labels));
    return result;
}

struct NormalizeResult {
    Dataset data;
    NormalizationParams params;
};

// (x - min) / (max - min) into [0,1]; a constant column maps to 0.
inline NormalizeResult min_max_normalize(const Dataset& data,
                                         const std::vector<std::string>& columns) {
    std::set<std::string> wanted(columns.begin(), columns.end());
    NormalizeResult result;
    std::vector<Column> cols;
    for (const auto& c : data.columns()) {
        Column out = c;
        if (wanted.count(c.name)) {
            auto [mn_it, mx_it] = std::minmax_element(c.values.begin(), c.values.end());
            const double mn = *mn_it, mx = *mx_it;
            result.params.columns[c.name] = {mn, mx};
            if (mx > mn) {
                for (double& v : out.values) v = (v - mn) / (mx - mn);
            } else {
                for (double& v : out.values) v = 0.0;
            }
        }
        cols.push_back(std::move(out));
    }
    result.data = Dataset(std::move(cols), data.labels());
    return result;
}

inline Dataset apply_normalization(const Dataset& data, const NormalizationParams& params) {
    std::vector<Column> cols;
    for (const auto& c : data.columns()) {
        Column out = c;
        if (auto it = params.columns.find(c.name); it != params.columns.end()) {
            const auto [mn, mx] = it->second;
            if (mx > mn) {
                for (double& v : out.values) v = std::clamp((v - mn) / (mx - mn), 0.0, 1.0);
            } else {
                for (double& v : out.values) v = 0.0;
            }
        }
        cols.push_back(std::move(out));
    }
    return Dataset(std::move(cols), data.labels());
}

// Pearson r of every feature against the label; a constant feature reports 0.
inline std::vector<std::pair<std::string, double>> pearson_correlation(const Dataset& data) {
    const std::size_t n = data.row_count();
    if (n < 2) throw std::invalid_argument("pearson_correlation: need at least 2 rows");
    double ybar = 0;
    for (int y : data.labels()) ybar += y;
    ybar /= static_cast<double>(n);
    double syy = 0;
    for (int y : data.labels()) syy += (y - ybar) * (y - ybar);
    if (syy == 0) throw std::invalid_argument("pearson_correlation: label is constant");
    std::vector<std::pair<std::string, double>> out;
    for (const auto& c : data.columns()) {
        double xbar = 0;
        for (double v : c.values) xbar += v;
        xbar /= static_cast<double>(n);
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dx = c.values[i] - xbar;
            sxy += dx * (data.labels()[i] - ybar);
            sxx += dx * dx;
        }
        out.emplace_back(c.name, sxx == 0 ? 0.0 : sxy / std::sqrt(sxx * syy));
    }
    return out;
}

}  // namespace strokeml
