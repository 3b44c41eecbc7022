#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace strokeml {

enum class ColumnKind { Continuous, CategoricalEncoded, Binary };

inline const char* to_string(ColumnKind k) {
    switch (k) {
        case ColumnKind::Continuous: return "continuous";
        case ColumnKind::CategoricalEncoded: return "categorical-encoded";
        case ColumnKind::Binary: return "binary";
    }
    return "?";
}

struct Column {
    std::string name;
    ColumnKind kind = ColumnKind::Continuous;
    std::vector<double> values;
};

using FeatureVector = std::vector<double>;

// Column-oriented numeric table plus a binary label vector (1 = stroke).
// Immutable by convention once built; learners see only numbers + kind tags.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::vector<Column> columns, std::vector<int> labels)
        : columns_(std::move(columns)), labels_(std::move(labels)) {
        for (const auto& c : columns_) {
            if (c.values.size() != labels_.size()) {
                throw std::invalid_argument("Dataset: column '" + c.name +
                                            "' length mismatch with labels");
            }
        }
        for (int y : labels_) {
            if (y != 0 && y != 1) {
                throw std::invalid_argument("Dataset: labels must be 0 or 1");
            }
        }
    }

    std::size_t row_count() const { return labels_.size(); }
    std::size_t feature_count() const { return columns_.size(); }

    const std::vector<Column>& columns() const { return columns_; }
    const Column& column(std::size_t j) const { return columns_.at(j); }
    const std::vector<int>& labels() const { return labels_; }
    int label(std::size_t i) const { return labels_[i]; }

    double at(std::size_t row, std::size_t col) const {
        return columns_[col].values[row];
    }

    FeatureVector row(std::size_t i) const {
        FeatureVector x(columns_.size());
        for (std::size_t j = 0; j < columns_.size(); ++j) x[j] = columns_[j].values[i];
        return x;
    }

    // Row-major copy for learners that iterate observations.
    std::vector<double> to_row_major() const {
        const std::size_t n = row_count(), d = feature_count();
        std::vector<double> m(n * d);
        for (std::size_t j = 0; j < d; ++j) {
            const auto& v = columns_[j].values;
            for (std::size_t i = 0; i < n; ++i) m[i * d + j] = v[i];
        }
        return m;
    }

    int column_index(const std::string& name) const {
        for (std::size_t j = 0; j < columns_.size(); ++j) {
            if (columns_[j].name == name) return static_cast<int>(j);
        }
        return -1;
    }

    std::size_t count_label(int value) const {
        std::size_t c = 0;
        for (int y : labels_) c += (y == value);
        return c;
    }

    Dataset select_rows(std::span<const std::size_t> rows) const {
        std::vector<Column> cols(columns_.size());
        for (std::size_t j = 0; j < columns_.size(); ++j) {
            cols[j].name = columns_[j].name;
            cols[j].kind = columns_[j].kind;
            cols[j].values.reserve(rows.size());
            for (std::size_t i : rows) cols[j].values.push_back(columns_[j].values[i]);
        }
        std::vector<int> lab;
        lab.reserve(rows.size());
        for (std::size_t i : rows) lab.push_back(labels_[i]);
        return Dataset(std::move(cols), std::move(lab));
    }

private:
    std::vector<Column> columns_;
    std::vector<int> labels_;
};

}  // namespace strokeml
