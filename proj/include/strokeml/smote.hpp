#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "strokeml/dataset.hpp"
#include "strokeml/rng.hpp"

namespace strokeml {

struct SmoteConfig {
    std::size_t k_neighbors = 5;
    // Interpolated categorical codes are kept fractional (plain SMOTE);
    // set true to round them to the nearest valid code.
    bool round_categorical_codes = false;
};

// k nearest minority neighbors of each minority row, Euclidean distance over
// the encoded feature space. Self excluded; ties by (distance, index).
inline std::vector<std::vector<std::size_t>> knn_minority(const Dataset& data, std::size_t k) {
    std::vector<std::size_t> minority;
    for (std::size_t i = 0; i < data.row_count(); ++i) {
        if (data.label(i) == 1) minority.push_back(i);
    }
    const std::size_t m = minority.size();
    if (k == 0) throw std::invalid_argument("knn_minority: k must be >= 1");
    if (m <= k) {
        throw std::invalid_argument("knn_minority: k (" + std::to_string(k) +
                                    ") must be < minority count (" + std::to_string(m) + ")");
    }
    const std::size_t d = data.feature_count();
    std::vector<double> rows(m * d);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t j = 0; j < d; ++j) rows[a * d + j] = data.at(minority[a], j);
    }
    std::vector<std::vector<std::size_t>> result(m);
    std::vector<std::pair<double, std::size_t>> dist(m);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            double s = 0;
            for (std::size_t j = 0; j < d; ++j) {
                const double diff = rows[a * d + j] - rows[b * d + j];
                s += diff * diff;
            }
            dist[b] = {s, b};
        }
        dist[a].first = std::numeric_limits<double>::infinity();  // exclude self
        std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
        auto& nn = result[a];
        nn.reserve(k);
        for (std::size_t t = 0; t < k; ++t) nn.push_back(dist[t].second);
    }
    return result;
}

struct SmoteResult {
    Dataset data;                  // originals first, synthetics appended
    std::size_t synthetic_count = 0;
    std::size_t before_minority = 0, before_majority = 0;
    std::size_t after_minority = 0, after_majority = 0;
};

// Oversamples the minority class to exactly the majority count. Each
// synthetic row is x + u * (x_nn - x) with u uniform in [0, 1] and x_nn one
// of x's k minority neighbors; the required count is spread round-robin so
// every minority row seeds floor(N/m) or ceil(N/m) synthetics.
inline SmoteResult oversample(const Dataset& data, const SmoteConfig& cfg, RngStream& rng) {
    std::size_t n1 = data.count_label(1);
    std::size_t n0 = data.row_count() - n1;
    if (n1 == 0 || n0 == 0) throw std::invalid_argument("oversample: input has a single class");

    const int minority_label = n1 <= n0 ? 1 : 0;
    const std::size_t m = std::min(n1, n0);
    const std::size_t need = std::max(n1, n0) - m;

    SmoteResult result;
    result.before_minority = m;
    result.before_majority = std::max(n1, n0);
    if (need == 0) {
        result.data = data;
        result.after_minority = result.after_majority = m;
        return result;
    }
    if (m <= cfg.k_neighbors) {
        throw std::invalid_argument("oversample: minority count must exceed k_neighbors");
    }

    std::vector<std::size_t> minority;
    for (std::size_t i = 0; i < data.row_count(); ++i) {
        if (data.label(i) == minority_label) minority.push_back(i);
    }
    // neighbor lists are indices into `minority`
    Dataset minority_view = data.select_rows(minority);
    // knn_minority looks for label 1; the view keeps original labels, so
    // relabel when the minority class is 0.
    std::vector<std::vector<std::size_t>> nn;
    if (minority_label == 1) {
        nn = knn_minority(minority_view, cfg.k_neighbors);
    } else {
        std::vector<int> ones(minority_view.row_count(), 1);
        Dataset flipped(minority_view.columns(), ones);
        nn = knn_minority(flipped, cfg.k_neighbors);
    }

    const std::size_t d = data.feature_count();
    std::vector<Column> cols = data.columns();
    std::vector<int> labels = data.labels();
    for (auto& c : cols) c.values.reserve(data.row_count() + need);
    labels.reserve(data.row_count() + need);

    // per-column code bounds for the optional rounding mode
    std::vector<std::pair<double, double>> bounds(d, {0, 0});
    if (cfg.round_categorical_codes) {
        for (std::size_t j = 0; j < d; ++j) {
            const auto& v = data.column(j).values;
            auto [mn, mx] = std::minmax_element(v.begin(), v.end());
            bounds[j] = {*mn, *mx};
        }
    }

    const std::size_t base = need / m, extra = need % m;
    for (std::size_t a = 0; a < m; ++a) {
        const std::size_t quota = base + (a < extra ? 1 : 0);
        for (std::size_t q = 0; q < quota; ++q) {
            const std::size_t b = nn[a][rng.next_index(cfg.k_neighbors)];
            const double u = rng.next_double();
            for (std::size_t j = 0; j < d; ++j) {
                const double xa = data.at(minority[a], j);
                const double xb = data.at(minority[b], j);
                double v = xa + u * (xb - xa);
                if (cfg.round_categorical_codes &&
                    data.column(j).kind != ColumnKind::Continuous) {
                    v = std::clamp(std::round(v), bounds[j].first, bounds[j].second);
                }
                cols[j].values.push_back(v);
            }
            labels.push_back(minority_label);
        }
    }
    result.synthetic_count = need;
    result.after_minority = m + need;
    result.after_majority = std::max(n1, n0);
    result.data = Dataset(std::move(cols), std::move(labels));
    return result;
}

}  // namespace strokeml
