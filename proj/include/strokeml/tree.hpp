#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "strokeml/classifier.hpp"
#include "strokeml/dataset.hpp"
#include "strokeml/rng.hpp"

namespace strokeml {

enum class SplitCriterion { Gini, Entropy };
enum class MaxFeatures { None, Auto, Sqrt, Log2 };

inline const char* to_string(SplitCriterion c) {
    return c == SplitCriterion::Gini ? "gini" : "entropy";
}
inline const char* to_string(MaxFeatures m) {
    switch (m) {
        case MaxFeatures::None: return "none";
        case MaxFeatures::Auto: return "auto";
        case MaxFeatures::Sqrt: return "sqrt";
        case MaxFeatures::Log2: return "log2";
    }
    return "?";
}

struct TreeHyper {
    SplitCriterion criterion = SplitCriterion::Gini;
    MaxFeatures max_features = MaxFeatures::None;
};

// Entropy in bits of a class probability vector; 0*log0 := 0.
inline double entropy(std::span<const double> class_probs) {
    double sum = 0;
    for (double p : class_probs) {
        if (p < 0) throw std::invalid_argument("entropy: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("entropy: probabilities must sum to 1");
    double h = 0;
    for (double p : class_probs) {
        if (p > 0) h -= p * std::log2(p);
    }
    return h;
}

inline double gini_impurity(std::span<const double> class_probs) {
    double sum = 0;
    for (double p : class_probs) {
        if (p < 0) throw std::invalid_argument("gini_impurity: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("gini_impurity: probabilities must sum to 1");
    }
    double s2 = 0;
    for (double p : class_probs) s2 += p * p;
    return 1.0 - s2;
}

namespace detail {

// Impurity from binary class counts.
inline double impurity(std::uint64_t n1, std::uint64_t n, SplitCriterion criterion) {
    if (n == 0) return 0.0;
    const double p = static_cast<double>(n1) / static_cast<double>(n);
    if (criterion == SplitCriterion::Gini) return 2.0 * p * (1.0 - p);
    double h = 0;
    if (p > 0) h -= p * std::log2(p);
    if (p < 1) h -= (1 - p) * std::log2(1 - p);
    return h;
}

}  // namespace detail

// Parent impurity minus the size-weighted impurity of the two sides.
inline double split_gain(std::span<const int> labels,
                         std::span<const std::size_t> left,
                         std::span<const std::size_t> right,
                         SplitCriterion criterion) {
    if (left.empty() || right.empty()) throw std::invalid_argument("split_gain: empty side");
    std::uint64_t l1 = 0, r1 = 0;
    for (std::size_t i : left) l1 += labels[i] == 1;
    for (std::size_t i : right) r1 += labels[i] == 1;
    const std::uint64_t nl = left.size(), nr = right.size(), n = nl + nr;
    const double parent = detail::impurity(l1 + r1, n, criterion);
    const double wl = static_cast<double>(nl) / static_cast<double>(n);
    const double wr = static_cast<double>(nr) / static_cast<double>(n);
    return parent - wl * detail::impurity(l1, nl, criterion) - wr * detail::impurity(r1, nr, criterion);
}

struct TreeNode {
    // internal
    int feature = -1;
    double threshold = 0;
    std::int32_t left = -1, right = -1;  // indices into the node pool
    // leaf
    std::uint64_t count0 = 0, count1 = 0;
    bool is_leaf() const { return feature < 0; }
    double class1_fraction() const {
        const std::uint64_t n = count0 + count1;
        return n == 0 ? 0.0 : static_cast<double>(count1) / static_cast<double>(n);
    }
    int predicted_label() const { return class1_fraction() > 0.5 ? 1 : 0; }
};

struct BestSplit {
    int feature = -1;
    double threshold = 0;
    double gain = 0;
};

inline std::size_t feature_subset_size(MaxFeatures mf, std::size_t d) {
    switch (mf) {
        case MaxFeatures::None: return d;
        case MaxFeatures::Auto:
        case MaxFeatures::Sqrt:
            return static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(d))));
        case MaxFeatures::Log2:
            return std::max<std::size_t>(1, static_cast<std::size_t>(
                std::ceil(std::log2(static_cast<double>(d)))));
    }
    return d;
}

namespace detail {

// Grower keeping one sorted row-id array per feature; splits stably
// partition every array so children stay sorted without re-sorting.
class TreeGrower {
public:
    TreeGrower(const Dataset& data, std::span<const std::size_t> rows, TreeHyper hyper,
               RngStream& rng)
        : data_(data), hyper_(hyper), rng_(rng), d_(data.feature_count()) {
        labels_.reserve(rows.size());
        for (std::size_t r : rows) labels_.push_back(data.label(r));
        sorted_.resize(d_);
        for (std::size_t j = 0; j < d_; ++j) {
            auto& idx = sorted_[j];
            idx.resize(rows.size());
            std::iota(idx.begin(), idx.end(), std::uint32_t{0});
            const auto& vals = data.column(j).values;
            std::stable_sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
                return vals[rows[a]] < vals[rows[b]];
            });
        }
        rows_.assign(rows.begin(), rows.end());
        side_.resize(rows.size());
        scratch_.resize(rows.size());
        features_.resize(d_);
        std::iota(features_.begin(), features_.end(), 0);
    }

    std::vector<TreeNode> grow() {
        nodes_.clear();
        struct Job {
            std::size_t begin, end;
            std::int32_t parent;
            bool is_left;
        };
        std::vector<Job> stack;
        stack.push_back({0, labels_.size(), -1, false});
        while (!stack.empty()) {
            const Job job = stack.back();
            stack.pop_back();
            const std::int32_t me = static_cast<std::int32_t>(nodes_.size());
            nodes_.emplace_back();
            if (job.parent >= 0) {
                (job.is_left ? nodes_[static_cast<std::size_t>(job.parent)].left
                             : nodes_[static_cast<std::size_t>(job.parent)].right) = me;
            }
            const std::size_t n = job.end - job.begin;
            std::uint64_t n1 = 0;
            for (std::size_t t = job.begin; t < job.end; ++t) n1 += labels_[sorted_[0][t]];

            BestSplit split;
            if (n >= 2 && n1 != 0 && n1 != n) {
                split = best_split(job.begin, job.end, pick_features());
            }
            if (split.feature < 0 || split.gain <= 0.0) {
                nodes_[static_cast<std::size_t>(me)].count1 = n1;
                nodes_[static_cast<std::size_t>(me)].count0 = n - n1;
                continue;
            }
            const std::size_t nl = partition(job.begin, job.end, split);
            nodes_[static_cast<std::size_t>(me)].feature = split.feature;
            nodes_[static_cast<std::size_t>(me)].threshold = split.threshold;
            stack.push_back({job.begin + nl, job.end, me, false});
            stack.push_back({job.begin, job.begin + nl, me, true});  // left handled first
        }
        return std::move(nodes_);
    }

private:
    double value(std::size_t j, std::uint32_t local) const {
        return data_.column(j).values[rows_[local]];
    }

    // Finds the best (feature, threshold) for the slice [begin, end) of every
    // sorted array; candidate thresholds are midpoints between consecutive
    // distinct values. Ties break to the lower feature index, then lower
    // threshold (features are scanned in ascending order, thresholds
    // ascending, and only strictly better gains replace the incumbent).
    BestSplit best_split(std::size_t begin, std::size_t end,
                         std::span<const std::size_t> feature_subset) {
        const std::size_t n = end - begin;
        std::uint64_t total1 = 0;
        for (std::size_t t = begin; t < end; ++t) total1 += labels_[sorted_[0][t]];
        BestSplit best;
        if (total1 == 0 || total1 == n) return best;  // pure node
        const double parent = impurity(total1, n, hyper_.criterion);
        for (std::size_t j : feature_subset) {
            const auto& idx = sorted_[j];
            std::uint64_t left1 = 0;
            for (std::size_t t = begin; t + 1 < end; ++t) {
                left1 += labels_[idx[t]];
                const double v = value(j, idx[t]);
                const double next = value(j, idx[t + 1]);
                if (v == next) continue;
                const double thr = v + (next - v) / 2.0;
                if (!(thr > v) || !(thr < next)) continue;  // midpoint collapsed in fp
                const std::uint64_t nl = t - begin + 1;
                const std::uint64_t nr = n - nl;
                const double wl = static_cast<double>(nl) / static_cast<double>(n);
                const double wr = static_cast<double>(nr) / static_cast<double>(n);
                const double gain = parent - wl * impurity(left1, nl, hyper_.criterion) -
                                    wr * impurity(total1 - left1, nr, hyper_.criterion);
                if (gain > best.gain) {
                    best = {static_cast<int>(j), thr, gain};
                }
            }
        }
        return best;
    }

    // Per-node feature subset; drawn without replacement and sorted so the
    // lower-feature-index tie rule stays deterministic.
    std::span<const std::size_t> pick_features() {
        const std::size_t want = feature_subset_size(hyper_.max_features, d_);
        if (want >= d_) {
            std::sort(features_.begin(), features_.end());
            return std::span<const std::size_t>(features_);
        }
        for (std::size_t i = 0; i < want; ++i) {
            std::swap(features_[i], features_[i + rng_.next_index(d_ - i)]);
        }
        std::sort(features_.begin(), features_.begin() + static_cast<std::ptrdiff_t>(want));
        return std::span<const std::size_t>(features_.data(), want);
    }

    // Marks rows by the chosen feature, then stably partitions every
    // feature's sorted slice. Returns the left-side size.
    std::size_t partition(std::size_t begin, std::size_t end, const BestSplit& split) {
        const auto& vals = data_.column(static_cast<std::size_t>(split.feature)).values;
        std::size_t nl = 0;
        const auto& chosen = sorted_[static_cast<std::size_t>(split.feature)];
        for (std::size_t t = begin; t < end; ++t) {
            const std::uint32_t local = chosen[t];
            const bool left = vals[rows_[local]] < split.threshold;
            side_[local] = left;
            nl += left;
        }
        for (std::size_t j = 0; j < d_; ++j) {
            auto& idx = sorted_[j];
            std::size_t l = begin, r = begin + nl;
            for (std::size_t t = begin; t < end; ++t) {
                (side_[idx[t]] ? scratch_[l++] : scratch_[r++]) = idx[t];
            }
            std::copy(scratch_.begin() + static_cast<std::ptrdiff_t>(begin),
                      scratch_.begin() + static_cast<std::ptrdiff_t>(end),
                      idx.begin() + static_cast<std::ptrdiff_t>(begin));
        }
        return nl;
    }

    const Dataset& data_;
    TreeHyper hyper_;
    RngStream& rng_;
    std::size_t d_;
    std::vector<std::size_t> rows_;            // local -> dataset row
    std::vector<int> labels_;                  // by local id
    std::vector<std::vector<std::uint32_t>> sorted_;  // per feature, local ids sorted by value
    std::vector<char> side_;
    std::vector<std::uint32_t> scratch_;
    std::vector<std::size_t> features_;
    std::vector<TreeNode> nodes_;
};

}  // namespace detail

class DecisionTreeModel : public TrainedModel {
public:
    DecisionTreeModel(std::vector<TreeNode> nodes, TreeHyper hyper)
        : nodes_(std::move(nodes)), hyper_(hyper) {}

    const TreeNode& leaf_for(std::span<const double> x) const {
        std::size_t at = 0;
        while (!nodes_[at].is_leaf()) {
            const auto& node = nodes_[at];
            at = static_cast<std::size_t>(
                x[static_cast<std::size_t>(node.feature)] < node.threshold ? node.left : node.right);
        }
        return nodes_[at];
    }

    double score(std::span<const double> x) const override {
        return leaf_for(x).class1_fraction();
    }
    double threshold() const override { return std::nextafter(0.5, 1.0); }

    const std::vector<TreeNode>& nodes() const { return nodes_; }
    const TreeHyper& hyper() const { return hyper_; }

    nlohmann::json to_json() const override {
        nlohmann::json nodes = nlohmann::json::array();
        for (const auto& n : nodes_) {
            if (n.is_leaf()) {
                nodes.push_back({{"count0", n.count0}, {"count1", n.count1}});
            } else {
                nodes.push_back({{"feature", n.feature},
                                 {"threshold", n.threshold},
                                 {"left", n.left},
                                 {"right", n.right}});
            }
        }
        return {{"model", "decision_tree"},
                {"criterion", to_string(hyper_.criterion)},
                {"max_features", to_string(hyper_.max_features)},
                {"nodes", nodes}};
    }

private:
    std::vector<TreeNode> nodes_;
    TreeHyper hyper_;
};

inline std::unique_ptr<DecisionTreeModel> fit_tree_on_rows(const Dataset& train,
                                                           std::span<const std::size_t> rows,
                                                           const TreeHyper& hyper, RngStream& rng) {
    if (rows.empty()) throw std::invalid_argument("fit_tree: empty dataset");
    detail::TreeGrower grower(train, rows, hyper, rng);
    return std::make_unique<DecisionTreeModel>(grower.grow(), hyper);
}

inline std::unique_ptr<DecisionTreeModel> fit_tree(const Dataset& train, const TreeHyper& hyper,
                                                   RngStream& rng) {
    std::vector<std::size_t> rows(train.row_count());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    return fit_tree_on_rows(train, rows, hyper, rng);
}

class DecisionTreeClassifier : public Classifier {
public:
    explicit DecisionTreeClassifier(TreeHyper hyper) : hyper_(hyper) {}
    std::string name() const override { return "dt"; }
    std::unique_ptr<TrainedModel> fit(const Dataset& train, RngStream& rng) const override {
        return fit_tree(train, hyper_, rng);
    }
    const TreeHyper& hyper() const { return hyper_; }

private:
    TreeHyper hyper_;
};

}  // namespace strokeml
