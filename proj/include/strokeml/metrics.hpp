#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace strokeml {

// Positive class is stroke (label 1) throughout.
struct ConfusionMatrix {
    std::uint64_t tp = 0, tn = 0, fp = 0, fn = 0;

    std::uint64_t total() const { return tp + tn + fp + fn; }

    ConfusionMatrix& operator+=(const ConfusionMatrix& o) {
        tp += o.tp;
        tn += o.tn;
        fp += o.fp;
        fn += o.fn;
        return *this;
    }
    friend ConfusionMatrix operator+(ConfusionMatrix a, const ConfusionMatrix& b) {
        a += b;
        return a;
    }
};

inline ConfusionMatrix confusion(std::span<const int> predictions, std::span<const int> labels) {
    if (predictions.size() != labels.size()) {
        throw std::invalid_argument("confusion: predictions/labels length mismatch");
    }
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == 1) {
            predictions[i] == 1 ? ++cm.tp : ++cm.fn;
        } else {
            predictions[i] == 1 ? ++cm.fp : ++cm.tn;
        }
    }
    return cm;
}

// Accuracy, class-specific and macro precision/recall/F. Zero-denominator
// cases report 0 and the metric name is recorded in `undefined` (all-majority
// predictions on unbalanced data genuinely hit tp + fp == 0).
struct ScalarMetrics {
    double accuracy = 0;
    double precision_stroke = 0, precision_no_stroke = 0, precision_macro = 0;
    double recall_stroke = 0, recall_no_stroke = 0, recall_macro = 0;
    double f_stroke = 0, f_no_stroke = 0, f_macro = 0;
    std::vector<std::string> undefined;
};

inline ScalarMetrics compute_metrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw std::invalid_argument("compute_metrics: empty matrix");
    ScalarMetrics m;
    auto ratio = [&m](std::uint64_t num, std::uint64_t den, const char* name) {
        if (den == 0) {
            m.undefined.emplace_back(name);
            return 0.0;
        }
        return static_cast<double>(num) / static_cast<double>(den);
    };
    const auto tp = cm.tp, tn = cm.tn, fp = cm.fp, fn = cm.fn;
    m.accuracy = static_cast<double>(tp + tn) / static_cast<double>(cm.total());
    m.precision_stroke = ratio(tp, tp + fp, "precision_stroke");
    m.precision_no_stroke = ratio(tn, tn + fn, "precision_no_stroke");
    m.precision_macro = (m.precision_stroke + m.precision_no_stroke) / 2.0;
    m.recall_stroke = ratio(tp, tp + fn, "recall_stroke");
    m.recall_no_stroke = ratio(tn, tn + fp, "recall_no_stroke");
    m.recall_macro = (m.recall_stroke + m.recall_no_stroke) / 2.0;
    auto fmeasure = [&m](double p, double r, const char* name) {
        if (p + r == 0.0) {
            m.undefined.emplace_back(name);
            return 0.0;
        }
        return 2.0 * p * r / (p + r);
    };
    m.f_stroke = fmeasure(m.precision_stroke, m.recall_stroke, "f_stroke");
    m.f_no_stroke = fmeasure(m.precision_no_stroke, m.recall_no_stroke, "f_no_stroke");
    // Macro F from macro P and macro R, not the mean of the class F-measures.
    m.f_macro = fmeasure(m.precision_macro, m.recall_macro, "f_macro");
    return m;
}

struct RocPoint {
    double fpr = 0, tpr = 0;
    double threshold = 0;  // score at/above which prediction is 1
};

// Threshold sweep over distinct scores, descending; tied scores grouped into
// one point. Starts at (0,0), ends at (1,1).
inline std::vector<RocPoint> roc_curve(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size()) {
        throw std::invalid_argument("roc_curve: scores/labels length mismatch");
    }
    std::uint64_t pos = 0, neg = 0;
    for (int y : labels) (y == 1 ? pos : neg)++;
    if (pos == 0 || neg == 0) {
        throw std::invalid_argument("roc_curve: both classes must be present");
    }
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] > scores[b];
    });
    std::vector<RocPoint> curve;
    curve.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
    std::uint64_t tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        const double s = scores[order[i]];
        while (i < order.size() && scores[order[i]] == s) {
            (labels[order[i]] == 1 ? tp : fp)++;
            ++i;
        }
        curve.push_back({static_cast<double>(fp) / neg, static_cast<double>(tp) / pos, s});
    }
    return curve;
}

// Trapezoidal area under an ROC curve.
inline double auc(std::span<const RocPoint> curve) {
    if (curve.size() < 2) throw std::invalid_argument("auc: need at least 2 points");
    double area = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i) {
        area += (curve[i].fpr - curve[i - 1].fpr) * (curve[i].tpr + curve[i - 1].tpr) / 2.0;
    }
    return area;
}

struct Timings {
    double fit_seconds = 0;
    double validate_seconds = 0;

    Timings& operator+=(const Timings& o) {
        fit_seconds += o.fit_seconds;
        validate_seconds += o.validate_seconds;
        return *this;
    }
};

struct FoldEval {
    ConfusionMatrix cm;
    std::vector<double> scores;  // out-of-fold scores
    std::vector<int> labels;     // labels aligned with scores
    Timings timings;
};

struct PooledEval {
    ConfusionMatrix cm;
    std::vector<RocPoint> roc;
    double auc_value = 0;
    Timings timings;
};

// Matrices summed, out-of-fold scores concatenated into a single ROC/AUC,
// timings summed.
inline PooledEval pool_folds(std::span<const FoldEval> folds) {
    if (folds.empty()) throw std::invalid_argument("pool_folds: no folds");
    PooledEval pooled;
    std::vector<double> scores;
    std::vector<int> labels;
    for (const auto& f : folds) {
        pooled.cm += f.cm;
        pooled.timings += f.timings;
        scores.insert(scores.end(), f.scores.begin(), f.scores.end());
        labels.insert(labels.end(), f.labels.begin(), f.labels.end());
    }
    pooled.roc = roc_curve(scores, labels);
    pooled.auc_value = auc(pooled.roc);
    return pooled;
}

}  // namespace strokeml
