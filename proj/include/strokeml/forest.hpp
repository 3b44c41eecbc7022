#pragma once

#include <memory>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "strokeml/classifier.hpp"
#include "strokeml/tree.hpp"

namespace strokeml {

struct ForestHyper {
    std::size_t n_estimators = 100;
    SplitCriterion criterion = SplitCriterion::Gini;
    MaxFeatures max_features = MaxFeatures::None;
    bool bootstrap = true;  // test hook; the experiment grid always bootstraps
};

class RandomForestModel : public TrainedModel {
public:
    RandomForestModel(std::vector<std::unique_ptr<DecisionTreeModel>> trees, ForestHyper hyper)
        : trees_(std::move(trees)), hyper_(hyper) {}

    // Fraction of trees voting class 1; each tree votes its leaf majority.
    double score(std::span<const double> x) const override {
        std::size_t votes = 0;
        for (const auto& t : trees_) votes += t->leaf_for(x).predicted_label();
        return static_cast<double>(votes) / static_cast<double>(trees_.size());
    }

    // Majority vote; an exact tie goes to class 0, so class 1 needs strictly
    // more than half the votes.
    double threshold() const override {
        const std::size_t n = trees_.size();
        return static_cast<double>(n / 2 + 1) / static_cast<double>(n);
    }

    std::size_t tree_count() const { return trees_.size(); }
    const DecisionTreeModel& tree(std::size_t i) const { return *trees_[i]; }
    const ForestHyper& hyper() const { return hyper_; }

    nlohmann::json to_json() const override {
        nlohmann::json trees = nlohmann::json::array();
        for (const auto& t : trees_) trees.push_back(t->to_json());
        return {{"model", "random_forest"},
                {"n_estimators", hyper_.n_estimators},
                {"criterion", to_string(hyper_.criterion)},
                {"max_features", to_string(hyper_.max_features)},
                {"trees", trees}};
    }

private:
    std::vector<std::unique_ptr<DecisionTreeModel>> trees_;
    ForestHyper hyper_;
};

// Bags n_estimators fully grown trees; each tree draws its own bootstrap
// sample (n rows with replacement) and feature subsets from a child stream
// keyed by the tree number, so results do not depend on scheduling.
inline std::unique_ptr<RandomForestModel> fit_forest(const Dataset& train, const ForestHyper& hyper,
                                                     RngStream& rng) {
    if (hyper.n_estimators == 0) throw std::invalid_argument("fit_forest: n_estimators must be >= 1");
    if (train.row_count() == 0) throw std::invalid_argument("fit_forest: empty dataset");
    const TreeHyper tree_hyper{hyper.criterion, hyper.max_features};
    std::vector<std::unique_ptr<DecisionTreeModel>> trees(hyper.n_estimators);
    const std::size_t n = train.row_count();
    for (std::size_t t = 0; t < hyper.n_estimators; ++t) {
        RngStream stream = derive_stream(rng.seed(), rng.label() + "/tree/" + std::to_string(t));
        std::vector<std::size_t> rows(n);
        if (hyper.bootstrap) {
            for (auto& r : rows) r = stream.next_index(n);
        } else {
            std::iota(rows.begin(), rows.end(), std::size_t{0});
        }
        trees[t] = fit_tree_on_rows(train, rows, tree_hyper, stream);
    }
    return std::make_unique<RandomForestModel>(std::move(trees), hyper);
}

class RandomForestClassifier : public Classifier {
public:
    explicit RandomForestClassifier(ForestHyper hyper) : hyper_(hyper) {}
    std::string name() const override { return "rf"; }
    std::unique_ptr<TrainedModel> fit(const Dataset& train, RngStream& rng) const override {
        return fit_forest(train, hyper_, rng);
    }
    const ForestHyper& hyper() const { return hyper_; }

private:
    ForestHyper hyper_;
};

}  // namespace strokeml
