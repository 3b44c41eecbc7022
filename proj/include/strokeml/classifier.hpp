#pragma once

#include <memory>
#include <span>
#include <string>

#include <json.hpp>

#include "strokeml/dataset.hpp"
#include "strokeml/rng.hpp"

namespace strokeml {

// Uniform contract for all five learners. Scores are monotone confidence
// toward class 1 (stroke); predict(x) == 1 exactly when score(x) >= threshold.
class TrainedModel {
public:
    virtual ~TrainedModel() = default;

    virtual double score(std::span<const double> x) const = 0;
    virtual double threshold() const = 0;

    int predict(std::span<const double> x) const {
        return score(x) >= threshold() ? 1 : 0;
    }

    virtual nlohmann::json to_json() const = 0;
};

class Classifier {
public:
    virtual ~Classifier() = default;
    virtual std::string name() const = 0;
    virtual std::unique_ptr<TrainedModel> fit(const Dataset& train, RngStream& rng) const = 0;
};

}  // namespace strokeml
