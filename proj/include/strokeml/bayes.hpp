#pragma once

#include <cmath>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "strokeml/classifier.hpp"
#include "strokeml/dataset.hpp"

namespace strokeml {

// Gaussian naive Bayes. Log-space likelihoods; the two class posteriors are
// normalized to sum to 1. Posterior exactly 0.5 predicts class 0.
class GaussianNbModel : public TrainedModel {
public:
    GaussianNbModel(double prior1, std::vector<double> mean0, std::vector<double> var0,
                    std::vector<double> mean1, std::vector<double> var1)
        : prior1_(prior1),
          mean0_(std::move(mean0)),
          var0_(std::move(var0)),
          mean1_(std::move(mean1)),
          var1_(std::move(var1)) {}

    double posterior(std::span<const double> x) const {
        if (x.size() != mean0_.size()) {
            throw std::invalid_argument("GaussianNbModel: dimension mismatch");
        }
        double log0 = std::log(1.0 - prior1_);
        double log1 = std::log(prior1_);
        for (std::size_t j = 0; j < x.size(); ++j) {
            log0 += log_gaussian(x[j], mean0_[j], var0_[j]);
            log1 += log_gaussian(x[j], mean1_[j], var1_[j]);
        }
        // normalize: p1 = e^log1 / (e^log0 + e^log1), computed stably
        const double m = std::max(log0, log1);
        const double e0 = std::exp(log0 - m), e1 = std::exp(log1 - m);
        return e1 / (e0 + e1);
    }

    double score(std::span<const double> x) const override { return posterior(x); }
    double threshold() const override { return std::nextafter(0.5, 1.0); }

    double prior1() const { return prior1_; }
    const std::vector<double>& mean(int cls) const { return cls == 1 ? mean1_ : mean0_; }
    const std::vector<double>& variance(int cls) const { return cls == 1 ? var1_ : var0_; }

    nlohmann::json to_json() const override {
        return {{"model", "gaussian_nb"}, {"prior_stroke", prior1_},
                {"mean0", mean0_},        {"var0", var0_},
                {"mean1", mean1_},        {"var1", var1_}};
    }

private:
    static double log_gaussian(double x, double mean, double var) {
        static constexpr double log_2pi = 1.8378770664093454836;
        const double d = x - mean;
        return -0.5 * (log_2pi + std::log(var) + d * d / var);
    }

    double prior1_;
    std::vector<double> mean0_, var0_, mean1_, var1_;
};

// Priors are class frequencies; per-class per-feature means and variances
// (population form). The variance floor is 1e-9 times the largest per-class
// feature variance so constant features keep a finite likelihood.
inline std::unique_ptr<GaussianNbModel> fit_nb(const Dataset& train) {
    const std::size_t n = train.row_count(), d = train.feature_count();
    std::size_t n1 = train.count_label(1);
    if (n1 == 0 || n1 == n) throw std::invalid_argument("fit_nb: both classes required");
    const std::size_t n0 = n - n1;

    std::vector<double> mean0(d, 0), mean1(d, 0), var0(d, 0), var1(d, 0);
    for (std::size_t j = 0; j < d; ++j) {
        const auto& v = train.column(j).values;
        double s0 = 0, s1 = 0;
        for (std::size_t i = 0; i < n; ++i) (train.label(i) == 1 ? s1 : s0) += v[i];
        mean0[j] = s0 / static_cast<double>(n0);
        mean1[j] = s1 / static_cast<double>(n1);
        double q0 = 0, q1 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (train.label(i) == 1) {
                const double t = v[i] - mean1[j];
                q1 += t * t;
            } else {
                const double t = v[i] - mean0[j];
                q0 += t * t;
            }
        }
        var0[j] = q0 / static_cast<double>(n0);
        var1[j] = q1 / static_cast<double>(n1);
    }
    double max_var = 0;
    for (std::size_t j = 0; j < d; ++j) max_var = std::max({max_var, var0[j], var1[j]});
    const double floor = 1e-9 * (max_var > 0 ? max_var : 1.0);
    for (std::size_t j = 0; j < d; ++j) {
        var0[j] = std::max(var0[j], floor);
        var1[j] = std::max(var1[j], floor);
    }
    return std::make_unique<GaussianNbModel>(static_cast<double>(n1) / static_cast<double>(n),
                                             std::move(mean0), std::move(var0), std::move(mean1),
                                             std::move(var1));
}

class GaussianNbClassifier : public Classifier {
public:
    std::string name() const override { return "nb"; }
    std::unique_ptr<TrainedModel> fit(const Dataset& train, RngStream&) const override {
        return fit_nb(train);
    }
};

}  // namespace strokeml
