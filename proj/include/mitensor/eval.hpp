#pragma once

#include "mitensor/dataset.hpp"
#include "mitensor/features.hpp"
#include "mitensor/svm.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace mitensor {

struct SplitConfig {
    double test_fraction = 0.2; // in (0, 1)
    std::uint64_t seed = 0;
    bool stratified = true;
};

struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Per class: shuffle with the seeded generator and give the test side
/// round(count * test_fraction), clamped so both sides keep at least one
/// item.  Throws ClassTooSmall when a present class has a single member and
/// stratification is requested.
SplitIndices stratified_split(std::span<const ClassLabel> labels, const SplitConfig& config);

template <typename T>
std::pair<std::vector<T>, std::vector<T>> apply_split(std::span<const T> items,
                                                      const SplitIndices& split) {
    std::vector<T> train, test;
    train.reserve(split.train.size());
    test.reserve(split.test.size());
    for (auto i : split.train) train.push_back(items[i]);
    for (auto i : split.test) test.push_back(items[i]);
    return {std::move(train), std::move(test)};
}

struct Metrics {
    double accuracy = 0.0;
    std::array<std::array<std::int64_t, kNumClasses>, kNumClasses> confusion{}; // [true][pred]
    std::array<double, kNumClasses> precision{};
    std::array<double, kNumClasses> recall{};
    std::array<bool, kNumClasses> precision_defined{}; // false when no prediction of the class
    std::array<bool, kNumClasses> recall_defined{};    // false when class absent from test set
    std::int64_t total = 0;
};

/// Runs the model over every labeled test sample (OpenMP, order-stable) and
/// fills the confusion matrix.  Throws EmptyTestSet.
Metrics evaluate(const MultiClassModel& model, std::span<const FeatureVector> test,
                 int threads = 0);

/// Same bookkeeping with an arbitrary classifier; handy for tests.
Metrics evaluate_with(const std::function<ClassLabel(const FeatureVector&)>& classify,
                      std::span<const FeatureVector> test);

/// Per-class arithmetic means of the tensor features.
struct ClassStats {
    struct PerClass {
        std::int64_t count = 0;
        double mean_asymmetry = 0.0;
        double mean_mass = 0.0;
        double mean_lambda1 = 0.0;
        double mean_lambda2 = 0.0;
    };
    std::array<PerClass, kNumClasses> per_class{};
};

ClassStats class_statistics(std::span<const FeatureVector> features);

/// Checks the two severity-ordering chains: mean mass and mean asymmetry
/// strictly decreasing from NonDemented to ModerateDemented.  Reports
/// pass/fail with per-pair margins; throws MissingClass when any class has
/// no samples.
struct TrendReport {
    struct Chain {
        bool pass = true;
        std::array<double, kNumClasses - 1> margins{}; // mean[k] - mean[k+1]
        int first_violation = -1;                      // index of the first failing pair
    };
    Chain mass;
    Chain asymmetry;
};

TrendReport trend_check(const ClassStats& stats);

} // namespace mitensor
