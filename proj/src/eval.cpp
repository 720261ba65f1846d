#include "mitensor/eval.hpp"

#include "mitensor/errors.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace mitensor {

SplitIndices stratified_split(std::span<const ClassLabel> labels, const SplitConfig& config) {
    if (!(config.test_fraction > 0.0 && config.test_fraction < 1.0))
        throw Error("test_fraction must lie in (0, 1)");
    if (labels.empty()) throw InsufficientData("nothing to split");

    SplitIndices split;
    auto take = [&](std::vector<std::size_t>& indices, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        std::shuffle(indices.begin(), indices.end(), rng);
        auto n_test = static_cast<std::size_t>(
            std::llround(static_cast<double>(indices.size()) * config.test_fraction));
        n_test = std::clamp<std::size_t>(n_test, 1, indices.size() - 1);
        for (std::size_t i = 0; i < indices.size(); ++i)
            (i < n_test ? split.test : split.train).push_back(indices[i]);
    };

    if (config.stratified) {
        std::array<std::vector<std::size_t>, kNumClasses> per_class;
        for (std::size_t i = 0; i < labels.size(); ++i)
            per_class[label_code(labels[i])].push_back(i);
        for (int k = 0; k < kNumClasses; ++k) {
            if (per_class[k].empty()) continue;
            if (per_class[k].size() < 2)
                throw ClassTooSmall(std::string("cannot stratify: class ") +
                                    to_string(static_cast<ClassLabel>(k)) +
                                    " has a single sample");
            // One independent stream per class so a class's draw does not
            // depend on which other classes are present.
            take(per_class[k], config.seed + 0x9e3779b97f4a7c15ULL * (k + 1));
        }
    } else {
        if (labels.size() < 2) throw ClassTooSmall("need at least 2 samples to split");
        std::vector<std::size_t> all(labels.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        take(all, config.seed);
    }

    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    return split;
}

namespace {

Metrics metrics_from_predictions(std::span<const ClassLabel> truth,
                                 std::span<const ClassLabel> predicted) {
    Metrics m;
    m.total = static_cast<std::int64_t>(truth.size());
    std::int64_t correct = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        m.confusion[label_code(truth[i])][label_code(predicted[i])] += 1;
        if (truth[i] == predicted[i]) ++correct;
    }
    m.accuracy = static_cast<double>(correct) / static_cast<double>(m.total);
    for (int k = 0; k < kNumClasses; ++k) {
        std::int64_t row = 0, col = 0;
        for (int j = 0; j < kNumClasses; ++j) {
            row += m.confusion[k][j];
            col += m.confusion[j][k];
        }
        m.recall_defined[k] = row > 0;
        m.precision_defined[k] = col > 0;
        m.recall[k] = row > 0 ? static_cast<double>(m.confusion[k][k]) / static_cast<double>(row)
                              : 0.0;
        m.precision[k] = col > 0
                             ? static_cast<double>(m.confusion[k][k]) / static_cast<double>(col)
                             : 0.0;
    }
    return m;
}

std::vector<ClassLabel> require_labels(std::span<const FeatureVector> samples) {
    std::vector<ClassLabel> truth(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!samples[i].label) throw Error("evaluation sample has no label");
        truth[i] = *samples[i].label;
    }
    return truth;
}

} // namespace

Metrics evaluate(const MultiClassModel& model, std::span<const FeatureVector> test,
                 int threads) {
    if (test.empty()) throw EmptyTestSet("evaluation needs a non-empty test set");
    const std::vector<ClassLabel> truth = require_labels(test);
    std::vector<ClassLabel> predicted(test.size());
    const auto n = static_cast<std::ptrdiff_t>(test.size());
    [[maybe_unused]] const int nthreads = detail::resolve_threads(threads);
#pragma omp parallel for schedule(static) if (threads != 1) num_threads(nthreads)
    for (std::ptrdiff_t i = 0; i < n; ++i) predicted[i] = predict(model, test[i]).label;
    return metrics_from_predictions(truth, predicted);
}

Metrics evaluate_with(const std::function<ClassLabel(const FeatureVector&)>& classify,
                      std::span<const FeatureVector> test) {
    if (test.empty()) throw EmptyTestSet("evaluation needs a non-empty test set");
    const std::vector<ClassLabel> truth = require_labels(test);
    std::vector<ClassLabel> predicted(test.size());
    for (std::size_t i = 0; i < test.size(); ++i) predicted[i] = classify(test[i]);
    return metrics_from_predictions(truth, predicted);
}

ClassStats class_statistics(std::span<const FeatureVector> features) {
    if (features.empty()) throw InsufficientData("no features to summarize");
    ClassStats stats;
    std::array<double, kNumClasses> sum_a{}, sum_m{}, sum_l1{}, sum_l2{};
    for (const auto& fv : features) {
        if (!fv.label) throw Error("class statistics need labeled features");
        const int k = label_code(*fv.label);
        stats.per_class[k].count += 1;
        sum_a[k] += fv.delta;
        sum_m[k] += fv.mass;
        sum_l1[k] += fv.lambda1;
        sum_l2[k] += fv.lambda2;
    }
    for (int k = 0; k < kNumClasses; ++k) {
        auto& pc = stats.per_class[k];
        if (pc.count == 0) continue;
        const double n = static_cast<double>(pc.count);
        pc.mean_asymmetry = sum_a[k] / n;
        pc.mean_mass = sum_m[k] / n;
        pc.mean_lambda1 = sum_l1[k] / n;
        pc.mean_lambda2 = sum_l2[k] / n;
    }
    return stats;
}

TrendReport trend_check(const ClassStats& stats) {
    for (int k = 0; k < kNumClasses; ++k)
        if (stats.per_class[k].count == 0)
            throw MissingClass(std::string("trend check needs all four classes; missing ") +
                               to_string(static_cast<ClassLabel>(k)));

    TrendReport report;
    auto run_chain = [&](auto member, TrendReport::Chain& chain) {
        for (int k = 0; k + 1 < kNumClasses; ++k) {
            const double margin = stats.per_class[k].*member - stats.per_class[k + 1].*member;
            chain.margins[k] = margin;
            if (margin <= 0.0 && chain.pass) {
                chain.pass = false;
                chain.first_violation = k;
            }
        }
    };
    run_chain(&ClassStats::PerClass::mean_mass, report.mass);
    run_chain(&ClassStats::PerClass::mean_asymmetry, report.asymmetry);
    return report;
}

} // namespace mitensor
