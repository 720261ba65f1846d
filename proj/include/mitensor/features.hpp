#pragma once

#include "mitensor/dataset.hpp"
#include "mitensor/image.hpp"
#include "mitensor/inertia.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mitensor {

enum class Feature : int {
    Lambda1 = 0,
    Lambda2 = 1,
    Delta = 2,
    Mass = 3,
};

const char* to_string(Feature f);
std::optional<Feature> feature_from_string(std::string_view name);

/// Ordered, duplicate-free subset of the four features fed to the classifier.
using FeatureSelection = std::vector<Feature>;

/// Default: the eigenvalue pair.
FeatureSelection default_selection();

/// Parses "lambda1,lambda2,delta,mass" style lists; throws Error on unknown
/// names, duplicates, or an empty list.
FeatureSelection parse_selection(std::string_view csv_list);
std::string format_selection(const FeatureSelection& selection);

/// Per-image descriptor: the tensor eigenvalues, their difference, and the
/// total pixel mass, plus an optional class label.
struct FeatureVector {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double delta = 0.0; // lambda1 - lambda2
    double mass = 0.0;
    std::optional<ClassLabel> label;

    double value(Feature f) const {
        switch (f) {
            case Feature::Lambda1: return lambda1;
            case Feature::Lambda2: return lambda2;
            case Feature::Delta: return delta;
            case Feature::Mass: return mass;
        }
        return 0.0;
    }
};

FeatureVector extract_features(const GrayImage& image);

/// OpenMP batch kernel; results are indexed by input position so the output
/// is identical for any thread count.  threads == 0 uses the OpenMP default,
/// threads == 1 forces the serial path.
std::vector<FeatureVector> extract_features_batch(std::span<const GrayImage> images,
                                                  int threads = 0);

/// Per-feature affine transform to zero mean and unit variance, fitted with
/// population statistics.  Zero-variance features keep stddev 1.
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> stddev;

    std::size_t dim() const { return mean.size(); }
};

/// Throws InsufficientData for fewer than 2 vectors.
Standardizer fit_standardizer(std::span<const FeatureVector> vectors,
                              const FeatureSelection& selection);

std::vector<double> apply_standardizer(const Standardizer& s, const FeatureVector& v,
                                       const FeatureSelection& selection);

} // namespace mitensor
