#pragma once

#include "mitensor/features.hpp"
#include "mitensor/image.hpp"
#include "mitensor/inertia.hpp"

#include <array>
#include <span>
#include <vector>

namespace mitensor::ref {

// Serial reference implementations, deliberately written as plain nested
// loops with coordinates recomputed per pixel.  They share no code with the
// production kernels so tests can compare the two paths, and the benchmark
// uses them as the single-thread baseline.

InertiaTensor naive_tensor(const GrayImage& image);

double naive_total_mass(const GrayImage& image);

/// Eigenvalues via the characteristic polynomial and the numerically stable
/// quadratic formula, a different route from the production mean/radius form.
EigenPair naive_eigenvalues(const InertiaTensor& tensor);

FeatureVector naive_features(const GrayImage& image);

/// Plain serial loop over a batch; baseline for the OpenMP batch kernel.
std::vector<FeatureVector> extract_features_serial(std::span<const GrayImage> images);

/// Per-class means of (asymmetry, mass, lambda1, lambda2) recomputed naively.
struct NaiveClassMeans {
    std::array<long long, 4> count{};
    std::array<double, 4> mean_asymmetry{};
    std::array<double, 4> mean_mass{};
    std::array<double, 4> mean_lambda1{};
    std::array<double, 4> mean_lambda2{};
};

NaiveClassMeans naive_class_means(std::span<const FeatureVector> features);

} // namespace mitensor::ref
