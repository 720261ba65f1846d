#pragma once

#include "mitensor/dataset.hpp"
#include "mitensor/features.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace mitensor {

enum class KernelKind : int { Linear = 0, Rbf = 1 };

const char* to_string(KernelKind kind);
std::optional<KernelKind> kernel_from_string(std::string_view name);

struct KernelSpec {
    KernelKind kind = KernelKind::Rbf;
    double gamma = 1.0; // rbf only, > 0
};

/// linear: dot(a, b); rbf: exp(-gamma * |a - b|^2).
double kernel_eval(const KernelSpec& spec, std::span<const double> a, std::span<const double> b);

struct TrainConfig {
    double c = 1.0;
    KernelKind kernel = KernelKind::Rbf;
    double gamma = 0.0; // <= 0 selects 1 / (dim * pooled variance) on standardized data
    double tol = 1e-3;
    int max_passes = 10;   // consecutive sweeps without progress before stopping
    int max_sweeps = 1000; // hard cap; hitting it clears the converged flag
    std::uint64_t seed = 0;
};

/// Soft-margin binary SVM in dual form.  Only support vectors (alpha > 0)
/// are kept; a degenerate model has none and always answers `bias`.
struct BinarySvmModel {
    std::vector<std::vector<double>> support_vectors;
    std::vector<double> alphas; // each in (0, C]
    std::vector<double> signs;  // +1 / -1
    double bias = 0.0;
    KernelSpec kernel{};
    double c = 1.0;
    bool converged = true;
    bool degenerate = false;

    std::size_t dim() const { return support_vectors.empty() ? 0 : support_vectors[0].size(); }
};

/// Sequential minimal optimization, Platt's simplified variant: sweeps all
/// points for KKT violators and pairs each with a random partner drawn from
/// the seeded generator, so training is reproducible for a fixed
/// (data order, seed).  Hitting max_sweeps returns the current model with
/// converged = false rather than throwing.
BinarySvmModel train_binary(std::span<const std::vector<double>> x, std::span<const double> y,
                            const TrainConfig& config);

/// f(x) = sum_i alpha_i * sign_i * K(sv_i, x) + bias.
double decision(const BinarySvmModel& model, std::span<const double> x);

/// OpenMP kernel: one decision value per point, output indexed by position.
std::vector<double> decision_batch(const BinarySvmModel& model,
                                   std::span<const std::vector<double>> points, int threads = 0);

struct MulticlassConfig {
    TrainConfig train{};
    FeatureSelection selection = default_selection();
};

/// One-vs-rest stack: a standardizer fitted on all training data plus one
/// binary model per class.  Classes absent from training get a degenerate
/// always-negative model.
struct MultiClassModel {
    int format_version = 1;
    Standardizer standardizer;
    FeatureSelection selection;
    std::array<BinarySvmModel, kNumClasses> models;
    MulticlassConfig config; // echo of the training configuration
    double resolved_gamma = 0.0;
};

/// Throws InsufficientData when fewer than two classes are present.  The
/// four binary problems train concurrently, each seeded with seed + code.
MultiClassModel train_multiclass(std::span<const FeatureVector> features,
                                 const MulticlassConfig& config, int threads = 0);

struct Prediction {
    ClassLabel label = ClassLabel::NonDemented;
    std::array<double, kNumClasses> scores{};
};

/// Standardizes, scores all four classes, picks the argmax; ties break to
/// the lowest class code.
Prediction predict(const MultiClassModel& model, const FeatureVector& features);

} // namespace mitensor
