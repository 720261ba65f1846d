#pragma once

#include "mitensor/csv_io.hpp"
#include "mitensor/dataset.hpp"
#include "mitensor/eval.hpp"
#include "mitensor/model_io.hpp"
#include "mitensor/svm.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mitensor {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFatal = 1;
inline constexpr int kExitPartial = 2; // finished, but some items were skipped

/// Decodes every manifest entry and computes its feature row, fanning out
/// across a bounded worker pool; row order follows the manifest regardless
/// of scheduling.  Failures abort the single image, not the batch.
struct ExtractedBatch {
    std::vector<FeatureRow> rows;
    std::vector<std::string> failures; // "path: reason", manifest order
};
ExtractedBatch extract_from_manifest(const DatasetManifest& manifest, int threads = 0);

struct ExtractOptions {
    std::filesystem::path dataset_root;
    std::optional<std::filesystem::path> manifest_csv; // layout override
    std::filesystem::path output_csv;
    int threads = 0;
};

/// Writes the feature CSV plus an errors.log sidecar next to it when any
/// image was skipped.  Returns kExitOk or kExitPartial.
int cmd_extract(const ExtractOptions& options, std::ostream& log);

struct TrainOptions {
    std::optional<std::filesystem::path> features_csv;
    std::optional<std::filesystem::path> dataset_root;
    std::optional<std::filesystem::path> manifest_csv;
    std::filesystem::path model_out;
    std::optional<std::filesystem::path> report_json; // machine copy of the report
    double test_fraction = 0.2;
    bool stratified = true;
    TrainConfig train{};
    FeatureSelection selection = default_selection();
    int threads = 0;
};

struct TrainResult {
    MultiClassModel model;
    Metrics holdout;
    std::size_t train_size = 0;
    std::size_t test_size = 0;
};

/// Stratified split, standardize, one-vs-rest training; saves the model and
/// logs a report with per-class support-vector counts, convergence flags,
/// and held-out accuracy.
TrainResult cmd_train(const TrainOptions& options, std::ostream& log);

struct EvaluateOptions {
    std::filesystem::path model_file;
    std::filesystem::path features_csv;
    std::optional<std::filesystem::path> output_json;
    int threads = 0;
};

struct EvaluateResult {
    Metrics metrics;
    ClassStats stats;
};

EvaluateResult cmd_evaluate(const EvaluateOptions& options, std::ostream& log);

struct PredictOptions {
    std::filesystem::path model_file;
    std::vector<std::filesystem::path> images;
};

/// One `path,label,score0..score3` line per image; decode failures emit
/// `path,ERROR,,,,` and flip the exit code to kExitPartial.
int cmd_predict(const PredictOptions& options, std::ostream& out, std::ostream& err);

struct ReportOptions {
    std::filesystem::path features_csv;
    std::filesystem::path output_dir;
};

/// Emits scatter.csv, class_averages.csv, and trend.txt under output_dir.
void cmd_report(const ReportOptions& options, std::ostream& log);

} // namespace mitensor
