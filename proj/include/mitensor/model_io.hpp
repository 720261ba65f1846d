#pragma once

#include "mitensor/eval.hpp"
#include "mitensor/svm.hpp"

#include <filesystem>
#include <string>

namespace mitensor {

inline constexpr int kModelFormatVersion = 1;

/// Serializes a MultiClassModel as versioned JSON.  Doubles are written in
/// shortest round-trip form, so load_model reproduces bit-identical
/// predictions and identical inputs produce byte-identical files.
void save_model(const std::filesystem::path& path, const MultiClassModel& model);

/// Throws VersionMismatch for unknown format versions and Error for
/// structural problems.
MultiClassModel load_model(const std::filesystem::path& path);

/// Machine report for cmd_evaluate: accuracy, confusion matrix, per-class
/// rates, class statistics, and the trend chains (or the missing-class
/// diagnostic when fewer than four classes are present).
std::string metrics_report_json(const Metrics& metrics, const ClassStats& stats);

/// Human-readable rendering of the same report.
std::string metrics_report_text(const Metrics& metrics, const ClassStats& stats);

/// trend_check outcome as plain text (one line per chain), or the
/// MissingClass diagnostic.
std::string trend_report_text(const ClassStats& stats);

} // namespace mitensor
