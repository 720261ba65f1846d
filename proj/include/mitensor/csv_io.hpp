#pragma once

#include "mitensor/dataset.hpp"
#include "mitensor/features.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mitensor {

/// One line of a feature CSV.  Columns other than path and label are
/// optional so models can be evaluated against reduced CSVs; a missing
/// column that a selection needs raises FeatureSelectionMismatch.
struct FeatureRow {
    std::string path;
    std::optional<ClassLabel> label;
    std::optional<double> lambda1, lambda2, delta, mass;
    std::optional<double> i00, i01, i11;
};

inline constexpr const char* kFeatureCsvHeader =
    "path,label,lambda1,lambda2,delta,mass,i00,i01,i11";

/// Writes the fixed header plus one row per entry.  Floats use 17
/// significant digits so a read-back reproduces every double exactly.
void write_features_csv(std::ostream& out, std::span<const FeatureRow> rows);
void write_features_csv(const std::filesystem::path& path, std::span<const FeatureRow> rows);

/// Header-driven read; accepts any column subset as long as path is present.
std::vector<FeatureRow> read_features_csv(const std::filesystem::path& path);

/// Converts rows to FeatureVectors, requiring every feature in `needed` (and
/// a label when `require_label`).  Missing needed columns raise
/// FeatureSelectionMismatch; rows violating delta = lambda1 - lambda2 raise
/// Error.
std::vector<FeatureVector> rows_to_vectors(std::span<const FeatureRow> rows,
                                           const FeatureSelection& needed,
                                           bool require_label);

namespace csvio {

/// 17-significant-digit decimal form; round-trips any finite double.
std::string format_double(double v);

/// strtod over the full token; throws Error on trailing garbage.
double parse_double(const std::string& token);

/// Quotes a field only when it contains a comma, quote, or newline.
std::string escape_field(std::string_view field);

/// Splits one CSV record, honoring double-quoted fields.
std::vector<std::string> parse_line(const std::string& line);

} // namespace csvio

} // namespace mitensor
